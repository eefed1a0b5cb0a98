//! Literal closed-form tables of the invariant fields and forms, evaluated
//! numerically and audited against the exact construction.
//!
//! The tables are transcribed term by term, including terms printed without
//! a factor of `i`; deviations from the exact matrices are reported as data.
//! Column `j` of every table refers to `∂_j` (or `dx^j`) in chart order
//! α, β, γ, θ, a, b, c, φ.

use std::collections::BTreeMap;
use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::{left_coeffs, left_fields, left_forms, right_fields, right_forms};
use crate::error::Result;
use crate::group::EulerAngles;
use crate::SQRT3;

pub type ComplexTable = [[Complex64; 8]; 8];

/// Which printed table an entry belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Table {
    LeftFields,
    RightFields,
    LeftForms,
    RightForms,
    /// The worked ∂D/∂γ expansion, one row of three λ coefficients.
    GammaDerivative,
}

impl Table {
    pub const ALL: [Table; 5] = [
        Table::LeftFields,
        Table::RightFields,
        Table::LeftForms,
        Table::RightForms,
        Table::GammaDerivative,
    ];

    fn row_label(self, row: usize) -> String {
        match self {
            Table::LeftFields => format!("Λ{}", row + 1),
            Table::RightFields => format!("Λ{}^r", row + 1),
            Table::LeftForms => format!("ω{}", row + 1),
            Table::RightForms => format!("ω{}_r", row + 1),
            Table::GammaDerivative => "∂γD·D†".to_string(),
        }
    }

    fn col_label(self, col: usize) -> String {
        const COORDS: [&str; 8] = ["α", "β", "γ", "θ", "a", "b", "c", "φ"];
        match self {
            Table::LeftFields | Table::RightFields => format!("∂{}", COORDS[col]),
            Table::LeftForms | Table::RightForms => format!("d{}", COORDS[col]),
            Table::GammaDerivative => format!("λ{}", col + 1),
        }
    }
}

impl fmt::Display for Table {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Table::LeftFields => "left_fields",
            Table::RightFields => "right_fields",
            Table::LeftForms => "left_forms",
            Table::RightForms => "right_forms",
            Table::GammaDerivative => "gamma_derivative",
        })
    }
}

#[derive(Default, Clone, Copy)]
struct Row([Complex64; 8]);

impl Row {
    /// `+ i·x ∂_j`, `j` one-based.
    fn i(mut self, j: usize, x: f64) -> Self {
        self.0[j - 1] += Complex64::new(0.0, x);
        self
    }

    /// `+ x ∂_j` with no factor of `i`.
    fn re(mut self, j: usize, x: f64) -> Self {
        self.0[j - 1] += Complex64::new(x, 0.0);
        self
    }

    /// `+ s·other`.
    fn plus(mut self, s: f64, other: Row) -> Self {
        for k in 0..8 {
            self.0[k] += other.0[k] * s;
        }
        self
    }
}

struct Trig {
    al: f64,
    be: f64,
    ga: f64,
    th: f64,
    a: f64,
    b: f64,
    c: f64,
    eta3: f64,
}

impl Trig {
    fn new(p: &EulerAngles) -> Self {
        Self {
            al: p.alpha,
            be: p.beta,
            ga: p.gamma,
            th: p.theta,
            a: p.a,
            b: p.b,
            c: p.c,
            eta3: 3.0 * p.eta(),
        }
    }
}

fn cot(x: f64) -> f64 {
    x.cos() / x.sin()
}

fn sin(x: f64) -> f64 {
    x.sin()
}

fn cos(x: f64) -> f64 {
    x.cos()
}

/// Left invariant field table, row `i` holding Λ_{i+1} = Σ_j T_ij ∂_j.
pub fn left_fields_table(p: &EulerAngles) -> ComplexTable {
    let Trig {
        al,
        be,
        ga,
        th,
        a,
        b,
        ..
    } = Trig::new(p);
    let r = Row::default;
    let (c2a, s2a) = (cos(2.0 * al), sin(2.0 * al));
    let (sb, cb) = (sin(be), cos(be));
    let s2b = sin(2.0 * be);
    let cot2be = cot(2.0 * be);
    let cot2b = cot(2.0 * b);
    let s2bb = sin(2.0 * b);
    let (st, cott, tant, s2t) = (sin(th), cot(th), th.tan(), sin(2.0 * th));
    let k = (2.0 - st * st) / s2t;
    let h = 0.5 * SQRT3 * tant;
    let (cp, sp) = (cos(al + ga), sin(al + ga));
    let (cm, sm) = (cos(al - ga), sin(al - ga));
    let (cx, sx) = (cos(al - ga - 2.0 * a), sin(al - ga - 2.0 * a));
    let (cy, sy) = (cos(al + ga + 2.0 * a), sin(al + ga + 2.0 * a));

    let l1 = r().i(1, c2a * cot2be).i(2, s2a).i(3, -c2a / s2b);
    let l2 = r().i(1, -s2a * cot2be).i(2, c2a).i(3, s2a / s2b);
    let l3 = r().i(1, 1.0);
    let l8 = r().i(3, SQRT3).i(5, -SQRT3).i(8, 1.0);
    let l4 = r()
        .i(1, sb / s2b * cott * cp)
        .i(2, -sb * cott * sp)
        .i(3, -cot2be * sb * cott * cp)
        .i(3, k * cb * cp)
        .i(4, cb * sp)
        .i(5, -2.0 * cb / s2t * cp)
        .i(5, -cot2b / st * sb * cx)
        .i(6, sb / st * sx)
        .i(7, sb / (st * s2bb) * cx)
        .plus(-h * cb * cp, l8);
    let l5 = r()
        .i(1, -sb / s2b * cott * sp)
        .i(2, -sb * cott * cp)
        .i(3, cot2be * sb * cott * sp)
        .i(3, -k * cb * sp)
        .i(4, cb * cp)
        .i(5, 2.0 * cb / s2t * sp)
        .i(5, cot2b / st * sb * sx)
        .i(6, sb / st * cx)
        .i(7, -sb / (st * s2bb) * sx)
        .plus(h * cb * sp, l8);
    let l6 = r()
        .i(1, cb / s2b * cott * cm)
        .i(2, cb * cott * sm)
        .i(3, -cot2be * cb * cott * cm)
        .i(3, -k * sb * cm)
        .i(4, sb * sm)
        .i(5, 2.0 * sb / s2t * cm)
        .i(5, -cot2b / st * cb * cy)
        .i(6, -cb / st * sy)
        .i(7, cb / (st * s2bb) * cy)
        .plus(h * sb * cm, l8);
    let l7 = r()
        .i(1, cb / s2b * cott * sm)
        .i(2, -cb * cott * cm)
        .i(3, -cot2be * cb * cott * sm)
        .i(3, -k * sb * sm)
        .i(4, -sb * cm)
        .i(5, 2.0 * sb / s2t * sm)
        .i(5, -cot2b / st * cb * sy)
        .i(6, cb / st * cy)
        .i(7, cb / (st * s2bb) * sy)
        .plus(h * sb * sm, l8);

    [l1, l2, l3, l4, l5, l6, l7, l8].map(|r| r.0)
}

/// Right invariant field table.
pub fn right_fields_table(p: &EulerAngles) -> ComplexTable {
    let Trig {
        be,
        ga,
        th,
        a,
        b,
        c,
        eta3,
        ..
    } = Trig::new(p);
    let r = Row::default;
    let (c2c, s2c) = (cos(2.0 * c), sin(2.0 * c));
    let (sb, cb) = (sin(b), cos(b));
    let s2bb = sin(2.0 * b);
    let cot2b = cot(2.0 * b);
    let cot2be = cot(2.0 * be);
    let s2be = sin(2.0 * be);
    let (st, cott, tant, s2t) = (sin(th), cot(th), th.tan(), sin(2.0 * th));
    let k = (2.0 - st * st) / s2t;
    let h = 0.5 * SQRT3 * tant;
    let (cp, sp) = (cos(c + a + eta3), sin(c + a + eta3));
    let (cq, sq) = (cos(c - a - 2.0 * ga + eta3), sin(c - a - 2.0 * ga + eta3));
    let (cm, sm) = (cos(c - a - eta3), sin(c - a - eta3));
    let (cn, sn) = (cos(c + a + 2.0 * ga - eta3), sin(c + a + 2.0 * ga - eta3));

    let l1 = r().i(7, -c2c * cot2b).i(6, -s2c).i(5, c2c / s2bb);
    let l2 = r().i(7, -s2c * cot2b).i(6, c2c).i(5, s2c / s2bb);
    let l3 = r().i(7, 1.0);
    let l8 = r().i(8, 1.0);
    let l4 = r()
        .i(7, -sb / s2bb * cott * cp)
        .i(6, sb * cott * sp)
        .i(5, cot2b * sb * cott * cp)
        .i(5, -k * cb * cp)
        .i(4, -cb * sp)
        .i(3, 2.0 * cb / s2t * cp)
        .i(3, cot2be / st * sb * cq)
        .i(2, -sb / st * sq)
        .i(1, -sb / (st * s2be) * cq)
        .plus(-h * cb * cp, l8);
    let l5 = r()
        .i(7, -sb / s2bb * cott * sp)
        .i(6, -sb * cott * cp)
        .i(5, cot2b * sb * cott * sp)
        .i(5, -k * cb * sp)
        .i(4, cb * cp)
        .i(3, 2.0 * cb / s2t * sp)
        .i(3, cot2be / st * sb * sq)
        .i(2, sb / st * cq)
        .i(1, -sb / (st * s2be) * sq)
        .plus(-h * cb * sp, l8);
    let l6 = r()
        .i(7, cb / s2bb * cott * cm)
        .i(6, cb * cott * sm)
        .i(5, -cot2b * cb * cott * cm)
        .re(5, -k * sb * cm)
        .i(4, sb * sm)
        .i(3, 2.0 * sb / s2t * cm)
        .i(3, -cot2be / st * cb * cn)
        .i(2, -cb / st * sn)
        .i(1, cb / (st * s2be) * cn)
        .plus(-h * sb * cm, l8);
    let l7 = r()
        .i(7, -cb / s2bb * cott * sm)
        .i(6, cb * cott * cm)
        .i(5, cot2b * cb * cott * sm)
        .i(5, k * sb * sm)
        .i(4, sb * cm)
        .i(3, -2.0 * sb / s2t * sm)
        .i(3, cot2be / st * cb * sn)
        .i(2, -cb / st * cn)
        .i(1, -cb / (st * s2be) * sn)
        .plus(h * sb * sm, l8);

    [l1, l2, l3, l4, l5, l6, l7, l8].map(|r| r.0)
}

/// Left invariant one-form table, row `l` holding ω^{l+1} = Σ_k T_lk dx^k.
pub fn left_forms_table(p: &EulerAngles) -> ComplexTable {
    let Trig {
        al,
        be,
        ga,
        th,
        a,
        b,
        ..
    } = Trig::new(p);
    let r = Row::default;
    let (c2al, s2al) = (cos(2.0 * al), sin(2.0 * al));
    let (c2be, s2be) = (cos(2.0 * be), sin(2.0 * be));
    let (cb, sb) = (cos(be), sin(be));
    let (c2b, s2b) = (cos(2.0 * b), sin(2.0 * b));
    let (ct, st, s2t) = (cos(th), sin(th), sin(2.0 * th));
    let st2 = st * st;
    let hh = 1.0 - 0.5 * st2;
    let (cg, sg) = (cos(2.0 * a + 2.0 * ga), sin(2.0 * a + 2.0 * ga));
    let (cp, sp) = (cos(al + ga), sin(al + ga));
    let (cm, sm) = (cos(al - ga), sin(al - ga));
    let (cx, sx) = (cos(2.0 * a - al + ga), sin(2.0 * a - al + ga));
    let (cy, sy) = (cos(2.0 * a + al + ga), sin(2.0 * a + al + ga));
    let q = 0.5 * SQRT3;

    let w1 = r()
        .i(2, -s2al)
        .i(3, c2al * s2be)
        .i(5, c2al * s2be * hh)
        .i(6, -cg * ct * s2al)
        .i(6, -c2al * c2be * ct * sg)
        .i(7, c2al * c2be * cg * ct * s2b)
        .i(7, -ct * s2al * s2b * sg)
        .i(7, c2al * c2b * s2be * hh)
        .i(8, -q * c2al * s2be * st2);
    let w2 = r()
        .i(2, -c2al)
        .i(3, -s2al * s2be)
        .i(5, -s2al * s2be * hh)
        .i(6, -c2al * cg * ct)
        .i(6, c2be * ct * s2al * sg)
        .i(7, -c2be * cg * ct * s2al * s2b)
        .i(7, -c2al * ct * s2b * sg)
        .i(7, -c2b * s2al * s2be * hh)
        .i(8, q * s2al * s2be * st2);
    let w3 = r()
        .i(1, -1.0)
        .i(3, -c2be)
        .i(5, -c2be * hh)
        .i(6, -ct * s2be * sg)
        .i(7, cg * ct * s2b * s2be)
        .i(7, -c2b * c2be * hh)
        .i(8, q * c2be * 0.5 * st2);
    let w4 = r()
        .i(4, -cb * sp)
        .i(5, 0.5 * cb * cp * s2t)
        .i(6, sb * sx * st)
        .i(7, -cx * s2b * sb * st)
        .i(7, 0.5 * c2b * cb * cp * s2t)
        .i(8, q * cb * cp * s2t);
    let w5 = r()
        .i(4, -cb * cp)
        .i(5, -0.5 * cb * sp * s2t)
        .i(6, -cx * sb * st)
        .i(7, -s2b * sb * sx * st)
        .i(7, -0.5 * c2b * cb * sp * s2t)
        .i(8, -q * cb * sp * s2t);
    let w6 = r()
        .i(4, -sb * sm)
        .i(6, cb * sy * st)
        .i(5, -0.5 * cm * sb * s2t)
        .i(8, -q * cm * sb * s2t)
        .i(7, -cb * cy * s2b * st)
        .i(7, -0.5 * c2b * cm * sb * s2t);
    let w7 = r()
        .i(4, cm * sb)
        .i(5, -0.5 * sb * sm * s2t)
        .i(6, -cb * cy * st)
        .i(7, -cb * s2b * sy * st)
        .i(7, -0.5 * c2b * sb * sm * s2t)
        .i(8, -q * sb * sm * s2t);
    let w8 = r()
        .i(5, q * st2)
        .i(7, q * c2b * st2)
        .i(8, -(1.0 - 1.5 * st2));

    [w1, w2, w3, w4, w5, w6, w7, w8].map(|r| r.0)
}

/// Right invariant one-form table.
pub fn right_forms_table(p: &EulerAngles) -> ComplexTable {
    let Trig {
        be,
        ga,
        th,
        a,
        b,
        c,
        eta3,
        ..
    } = Trig::new(p);
    let r = Row::default;
    let (c2be, s2be) = (cos(2.0 * be), sin(2.0 * be));
    let (cb, sb) = (cos(b), sin(b));
    let (c2b, s2b) = (cos(2.0 * b), sin(2.0 * b));
    let (c2c, s2c) = (cos(2.0 * c), sin(2.0 * c));
    let (ct, st, s2t) = (cos(th), sin(th), sin(2.0 * th));
    let st2 = st * st;
    let hh = 1.0 - 0.5 * st2;
    let (cg, sg) = (cos(2.0 * a + 2.0 * ga), sin(2.0 * a + 2.0 * ga));
    let (cu, su) = (cos(a - c + 2.0 * ga - eta3), sin(a - c + 2.0 * ga - eta3));
    let (cv, sv) = (cos(a + c + eta3), sin(a + c + eta3));
    let (cw, sw) = (cos(a + c + 2.0 * ga - eta3), sin(a + c + 2.0 * ga - eta3));
    let (cz, sz) = (cos(a - c + eta3), sin(a - c + eta3));
    let q = 0.5 * SQRT3;

    let w1 = r()
        .i(1, c2b * c2c * cg * ct * s2be)
        .i(1, -ct * s2be * s2c * sg)
        .i(1, c2be * c2c * s2b * hh)
        .i(2, c2c * s2b * hh)
        .i(3, -cg * ct * s2c)
        .i(3, -c2b * c2c * ct * sg)
        .i(4, c2c * s2b * hh)
        .i(6, -s2c);
    let w2 = r()
        .i(1, -c2b * cg * ct * s2be * s2c)
        .i(1, -c2c * ct * s2be * sg)
        .i(1, -c2be * s2b * s2c * hh)
        .i(2, -s2b * s2c * hh)
        .i(3, -(c2c * cg * ct - c2b * ct * s2c * sg))
        .i(4, -s2b * s2c * hh)
        .re(6, c2c);
    let w3 = r()
        .i(1, cg * ct * s2b * s2be)
        .i(1, -c2b * c2be * hh)
        .i(2, -c2b * hh)
        .i(3, -ct * s2b * sg)
        .i(4, -c2b * hh)
        .re(7, 1.0);
    let w4 = r()
        .i(1, -cu * sb * s2be * st)
        .i(1, 0.5 * cb * c2be * cv * s2t)
        .i(2, 0.5 * cb * cv * s2t)
        .i(3, sb * st * su)
        .i(4, 0.5 * cb * cv * s2t)
        .re(5, -cb * sv);
    let w5 = r()
        .i(1, -sb * s2be * st * su)
        .i(1, -0.5 * cb * c2be * s2t * sv)
        .i(2, -0.5 * cb * s2t * sv)
        .i(3, -cu * sb * st)
        .i(4, -0.5 * cb * s2t * sv)
        .i(5, -cb * cv);
    let w6 = r()
        .i(1, -cb * cw * s2be * st)
        .i(1, -0.5 * c2be * cz * sb * s2t)
        .i(2, -0.5 * cz * sb * s2t)
        .i(3, -cb * st * sw)
        .i(4, -0.5 * cz * sb * s2t)
        .i(5, sb * sz);
    let w7 = r()
        .i(1, -cb * s2be * st * sw)
        .i(1, 0.5 * c2be * sb * s2t * sz)
        .i(2, 0.5 * sb * s2t * sz)
        .i(3, cb * cw * st)
        .i(4, 0.5 * sb * s2t * sz)
        .i(5, cz * sb);
    let w8 = r()
        .i(1, q * c2be * st2)
        .i(2, q * st2)
        .i(4, q * st2)
        .i(8, -1.0);

    [w1, w2, w3, w4, w5, w6, w7, w8].map(|r| r.0)
}

/// The printed λ1, λ2, λ3 coefficients of `(∂D/∂γ) D† / i`.
pub fn gamma_derivative_printed(p: &EulerAngles) -> [f64; 3] {
    let (a2, b2) = (2.0 * p.alpha, 2.0 * p.beta);
    [a2.cos() * b2.sin(), a2.sin() * p.beta.sin(), b2.cos()]
}

/// Exact tables in the same complex convention as the printed ones.
pub struct ExactTables {
    pub left_fields: ComplexTable,
    pub right_fields: ComplexTable,
    pub left_forms: ComplexTable,
    pub right_forms: ComplexTable,
    pub gamma_derivative: [f64; 3],
}

impl ExactTables {
    pub fn at(p: &EulerAngles) -> Result<Self> {
        let scale = |m: &crate::Mat8, s: Complex64| -> ComplexTable {
            std::array::from_fn(|i| std::array::from_fn(|j| s * m[(i, j)]))
        };
        let i = Complex64::new(0.0, 1.0);
        let b = left_coeffs(p);
        Ok(Self {
            left_fields: scale(&left_fields(p)?.m, i),
            right_fields: scale(&right_fields(p)?.m, i),
            left_forms: scale(&left_forms(p)?.m, -i),
            right_forms: scale(&right_forms(p)?.m, -i),
            gamma_derivative: [b.m[(0, 2)], b.m[(1, 2)], b.m[(2, 2)]],
        })
    }
}

/// Printed and exact tables at one point, with entrywise deviations.
pub struct AppendixEvaluation {
    pub point: EulerAngles,
    pub printed: BTreeMap<Table, Vec<Vec<Complex64>>>,
    pub deviation: BTreeMap<Table, Vec<Vec<f64>>>,
}

fn to_rows(t: &ComplexTable) -> Vec<Vec<Complex64>> {
    t.iter().map(|r| r.to_vec()).collect()
}

fn deviations(a: &ComplexTable, b: &ComplexTable) -> Vec<Vec<f64>> {
    (0..8)
        .map(|i| (0..8).map(|j| (a[i][j] - b[i][j]).norm()).collect())
        .collect()
}

/// Evaluates every printed table at `p` and compares it with the exact one.
pub fn appendix_closed_forms(p: &EulerAngles) -> Result<AppendixEvaluation> {
    let exact = ExactTables::at(p)?;
    let lf = left_fields_table(p);
    let rf = right_fields_table(p);
    let lw = left_forms_table(p);
    let rw = right_forms_table(p);
    let g = gamma_derivative_printed(p);

    let mut printed = BTreeMap::new();
    let mut deviation = BTreeMap::new();
    printed.insert(Table::LeftFields, to_rows(&lf));
    printed.insert(Table::RightFields, to_rows(&rf));
    printed.insert(Table::LeftForms, to_rows(&lw));
    printed.insert(Table::RightForms, to_rows(&rw));
    printed.insert(
        Table::GammaDerivative,
        vec![g.iter().map(|&x| Complex64::new(x, 0.0)).collect()],
    );
    deviation.insert(Table::LeftFields, deviations(&lf, &exact.left_fields));
    deviation.insert(Table::RightFields, deviations(&rf, &exact.right_fields));
    deviation.insert(Table::LeftForms, deviations(&lw, &exact.left_forms));
    deviation.insert(Table::RightForms, deviations(&rw, &exact.right_forms));
    deviation.insert(
        Table::GammaDerivative,
        vec![(0..3)
            .map(|k| (g[k] - exact.gamma_derivative[k]).abs())
            .collect()],
    );
    Ok(AppendixEvaluation {
        point: *p,
        printed,
        deviation,
    })
}

/// One printed coefficient that disagrees with the exact construction.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Discrepancy {
    pub table: Table,
    pub row: usize,
    pub col: usize,
    pub label: String,
    pub max_deviation: f64,
}

/// Aggregated audit over several probe points.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct AppendixAudit {
    pub points: usize,
    pub tol: f64,
    /// Worst deviation over entries that agree.
    pub max_agreeing_deviation: f64,
    pub entries_checked: usize,
    pub discrepancies: Vec<Discrepancy>,
}

impl AppendixAudit {
    /// `(table, row, col)` keys of the flagged entries.
    pub fn catalogue(&self) -> Vec<(Table, usize, usize)> {
        self.discrepancies
            .iter()
            .map(|d| (d.table, d.row, d.col))
            .collect()
    }

    /// Rows of `table` with no flagged entry.
    pub fn clean_rows(&self, table: Table) -> Vec<usize> {
        let rows = if table == Table::GammaDerivative {
            1
        } else {
            8
        };
        (0..rows)
            .filter(|&r| {
                !self
                    .discrepancies
                    .iter()
                    .any(|d| d.table == table && d.row == r)
            })
            .collect()
    }
}

/// Entries whose worst deviation over `points` exceeds `tol`.
pub fn audit(points: &[EulerAngles], tol: f64) -> Result<AppendixAudit> {
    let mut worst: BTreeMap<(Table, usize, usize), f64> = BTreeMap::new();
    for p in points {
        let eval = appendix_closed_forms(p)?;
        for (table, rows) in &eval.deviation {
            for (i, row) in rows.iter().enumerate() {
                for (j, &d) in row.iter().enumerate() {
                    let w = worst.entry((*table, i, j)).or_insert(0.0);
                    *w = w.max(d);
                }
            }
        }
    }
    let mut discrepancies = Vec::new();
    let mut max_agreeing_deviation = 0.0f64;
    for (&(table, row, col), &d) in &worst {
        if d > tol {
            discrepancies.push(Discrepancy {
                table,
                row,
                col,
                label: format!("{} {}", table.row_label(row), table.col_label(col)),
                max_deviation: d,
            });
        } else {
            max_agreeing_deviation = max_agreeing_deviation.max(d);
        }
    }
    Ok(AppendixAudit {
        points: points.len(),
        tol,
        max_agreeing_deviation,
        entries_checked: worst.len(),
        discrepancies,
    })
}

/// Probe points away from every degenerate stratum: β, b, θ in
/// [0.15, π/2 − 0.15], the remaining angles anywhere in the classical box.
pub fn probe_points(seed: u64, n: usize) -> Vec<EulerAngles> {
    use rand::{Rng, SeedableRng};
    use std::f64::consts::{FRAC_PI_2, PI};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let margin = 0.15;
    (0..n)
        .map(|_| {
            let mut inner = || rng.random_range(margin..FRAC_PI_2 - margin);
            let (beta, b, theta) = (inner(), inner(), inner());
            EulerAngles {
                alpha: rng.random_range(0.0..PI),
                beta,
                gamma: rng.random_range(0.0..PI),
                theta,
                a: rng.random_range(0.0..PI),
                b,
                c: rng.random_range(0.0..PI),
                phi: rng.random_range(0.0..SQRT3 * PI),
            }
        })
        .collect()
}
