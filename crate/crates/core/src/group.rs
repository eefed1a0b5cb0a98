//! SU(3) elements, the Euler-coordinate chart and its inverse, and the
//! adjoint representation.

use std::f64::consts::{FRAC_PI_2, PI};
use std::fmt;
use std::ops::Mul;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::algebra::{max_abs, trace_product, GellMannBasis};
use crate::domain::{wrap, ClassicalBox, CoveringBox, FundamentalDomain};
use crate::error::{Error, Result};
use crate::{Mat3, Mat8, SQRT3};

/// Chart coordinate, in the order the factors appear in the product.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Coord {
    Alpha,
    Beta,
    Gamma,
    Theta,
    A,
    B,
    C,
    Phi,
}

impl Coord {
    pub const ALL: [Coord; 8] = [
        Coord::Alpha,
        Coord::Beta,
        Coord::Gamma,
        Coord::Theta,
        Coord::A,
        Coord::B,
        Coord::C,
        Coord::Phi,
    ];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn name(self) -> &'static str {
        match self {
            Coord::Alpha => "alpha",
            Coord::Beta => "beta",
            Coord::Gamma => "gamma",
            Coord::Theta => "theta",
            Coord::A => "a",
            Coord::B => "b",
            Coord::C => "c",
            Coord::Phi => "phi",
        }
    }

    pub fn from_name(name: &str) -> Option<Coord> {
        Coord::ALL.into_iter().find(|c| c.name() == name)
    }

    /// Gell-Mann label (1..=8) of the generator exponentiated by this coordinate.
    pub fn generator(self) -> usize {
        CHART_GENERATORS[self.index()]
    }
}

impl fmt::Display for Coord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Generator labels of the eight chart factors.
pub const CHART_GENERATORS: [usize; 8] = [3, 2, 3, 5, 3, 2, 3, 8];

/// The eight chart coordinates in radians.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct EulerAngles {
    pub alpha: f64,
    pub beta: f64,
    pub gamma: f64,
    pub theta: f64,
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub phi: f64,
}

impl EulerAngles {
    pub fn from_array(x: [f64; 8]) -> Self {
        Self {
            alpha: x[0],
            beta: x[1],
            gamma: x[2],
            theta: x[3],
            a: x[4],
            b: x[5],
            c: x[6],
            phi: x[7],
        }
    }

    pub fn to_array(&self) -> [f64; 8] {
        [
            self.alpha, self.beta, self.gamma, self.theta, self.a, self.b, self.c, self.phi,
        ]
    }

    pub fn get(&self, coord: Coord) -> f64 {
        self.to_array()[coord.index()]
    }

    pub fn with(&self, coord: Coord, value: f64) -> Self {
        let mut x = self.to_array();
        x[coord.index()] = value;
        Self::from_array(x)
    }

    /// `self + t·dir`, coordinatewise.
    pub fn offset(&self, dir: &[f64; 8], t: f64) -> Self {
        let x = self.to_array();
        Self::from_array(std::array::from_fn(|k| x[k] + t * dir[k]))
    }

    /// η = φ/√3.
    pub fn eta(&self) -> f64 {
        self.phi / SQRT3
    }

    pub fn is_finite(&self) -> bool {
        self.to_array().iter().all(|x| x.is_finite())
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        let (x, y) = (self.to_array(), other.to_array());
        x.iter()
            .zip(y.iter())
            .map(|(p, q)| (p - q).abs())
            .fold(0.0, f64::max)
    }
}

/// A 3×3 special unitary matrix.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GroupElement {
    u: Mat3,
}

impl GroupElement {
    pub const INVARIANT_TOL: f64 = 1e-12;

    pub fn identity() -> Self {
        Self {
            u: Mat3::identity(),
        }
    }

    /// Validates `u†u = 𝟙` and `det u = 1` to [`Self::INVARIANT_TOL`].
    pub fn new(u: Mat3) -> Result<Self> {
        Self::new_with_tol(u, Self::INVARIANT_TOL)
    }

    pub fn new_with_tol(u: Mat3, tol: f64) -> Result<Self> {
        let unitarity = unitarity_residual(&u);
        let determinant = (u.determinant() - Complex64::new(1.0, 0.0)).norm();
        if !(unitarity <= tol && determinant <= tol) {
            return Err(Error::NotSpecialUnitary {
                unitarity,
                determinant,
            });
        }
        Ok(Self { u })
    }

    pub fn matrix(&self) -> &Mat3 {
        &self.u
    }

    pub fn inverse(&self) -> Self {
        Self {
            u: self.u.adjoint(),
        }
    }

    pub fn unitarity_residual(&self) -> f64 {
        unitarity_residual(&self.u)
    }

    pub fn determinant_residual(&self) -> f64 {
        (self.u.determinant() - Complex64::new(1.0, 0.0)).norm()
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        max_abs(&(self.u - other.u))
    }

    pub fn adjoint(&self) -> Mat8 {
        adjoint(self)
    }
}

impl Mul for GroupElement {
    type Output = GroupElement;
    fn mul(self, rhs: GroupElement) -> GroupElement {
        GroupElement { u: self.u * rhs.u }
    }
}

impl Mul for &GroupElement {
    type Output = GroupElement;
    fn mul(self, rhs: &GroupElement) -> GroupElement {
        GroupElement { u: self.u * rhs.u }
    }
}

fn unitarity_residual(u: &Mat3) -> f64 {
    max_abs(&(u.adjoint() * u - Mat3::identity()))
}

/// `exp(i λ_k t)` in closed form, `k` a Gell-Mann label in `1..=8`.
///
/// λ3 and λ8 are diagonal. Every off-diagonal generator squares to a rank-2
/// projector `P`, so `exp(iλt) = 𝟙 + (cos t − 1)P + i sin t λ`.
pub fn exp_generator(k: usize, t: f64) -> GroupElement {
    assert!(
        (1..=8).contains(&k),
        "generator label {k} out of range 1..=8"
    );
    let cis = |x: f64| Complex64::from_polar(1.0, x);
    let u = match k {
        3 => Mat3::from_diagonal(&nalgebra::Vector3::new(cis(t), cis(-t), cis(0.0))),
        8 => {
            let s = t / SQRT3;
            Mat3::from_diagonal(&nalgebra::Vector3::new(cis(s), cis(s), cis(-2.0 * s)))
        }
        _ => {
            let l = &GellMannBasis::get()[k - 1];
            let p = l * l;
            Mat3::identity()
                + p * Complex64::new(t.cos() - 1.0, 0.0)
                + l * Complex64::new(0.0, t.sin())
        }
    };
    GroupElement { u }
}

/// The eight chart factors of `D(angles)` in product order.
pub fn factors(angles: &EulerAngles) -> [Mat3; 8] {
    let x = angles.to_array();
    std::array::from_fn(|k| exp_generator(CHART_GENERATORS[k], x[k]).u)
}

/// The ordered product of the eight chart factors.
pub fn compose(angles: &EulerAngles) -> GroupElement {
    let u = factors(angles)
        .iter()
        .fold(Mat3::identity(), |acc, f| acc * f);
    GroupElement { u }
}

/// Degenerate chart strata, where some angles become gauge.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Stratum {
    /// sin θ = 0: β, α and γ are gauge; set to zero.
    ThetaZero,
    /// cos θ = 0: the overall λ8 phase is gauge; φ set to zero.
    ThetaHalfPi,
    /// sin β = 0: only α+γ is determined; α set to zero.
    BetaZero,
    /// cos β = 0: only γ−α is determined; α set to zero.
    BetaHalfPi,
    /// sin b = 0: only a+c is determined; a set to zero.
    BZero,
    /// cos b = 0: only a−c is determined; a set to zero.
    BHalfPi,
}

/// Output of [`decompose`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Decomposition {
    pub angles: EulerAngles,
    pub strata: Vec<Stratum>,
    /// True when the angles also lie in the classical box (γ < π and φ < √3π).
    pub in_classical_box: bool,
}

/// Magnitude below which a matrix entry is treated as zero by [`decompose`].
pub const STRATUM_EPS: f64 = 1e-9;

/// Inverts the chart.
///
/// Angles are returned in the covering domain (see [`CoveringBox`]), which
/// maps onto the whole group; `in_classical_box` reports whether they also fall
/// in the narrower classical ranges. On degenerate strata the gauge angles are
/// zeroed and their freedom folded into their partners, so
/// `compose(decompose(g))` reproduces `g` everywhere.
pub fn decompose(g: &GroupElement) -> Decomposition {
    let u = g.matrix();
    let mut strata = Vec::new();

    let (p1, p2, p3) = (u[(0, 2)], u[(1, 2)], u[(2, 2)]);
    let (r1, r2, r3) = (p1.norm(), p2.norm(), p3.norm());
    let sin_theta = r1.hypot(r2);
    let theta = sin_theta.atan2(r3);

    let mut phi = 0.0;
    if r3 < STRATUM_EPS {
        strata.push(Stratum::ThetaHalfPi);
    } else {
        phi = wrap(-0.5 * SQRT3 * p3.arg(), SQRT3 * PI);
    }
    let unphase = Complex64::from_polar(1.0, 2.0 * phi / SQRT3);

    let (mut alpha, mut beta, mut gamma) = (0.0, 0.0, 0.0);
    if sin_theta < STRATUM_EPS {
        strata.push(Stratum::ThetaZero);
    } else {
        beta = r2.atan2(r1);
        let sum = (r1 >= STRATUM_EPS).then(|| (p1 * unphase).arg());
        let diff = (r2 >= STRATUM_EPS).then(|| (-p2 * unphase).arg());
        match (sum, diff) {
            (Some(s), Some(d)) => {
                alpha = wrap(0.5 * (s - d), PI);
                gamma = wrap(s - alpha, 2.0 * PI);
            }
            (Some(s), None) => {
                strata.push(Stratum::BetaZero);
                beta = 0.0;
                gamma = wrap(s, 2.0 * PI);
            }
            (None, Some(d)) => {
                strata.push(Stratum::BetaHalfPi);
                beta = FRAC_PI_2;
                gamma = wrap(d, 2.0 * PI);
            }
            (None, None) => unreachable!("sin θ > 0 implies a nonzero component"),
        }
    }

    let left = exp_generator(3, alpha).u
        * exp_generator(2, beta).u
        * exp_generator(3, gamma).u
        * exp_generator(5, theta).u;
    let residual = left.adjoint() * u * exp_generator(8, -phi).u;

    let (p, q) = (residual[(0, 0)], residual[(0, 1)]);
    let b = q.norm().atan2(p.norm());
    let mut b_out = b;
    let (a, mut c) = match (p.norm() >= STRATUM_EPS, q.norm() >= STRATUM_EPS) {
        (true, true) => {
            let (sum, diff) = (p.arg(), q.arg());
            let a = wrap(0.5 * (sum + diff), PI);
            (a, wrap(sum - a, 2.0 * PI))
        }
        (true, false) => {
            strata.push(Stratum::BZero);
            b_out = 0.0;
            (0.0, wrap(p.arg(), 2.0 * PI))
        }
        (false, true) => {
            strata.push(Stratum::BHalfPi);
            b_out = FRAC_PI_2;
            (0.0, wrap(-q.arg(), 2.0 * PI))
        }
        (false, false) => unreachable!("residual block is unitary"),
    };
    // e^{iλ3π} and e^{iλ8√3π} coincide on the stabiliser block, so a half
    // turn of c is traded for a half period of φ.
    if c >= PI {
        c -= PI;
        phi += SQRT3 * PI;
    }

    let angles = EulerAngles {
        alpha,
        beta,
        gamma,
        theta,
        a,
        b: b_out,
        c,
        phi,
    };
    debug_assert!(CoveringBox.contains(&angles));
    Decomposition {
        in_classical_box: ClassicalBox.contains(&angles),
        angles,
        strata,
    }
}

/// Adjoint representation `R_ij = Tr(g λ_i g† λ_j)/2`.
pub fn adjoint(g: &GroupElement) -> Mat8 {
    let basis = GellMannBasis::get();
    let gd = g.u.adjoint();
    let conj: [Mat3; 8] = std::array::from_fn(|i| g.u * basis[i] * gd);
    Mat8::from_fn(|i, j| 0.5 * trace_product(&conj[i], &basis[j]).re)
}
