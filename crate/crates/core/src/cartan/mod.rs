//! Maurer–Cartan data in Euler coordinates.
//!
//! Differentiating the chart product with respect to coordinate `j` pulls a
//! generator out of its factor; moving it to the left (or right) edge of the
//! product conjugates it by the partial product on that side:
//!
//! ```text
//! (∂_j D) D† = i P_j λ_{g(j)} P_j†     P_j = F_1 ⋯ F_{j−1}
//! D† (∂_j D) = i Q_j† λ_{g(j)} Q_j     Q_j = F_j ⋯ F_8
//! ```
//!
//! Expanding the conjugated generator in the Gell-Mann basis gives the real
//! coefficient matrix `b` exactly, without series resummation.
//!
//! All [`CoeffMatrix`] values are stored real with rows indexed by algebra
//! label and columns by chart coordinate. The factors of `i` live at the
//! operator boundary: a field row `A_i` stands for `Λ_i = i A_i^j ∂_j` and a
//! form row `W^l` for `ω^l = −i W^l_k dx^k`.

pub mod appendix;

use std::fmt;
use std::io::Write;

use serde::{Deserialize, Serialize};

use crate::algebra::{expand_unchecked, GellMannBasis};
use crate::error::{Error, Result};
use crate::group::{adjoint, compose, factors, Coord, EulerAngles, CHART_GENERATORS};
use crate::{Mat3, Mat8};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Handedness {
    Left,
    Right,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CoeffKind {
    /// `b`: column `j` expands the derivative along coordinate `j`.
    Coefficients,
    /// `A = (bᵀ)⁻¹`: row `i` is the vector field paired with λ_i.
    Fields,
    /// `W = b`: row `l` is the one-form dual to field `l`.
    Forms,
}

impl fmt::Display for Handedness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Handedness::Left => "left",
            Handedness::Right => "right",
        })
    }
}

impl fmt::Display for CoeffKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CoeffKind::Coefficients => "coefficients",
            CoeffKind::Fields => "fields",
            CoeffKind::Forms => "forms",
        })
    }
}

/// Real 8×8 table, row = algebra index, column = chart coordinate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoeffMatrix {
    pub m: Mat8,
    pub handedness: Handedness,
    pub kind: CoeffKind,
}

impl CoeffMatrix {
    pub fn row(&self, i: usize) -> [f64; 8] {
        std::array::from_fn(|j| self.m[(i, j)])
    }

    pub fn is_finite(&self) -> bool {
        self.m.iter().all(|x| x.is_finite())
    }

    /// Writes the table as CSV: a header of coordinate names, then one row
    /// per algebra index.
    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(Coord::ALL.iter().map(|c| c.name()))?;
        for i in 0..8 {
            w.write_record(self.row(i).iter().map(|x| format!("{x:.17e}")))?;
        }
        w.flush()?;
        Ok(())
    }
}

/// Both frames at one chart point.
#[derive(Debug, Clone)]
pub struct FrameAtPoint {
    pub point: EulerAngles,
    pub b_left: CoeffMatrix,
    pub a_left: CoeffMatrix,
    pub b_right: CoeffMatrix,
    pub a_right: CoeffMatrix,
}

impl FrameAtPoint {
    pub fn new(p: &EulerAngles) -> Result<Self> {
        Ok(Self {
            point: *p,
            b_left: left_coeffs(p),
            a_left: left_fields(p)?,
            b_right: right_coeffs(p),
            a_right: right_fields(p)?,
        })
    }

    /// Max deviation of the form/field pairing from the identity, both hands.
    pub fn duality_residual(&self) -> f64 {
        let left = self.b_left.m * self.a_left.m.transpose() - Mat8::identity();
        let right = self.b_right.m * self.a_right.m.transpose() - Mat8::identity();
        left.abs().max().max(right.abs().max())
    }

    /// Max deviation of `A_right = R·A_left`.
    pub fn adjoint_residual(&self) -> f64 {
        let r = adjoint(&compose(&self.point));
        (self.a_right.m - r * self.a_left.m).abs().max()
    }
}

fn coefficients(
    p: &EulerAngles,
    handedness: Handedness,
    conjugated: impl Fn(&[Mat3; 8], usize, &Mat3) -> Mat3,
) -> CoeffMatrix {
    let f = factors(p);
    let basis = GellMannBasis::get();
    let mut m = Mat8::zeros();
    for j in 0..8 {
        let lambda = &basis[CHART_GENERATORS[j] - 1];
        let (re, _) = expand_unchecked(&conjugated(&f, j, lambda));
        for i in 0..8 {
            m[(i, j)] = re[i];
        }
    }
    CoeffMatrix {
        m,
        handedness,
        kind: CoeffKind::Coefficients,
    }
}

/// `b` with `(∂_j D) D† = i Σ_i b_ij λ_i`.
pub fn left_coeffs(p: &EulerAngles) -> CoeffMatrix {
    coefficients(p, Handedness::Left, |f, j, lambda| {
        let pre = f[..j].iter().fold(Mat3::identity(), |acc, x| acc * x);
        pre * lambda * pre.adjoint()
    })
}

/// `c` with `D† (∂_j D) = i Σ_i c_ij λ_i`.
pub fn right_coeffs(p: &EulerAngles) -> CoeffMatrix {
    coefficients(p, Handedness::Right, |f, j, lambda| {
        let post = f[j..].iter().fold(Mat3::identity(), |acc, x| acc * x);
        post.adjoint() * lambda * post
    })
}

/// Rejects points where the Haar density vanishes, naming the factor.
pub fn check_regular(p: &EulerAngles) -> Result<()> {
    const EPS: f64 = 1e-9;
    let factors = [
        ("sin 2β", (2.0 * p.beta).sin()),
        ("sin 2b", (2.0 * p.b).sin()),
        ("sin θ", p.theta.sin()),
        ("sin 2θ", (2.0 * p.theta).sin()),
    ];
    for (factor, value) in factors {
        if value.abs() < EPS {
            return Err(Error::DegenerateStratum { factor, value });
        }
    }
    Ok(())
}

fn invert_transpose(b: &CoeffMatrix) -> Result<Mat8> {
    b.m.transpose()
        .try_inverse()
        .ok_or_else(|| Error::DegenerateStratum {
            factor: "det b",
            value: b.m.determinant(),
        })
}

/// Field coefficients `A` with `Λ_i = i A_i^j ∂_j` and `Λ_i D = −λ_i D`.
pub fn left_fields(p: &EulerAngles) -> Result<CoeffMatrix> {
    check_regular(p)?;
    let m = invert_transpose(&left_coeffs(p))?;
    Ok(CoeffMatrix {
        m,
        handedness: Handedness::Left,
        kind: CoeffKind::Fields,
    })
}

/// Field coefficients with `Λ^r_i D = −D λ_i`.
pub fn right_fields(p: &EulerAngles) -> Result<CoeffMatrix> {
    check_regular(p)?;
    let m = invert_transpose(&right_coeffs(p))?;
    Ok(CoeffMatrix {
        m,
        handedness: Handedness::Right,
        kind: CoeffKind::Fields,
    })
}

fn forms(b: CoeffMatrix, p: &EulerAngles) -> Result<CoeffMatrix> {
    check_regular(p)?;
    Ok(CoeffMatrix {
        kind: CoeffKind::Forms,
        ..b
    })
}

/// One-form coefficients `W` with `ω^l = −i W^l_k dx^k`, dual to [`left_fields`].
pub fn left_forms(p: &EulerAngles) -> Result<CoeffMatrix> {
    forms(left_coeffs(p), p)
}

/// One-form coefficients dual to [`right_fields`].
pub fn right_forms(p: &EulerAngles) -> Result<CoeffMatrix> {
    forms(right_coeffs(p), p)
}

/// `|det b_left| = HAAR_DET_SCALE · sin2β sin2b sin2θ sin²θ`.
pub const HAAR_DET_SCALE: f64 = 0.5;

/// Haar density in chart coordinates, `sin2β sin2b sin2θ sin²θ` up to sign,
/// computed from the determinant of the exact coefficient matrix.
pub fn haar_density(p: &EulerAngles) -> f64 {
    left_coeffs(p).m.determinant().abs() / HAAR_DET_SCALE
}

/// Same density from the right-handed coefficients.
pub fn haar_density_right(p: &EulerAngles) -> f64 {
    right_coeffs(p).m.determinant().abs() / HAAR_DET_SCALE
}

/// The closed-form density.
pub fn haar_density_closed_form(p: &EulerAngles) -> f64 {
    (2.0 * p.beta).sin() * (2.0 * p.b).sin() * (2.0 * p.theta).sin() * p.theta.sin().powi(2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_PI_4, PI};

    fn generic() -> EulerAngles {
        EulerAngles::from_array([0.3, 0.5, 1.1, 0.9, 0.2, 0.7, 0.4, 1.3])
    }

    #[test]
    fn alpha_column_is_lambda3() {
        let b = left_coeffs(&generic());
        for i in 0..8 {
            let want = if i == 2 { 1.0 } else { 0.0 };
            assert!((b.m[(i, 0)] - want).abs() < 1e-15);
        }
    }

    #[test]
    fn gamma_column_matches_conjugated_lambda3() {
        let p = generic();
        let b = left_coeffs(&p);
        let (a2, b2) = (2.0 * p.alpha, 2.0 * p.beta);
        assert!((b.m[(0, 2)] + a2.cos() * b2.sin()).abs() < 1e-15);
        assert!((b.m[(1, 2)] - a2.sin() * b2.sin()).abs() < 1e-15);
        assert!((b.m[(2, 2)] - b2.cos()).abs() < 1e-15);
    }

    #[test]
    fn right_c_and_phi_columns() {
        let c = right_coeffs(&generic());
        for i in 0..8 {
            let e3 = if i == 2 { 1.0 } else { 0.0 };
            let e8 = if i == 7 { 1.0 } else { 0.0 };
            assert!((c.m[(i, 6)] - e3).abs() < 1e-15);
            assert!((c.m[(i, 7)] - e8).abs() < 1e-15);
        }
    }

    #[test]
    fn field_rows_three_and_eight() {
        let p = generic();
        let a = left_fields(&p).unwrap();
        let s3 = 3f64.sqrt();
        let l3 = [1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0];
        let l8 = [0.0, 0.0, s3, 0.0, -s3, 0.0, 0.0, 1.0];
        for j in 0..8 {
            assert!((a.m[(2, j)] - l3[j]).abs() < 1e-13);
            assert!((a.m[(7, j)] - l8[j]).abs() < 1e-13);
        }
        let ar = right_fields(&p).unwrap();
        for j in 0..8 {
            assert!((ar.m[(2, j)] - if j == 6 { 1.0 } else { 0.0 }).abs() < 1e-13);
            assert!((ar.m[(7, j)] - if j == 7 { 1.0 } else { 0.0 }).abs() < 1e-13);
        }
    }

    #[test]
    fn forms_pair_with_fields() {
        let frame = FrameAtPoint::new(&generic()).unwrap();
        assert!(frame.duality_residual() < 1e-12);
        assert!(frame.adjoint_residual() < 1e-12);
        let w = left_forms(&generic()).unwrap();
        assert!((w.m[(2, 0)] - 1.0).abs() < 1e-15);
    }

    #[test]
    fn density_spot_values() {
        let p = EulerAngles::default()
            .with(Coord::Beta, FRAC_PI_4)
            .with(Coord::B, FRAC_PI_4)
            .with(Coord::Theta, FRAC_PI_4);
        assert!((haar_density(&p) - 0.5).abs() < 1e-14);
        assert!((haar_density_right(&p) - 0.5).abs() < 1e-14);
        assert!(haar_density(&generic().with(Coord::Theta, 0.0)) < 1e-15);
        assert!((haar_density(&generic()) - haar_density_closed_form(&generic())).abs() < 1e-14);
    }

    #[test]
    fn degenerate_points_are_rejected() {
        let err = left_fields(&generic().with(Coord::Beta, 0.0)).unwrap_err();
        assert!(matches!(
            err,
            Error::DegenerateStratum {
                factor: "sin 2β",
                ..
            }
        ));
        let err = right_forms(&generic().with(Coord::Theta, PI / 2.0)).unwrap_err();
        assert!(matches!(
            err,
            Error::DegenerateStratum {
                factor: "sin 2θ",
                ..
            }
        ));
    }

    #[test]
    fn csv_layout() {
        let mut buf = Vec::new();
        left_coeffs(&generic()).write_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<_> = text.lines().collect();
        assert_eq!(lines[0], "alpha,beta,gamma,theta,a,b,c,phi");
        assert_eq!(lines.len(), 9);
        assert!(lines[3].starts_with("1.00000000000000000e0,"));
    }
}
