//! Independent reference computations used to cross-check the fast paths:
//! a generic matrix exponential, central finite differences of the chart,
//! and group elements drawn without reference to the chart.
//!
//! Nothing in here is called by the library's own computations.

use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;

use crate::algebra::{max_abs, GellMannBasis, StructureTensors};
use crate::cartan::{left_fields, right_fields, Handedness};
use crate::error::Result;
use crate::group::{compose, EulerAngles, GroupElement};
use crate::states::psi_of;
use crate::{Mat3, Mat8};

/// Default central-difference step.
pub const FD_STEP: f64 = 1e-6;

/// Scaling-and-squaring matrix exponential with a degree-18 Taylor core.
pub fn expm(m: &Mat3) -> Mat3 {
    let norm = max_abs(m) * 3.0;
    let squarings = if norm > 0.5 {
        (norm / 0.5).log2().ceil() as i32
    } else {
        0
    };
    let scaled = m * Complex64::new(0.5f64.powi(squarings), 0.0);

    let mut term = Mat3::identity();
    let mut sum = Mat3::identity();
    for k in 1..=18 {
        term = term * scaled * Complex64::new(1.0 / k as f64, 0.0);
        sum += term;
    }
    for _ in 0..squarings {
        sum = sum * sum;
    }
    sum
}

/// `(D(p + h·dir) − D(p − h·dir)) / 2h`.
pub fn directional_derivative(p: &EulerAngles, dir: &[f64; 8], h: f64) -> Mat3 {
    let plus = compose(&p.offset(dir, h));
    let minus = compose(&p.offset(dir, -h));
    (plus.matrix() - minus.matrix()) * Complex64::new(0.5 / h, 0.0)
}

/// Central difference of an 8-vector-valued function along coordinate `k`.
pub fn partial<F>(f: F, p: &EulerAngles, k: usize, h: f64) -> [f64; 8]
where
    F: Fn(&EulerAngles) -> [f64; 8],
{
    let mut dir = [0.0; 8];
    dir[k] = 1.0;
    let plus = f(&p.offset(&dir, h));
    let minus = f(&p.offset(&dir, -h));
    std::array::from_fn(|i| (plus[i] - minus[i]) / (2.0 * h))
}

/// A Haar-distributed SU(3) element from Gram–Schmidt on a complex Ginibre
/// matrix, with the column phases fixed by the diagonal of R and the
/// determinant phase divided out.
pub fn random_special_unitary<R: Rng + ?Sized>(rng: &mut R) -> GroupElement {
    let mut z = Mat3::from_fn(|_, _| {
        Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
    });
    for j in 0..3 {
        for k in 0..j {
            let proj: Complex64 = (0..3).map(|r| z[(r, k)].conj() * z[(r, j)]).sum();
            for r in 0..3 {
                let v = z[(r, k)];
                z[(r, j)] -= proj * v;
            }
        }
        let norm: f64 = (0..3).map(|r| z[(r, j)].norm_sqr()).sum::<f64>().sqrt();
        for r in 0..3 {
            z[(r, j)] /= norm;
        }
    }
    let det = z.determinant();
    let fix = Complex64::from_polar(1.0, -det.arg() / 3.0);
    GroupElement::new_with_tol(z * fix, 1e-12).expect("Gram-Schmidt output is special unitary")
}

/// Worst entry of `A_i·∂D − iλ_i D` (left) or `A^r_i·∂D − iDλ_i` (right)
/// over all eight fields, with derivatives by central differences.
pub fn defining_relation_residual(p: &EulerAngles, hand: Handedness, h: f64) -> Result<f64> {
    let a = match hand {
        Handedness::Left => left_fields(p)?,
        Handedness::Right => right_fields(p)?,
    };
    let d = *compose(p).matrix();
    let i = Complex64::new(0.0, 1.0);
    let basis = GellMannBasis::get();
    let mut worst = 0.0f64;
    for k in 0..8 {
        let dir = a.row(k);
        let lhs = directional_derivative(p, &dir, h);
        let rhs = match hand {
            Handedness::Left => basis[k] * d * i,
            Handedness::Right => d * basis[k] * i,
        };
        worst = worst.max(max_abs(&(lhs - rhs)));
    }
    Ok(worst)
}

fn field_matrix(p: &EulerAngles, hand: Handedness) -> Result<Mat8> {
    Ok(match hand {
        Handedness::Left => left_fields(p)?.m,
        Handedness::Right => right_fields(p)?.m,
    })
}

/// Field coefficients at `p` and their partial derivatives along each
/// coordinate, `(A, [∂_0 A, …, ∂_7 A])`.
fn field_jet(p: &EulerAngles, hand: Handedness, h: f64) -> Result<(Mat8, [Mat8; 8])> {
    let a = field_matrix(p, hand)?;
    let mut da = [Mat8::zeros(); 8];
    for (m, slot) in da.iter_mut().enumerate() {
        let mut dir = [0.0; 8];
        dir[m] = 1.0;
        let plus = field_matrix(&p.offset(&dir, h), hand)?;
        let minus = field_matrix(&p.offset(&dir, -h), hand)?;
        *slot = (plus - minus) / (2.0 * h);
    }
    Ok((a, da))
}

/// Components of the Lie bracket of two real vector fields `X = x·∂`,
/// `Y = y·∂`: `[X, Y]^k = X^m ∂_m Y^k − Y^m ∂_m X^k`.
fn bracket(x: (&Mat8, &[Mat8; 8], usize), y: (&Mat8, &[Mat8; 8], usize)) -> [f64; 8] {
    let (xa, xd, i) = x;
    let (ya, yd, j) = y;
    std::array::from_fn(|k| {
        (0..8)
            .map(|m| xa[(i, m)] * yd[m][(j, k)] - ya[(j, m)] * xd[m][(i, k)])
            .sum()
    })
}

/// Worst deviations from the closure relations of the real fields
/// `X_i = A_i·∂`: `[X_i, X_j] = C_ijk X_k` on the left, `−C_ijk X^r_k` on the
/// right, and `[X_i, X^r_j] = 0`.
#[derive(Debug, Clone, Copy, serde::Serialize)]
pub struct ClosureResiduals {
    pub left: f64,
    pub right: f64,
    pub mixed: f64,
}

impl ClosureResiduals {
    pub fn max(&self) -> f64 {
        self.left.max(self.right).max(self.mixed)
    }
}

pub fn closure_residuals(p: &EulerAngles, h: f64) -> Result<ClosureResiduals> {
    let (al, dl) = field_jet(p, Handedness::Left, h)?;
    let (ar, dr) = field_jet(p, Handedness::Right, h)?;
    let c = &StructureTensors::get().c;
    let mut out = ClosureResiduals {
        left: 0.0,
        right: 0.0,
        mixed: 0.0,
    };
    for i in 0..8 {
        for j in 0..8 {
            let ll = bracket((&al, &dl, i), (&al, &dl, j));
            let rr = bracket((&ar, &dr, i), (&ar, &dr, j));
            let lr = bracket((&al, &dl, i), (&ar, &dr, j));
            for k in 0..8 {
                let want_l: f64 = (0..8).map(|n| c[i][j][n] * al[(n, k)]).sum();
                let want_r: f64 = (0..8).map(|n| -c[i][j][n] * ar[(n, k)]).sum();
                out.left = out.left.max((ll[k] - want_l).abs());
                out.right = out.right.max((rr[k] - want_r).abs());
                out.mixed = out.mixed.max(lr[k].abs());
            }
        }
    }
    Ok(out)
}

/// `−i ψ†∂_k ψ` by central differences of the state.
pub fn connection_from_states(p: &EulerAngles, h: f64) -> [f64; 8] {
    let psi = psi_of(p);
    std::array::from_fn(|k| {
        let mut dir = [0.0; 8];
        dir[k] = 1.0;
        let plus = psi_of(&p.offset(&dir, h)).psi;
        let minus = psi_of(&p.offset(&dir, -h)).psi;
        let d = (plus - minus) / Complex64::new(2.0 * h, 0.0);
        (psi.psi.dotc(&d) * Complex64::new(0.0, -1.0)).re
    })
}

/// `(dA)_μν = ∂_μ A_ν − ∂_ν A_μ` by central differences.
pub fn exterior_derivative<F>(a: F, p: &EulerAngles, h: f64) -> [[f64; 8]; 8]
where
    F: Fn(&EulerAngles) -> [f64; 8],
{
    let grads: Vec<[f64; 8]> = (0..8).map(|m| partial(&a, p, m, h)).collect();
    std::array::from_fn(|mu| std::array::from_fn(|nu| grads[mu][nu] - grads[nu][mu]))
}

/// Largest component of the three-form `dF` for a two-form given by its
/// component matrix.
pub fn exterior_derivative_2form<F>(f: F, p: &EulerAngles, h: f64) -> f64
where
    F: Fn(&EulerAngles) -> [[f64; 8]; 8],
{
    let grads: Vec<[[f64; 8]; 8]> = (0..8)
        .map(|m| {
            let mut dir = [0.0; 8];
            dir[m] = 1.0;
            let plus = f(&p.offset(&dir, h));
            let minus = f(&p.offset(&dir, -h));
            std::array::from_fn(|i| std::array::from_fn(|j| (plus[i][j] - minus[i][j]) / (2.0 * h)))
        })
        .collect();
    let mut worst = 0.0f64;
    for l in 0..8 {
        for m in 0..8 {
            for n in 0..8 {
                let v = grads[l][m][n] + grads[m][n][l] + grads[n][l][m];
                worst = worst.max(v.abs());
            }
        }
    }
    worst
}
