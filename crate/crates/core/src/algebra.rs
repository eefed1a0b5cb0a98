//! The su(3) substrate: Gell-Mann basis, structure tensors, the symmetric
//! star product and basis expansion.
//!
//! Indices are zero-based throughout: slot `k` holds λ_{k+1}.

use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};
use std::sync::OnceLock;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::{Mat3, SQRT3};

/// Default residual tolerance for double-precision algebra on unit-scale entries.
pub const DEFAULT_TOL: f64 = 1e-12;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);
const I: Complex64 = Complex64::new(0.0, 1.0);

/// The eight Gell-Mann matrices.
#[derive(Debug, Clone)]
pub struct GellMannBasis {
    lambda: [Mat3; 8],
}

impl GellMannBasis {
    fn build() -> Self {
        let z = ZERO;
        let o = ONE;
        let i = I;
        let r8 = Complex64::new(1.0 / SQRT3, 0.0);
        let m = |rows: [[Complex64; 3]; 3]| Mat3::from_fn(|r, c| rows[r][c]);
        let lambda = [
            m([[z, o, z], [o, z, z], [z, z, z]]),
            m([[z, -i, z], [i, z, z], [z, z, z]]),
            m([[o, z, z], [z, -o, z], [z, z, z]]),
            m([[z, z, o], [z, z, z], [o, z, z]]),
            m([[z, z, -i], [z, z, z], [i, z, z]]),
            m([[z, z, z], [z, z, o], [z, o, z]]),
            m([[z, z, z], [z, z, -i], [z, i, z]]),
            m([[r8, z, z], [z, r8, z], [z, z, -r8 * 2.0]]),
        ];
        Self { lambda }
    }

    /// Shared immutable instance.
    pub fn get() -> &'static GellMannBasis {
        static BASIS: OnceLock<GellMannBasis> = OnceLock::new();
        BASIS.get_or_init(Self::build)
    }

    pub fn matrices(&self) -> &[Mat3; 8] {
        &self.lambda
    }

    /// Σ_k v_k λ_k.
    pub fn combine(&self, v: &AlgebraVector) -> Mat3 {
        self.lambda
            .iter()
            .zip(v.0.iter())
            .fold(Mat3::zeros(), |acc, (l, &c)| {
                acc + l * Complex64::new(c, 0.0)
            })
    }

    /// Σ_k (re_k + i·im_k) λ_k.
    pub fn combine_complex(&self, re: &AlgebraVector, im: &AlgebraVector) -> Mat3 {
        (0..8).fold(Mat3::zeros(), |acc, k| {
            acc + self.lambda[k] * Complex64::new(re[k], im[k])
        })
    }
}

impl Index<usize> for GellMannBasis {
    type Output = Mat3;
    fn index(&self, k: usize) -> &Mat3 {
        &self.lambda[k]
    }
}

/// Dense 8×8×8 storage of the antisymmetric structure constants `C` and the
/// symmetric tensor `d`.
#[derive(Debug, Clone)]
pub struct StructureTensors {
    pub c: [[[f64; 8]; 8]; 8],
    pub d: [[[f64; 8]; 8]; 8],
}

impl StructureTensors {
    fn build() -> Self {
        let mut c = [[[0.0; 8]; 8]; 8];
        let mut d = [[[0.0; 8]; 8]; 8];

        let c_table: [([usize; 3], f64); 9] = [
            ([1, 2, 3], 2.0),
            ([4, 5, 8], SQRT3),
            ([6, 7, 8], SQRT3),
            ([1, 4, 7], 1.0),
            ([2, 4, 6], 1.0),
            ([2, 5, 7], 1.0),
            ([3, 4, 5], 1.0),
            ([5, 1, 6], 1.0),
            ([6, 3, 7], 1.0),
        ];
        for ([i, j, k], v) in c_table {
            let (i, j, k) = (i - 1, j - 1, k - 1);
            for (p, sign) in permutations(i, j, k) {
                c[p[0]][p[1]][p[2]] = sign * v;
            }
        }

        let r3 = 1.0 / SQRT3;
        let d_table: [([usize; 3], f64); 16] = [
            ([1, 1, 8], r3),
            ([2, 2, 8], r3),
            ([3, 3, 8], r3),
            ([8, 8, 8], -r3),
            ([4, 4, 8], -0.5 * r3),
            ([5, 5, 8], -0.5 * r3),
            ([6, 6, 8], -0.5 * r3),
            ([7, 7, 8], -0.5 * r3),
            ([1, 4, 6], 0.5),
            ([1, 5, 7], 0.5),
            ([2, 4, 7], -0.5),
            ([2, 5, 6], 0.5),
            ([3, 4, 4], 0.5),
            ([3, 5, 5], 0.5),
            ([3, 6, 6], -0.5),
            ([3, 7, 7], -0.5),
        ];
        for ([i, j, k], v) in d_table {
            let (i, j, k) = (i - 1, j - 1, k - 1);
            for (p, _) in permutations(i, j, k) {
                d[p[0]][p[1]][p[2]] = v;
            }
        }
        Self { c, d }
    }

    pub fn get() -> &'static StructureTensors {
        static TENSORS: OnceLock<StructureTensors> = OnceLock::new();
        TENSORS.get_or_init(Self::build)
    }
}

fn permutations(i: usize, j: usize, k: usize) -> [([usize; 3], f64); 6] {
    [
        ([i, j, k], 1.0),
        ([j, k, i], 1.0),
        ([k, i, j], 1.0),
        ([j, i, k], -1.0),
        ([i, k, j], -1.0),
        ([k, j, i], -1.0),
    ]
}

/// Eight real components in the Gell-Mann basis.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct AlgebraVector(pub [f64; 8]);

impl AlgebraVector {
    pub const ZERO: AlgebraVector = AlgebraVector([0.0; 8]);

    /// Unit vector along λ_{k+1}.
    pub fn unit(k: usize) -> Self {
        let mut v = [0.0; 8];
        v[k] = 1.0;
        Self(v)
    }

    pub fn dot(&self, other: &Self) -> f64 {
        self.0.iter().zip(other.0.iter()).map(|(a, b)| a * b).sum()
    }

    pub fn norm(&self) -> f64 {
        self.dot(self).sqrt()
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.0
            .iter()
            .zip(other.0.iter())
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }

    pub fn is_finite(&self) -> bool {
        self.0.iter().all(|x| x.is_finite())
    }

    /// (a ⋆ b)_i = √3 d_ijk a_j b_k.
    pub fn star(&self, other: &Self) -> Self {
        star(self, other)
    }
}

impl Index<usize> for AlgebraVector {
    type Output = f64;
    fn index(&self, k: usize) -> &f64 {
        &self.0[k]
    }
}

impl IndexMut<usize> for AlgebraVector {
    fn index_mut(&mut self, k: usize) -> &mut f64 {
        &mut self.0[k]
    }
}

impl Add for AlgebraVector {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Self(std::array::from_fn(|k| self.0[k] + rhs.0[k]))
    }
}

impl Sub for AlgebraVector {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Self(std::array::from_fn(|k| self.0[k] - rhs.0[k]))
    }
}

impl Neg for AlgebraVector {
    type Output = Self;
    fn neg(self) -> Self {
        Self(self.0.map(|x| -x))
    }
}

impl Mul<f64> for AlgebraVector {
    type Output = Self;
    fn mul(self, s: f64) -> Self {
        Self(self.0.map(|x| x * s))
    }
}

/// Symmetric product built from the d-tensor.
pub fn star(a: &AlgebraVector, b: &AlgebraVector) -> AlgebraVector {
    let d = &StructureTensors::get().d;
    let mut out = [0.0; 8];
    for (i, o) in out.iter_mut().enumerate() {
        let mut acc = 0.0;
        for j in 0..8 {
            if a[j] == 0.0 {
                continue;
            }
            for k in 0..8 {
                acc += d[i][j][k] * a[j] * b[k];
            }
        }
        *o = SQRT3 * acc;
    }
    AlgebraVector(out)
}

/// Expands a traceless matrix as `Σ_k (re_k + i·im_k) λ_k` using
/// `Tr(λ_i λ_j) = 2δ_ij`.
pub fn expand(m: &Mat3) -> Result<(AlgebraVector, AlgebraVector)> {
    expand_with_tol(m, DEFAULT_TOL)
}

pub fn expand_with_tol(m: &Mat3, tol: f64) -> Result<(AlgebraVector, AlgebraVector)> {
    let residual = m.trace().norm();
    if residual > tol {
        return Err(Error::NotTraceless { residual });
    }
    Ok(expand_unchecked(m))
}

pub(crate) fn expand_unchecked(m: &Mat3) -> (AlgebraVector, AlgebraVector) {
    let basis = GellMannBasis::get();
    let mut re = [0.0; 8];
    let mut im = [0.0; 8];
    for k in 0..8 {
        let c = trace_product(m, &basis[k]) * 0.5;
        re[k] = c.re;
        im[k] = c.im;
    }
    (AlgebraVector(re), AlgebraVector(im))
}

/// Tr(a·b) without forming the product.
pub(crate) fn trace_product(a: &Mat3, b: &Mat3) -> Complex64 {
    let mut acc = ZERO;
    for r in 0..3 {
        for c in 0..3 {
            acc += a[(r, c)] * b[(c, r)];
        }
    }
    acc
}

pub(crate) fn max_abs(m: &Mat3) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// Per-pair residuals of an algebra identity.
#[derive(Debug, Clone, Serialize)]
pub struct PairResiduals {
    pub residuals: [[f64; 8]; 8],
}

impl PairResiduals {
    pub fn max(&self) -> f64 {
        self.residuals
            .iter()
            .flat_map(|r| r.iter())
            .copied()
            .fold(0.0, f64::max)
    }
}

/// Entrywise residual of `[λ_i, λ_j] − i C_kij λ_k` for every pair.
pub fn commutator_tensor_check() -> PairResiduals {
    let basis = GellMannBasis::get();
    let c = &StructureTensors::get().c;
    let mut residuals = [[0.0; 8]; 8];
    for i in 0..8 {
        for j in 0..8 {
            let comm = basis[i] * basis[j] - basis[j] * basis[i];
            let rhs = (0..8).fold(Mat3::zeros(), |acc, k| acc + basis[k] * (I * c[k][i][j]));
            residuals[i][j] = max_abs(&(comm - rhs));
        }
    }
    PairResiduals { residuals }
}

/// Entrywise residual of `{λ_i, λ_j} − (4/3)𝟙δ_ij − 2 d_ijk λ_k` for every pair.
pub fn anticommutator_tensor_check() -> PairResiduals {
    let basis = GellMannBasis::get();
    let d = &StructureTensors::get().d;
    let mut residuals = [[0.0; 8]; 8];
    for i in 0..8 {
        for j in 0..8 {
            let anti = basis[i] * basis[j] + basis[j] * basis[i];
            let mut rhs = (0..8).fold(Mat3::zeros(), |acc, k| {
                acc + basis[k] * Complex64::new(2.0 * d[i][j][k], 0.0)
            });
            if i == j {
                rhs += Mat3::identity() * Complex64::new(4.0 / 3.0, 0.0);
            }
            residuals[i][j] = max_abs(&(anti - rhs));
        }
    }
    PairResiduals { residuals }
}
