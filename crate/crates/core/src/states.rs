//! Pure states of a three-level system as points of SU(3)/U(2).

use nalgebra::Vector3;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::algebra::{
    expand_unchecked, max_abs, star, trace_product, AlgebraVector, GellMannBasis,
};
use crate::group::{adjoint, compose, EulerAngles, GroupElement};
use crate::{Mat3, SQRT3};

/// A unit vector in C³.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StateVector {
    pub psi: Vector3<Complex64>,
}

impl StateVector {
    /// ⟨self|other⟩.
    pub fn inner(&self, other: &StateVector) -> Complex64 {
        self.psi.dotc(&other.psi)
    }

    pub fn norm(&self) -> f64 {
        self.psi.norm()
    }

    /// ψψ†.
    pub fn projector(&self) -> Mat3 {
        self.psi * self.psi.adjoint()
    }

    /// n_i = (√3/2) ψ†λ_iψ.
    pub fn coherence_vector(&self) -> AlgebraVector {
        let basis = GellMannBasis::get();
        AlgebraVector(std::array::from_fn(|i| {
            0.5 * SQRT3 * self.psi.dotc(&(basis[i] * self.psi)).re
        }))
    }

    pub fn scaled(&self, phase: Complex64) -> StateVector {
        StateVector {
            psi: self.psi * phase,
        }
    }
}

/// A pure-state density matrix together with its coherence vector.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityState {
    pub rho: Mat3,
    pub n: AlgebraVector,
}

/// Residuals of the pure-state conditions.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct StateResiduals {
    pub hermiticity: f64,
    pub trace: f64,
    pub idempotency: f64,
    pub min_eigenvalue: f64,
    pub n_norm: f64,
    pub n_star: f64,
    pub reconstruction: f64,
}

impl StateResiduals {
    pub fn max_identity_residual(&self) -> f64 {
        [
            self.hermiticity,
            self.trace,
            self.idempotency,
            self.n_norm,
            self.n_star,
            self.reconstruction,
        ]
        .into_iter()
        .fold(0.0, f64::max)
    }
}

impl DensityState {
    /// (1/3)(𝟙 + √3 n·λ).
    pub fn from_n(n: AlgebraVector) -> Self {
        let lam = GellMannBasis::get().combine(&n);
        let rho = (Mat3::identity() + lam * Complex64::new(SQRT3, 0.0)) / Complex64::new(3.0, 0.0);
        Self { rho, n }
    }

    pub fn residuals(&self) -> StateResiduals {
        let rho = &self.rho;
        let eig = nalgebra::SymmetricEigen::new(*rho).eigenvalues;
        let min_eigenvalue = eig.iter().copied().fold(f64::INFINITY, f64::min);
        StateResiduals {
            hermiticity: max_abs(&(rho - rho.adjoint())),
            trace: (rho.trace() - Complex64::new(1.0, 0.0)).norm(),
            idempotency: max_abs(&(rho * rho - rho)),
            min_eigenvalue,
            n_norm: (self.n.dot(&self.n) - 1.0).abs(),
            n_star: star(&self.n, &self.n).max_abs_diff(&self.n),
            reconstruction: max_abs(&(DensityState::from_n(self.n).rho - rho)),
        }
    }

    /// Eigenvalues in ascending order.
    pub fn eigenvalues(&self) -> [f64; 3] {
        let mut e: Vec<f64> = nalgebra::SymmetricEigen::new(self.rho)
            .eigenvalues
            .iter()
            .copied()
            .collect();
        e.sort_by(f64::total_cmp);
        [e[0], e[1], e[2]]
    }
}

/// ρ₀ = diag(0, 0, 1), n = −e₈.
pub fn base_state() -> DensityState {
    let mut rho = Mat3::zeros();
    rho[(2, 2)] = Complex64::new(1.0, 0.0);
    DensityState {
        rho,
        n: -AlgebraVector::unit(7),
    }
}

/// ρ = g ρ₀ g†, with n read off the traceless part.
pub fn project(g: &GroupElement) -> DensityState {
    let u = g.matrix();
    let rho = u * base_state().rho * u.adjoint();
    let traceless =
        (rho * Complex64::new(3.0, 0.0) - Mat3::identity()) / Complex64::new(SQRT3, 0.0);
    let (n, _) = expand_unchecked(&traceless);
    DensityState { rho, n }
}

/// n_i = −R_8i, the second route to the coherence vector.
pub fn coherence_from_adjoint(g: &GroupElement) -> AlgebraVector {
    let r = adjoint(g);
    AlgebraVector(std::array::from_fn(|i| -r[(7, i)]))
}

/// ψ is the third column of `compose(angles)`.
///
/// Its second component is `−e^{−i(α−γ)} sinβ sinθ` times the overall phase.
/// The gauge-invariant quantities built from ψ do not depend on that sign.
pub fn psi_of(angles: &EulerAngles) -> StateVector {
    let g = compose(angles);
    StateVector {
        psi: g.matrix().column(2).into_owned(),
    }
}

/// `Tr(ρ λ_i)`-style expectation, used by the verification suite.
pub fn expectation(rho: &Mat3, op: &Mat3) -> Complex64 {
    trace_product(rho, op)
}
