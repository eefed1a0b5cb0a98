//! Differential geometry of SU(3) in Euler coordinates.
//!
//! The group is charted by the eight-angle product
//!
//! ```text
//! D(α,β,γ,θ,a,b,c,φ) = e^{iλ3α} e^{iλ2β} e^{iλ3γ} e^{iλ5θ} e^{iλ3a} e^{iλ2b} e^{iλ3c} e^{iλ8φ}
//! ```
//!
//! On top of the chart this crate provides the Maurer–Cartan coefficient
//! matrices, left and right invariant vector fields and one-forms, the Haar
//! density and Monte Carlo integration over the group, pure-state density
//! matrices of three-level systems, and their geometric phases.
//!
//! Every closed-form expression that is shipped as a literal table
//! ([`cartan::appendix`]) is audited against an exact linear-algebra
//! construction rather than trusted.

pub mod algebra;
pub mod cartan;
pub mod domain;
pub mod error;
pub mod group;
pub mod io;
pub mod measure;
pub mod oracle;
pub mod phase;
pub mod states;
pub mod verify;

pub use algebra::{AlgebraVector, GellMannBasis, StructureTensors};
pub use cartan::{CoeffKind, CoeffMatrix, FrameAtPoint, Handedness};
pub use error::{Error, Result};
pub use group::{Coord, EulerAngles, GroupElement, Stratum};
pub use measure::{HaarSample, IntegrationResult};
pub use phase::{ConnectionValue, CurvatureValue, LoopSpec};
pub use states::{DensityState, StateVector};

/// 3×3 complex matrix used for group and algebra elements.
pub type Mat3 = nalgebra::Matrix3<num_complex::Complex64>;
/// Real 8×8 matrix used for coefficient tables and the adjoint representation.
pub type Mat8 = nalgebra::SMatrix<f64, 8, 8>;

pub(crate) const SQRT3: f64 = 1.732_050_807_568_877_2;
