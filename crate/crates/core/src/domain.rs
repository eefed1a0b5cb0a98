//! Coordinate boxes in the eight-angle chart.
//!
//! Two boxes are provided. [`ClassicalBox`] is the classical range table
//! (α,γ,a,c ∈ [0,π), β,b,θ ∈ [0,π/2], φ ∈ [0,√3π)); it fixes the volume
//! normalisation but its image is only a quarter of the group, since the
//! third-column phases α+γ and γ−α then cover half of their torus and the
//! stabiliser SU(2) block only half of SU(2). [`CoveringBox`] doubles the
//! γ and φ ranges, which makes the chart one-to-one almost everywhere, and
//! is the domain every Haar sampler draws from.

use std::f64::consts::{FRAC_PI_2, PI};

use rand::Rng;

use crate::error::{Error, Result};
use crate::group::EulerAngles;
use crate::SQRT3;

/// Reduces `x` into `[0, period)`.
pub fn wrap(x: f64, period: f64) -> f64 {
    let r = x.rem_euclid(period);
    if r >= period {
        0.0
    } else {
        r
    }
}

/// A product of coordinate intervals with the Haar weight restricted to it.
pub trait FundamentalDomain: Send + Sync {
    fn name(&self) -> &'static str;

    /// `[lo, hi)` per coordinate; the β, b, θ intervals are closed.
    fn ranges(&self) -> [(f64, f64); 8];

    fn contains(&self, x: &EulerAngles) -> bool {
        let r = self.ranges();
        x.to_array().iter().enumerate().all(|(k, &v)| {
            let closed = matches!(k, 1 | 3 | 5);
            v >= r[k].0 && (v < r[k].1 || (closed && v <= r[k].1))
        })
    }

    /// ∫ sin2β sin2b sin2θ sin²θ over the box.
    fn volume(&self) -> f64 {
        // The β, b, θ marginals integrate to 1, 1 and 1/2 over [0, π/2].
        let r = self.ranges();
        let flat: f64 = [0usize, 2, 4, 6, 7]
            .iter()
            .map(|&k| r[k].1 - r[k].0)
            .product();
        flat * 0.5
    }

    /// One Haar-distributed point, by exact inverse CDFs.
    fn sample(&self, rng: &mut dyn rand::RngCore) -> EulerAngles {
        let r = self.ranges();
        let mut uniform = |k: usize| r[k].0 + (r[k].1 - r[k].0) * rng.random::<f64>();
        let alpha = uniform(0);
        let gamma = uniform(2);
        let a = uniform(4);
        let c = uniform(6);
        let phi = uniform(7);
        let beta = rng.random::<f64>().sqrt().asin();
        let theta = rng.random::<f64>().powf(0.25).asin();
        let b = rng.random::<f64>().sqrt().asin();
        EulerAngles {
            alpha,
            beta,
            gamma,
            theta,
            a,
            b,
            c,
            phi,
        }
    }
}

#[derive(Debug, Clone, Copy, Default)]
pub struct ClassicalBox;

impl FundamentalDomain for ClassicalBox {
    fn name(&self) -> &'static str {
        "classical"
    }

    fn ranges(&self) -> [(f64, f64); 8] {
        [
            (0.0, PI),
            (0.0, FRAC_PI_2),
            (0.0, PI),
            (0.0, FRAC_PI_2),
            (0.0, PI),
            (0.0, FRAC_PI_2),
            (0.0, PI),
            (0.0, SQRT3 * PI),
        ]
    }
}

#[derive(Debug, Clone, Copy, Default)]
pub struct CoveringBox;

impl FundamentalDomain for CoveringBox {
    fn name(&self) -> &'static str {
        "covering"
    }

    fn ranges(&self) -> [(f64, f64); 8] {
        [
            (0.0, PI),
            (0.0, FRAC_PI_2),
            (0.0, 2.0 * PI),
            (0.0, FRAC_PI_2),
            (0.0, PI),
            (0.0, FRAC_PI_2),
            (0.0, PI),
            (0.0, 2.0 * SQRT3 * PI),
        ]
    }
}

static DOMAINS: [&dyn FundamentalDomain; 2] = [&CoveringBox, &ClassicalBox];

/// Registered boxes, default first.
pub fn domains() -> &'static [&'static dyn FundamentalDomain] {
    &DOMAINS
}

pub fn domain_by_name(name: &str) -> Result<&'static dyn FundamentalDomain> {
    DOMAINS
        .iter()
        .copied()
        .find(|d| d.name() == name)
        .ok_or_else(|| Error::UnknownStrategy {
            kind: "domain",
            name: name.to_string(),
            available: DOMAINS
                .iter()
                .map(|d| d.name())
                .collect::<Vec<_>>()
                .join(", "),
        })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn volumes() {
        let classical = 0.5 * SQRT3 * PI.powi(5);
        assert!((ClassicalBox.volume() - classical).abs() < 1e-12 * classical);
        assert!((CoveringBox.volume() - 4.0 * classical).abs() < 1e-12 * classical);
    }

    #[test]
    fn wrap_stays_half_open() {
        assert_eq!(wrap(-1e-300, PI), 0.0);
        assert!(wrap(-1e-17, PI) < PI);
        assert!((wrap(3.0 * PI + 0.25, PI) - 0.25).abs() < 1e-14);
    }

    #[test]
    fn lookup() {
        assert_eq!(domain_by_name("classical").unwrap().name(), "classical");
        assert!(matches!(
            domain_by_name("sphere"),
            Err(Error::UnknownStrategy { .. })
        ));
    }
}
