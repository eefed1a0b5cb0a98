//! Geometric phase of a cyclically transported three-level pure state.
//!
//! The connection is the real covector `A = −i ψ†dψ` of the state
//! `ψ = D e₃`, and its exterior derivative is the curvature. Loop phases can
//! be computed three ways, each registered as a [`PhaseMethod`]:
//!
//! * `connection`: trapezoid line integral of `A` along the chart path,
//! * `pancharatnam`: the discrete overlap product of the sampled states,
//! * `curvature`: surface integral of `F` over an axis-aligned rectangle.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::{Coord, EulerAngles};
use crate::states::{psi_of, StateVector};
use crate::SQRT3;

/// Endpoint states of a closed loop must agree to this tolerance.
pub const CLOSURE_TOL: f64 = 1e-10;

/// Overlaps below this magnitude are treated as orthogonal.
pub const MIN_OVERLAP: f64 = 1e-8;

/// Coefficient of dφ in the connection.
pub const DPHI_COEFF: f64 = -2.0 / SQRT3;

/// Connection covector over (dα, dβ, dγ, dθ, da, db, dc, dφ).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ConnectionValue {
    pub coeffs: [f64; 8],
}

impl ConnectionValue {
    /// Pairing with a tangent vector, optionally dropping the dφ term.
    pub fn pair(&self, v: &[f64; 8], include_dphi: bool) -> f64 {
        let mut s = 0.0;
        for k in 0..7 {
            s += self.coeffs[k] * v[k];
        }
        if include_dphi {
            s += self.coeffs[7] * v[7];
        }
        s
    }
}

/// Curvature components `f[μ][ν] = ∂_μ A_ν − ∂_ν A_μ`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CurvatureValue {
    pub f: [[f64; 8]; 8],
}

impl CurvatureValue {
    pub fn component(&self, mu: Coord, nu: Coord) -> f64 {
        self.f[mu.index()][nu.index()]
    }
}

/// `sin²θ cos2β dα + sin²θ dγ − (2/√3) dφ`.
pub fn connection(p: &EulerAngles) -> ConnectionValue {
    let s2 = p.theta.sin().powi(2);
    let mut coeffs = [0.0; 8];
    coeffs[Coord::Alpha.index()] = s2 * (2.0 * p.beta).cos();
    coeffs[Coord::Gamma.index()] = s2;
    coeffs[Coord::Phi.index()] = DPHI_COEFF;
    ConnectionValue { coeffs }
}

pub fn curvature(p: &EulerAngles) -> CurvatureValue {
    let (alpha, beta, gamma, theta) = (
        Coord::Alpha.index(),
        Coord::Beta.index(),
        Coord::Gamma.index(),
        Coord::Theta.index(),
    );
    let s2t = (2.0 * p.theta).sin();
    let mut f = [[0.0; 8]; 8];
    let mut set = |mu: usize, nu: usize, v: f64| {
        f[mu][nu] = v;
        f[nu][mu] = -v;
    };
    set(theta, alpha, s2t * (2.0 * p.beta).cos());
    set(
        beta,
        alpha,
        -2.0 * p.theta.sin().powi(2) * (2.0 * p.beta).sin(),
    );
    set(theta, gamma, s2t);
    CurvatureValue { f }
}

/// Piecewise-linear closed path in the chart.
#[derive(Debug, Clone, PartialEq)]
pub struct LoopSpec {
    pub waypoints: Vec<EulerAngles>,
    pub samples_per_segment: usize,
    pub closed: bool,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct LoopSpecJson {
    pub waypoints: Vec<[f64; 8]>,
    pub samples_per_segment: usize,
    pub closed: bool,
}

impl TryFrom<LoopSpecJson> for LoopSpec {
    type Error = Error;

    fn try_from(raw: LoopSpecJson) -> Result<Self> {
        LoopSpec::new(
            raw.waypoints
                .into_iter()
                .map(EulerAngles::from_array)
                .collect(),
            raw.samples_per_segment,
            raw.closed,
        )
    }
}

impl From<&LoopSpec> for LoopSpecJson {
    fn from(l: &LoopSpec) -> Self {
        LoopSpecJson {
            waypoints: l.waypoints.iter().map(EulerAngles::to_array).collect(),
            samples_per_segment: l.samples_per_segment,
            closed: l.closed,
        }
    }
}

impl LoopSpec {
    /// Checks shape; closure itself is checked by [`LoopSpec::check_closed`].
    pub fn new(
        waypoints: Vec<EulerAngles>,
        samples_per_segment: usize,
        closed: bool,
    ) -> Result<Self> {
        if waypoints.len() < 2 {
            return Err(Error::InvalidLoop(format!(
                "need at least 2 waypoints, got {}",
                waypoints.len()
            )));
        }
        if samples_per_segment == 0 {
            return Err(Error::InvalidLoop(
                "samples_per_segment must be at least 1".into(),
            ));
        }
        if let Some(k) = waypoints.iter().position(|w| !w.is_finite()) {
            return Err(Error::InvalidLoop(format!("waypoint {k} is not finite")));
        }
        Ok(Self {
            waypoints,
            samples_per_segment,
            closed,
        })
    }

    /// A closed loop through `waypoints` and back to the first one.
    pub fn closed_through(
        mut waypoints: Vec<EulerAngles>,
        samples_per_segment: usize,
    ) -> Result<Self> {
        if let Some(first) = waypoints.first().copied() {
            waypoints.push(first);
        }
        Self::new(waypoints, samples_per_segment, true)
    }

    pub fn segments(&self) -> usize {
        self.waypoints.len() - 1
    }

    pub fn total_samples(&self) -> usize {
        self.segments() * self.samples_per_segment
    }

    /// The loop traversed backwards.
    pub fn reversed(&self) -> Self {
        let mut w = self.waypoints.clone();
        w.reverse();
        Self {
            waypoints: w,
            ..self.clone()
        }
    }

    /// The endpoints must carry the same state vector.
    ///
    /// Comparing states rather than angles lets a coordinate wind through a
    /// full period, e.g. γ from 0 to 2π.
    pub fn check_closed(&self) -> Result<()> {
        if !self.closed {
            return Err(Error::InvalidLoop("loop is not marked closed".into()));
        }
        let first = psi_of(&self.waypoints[0]);
        let last = psi_of(self.waypoints.last().expect("at least 2 waypoints"));
        let mismatch = (first.psi - last.psi).norm();
        if mismatch > CLOSURE_TOL {
            return Err(Error::OpenLoop { mismatch });
        }
        Ok(())
    }

    /// All sample points, waypoints included, `total_samples() + 1` of them.
    pub fn points(&self) -> Vec<EulerAngles> {
        let m = self.samples_per_segment;
        let mut out = Vec::with_capacity(self.total_samples() + 1);
        out.push(self.waypoints[0]);
        for pair in self.waypoints.windows(2) {
            let (a, b) = (pair[0].to_array(), pair[1].to_array());
            for s in 1..=m {
                let t = s as f64 / m as f64;
                out.push(if s == m {
                    pair[1]
                } else {
                    EulerAngles::from_array(std::array::from_fn(|k| a[k] + t * (b[k] - a[k])))
                });
            }
        }
        out
    }

    /// Net change of φ along the path.
    pub fn delta_phi(&self) -> f64 {
        self.waypoints.windows(2).map(|p| p[1].phi - p[0].phi).sum()
    }
}

/// Trapezoid line integral of the connection, segment by segment.
pub fn phase_connection(lp: &LoopSpec, include_dphi: bool) -> Result<f64> {
    lp.check_closed()?;
    let m = lp.samples_per_segment;
    let mut total = 0.0;
    for pair in lp.waypoints.windows(2) {
        let (a, b) = (pair[0].to_array(), pair[1].to_array());
        let v: [f64; 8] = std::array::from_fn(|k| b[k] - a[k]);
        let mut seg = 0.0;
        for s in 0..=m {
            let t = s as f64 / m as f64;
            let x = EulerAngles::from_array(std::array::from_fn(|k| a[k] + t * v[k]));
            let w = if s == 0 || s == m { 0.5 } else { 1.0 };
            seg += w * connection(&x).pair(&v, include_dphi);
        }
        total += seg / m as f64;
    }
    Ok(total)
}

/// `Σ arg⟨ψ_k|ψ_{k+1}⟩` over a closed chain, the closure overlap `⟨ψ_N|ψ_0⟩`
/// included.
///
/// Each term is a small angle on a well-sampled path, so the sum is not
/// reduced modulo 2π.
pub fn pancharatnam_from_states(states: &[StateVector]) -> Result<f64> {
    if states.len() < 2 {
        return Err(Error::InvalidLoop("need at least 2 states".into()));
    }
    let n = states.len();
    let mut total = 0.0;
    for k in 0..n {
        let next = if k + 1 == n { 0 } else { k + 1 };
        let overlap = states[k].inner(&states[next]);
        let mag = overlap.norm();
        if mag < MIN_OVERLAP {
            return Err(Error::VanishingOverlap {
                index: k,
                overlap: mag,
            });
        }
        total += overlap.arg();
    }
    Ok(total)
}

/// Discrete overlap phase of the sampled states, with the fibre term
/// `−(2/√3)Δφ` removed unless `include_dphi` is set.
pub fn phase_pancharatnam(lp: &LoopSpec, include_dphi: bool) -> Result<f64> {
    lp.check_closed()?;
    let states: Vec<StateVector> = lp.points().iter().map(psi_of).collect();
    let raw = pancharatnam_from_states(&states)?;
    Ok(if include_dphi {
        raw
    } else {
        raw - DPHI_COEFF * lp.delta_phi()
    })
}

/// Axis-aligned rectangle in the `(u, v)` chart plane, other angles fixed.
///
/// Limits are signed: the boundary runs `(u0,v0) → (u1,v0) → (u1,v1) → (u0,v1)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Rectangle {
    pub base: EulerAngles,
    pub u: Coord,
    pub v: Coord,
    pub u_range: (f64, f64),
    pub v_range: (f64, f64),
    pub samples: usize,
}

impl Rectangle {
    pub fn new(
        base: EulerAngles,
        u: Coord,
        u_range: (f64, f64),
        v: Coord,
        v_range: (f64, f64),
        samples: usize,
    ) -> Result<Self> {
        if u == v {
            return Err(Error::InvalidLoop(
                "rectangle needs two distinct coordinates".into(),
            ));
        }
        if samples == 0 {
            return Err(Error::InvalidLoop(
                "rectangle needs at least 1 sample per side".into(),
            ));
        }
        Ok(Self {
            base,
            u,
            v,
            u_range,
            v_range,
            samples,
        })
    }

    fn corner(&self, u: f64, v: f64) -> EulerAngles {
        self.base.with(self.u, u).with(self.v, v)
    }

    /// The boundary as a five-waypoint loop.
    pub fn boundary(&self) -> LoopSpec {
        let (u0, u1) = self.u_range;
        let (v0, v1) = self.v_range;
        LoopSpec {
            waypoints: vec![
                self.corner(u0, v0),
                self.corner(u1, v0),
                self.corner(u1, v1),
                self.corner(u0, v1),
                self.corner(u0, v0),
            ],
            samples_per_segment: self.samples,
            closed: true,
        }
    }

    /// Recovers the rectangle whose boundary is `lp`.
    pub fn from_loop(lp: &LoopSpec) -> Result<Self> {
        let w = &lp.waypoints;
        if w.len() != 5 {
            return Err(Error::InvalidLoop(format!(
                "curvature method needs a 5-waypoint rectangle, got {} waypoints",
                w.len()
            )));
        }
        let changed = |a: &EulerAngles, b: &EulerAngles| -> Vec<Coord> {
            Coord::ALL
                .into_iter()
                .filter(|&c| a.get(c) != b.get(c))
                .collect()
        };
        let mut axes = Vec::new();
        for k in 0..4 {
            let c = changed(&w[k], &w[k + 1]);
            if c.len() != 1 {
                return Err(Error::InvalidLoop(format!(
                    "rectangle side {k} must move exactly one coordinate"
                )));
            }
            axes.push(c[0]);
        }
        let (u, v) = (axes[0], axes[1]);
        if u == v || axes[2] != u || axes[3] != v {
            return Err(Error::InvalidLoop(
                "sides must alternate between two coordinates".into(),
            ));
        }
        let (u0, u1) = (w[0].get(u), w[1].get(u));
        let (v0, v1) = (w[1].get(v), w[2].get(v));
        if w[3].get(u) != u0 || w[4].get(v) != v0 {
            return Err(Error::InvalidLoop(
                "opposite sides of the rectangle differ".into(),
            ));
        }
        Rectangle::new(w[0], u, (u0, u1), v, (v0, v1), lp.samples_per_segment)
    }
}

/// Tensor-product trapezoid integral of `f[u][v]` over the rectangle.
pub fn phase_curvature(rect: &Rectangle) -> f64 {
    let n = rect.samples;
    let (u0, u1) = rect.u_range;
    let (v0, v1) = rect.v_range;
    let (hu, hv) = ((u1 - u0) / n as f64, (v1 - v0) / n as f64);
    let weight = |k: usize| if k == 0 || k == n { 0.5 } else { 1.0 };
    let mut total = 0.0;
    for i in 0..=n {
        let u = u0 + i as f64 * hu;
        let mut row = 0.0;
        for j in 0..=n {
            let x = rect.corner(u, v0 + j as f64 * hv);
            row += weight(j) * curvature(&x).component(rect.u, rect.v);
        }
        total += weight(i) * row;
    }
    total * hu * hv
}

/// Options shared by every phase method.
#[derive(Debug, Clone, Copy, Default)]
pub struct PhaseOptions {
    pub include_dphi: bool,
}

pub trait PhaseMethod: Send + Sync {
    fn name(&self) -> &'static str;
    fn phase(&self, lp: &LoopSpec, opts: &PhaseOptions) -> Result<f64>;
}

pub struct ConnectionMethod;
pub struct PancharatnamMethod;
pub struct CurvatureMethod;

impl PhaseMethod for ConnectionMethod {
    fn name(&self) -> &'static str {
        "connection"
    }

    fn phase(&self, lp: &LoopSpec, opts: &PhaseOptions) -> Result<f64> {
        phase_connection(lp, opts.include_dphi)
    }
}

impl PhaseMethod for PancharatnamMethod {
    fn name(&self) -> &'static str {
        "pancharatnam"
    }

    fn phase(&self, lp: &LoopSpec, opts: &PhaseOptions) -> Result<f64> {
        phase_pancharatnam(lp, opts.include_dphi)
    }
}

impl PhaseMethod for CurvatureMethod {
    fn name(&self) -> &'static str {
        "curvature"
    }

    // The dφ term is exact, so it contributes nothing around a rectangle.
    fn phase(&self, lp: &LoopSpec, _opts: &PhaseOptions) -> Result<f64> {
        lp.check_closed()?;
        Ok(phase_curvature(&Rectangle::from_loop(lp)?))
    }
}

static METHODS: [&dyn PhaseMethod; 3] = [&ConnectionMethod, &PancharatnamMethod, &CurvatureMethod];

pub fn methods() -> &'static [&'static dyn PhaseMethod] {
    &METHODS
}

pub fn method_by_name(name: &str) -> Result<&'static dyn PhaseMethod> {
    METHODS
        .iter()
        .copied()
        .find(|m| m.name() == name)
        .ok_or_else(|| Error::UnknownStrategy {
            kind: "phase method",
            name: name.to_string(),
            available: METHODS
                .iter()
                .map(|m| m.name())
                .collect::<Vec<_>>()
                .join(", "),
        })
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct PhaseResult {
    pub method: String,
    pub phase_rad: f64,
    pub samples: usize,
}

/// Runs a registered method and packages the result.
pub fn run(method: &dyn PhaseMethod, lp: &LoopSpec, opts: &PhaseOptions) -> Result<PhaseResult> {
    Ok(PhaseResult {
        method: method.name().to_string(),
        phase_rad: method.phase(lp, opts)?,
        samples: lp.total_samples(),
    })
}

/// Circle γ: 0 → 2π at fixed β, θ and zero elsewhere.
pub fn gamma_circle(beta: f64, theta: f64, samples: usize) -> LoopSpec {
    let base = EulerAngles::default()
        .with(Coord::Beta, beta)
        .with(Coord::Theta, theta);
    LoopSpec {
        waypoints: vec![base, base.with(Coord::Gamma, 2.0 * std::f64::consts::PI)],
        samples_per_segment: samples,
        closed: true,
    }
}
