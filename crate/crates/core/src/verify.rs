//! Self-verification suite run by `su3 verify`.
//!
//! Each [`Check`] measures one residual against a threshold. The registry is
//! ordered from the algebra up to the phase machinery; `quick` and `full`
//! levels differ only in sample counts.

use std::f64::consts::{FRAC_PI_4, PI};

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::algebra::{anticommutator_tensor_check, commutator_tensor_check, star};
use crate::cartan::appendix::{audit, probe_points, AppendixAudit, Discrepancy};
use crate::cartan::{
    haar_density, haar_density_closed_form, haar_density_right, FrameAtPoint, Handedness,
};
use crate::domain::{CoveringBox, FundamentalDomain};
use crate::error::{Error, Result};
use crate::group::{compose, decompose, Coord, EulerAngles};
use crate::measure::{integrate, orthogonality_suite, volume_mc};
use crate::oracle::{
    closure_residuals, connection_from_states, defining_relation_residual, exterior_derivative,
    random_special_unitary, FD_STEP,
};
use crate::phase::{
    connection, curvature, gamma_circle, phase_connection, phase_curvature, phase_pancharatnam,
    LoopSpec, Rectangle,
};
use crate::states::{coherence_from_adjoint, project};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Level {
    Quick,
    Full,
}

impl std::str::FromStr for Level {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "quick" => Ok(Level::Quick),
            "full" => Ok(Level::Full),
            other => Err(Error::InvalidInput(format!(
                "unknown level `{other}` (quick, full)"
            ))),
        }
    }
}

/// Run parameters. `tol_scale` multiplies every threshold.
#[derive(Debug, Clone, Copy)]
pub struct VerifyContext {
    pub level: Level,
    pub seed: u64,
    pub tol_scale: f64,
}

impl VerifyContext {
    fn size(&self, quick: usize, full: usize) -> usize {
        match self.level {
            Level::Quick => quick,
            Level::Full => full,
        }
    }

    /// A stream private to the check named `tag`.
    fn rng(&self, tag: &str) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        let stream = tag
            .bytes()
            .fold(0u64, |h, b| h.wrapping_mul(131).wrapping_add(b as u64));
        rng.set_stream(stream);
        rng
    }

    fn sub_seed(&self, tag: &str) -> u64 {
        self.rng(tag).random()
    }

    /// Haar points kept a margin away from the degenerate strata.
    fn regular_points(&self, tag: &str, n: usize) -> Vec<EulerAngles> {
        let mut rng = self.rng(tag);
        let mut out = Vec::with_capacity(n);
        while out.len() < n {
            let p = CoveringBox.sample(&mut rng);
            let margin = [
                (2.0 * p.beta).sin(),
                (2.0 * p.b).sin(),
                (2.0 * p.theta).sin(),
            ];
            if margin.iter().all(|m| m.abs() > 0.05) {
                out.push(p);
            }
        }
        out
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckOutcome {
    pub name: String,
    pub residual: f64,
    pub threshold: f64,
    pub pass: bool,
}

pub trait Check: Send + Sync {
    fn name(&self) -> &'static str;
    /// Returns `(residual, unscaled threshold)`.
    fn measure(&self, ctx: &VerifyContext) -> Result<(f64, f64)>;
}

/// A check defined by a plain function.
pub struct FnCheck {
    name: &'static str,
    run: fn(&VerifyContext) -> Result<(f64, f64)>,
}

impl Check for FnCheck {
    fn name(&self) -> &'static str {
        self.name
    }

    fn measure(&self, ctx: &VerifyContext) -> Result<(f64, f64)> {
        (self.run)(ctx)
    }
}

fn max_of(it: impl IntoIterator<Item = f64>) -> f64 {
    it.into_iter().fold(0.0, f64::max)
}

fn try_max_of(it: impl IntoIterator<Item = Result<f64>>) -> Result<f64> {
    it.into_iter()
        .try_fold(0.0, |acc: f64, r| r.map(|v| acc.max(v)))
}

fn algebra_commutators(_: &VerifyContext) -> Result<(f64, f64)> {
    Ok((commutator_tensor_check().max(), 1e-14))
}

fn algebra_anticommutators(_: &VerifyContext) -> Result<(f64, f64)> {
    Ok((anticommutator_tensor_check().max(), 1e-14))
}

fn group_round_trip(ctx: &VerifyContext) -> Result<(f64, f64)> {
    let mut rng = ctx.rng("group.round_trip");
    let n = ctx.size(200, 1000);
    let worst = max_of((0..n).map(|_| {
        let g = random_special_unitary(&mut rng);
        compose(&decompose(&g).angles).max_abs_diff(&g)
    }));
    Ok((worst, 1e-10))
}

fn group_special_unitary(ctx: &VerifyContext) -> Result<(f64, f64)> {
    let pts = ctx.regular_points("group.special_unitary", ctx.size(200, 1000));
    let worst = max_of(pts.iter().map(|p| {
        let g = compose(p);
        g.unitarity_residual().max(g.determinant_residual())
    }));
    Ok((worst, 1e-12))
}

fn cartan_defining_relations(ctx: &VerifyContext) -> Result<(f64, f64)> {
    let pts = ctx.regular_points("cartan.defining_relations", ctx.size(20, 100));
    let worst = try_max_of(pts.iter().flat_map(|p| {
        [Handedness::Left, Handedness::Right].map(|h| defining_relation_residual(p, h, FD_STEP))
    }))?;
    Ok((worst, 1e-7))
}

fn cartan_adjoint(ctx: &VerifyContext) -> Result<(f64, f64)> {
    let pts = ctx.regular_points("cartan.adjoint", ctx.size(20, 100));
    let worst = try_max_of(
        pts.iter()
            .map(|p| FrameAtPoint::new(p).map(|f| f.adjoint_residual())),
    )?;
    Ok((worst, 1e-10))
}

fn cartan_closure(ctx: &VerifyContext) -> Result<(f64, f64)> {
    let pts = ctx.regular_points("cartan.closure", ctx.size(3, 20));
    let worst = try_max_of(
        pts.iter()
            .map(|p| closure_residuals(p, 1e-5).map(|r| r.max())),
    )?;
    Ok((worst, 1e-5))
}

fn cartan_duality(ctx: &VerifyContext) -> Result<(f64, f64)> {
    let pts = ctx.regular_points("cartan.duality", 100);
    let worst = try_max_of(
        pts.iter()
            .map(|p| FrameAtPoint::new(p).map(|f| f.duality_residual())),
    )?;
    Ok((worst, 1e-11))
}

fn cartan_haar_density(ctx: &VerifyContext) -> Result<(f64, f64)> {
    let pts = ctx.regular_points("cartan.haar_density", 1000);
    let worst = max_of(pts.iter().map(|p| {
        let exact = haar_density_closed_form(p);
        ((haar_density(p) - exact)
            .abs()
            .max((haar_density_right(p) - exact).abs()))
            / exact
    }));
    Ok((worst, 1e-9))
}

fn measure_volume(ctx: &VerifyContext) -> Result<(f64, f64)> {
    let r = volume_mc(ctx.size(100_000, 1_000_000), ctx.sub_seed("measure.volume"));
    Ok((
        r.z_score(Complex64::new(crate::measure::total_volume(), 0.0)),
        3.0,
    ))
}

fn measure_orthogonality(ctx: &VerifyContext) -> Result<(f64, f64)> {
    let r = orthogonality_suite(
        ctx.size(20_000, 100_000),
        ctx.sub_seed("measure.orthogonality"),
    );
    Ok((r.max_z(), r.sigma_bound))
}

fn measure_sin2_theta(ctx: &VerifyContext) -> Result<(f64, f64)> {
    let r = integrate(
        |g| {
            // sin²θ = 1 − |D₃₃|².
            Complex64::new(1.0 - g.matrix()[(2, 2)].norm_sqr(), 0.0)
        },
        ctx.size(20_000, 100_000),
        ctx.sub_seed("measure.sin2_theta"),
    );
    Ok((r.z_score(Complex64::new(2.0 / 3.0, 0.0)), 4.0))
}

fn states_constraints(ctx: &VerifyContext) -> Result<(f64, f64)> {
    let mut rng = ctx.rng("states.constraints");
    let worst = max_of((0..ctx.size(100, 500)).map(|_| {
        let s = project(&random_special_unitary(&mut rng));
        let r = s.residuals();
        r.n_norm
            .max(r.n_star)
            .max(r.idempotency)
            .max(r.hermiticity)
            .max(r.trace)
    }));
    Ok((worst, 1e-11))
}

fn states_two_routes(ctx: &VerifyContext) -> Result<(f64, f64)> {
    let mut rng = ctx.rng("states.two_routes");
    let worst = max_of((0..ctx.size(100, 500)).map(|_| {
        let g = random_special_unitary(&mut rng);
        project(&g).n.max_abs_diff(&coherence_from_adjoint(&g))
    }));
    Ok((worst, 1e-12))
}

fn states_stabilizer(ctx: &VerifyContext) -> Result<(f64, f64)> {
    let mut rng = ctx.rng("states.stabilizer");
    let worst = max_of((0..ctx.size(50, 200)).map(|_| {
        let p = CoveringBox.sample(&mut rng);
        let q = p
            .with(Coord::A, rng.random_range(0.0..PI))
            .with(Coord::B, rng.random_range(0.0..PI / 2.0))
            .with(Coord::C, rng.random_range(0.0..PI))
            .with(Coord::Phi, rng.random_range(0.0..2.0 * PI));
        crate::algebra::max_abs(&(project(&compose(&p)).rho - project(&compose(&q)).rho))
    }));
    Ok((worst, 1e-12))
}

fn states_star_base(_: &VerifyContext) -> Result<(f64, f64)> {
    let n = crate::states::base_state().n;
    Ok((star(&n, &n).max_abs_diff(&n), 1e-15))
}

fn phase_connection_fd(ctx: &VerifyContext) -> Result<(f64, f64)> {
    let pts = ctx.regular_points("phase.connection_fd", ctx.size(20, 100));
    let worst = max_of(pts.iter().map(|p| {
        let exact = connection(p).coeffs;
        let fd = connection_from_states(p, FD_STEP);
        max_of((0..8).map(|k| (exact[k] - fd[k]).abs()))
    }));
    Ok((worst, 1e-7))
}

fn phase_curvature_fd(ctx: &VerifyContext) -> Result<(f64, f64)> {
    let pts = ctx.regular_points("phase.curvature_fd", ctx.size(20, 100));
    let worst = max_of(pts.iter().map(|p| {
        let exact = curvature(p).f;
        let fd = exterior_derivative(|x| connection(x).coeffs, p, 1e-5);
        max_of((0..64).map(|k| (exact[k / 8][k % 8] - fd[k / 8][k % 8]).abs()))
    }));
    Ok((worst, 1e-6))
}

fn phase_gamma_circle_connection(_: &VerifyContext) -> Result<(f64, f64)> {
    let v = phase_connection(&gamma_circle(0.0, FRAC_PI_4, 10_000), false)?;
    Ok(((v - PI).abs(), 1e-6))
}

fn phase_gamma_circle_pancharatnam(_: &VerifyContext) -> Result<(f64, f64)> {
    let v = phase_pancharatnam(&gamma_circle(0.0, FRAC_PI_4, 10_000), false)?;
    Ok(((v - PI).abs(), 1e-4))
}

fn phase_stokes(ctx: &VerifyContext) -> Result<(f64, f64)> {
    let mut rng = ctx.rng("phase.stokes");
    let mut worst = 0.0f64;
    for _ in 0..ctx.size(3, 10) {
        let base = CoveringBox.sample(&mut rng);
        let t0 = rng.random_range(0.0..PI / 4.0);
        let t1 = rng.random_range(PI / 4.0..PI / 2.0);
        let g1 = rng.random_range(0.5..2.0 * PI);
        let rect = Rectangle::new(base, Coord::Theta, (t0, t1), Coord::Gamma, (0.0, g1), 4000)?;
        let line = phase_connection(&rect.boundary(), false)?;
        worst = worst.max((line - phase_curvature(&rect)).abs());
    }
    Ok((worst, 1e-6))
}

/// A closed loop through `k` random waypoints near a random base point.
pub fn random_loop(rng: &mut ChaCha8Rng, k: usize, samples_per_segment: usize) -> Result<LoopSpec> {
    let base = CoveringBox.sample(rng);
    let base = base
        .with(Coord::Beta, base.beta.clamp(0.3, 1.2))
        .with(Coord::Theta, base.theta.clamp(0.3, 1.2));
    let waypoints = (0..k)
        .map(|_| {
            let d: [f64; 8] = std::array::from_fn(|_| rng.random_range(-0.25..0.25));
            base.offset(&d, 1.0)
        })
        .collect();
    LoopSpec::closed_through(waypoints, samples_per_segment)
}

fn phase_agreement(ctx: &VerifyContext) -> Result<(f64, f64)> {
    let mut rng = ctx.rng("phase.agreement");
    let mut worst = 0.0f64;
    for _ in 0..ctx.size(3, 20) {
        let lp = random_loop(&mut rng, 4, 2500)?;
        let d = phase_connection(&lp, false)? - phase_pancharatnam(&lp, false)?;
        worst = worst.max(d.abs());
    }
    Ok((worst, 1e-4))
}

/// Threshold separating agreeing from flagged appendix entries.
pub const APPENDIX_TOL: f64 = 1e-10;
/// Seed of the reference audit the catalogue is compared against.
pub const APPENDIX_REFERENCE_SEED: u64 = 0;
/// Probe points per audit.
pub const APPENDIX_POINTS: usize = 20;

pub fn appendix_audit(seed: u64) -> Result<AppendixAudit> {
    audit(&probe_points(seed, APPENDIX_POINTS), APPENDIX_TOL)
}

/// Entries outside the catalogue stay below the tolerance, and the flagged
/// set matches the reference seed's. The residual is the worst agreeing
/// deviation, or infinity if the catalogue moved.
fn appendix_stability(ctx: &VerifyContext) -> Result<(f64, f64)> {
    let here = appendix_audit(ctx.sub_seed("cartan.appendix"))?;
    let reference = appendix_audit(APPENDIX_REFERENCE_SEED)?;
    let residual = if here.catalogue() == reference.catalogue() {
        here.max_agreeing_deviation
    } else {
        f64::INFINITY
    };
    Ok((residual, APPENDIX_TOL))
}

macro_rules! checks {
    ($($name:literal => $f:ident),* $(,)?) => {
        static CHECKS: &[FnCheck] = &[$(FnCheck { name: $name, run: $f }),*];
    };
}

checks! {
    "algebra.commutators" => algebra_commutators,
    "algebra.anticommutators" => algebra_anticommutators,
    "group.special_unitary" => group_special_unitary,
    "group.round_trip" => group_round_trip,
    "cartan.defining_relations" => cartan_defining_relations,
    "cartan.adjoint" => cartan_adjoint,
    "cartan.closure" => cartan_closure,
    "cartan.duality" => cartan_duality,
    "cartan.haar_density" => cartan_haar_density,
    "cartan.appendix" => appendix_stability,
    "measure.volume" => measure_volume,
    "measure.orthogonality" => measure_orthogonality,
    "measure.sin2_theta" => measure_sin2_theta,
    "states.base_star" => states_star_base,
    "states.constraints" => states_constraints,
    "states.two_routes" => states_two_routes,
    "states.stabilizer" => states_stabilizer,
    "phase.connection_fd" => phase_connection_fd,
    "phase.curvature_fd" => phase_curvature_fd,
    "phase.gamma_circle_connection" => phase_gamma_circle_connection,
    "phase.gamma_circle_pancharatnam" => phase_gamma_circle_pancharatnam,
    "phase.stokes" => phase_stokes,
    "phase.agreement" => phase_agreement,
}

pub fn checks() -> impl Iterator<Item = &'static dyn Check> {
    CHECKS.iter().map(|c| c as &dyn Check)
}

pub fn check_by_name(name: &str) -> Result<&'static dyn Check> {
    checks()
        .find(|c| c.name() == name)
        .ok_or_else(|| Error::UnknownStrategy {
            kind: "check",
            name: name.to_string(),
            available: checks().map(|c| c.name()).collect::<Vec<_>>().join(", "),
        })
}

#[derive(Debug, Clone, Serialize)]
pub struct VerifyReport {
    pub level: Level,
    pub seed: u64,
    pub tol_scale: f64,
    pub checks: Vec<CheckOutcome>,
    pub appendix_catalogue: Vec<Discrepancy>,
    pub pass: bool,
}

/// Runs one check; errors count as failures with an infinite residual.
pub fn run_check(check: &dyn Check, ctx: &VerifyContext) -> CheckOutcome {
    let (residual, threshold) = check.measure(ctx).unwrap_or((f64::INFINITY, 0.0));
    let threshold = threshold * ctx.tol_scale;
    CheckOutcome {
        name: check.name().to_string(),
        residual,
        threshold,
        pass: residual <= threshold,
    }
}

pub fn run(ctx: &VerifyContext) -> Result<VerifyReport> {
    if !(ctx.tol_scale.is_finite() && ctx.tol_scale > 0.0) {
        return Err(Error::InvalidInput(
            "tolerance multiplier must be positive".into(),
        ));
    }
    let outcomes: Vec<CheckOutcome> = checks().map(|c| run_check(c, ctx)).collect();
    let catalogue = appendix_audit(ctx.sub_seed("cartan.appendix"))?.discrepancies;
    Ok(VerifyReport {
        level: ctx.level,
        seed: ctx.seed,
        tol_scale: ctx.tol_scale,
        pass: outcomes.iter().all(|o| o.pass),
        checks: outcomes,
        appendix_catalogue: catalogue,
    })
}
