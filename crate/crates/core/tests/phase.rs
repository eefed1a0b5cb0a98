use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use su3_geometry::domain::{CoveringBox, FundamentalDomain};
use su3_geometry::group::{Coord, EulerAngles};
use su3_geometry::oracle::{
    connection_from_states, exterior_derivative, exterior_derivative_2form,
};
use su3_geometry::phase::{
    connection, curvature, gamma_circle, method_by_name, pancharatnam_from_states,
    phase_connection, phase_curvature, phase_pancharatnam, LoopSpec, PhaseOptions, Rectangle,
};
use su3_geometry::states::psi_of;
use su3_geometry::verify::random_loop;
use su3_geometry::Error;

fn regular_points(seed: u64, n: usize) -> Vec<EulerAngles> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n).map(|_| CoveringBox.sample(&mut rng)).collect()
}

#[test]
fn connection_matches_state_derivative() {
    for p in regular_points(1, 100) {
        let exact = connection(&p).coeffs;
        let fd = connection_from_states(&p, 1e-6);
        for k in 0..8 {
            assert!((exact[k] - fd[k]).abs() < 1e-7, "{p:?} component {k}");
        }
    }
}

#[test]
fn curvature_is_exterior_derivative_of_connection() {
    for p in regular_points(2, 100) {
        let exact = curvature(&p).f;
        let fd = exterior_derivative(|x| connection(x).coeffs, &p, 1e-5);
        for i in 0..8 {
            for j in 0..8 {
                assert!((exact[i][j] - fd[i][j]).abs() < 1e-6);
            }
        }
        assert!(exterior_derivative_2form(|x| curvature(x).f, &p, 1e-4) < 1e-5);
    }
}

#[test]
fn theta_zero_is_flat() {
    let f = curvature(&EulerAngles::default().with(Coord::Beta, 0.7));
    assert!(f.f.iter().flatten().all(|&v| v == 0.0));
}

#[test]
fn gamma_circle_closed_form() {
    for theta in [0.3, FRAC_PI_4, 1.2] {
        let lp = gamma_circle(0.0, theta, 10_000);
        let want = 2.0 * PI * theta.sin().powi(2);
        assert!((phase_connection(&lp, false).unwrap() - want).abs() < 1e-10);
        assert!((phase_pancharatnam(&lp, false).unwrap() - want).abs() < 1e-4);
    }
}

#[test]
fn stokes_on_theta_gamma_rectangles() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..10 {
        let base = CoveringBox.sample(&mut rng);
        let t1 = rng.random_range(0.1..FRAC_PI_2);
        let g1 = rng.random_range(0.1..2.0 * PI);
        let rect =
            Rectangle::new(base, Coord::Theta, (0.0, t1), Coord::Gamma, (0.0, g1), 2500).unwrap();
        let line = phase_connection(&rect.boundary(), false).unwrap();
        assert!((line - phase_curvature(&rect)).abs() < 1e-6);
        // ∫ sin2θ dθ dγ in closed form.
        assert!((line - g1 * t1.sin().powi(2)).abs() < 1e-10);
    }
    let full = Rectangle::new(
        EulerAngles::default(),
        Coord::Theta,
        (0.0, FRAC_PI_4),
        Coord::Gamma,
        (0.0, 2.0 * PI),
        2500,
    )
    .unwrap();
    assert!((phase_curvature(&full) - PI).abs() < 1e-6);
}

#[test]
fn stokes_on_other_planes() {
    let base = EulerAngles::from_array([0.0, 0.4, 0.0, 0.6, 0.1, 0.2, 0.3, 0.4]);
    for (u, ur, v, vr) in [
        (Coord::Beta, (0.2, 1.1), Coord::Alpha, (0.0, 2.0)),
        (Coord::Theta, (0.3, 1.3), Coord::Alpha, (0.5, 2.5)),
        (Coord::Alpha, (0.0, 1.0), Coord::B, (0.1, 0.9)),
    ] {
        let rect = Rectangle::new(base, u, ur, v, vr, 1000).unwrap();
        let line = phase_connection(&rect.boundary(), false).unwrap();
        assert!((line - phase_curvature(&rect)).abs() < 1e-5, "{u:?} {v:?}");
    }
}

#[test]
fn random_loops_agree() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for _ in 0..20 {
        let lp = random_loop(&mut rng, 5, 2000).unwrap();
        let c = phase_connection(&lp, false).unwrap();
        let p = phase_pancharatnam(&lp, false).unwrap();
        assert!((c - p).abs() < 1e-4, "{c} vs {p}");
    }
}

#[test]
fn trapezoid_converges_at_second_order() {
    let base = EulerAngles::from_array([0.0, 0.3, 0.0, 0.4, 0.0, 0.0, 0.0, 0.0]);
    let lp = |m: usize| {
        LoopSpec::closed_through(
            vec![
                base,
                base.with(Coord::Alpha, 1.5).with(Coord::Theta, 1.2),
                base.with(Coord::Beta, 1.1).with(Coord::Gamma, 2.0),
            ],
            m,
        )
        .unwrap()
    };
    let p: Vec<f64> = [50, 100, 200]
        .iter()
        .map(|&m| phase_connection(&lp(m), false).unwrap())
        .collect();
    let ratio = (p[0] - p[1]) / (p[1] - p[2]);
    assert!((3.5..4.5).contains(&ratio), "Richardson ratio {ratio}");
}

#[test]
fn reversal_negates_every_method() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let lp = random_loop(&mut rng, 4, 1000).unwrap();
    let rev = lp.reversed();
    let c = phase_connection(&lp, false).unwrap();
    assert!((c + phase_connection(&rev, false).unwrap()).abs() < 1e-12);
    let p = phase_pancharatnam(&lp, false).unwrap();
    assert!((p + phase_pancharatnam(&rev, false).unwrap()).abs() < 1e-12);

    let rect = Rectangle::new(
        EulerAngles::default(),
        Coord::Theta,
        (0.2, 1.0),
        Coord::Gamma,
        (0.0, 3.0),
        300,
    )
    .unwrap();
    let back = Rectangle::from_loop(&rect.boundary().reversed()).unwrap();
    assert!((phase_curvature(&rect) + phase_curvature(&back)).abs() < 1e-12);
}

#[test]
fn pancharatnam_is_gauge_invariant() {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let lp = random_loop(&mut rng, 4, 500).unwrap();
    let states: Vec<_> = lp.points().iter().map(psi_of).collect();
    let n = states.len() as f64;
    let regauged: Vec<_> = states
        .iter()
        .enumerate()
        .map(|(k, s)| {
            let t = k as f64 / n;
            s.scaled(Complex64::from_polar(
                1.0,
                0.7 + 2.0 * (2.0 * PI * t).sin() + 0.3 * (6.0 * PI * t).cos(),
            ))
        })
        .collect();
    let a = pancharatnam_from_states(&states).unwrap();
    let b = pancharatnam_from_states(&regauged).unwrap();
    assert!((a - b).abs() < 1e-12);
}

#[test]
fn dphi_term_is_optional() {
    let base = EulerAngles::default()
        .with(Coord::Theta, 0.8)
        .with(Coord::Beta, 0.3);
    let lp = LoopSpec::new(
        vec![base, base.with(Coord::Phi, 3f64.sqrt() * PI)],
        1000,
        true,
    )
    .unwrap();
    assert!(phase_connection(&lp, false).unwrap().abs() < 1e-12);
    assert!(phase_pancharatnam(&lp, false).unwrap().abs() < 1e-9);
    assert!((phase_connection(&lp, true).unwrap() + 2.0 * PI).abs() < 1e-10);
    assert!((phase_pancharatnam(&lp, true).unwrap() + 2.0 * PI).abs() < 1e-9);
}

#[test]
fn registry_dispatch_and_errors() {
    let lp = gamma_circle(0.0, FRAC_PI_4, 4000);
    let opts = PhaseOptions::default();
    for name in ["connection", "pancharatnam"] {
        let v = method_by_name(name).unwrap().phase(&lp, &opts).unwrap();
        assert!((v - PI).abs() < 1e-4);
    }
    // A two-waypoint circle is not a rectangle.
    assert!(matches!(
        method_by_name("curvature").unwrap().phase(&lp, &opts),
        Err(Error::InvalidLoop(_))
    ));
    let rect = Rectangle::new(
        EulerAngles::default(),
        Coord::Theta,
        (0.0, FRAC_PI_4),
        Coord::Gamma,
        (0.0, 2.0 * PI),
        2500,
    )
    .unwrap();
    let v = method_by_name("curvature")
        .unwrap()
        .phase(&rect.boundary(), &opts)
        .unwrap();
    assert!((v - PI).abs() < 1e-6);

    let p = EulerAngles::default().with(Coord::Theta, 0.5);
    let skew = LoopSpec::closed_through(
        vec![
            p,
            p.with(Coord::Alpha, 1.0).with(Coord::Beta, 0.2),
            p.with(Coord::Beta, 0.4),
            p.with(Coord::Alpha, 0.3),
        ],
        10,
    )
    .unwrap();
    assert!(Rectangle::from_loop(&skew).is_err());
}
