use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use su3_geometry::domain::{ClassicalBox, FundamentalDomain};
use su3_geometry::group::GroupElement;
use su3_geometry::measure::{
    integrate, orthogonality_suite, orthogonality_suite_in, sample_haar, sample_haar_in, volume_mc,
};
use su3_geometry::oracle::random_special_unitary;

/// Kolmogorov survival function `P(K > λ)`.
fn kolmogorov_sf(lambda: f64) -> f64 {
    if lambda < 0.2 {
        return 1.0;
    }
    let mut s = 0.0;
    for k in 1..100 {
        let kf = k as f64;
        let term = 2.0 * (-2.0 * kf * kf * lambda * lambda).exp();
        s += if k % 2 == 1 { term } else { -term };
        if term < 1e-16 {
            break;
        }
    }
    s.clamp(0.0, 1.0)
}

/// One-sample KS p-value against the uniform law on [0, 1].
fn ks_uniform_p(mut xs: Vec<f64>) -> f64 {
    xs.sort_by(f64::total_cmp);
    let n = xs.len() as f64;
    let d = xs
        .iter()
        .enumerate()
        .map(|(i, &x)| (x - i as f64 / n).max((i + 1) as f64 / n - x))
        .fold(0.0, f64::max);
    let sn = n.sqrt();
    kolmogorov_sf((sn + 0.12 + 0.11 / sn) * d)
}

fn sin4_theta(g: &GroupElement) -> f64 {
    (1.0 - g.matrix()[(2, 2)].norm_sqr()).powi(2)
}

#[test]
fn sin4_theta_is_uniform() {
    let angles: Vec<f64> = sample_haar(1, 100_000)
        .iter()
        .map(|s| s.angles.theta.sin().powi(4))
        .collect();
    assert!(ks_uniform_p(angles) > 0.01);

    // The same statistic read off independently drawn Haar matrices.
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let oracle: Vec<f64> = (0..100_000)
        .map(|_| sin4_theta(&random_special_unitary(&mut rng)))
        .collect();
    assert!(ks_uniform_p(oracle) > 0.01);
}

#[test]
fn ks_helper_rejects_a_skewed_sample() {
    let xs: Vec<f64> = (0..10_000).map(|i| (i as f64 / 10_000.0).powi(2)).collect();
    assert!(ks_uniform_p(xs) < 1e-6);
}

#[test]
fn mean_sin2_theta() {
    let r = integrate(
        |g| Complex64::new(1.0 - g.matrix()[(2, 2)].norm_sqr(), 0.0),
        100_000,
        3,
    );
    assert!(r.z_score(Complex64::new(2.0 / 3.0, 0.0)) < 3.0, "{r:?}");
}

#[test]
fn one_dimensional_quadrature_of_sin2_theta() {
    // ∫ sin²θ · 4 sin³θ cosθ dθ over [0, π/2] by the midpoint rule.
    let n = 100_000;
    let h = std::f64::consts::FRAC_PI_2 / n as f64;
    let s: f64 = (0..n)
        .map(|k| {
            let t = (k as f64 + 0.5) * h;
            4.0 * t.sin().powi(5) * t.cos()
        })
        .sum::<f64>()
        * h;
    assert!((s - 2.0 / 3.0).abs() < 1e-9);
}

#[test]
fn schur_examples() {
    let r = integrate(
        |g| g.matrix()[(0, 0)] * g.matrix()[(0, 0)].conj(),
        100_000,
        5,
    );
    assert!(r.z_score(Complex64::new(1.0 / 3.0, 0.0)) < 3.0, "{r:?}");
    let r = integrate(
        |g| g.matrix()[(0, 0)] * g.matrix()[(1, 1)].conj(),
        100_000,
        6,
    );
    assert!(r.z_score(Complex64::new(0.0, 0.0)) < 3.0, "{r:?}");

    let suite = orthogonality_suite(50_000, 4);
    assert!(suite.all_within_bound(), "max z {}", suite.max_z());
    assert_eq!(suite.get(0, 0, 0, 0).expected, 1.0 / 3.0);
    assert_eq!(suite.get(0, 1, 0, 2).expected, 0.0);
}

#[test]
fn orthogonality_error_shrinks_like_inverse_sqrt_n() {
    let rms = |n: usize, seeds: std::ops::Range<u64>| -> f64 {
        let k = seeds.end - seeds.start;
        let total: f64 = seeds
            .map(|s| {
                let r = orthogonality_suite(n, s);
                r.entries.iter().map(|e| e.residual.powi(2)).sum::<f64>() / r.entries.len() as f64
            })
            .sum();
        (total / k as f64).sqrt()
    };
    let ratio = rms(10_000, 0..4) / rms(40_000, 10..14);
    assert!((2.0 / 1.5..=2.0 * 1.5).contains(&ratio), "ratio {ratio}");
}

#[test]
fn classical_box_fails_orthogonality() {
    // The classical ranges reach only part of the group, which biases some
    // of these moments well beyond sampling noise.
    let r = orthogonality_suite_in(&ClassicalBox, 50_000, 2);
    assert!(r.max_z() > 10.0, "max z {}", r.max_z());
}

#[test]
fn volume_monte_carlo() {
    let r = volume_mc(1_000_000, 11);
    let exact = 0.5 * 3f64.sqrt() * std::f64::consts::PI.powi(5);
    assert!(r.z_score(Complex64::new(exact, 0.0)) < 3.0, "{r:?}");
    assert!((ClassicalBox.volume() - exact).abs() < 1e-12);
}

fn test_functions() -> Vec<fn(&GroupElement) -> f64> {
    vec![
        |g| g.matrix()[(0, 0)].re,
        |g| g.matrix()[(0, 1)].norm_sqr(),
        |g| (g.matrix()[(0, 0)] * g.matrix()[(1, 1)]).re,
        |g| g.matrix().trace().re,
        |g| g.matrix().trace().norm_sqr(),
        |g| (g.matrix()[(0, 2)] * g.matrix()[(2, 0)].conj()).re,
        |g| g.matrix()[(1, 2)].im,
        |g| g.matrix()[(2, 2)].norm_sqr().powi(2),
        |g| (g.matrix() * g.matrix()).trace().re,
        |g| g.matrix()[(0, 0)].powi(3).re,
    ]
}

#[test]
fn translation_invariance() {
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    let h = random_special_unitary(&mut rng);
    for (k, f) in test_functions().into_iter().enumerate() {
        let left = integrate(
            |g| Complex64::new(f(&(h * *g)) - f(g), 0.0),
            50_000,
            20 + k as u64,
        );
        let right = integrate(
            |g| Complex64::new(f(&(*g * h)) - f(g), 0.0),
            50_000,
            40 + k as u64,
        );
        assert!(
            left.z_score(Complex64::new(0.0, 0.0)) < 4.0,
            "left, function {k}: {left:?}"
        );
        assert!(
            right.z_score(Complex64::new(0.0, 0.0)) < 4.0,
            "right, function {k}: {right:?}"
        );
    }
}

#[test]
fn results_do_not_depend_on_worker_count() {
    let f = |g: &GroupElement| g.matrix()[(0, 1)] * g.matrix()[(2, 2)].conj();
    let run = |threads: usize| {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .unwrap()
            .install(|| integrate(f, 40_000, 17))
    };
    let one = run(1);
    assert_eq!(one, run(3));
    assert_eq!(one, run(8));
    let s1 = rayon::ThreadPoolBuilder::new()
        .num_threads(1)
        .build()
        .unwrap()
        .install(|| sample_haar_in(&ClassicalBox, 3, 20_000));
    assert_eq!(s1, sample_haar_in(&ClassicalBox, 3, 20_000));
}
