use proptest::prelude::*;

use su3_geometry::algebra::{expand, star, GellMannBasis};
use su3_geometry::cartan::FrameAtPoint;
use su3_geometry::domain::{ClassicalBox, CoveringBox, FundamentalDomain};
use su3_geometry::group::{adjoint, compose, decompose, EulerAngles};
use su3_geometry::states::{coherence_from_adjoint, project, psi_of};
use su3_geometry::AlgebraVector;

fn vec8() -> impl Strategy<Value = [f64; 8]> {
    prop::array::uniform8(-3.0f64..3.0)
}

fn covering_angles() -> impl Strategy<Value = EulerAngles> {
    let r = CoveringBox.ranges();
    (
        r[0].0..r[0].1,
        r[1].0..r[1].1,
        r[2].0..r[2].1,
        r[3].0..r[3].1,
        r[4].0..r[4].1,
        r[5].0..r[5].1,
        r[6].0..r[6].1,
        r[7].0..r[7].1,
    )
        .prop_map(|(a, b, c, d, e, f, g, h)| EulerAngles::from_array([a, b, c, d, e, f, g, h]))
}

fn any_angles() -> impl Strategy<Value = EulerAngles> {
    prop::array::uniform8(-10.0f64..10.0).prop_map(EulerAngles::from_array)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn expand_inverts_combine(re in vec8(), im in vec8()) {
        let m = GellMannBasis::get().combine_complex(&AlgebraVector(re), &AlgebraVector(im));
        let (r, i) = expand(&m).unwrap();
        prop_assert!(r.max_abs_diff(&AlgebraVector(re)) < 1e-13);
        prop_assert!(i.max_abs_diff(&AlgebraVector(im)) < 1e-13);
    }

    #[test]
    fn star_is_symmetric_and_bilinear(a in vec8(), b in vec8(), s in -2.0f64..2.0) {
        let (a, b) = (AlgebraVector(a), AlgebraVector(b));
        prop_assert!(star(&a, &b).max_abs_diff(&star(&b, &a)) < 1e-13);
        prop_assert!(star(&(a * s), &b).max_abs_diff(&(star(&a, &b) * s)) < 1e-12);
    }

    #[test]
    fn compose_is_special_unitary(x in any_angles()) {
        let g = compose(&x);
        prop_assert!(g.unitarity_residual() < 1e-13);
        prop_assert!(g.determinant_residual() < 1e-13);
    }

    #[test]
    fn decompose_round_trips_any_angles(x in any_angles()) {
        let g = compose(&x);
        let d = decompose(&g);
        prop_assert!(CoveringBox.contains(&d.angles));
        prop_assert_eq!(d.in_classical_box, ClassicalBox.contains(&d.angles));
        prop_assert!(compose(&d.angles).max_abs_diff(&g) < 1e-10);
    }

    #[test]
    fn decompose_recovers_regular_angles(x in covering_angles()) {
        prop_assume!([x.beta, x.b, x.theta].iter().all(|v| (2.0 * v).sin().abs() > 1e-3));
        let d = decompose(&compose(&x));
        prop_assert!(d.strata.is_empty());
        prop_assert!(d.angles.max_abs_diff(&x) < 1e-8, "{:?} vs {:?}", d.angles, x);
    }

    #[test]
    fn adjoint_reverses_products(x in any_angles(), y in any_angles()) {
        // R_ij = Tr(gλ_i g†λ_j)/2 acts on row vectors, so R(gh) = R(h)R(g).
        let (g, h) = (compose(&x), compose(&y));
        let lhs = adjoint(&(g * h));
        let rhs = adjoint(&h) * adjoint(&g);
        prop_assert!((lhs - rhs).abs().max() < 1e-12);
        let r = adjoint(&g);
        prop_assert!((r * r.transpose() - su3_geometry::Mat8::identity()).abs().max() < 1e-13);
    }

    #[test]
    fn frames_are_dual(x in covering_angles()) {
        prop_assume!([x.beta, x.b, x.theta].iter().all(|v| (2.0 * v).sin().abs() > 1e-2));
        let f = FrameAtPoint::new(&x).unwrap();
        prop_assert!(f.duality_residual() < 1e-10);
        prop_assert!(f.adjoint_residual() < 1e-10);
    }

    #[test]
    fn projected_states_are_pure(x in any_angles()) {
        let g = compose(&x);
        let s = project(&g);
        let r = s.residuals();
        prop_assert!(r.max_identity_residual() < 1e-12);
        prop_assert!(r.min_eigenvalue > -1e-10);
        let e = s.eigenvalues();
        prop_assert!(e[0].abs() < 1e-10 && e[1].abs() < 1e-10 && (e[2] - 1.0).abs() < 1e-10);
        prop_assert!(s.n.max_abs_diff(&coherence_from_adjoint(&g)) < 1e-12);
    }

    #[test]
    fn psi_moduli(x in any_angles()) {
        let psi = psi_of(&x).psi;
        prop_assert!((psi[0].norm() - (x.beta.cos() * x.theta.sin()).abs()) < 1e-13);
        prop_assert!((psi[1].norm() - (x.beta.sin() * x.theta.sin()).abs()) < 1e-13);
        prop_assert!((psi[2].norm() - x.theta.cos().abs()) < 1e-13);
    }

    #[test]
    fn fibre_coordinates_leave_rho_alone(x in any_angles(), fibre in prop::array::uniform4(-6.0f64..6.0)) {
        let mut y = x;
        y.a = fibre[0];
        y.b = fibre[1];
        y.c = fibre[2];
        y.phi = fibre[3];
        let d = project(&compose(&x)).rho - project(&compose(&y)).rho;
        prop_assert!(d.iter().all(|z| z.norm() < 1e-12));
    }
}
