use lgsim::linalg::{
    dist_upto_phase, expm_i_hermitian, identity2, pauli, rot, sigma_x, sigma_y, sigma_z, ComplexMatrix,
    UnitVector3,
};
use num_complex::Complex64;
use proptest::prelude::*;

fn axis() -> impl Strategy<Value = UnitVector3> {
    (0.0..std::f64::consts::PI, 0.0..2.0 * std::f64::consts::PI)
        .prop_map(|(eta, xi)| UnitVector3::from_spherical(eta, xi))
}

fn any_2x2() -> impl Strategy<Value = ComplexMatrix> {
    prop::array::uniform8(-1.0..1.0f64).prop_map(|v| {
        ComplexMatrix::from_2x2(
            Complex64::new(v[0], v[1]),
            Complex64::new(v[2], v[3]),
            Complex64::new(v[4], v[5]),
            Complex64::new(v[6], v[7]),
        )
    })
}

fn taylor_exp(a: &ComplexMatrix, terms: usize) -> ComplexMatrix {
    let mut term = ComplexMatrix::identity(a.dim()).unwrap();
    let mut sum = term.clone();
    for k in 1..terms {
        term = (&term * a).scale_real(1.0 / k as f64);
        sum = &sum + &term;
    }
    sum
}

proptest! {
    #[test]
    fn rotations_are_unitary(n in axis(), angle in -10.0..10.0f64) {
        prop_assert!(rot(&n, angle).is_unitary(1e-12));
    }

    #[test]
    fn rotations_compose_about_a_fixed_axis(n in axis(), a in -5.0..5.0f64, b in -5.0..5.0f64) {
        let lhs = &rot(&n, a) * &rot(&n, b);
        prop_assert!(lhs.max_abs_diff(&rot(&n, a + b)) < 1e-12);
        prop_assert!(rot(&n, a).dagger().max_abs_diff(&rot(&n, -a)) < 1e-12);
    }

    #[test]
    fn kron_is_associative(a in any_2x2(), b in any_2x2(), c in any_2x2()) {
        let left = a.kron(&b).unwrap().kron(&c).unwrap();
        let right = a.kron(&b.kron(&c).unwrap()).unwrap();
        prop_assert!(left.max_abs_diff(&right) < 1e-14);
    }

    #[test]
    fn spectral_exponential_matches_taylor(n in axis(), c in -1.0..1.0f64, d in -0.5..0.5f64) {
        // H = c σn + d 𝟙 is hermitian with small norm, so 20 terms suffice.
        let h = &pauli(&n).scale_real(c) + &identity2().scale_real(d);
        let exact = expm_i_hermitian(&h, 1.0).unwrap();
        let series = taylor_exp(&h.scale(Complex64::new(0.0, 1.0)), 20);
        prop_assert!(exact.max_abs_diff(&series) < 1e-12);
    }

    #[test]
    fn phase_distance_ignores_global_phase(n in axis(), angle in -6.0..6.0f64, phase in 0.0..6.3f64) {
        let u = rot(&n, angle);
        let v = u.scale(Complex64::from_polar(1.0, phase));
        prop_assert!(dist_upto_phase(&u, &v).unwrap() < 1e-14);
    }
}

#[test]
fn pauli_algebra() {
    let (x, y, z) = (sigma_x(), sigma_y(), sigma_z());
    let i = Complex64::new(0.0, 1.0);
    assert!((&x * &y).max_abs_diff(&z.scale(i)) < 1e-15);
    assert!((&y * &z).max_abs_diff(&x.scale(i)) < 1e-15);
    assert!((&z * &x).max_abs_diff(&y.scale(i)) < 1e-15);
    assert!((&x * &x).max_abs_diff(&identity2()) < 1e-15);
}

#[test]
fn rotation_by_two_pi_is_minus_identity() {
    let r = rot(&UnitVector3::equatorial(0.4), 2.0 * std::f64::consts::PI);
    assert!(r.max_abs_diff(&(-&identity2())) < 1e-14);
}
