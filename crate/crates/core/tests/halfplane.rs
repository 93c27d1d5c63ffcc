mod reference;

use std::f64::consts::{PI, TAU};

use cpshift_core::halfplane::{
    gh_halfplane_closed, shift_halfplane, xi_halfplane, xi_halfplane_small_phi, HalfplaneGeometry,
};
use cpshift_core::{CylPoint, DipoleMeanSquares, Units};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use reference::values::*;

fn rel(a: f64, b: f64) -> f64 {
    ((a - b) / b).abs()
}

fn geom(rho: f64, phi: f64) -> HalfplaneGeometry {
    HalfplaneGeometry::new(rho, phi).unwrap()
}

#[test]
fn matches_high_precision_values() {
    let xi = xi_halfplane(&geom(1.0, PI / 2.0));
    assert!(rel(xi.xi_rho, XI_HALFPLANE_RHO_HALF_PI) < 1e-14);
    assert!(rel(xi.xi_phi, XI_HALFPLANE_PHI_HALF_PI) < 1e-14);
    assert!(rel(xi.xi_z, XI_HALFPLANE_Z_HALF_PI) < 1e-14);
    let xi = xi_halfplane(&geom(1.0, PI - 1e-6));
    assert!(rel(xi.xi_rho, XI_HALFPLANE_RHO_NEAR_PI) < 1e-8);
    assert!(rel(xi.xi_phi, XI_HALFPLANE_PHI_NEAR_PI) < 1e-8);
    assert!(rel(xi.xi_z, XI_HALFPLANE_Z_NEAR_PI) < 1e-8);
}

#[test]
fn closed_green_function_reference_value() {
    let a = CylPoint::new(1.0, PI / 2.0, 0.0);
    let b = CylPoint::new(1.0, PI / 2.0, 1.0);
    assert!(rel(gh_halfplane_closed(&a, &b).unwrap(), GH_HALFPLANE_REF) < 1e-14);
}

#[test]
fn mirror_symmetry() {
    // 2 pi - phi is exact for phi >= pi
    for &phi in &[PI, 3.5, 4.0, 5.0, 6.0, TAU - 0.01] {
        let a = xi_halfplane(&geom(1.3, phi));
        let b = xi_halfplane(&geom(1.3, TAU - phi));
        assert_eq!(a, b, "phi={phi}");
    }
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..50 {
        let p = CylPoint::new(rng.random_range(0.2..3.0), rng.random_range(0.05..TAU - 0.05), 0.0);
        let q = CylPoint::new(rng.random_range(0.2..3.0), rng.random_range(0.05..TAU - 0.05), 0.7);
        let pm = CylPoint::new(p.rho, TAU - p.phi, p.z);
        let qm = CylPoint::new(q.rho, TAU - q.phi, q.z);
        let g = gh_halfplane_closed(&p, &q).unwrap();
        let gm = gh_halfplane_closed(&pm, &qm).unwrap();
        assert!(rel(g, gm) < 1e-12, "{p:?} {q:?}");
    }
}

#[test]
fn smooth_through_phi_equal_pi() {
    let below = xi_halfplane(&geom(1.0, PI - 1e-6));
    let above = xi_halfplane(&geom(1.0, PI + 1e-6));
    assert!(below.max_relative_deviation(&above) < 1e-8);
    // the azimuthal coefficient vanishes quadratically at pi
    let e = 1e-3;
    let xi = xi_halfplane(&geom(1.0, PI - e));
    assert!(rel(xi.xi_phi, 7.0 * e * e / (480.0 * PI)) < 1e-5);
}

#[test]
fn positive_on_a_dense_grid() {
    for i in 1..4000 {
        let phi = TAU * i as f64 / 4000.0;
        let xi = xi_halfplane(&geom(1.0, phi));
        assert!(xi.xi_rho > 0.0 && xi.xi_z > 0.0, "phi={phi}");
        if i != 2000 {
            assert!(xi.xi_phi > 0.0, "phi={phi}: {}", xi.xi_phi);
        }
    }
    assert_eq!(xi_halfplane(&geom(1.0, PI)).xi_phi, 0.0);
}

#[test]
fn small_angle_limit() {
    let mut previous = f64::INFINITY;
    for &phi in &[0.04, 0.02, 0.01, 0.005] {
        let g = geom(1.0, phi);
        let dev = xi_halfplane(&g).max_relative_deviation(&xi_halfplane_small_phi(&g));
        assert!(dev < previous, "phi={phi}");
        previous = dev;
        if phi <= 0.01 {
            assert!(dev < 0.02, "phi={phi}: {dev}");
        }
    }
}

#[test]
fn energy_shift() {
    let g = geom(1.0, PI / 2.0);
    let zero = shift_halfplane(&g, &DipoleMeanSquares::default(), Units::Reduced);
    assert_eq!(zero.value, 0.0);
    let iso = DipoleMeanSquares::isotropic(1.0).unwrap();
    let e = shift_halfplane(&g, &iso, Units::Rationalized);
    let sum = XI_HALFPLANE_RHO_HALF_PI + XI_HALFPLANE_PHI_HALF_PI + XI_HALFPLANE_Z_HALF_PI;
    assert!(rel(e.value, -sum / (4.0 * PI)) < 1e-14);
    let mirrored = shift_halfplane(&geom(1.0, 3.0 * PI / 2.0), &iso, Units::Rationalized);
    assert!(rel(mirrored.value, e.value) < 1e-15);
}
