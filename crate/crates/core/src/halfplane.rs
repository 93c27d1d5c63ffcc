//! Atom near a perfectly conducting semi-infinite halfplane.
//!
//! The conductor occupies `phi = 0` (equivalently `2 pi`) in cylindrical
//! coordinates whose axis is the edge; field points have `0 < phi < 2 pi`.

use std::f64::consts::{PI, TAU};

use log::warn;

use crate::error::Result;
use crate::types::{energy_shift, CylPoint, DipoleMeanSquares, Energy, Units, XiTriple};

/// Distance `rho` from the edge and angle `phi` measured from the sheet.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HalfplaneGeometry {
    rho: f64,
    phi: f64,
}

impl HalfplaneGeometry {
    pub fn new(rho: f64, phi: f64) -> Result<Self> {
        CylPoint::new(rho, phi, 0.0).check_off_halfplane()?;
        Ok(Self { rho, phi })
    }

    pub fn rho(&self) -> f64 {
        self.rho
    }

    pub fn phi(&self) -> f64 {
        self.phi
    }
}

/// One image-like contribution of the closed form,
/// `1/(2D) + s atan(V/D)/(pi D)` with `V = sqrt(2 rho rho' (1 + cos a))`
/// and `s = outer * sgn(cos(a/2))`.
///
/// Writing `w = s V = 2 outer sqrt(rho rho') cos(a/2)` makes the sign
/// continuous across `cos(a/2) = 0`, and for `w < 0` the identity
/// `1/(2D) - atan(|w|/D)/(pi D) = atan(D/|w|)/(pi D)` keeps the term finite
/// as `D -> 0`.
fn image_term(p: f64, q: f64, dz: f64, alpha: f64, outer: f64) -> f64 {
    let half = 0.5 * alpha;
    let (sh, ch) = half.sin_cos();
    let pq = p * q;
    let dd = dz * dz + (p - q) * (p - q) + 4.0 * pq * sh * sh;
    let d = dd.sqrt();
    let w = 2.0 * outer * pq.sqrt() * ch;
    if w >= 0.0 {
        0.5 / d + (w / d).atan() / (PI * d)
    } else {
        let x = d / -w;
        if x < 1e-8 {
            (1.0 - x * x / 3.0) / (PI * -w)
        } else {
            x.atan() / (PI * d)
        }
    }
}

/// Homogeneous part of the Dirichlet Green's function; the total is
/// `1/(4 pi |r - r'|) + G_H`. Regular at `r = r'`.
pub fn gh_halfplane_closed(r: &CylPoint, r_prime: &CylPoint) -> Result<f64> {
    r.check_off_halfplane()?;
    r_prime.check_off_halfplane()?;
    let dz = r.z - r_prime.z;
    let plus = image_term(r.rho, r_prime.rho, dz, r.phi + r_prime.phi, 1.0);
    let minus = image_term(r.rho, r_prime.rho, dz, r.phi - r_prime.phi, -1.0);
    Ok(-(plus + minus) / (4.0 * PI))
}

/// Below this `|pi - phi|` the coefficients come from their Taylor series.
/// `Xi_phi` vanishes like `e^2` at `pi`, so the closed form loses about
/// `e^-4` in relative accuracy there; the series converges like
/// `(e/pi)^{2k}` and is truncated well below rounding at this radius.
const EXPANSION_RADIUS: f64 = 0.5;

/// `pi rho^3 Xi` about `phi = pi`: coefficients of `e^0, e^2, ..., e^24`,
/// `e = pi - phi`, from the exact rational expansion.
const EXPANSION: [[f64; 13]; 3] = [
    [
        0.20833333333333334,
        0.022916666666666665,
        0.0037450396825396827,
        0.0005596891534391535,
        7.96938882876383e-05,
        1.0924062480362083e-05,
        1.4496998804827839e-06,
        1.8715754828993526e-07,
        2.3605520040816813e-08,
        2.9191159914406114e-09,
        3.5497875005116077e-10,
        4.2551416473126076e-11,
        5.0378162410962245e-12,
    ],
    [
        0.0,
        0.014583333333333334,
        0.0038442460317460315,
        0.0007349537037037037,
        0.00012001525673400673,
        1.7847616402923943e-05,
        2.493772115444569e-06,
        3.3320896280880624e-07,
        4.3045928046523547e-08,
        5.416213080464325e-09,
        6.671979231512874e-10,
        8.077037889981522e-11,
        9.636663031649975e-12,
    ],
    [
        0.08333333333333333,
        0.0125,
        0.002529761904761905,
        0.00043154761904761905,
        6.656971500721501e-05,
        9.590559627762008e-06,
        1.3144906653091177e-06,
        1.7345550369958048e-07,
        2.2217149362446785e-08,
        2.778443023968312e-09,
        3.4072555773414943e-10,
        4.110726512431376e-11,
        4.8914930909154e-12,
    ],
];

/// `pi rho^3 (Xi_rho, Xi_phi, Xi_z)` as functions of `e = |pi - phi|`.
/// The closed forms are even in `e`, which is also the mirror symmetry
/// `phi -> 2 pi - phi`.
fn reduced_coefficients(e: f64) -> [f64; 3] {
    if e < EXPANSION_RADIUS {
        let e2 = e * e;
        return EXPANSION.map(|c| c.iter().rev().fold(0.0, |acc, &k| acc * e2 + k));
    }
    let (s, c) = e.sin_cos();
    let s2 = s * s;
    let s3 = s2 * s;
    [
        5.0 / 48.0 - c / (16.0 * s2) + e * (1.0 + s2) / (16.0 * s3),
        -1.0 / 48.0 - c / (8.0 * s2) + e * (1.0 + c * c) / (16.0 * s3),
        1.0 / 24.0 - c / (16.0 * s2) + e / (16.0 * s3),
    ]
}

/// The exact coefficients. `Xi_phi` is the coefficient of the dipole
/// component normal to the sheet in the plane limit.
pub fn xi_halfplane(geom: &HalfplaneGeometry) -> XiTriple {
    // fold onto (0, pi] first: for phi >= pi the subtraction is exact, so
    // mirror images give bit-identical results
    let phi = if geom.phi > PI { TAU - geom.phi } else { geom.phi };
    let e = PI - phi;
    let f = 1.0 / (PI * geom.rho.powi(3));
    let [a, b, c] = reduced_coefficients(e);
    XiTriple::exact(f * a, f * b, f * c)
}

/// Leading terms as `phi -> 0`: `(1/16, 1/8, 1/16) / (rho phi)^3`, the
/// plane result at distance `rho phi`. Angles past `pi` are mirrored.
pub fn xi_halfplane_small_phi(geom: &HalfplaneGeometry) -> XiTriple {
    let phi = if geom.phi > PI { TAU - geom.phi } else { geom.phi };
    if phi > 0.3 {
        warn!("small-angle halfplane limit used at phi = {phi}");
    }
    let d3 = (geom.rho * phi).powi(3);
    XiTriple::exact(1.0 / (16.0 * d3), 1.0 / (8.0 * d3), 1.0 / (16.0 * d3))
}

/// Energy shift of the atom; `units` selects the Coulomb prefactor.
pub fn shift_halfplane(geom: &HalfplaneGeometry, mu2: &DipoleMeanSquares, units: Units) -> Energy {
    energy_shift(&xi_halfplane(geom), mu2, units)
}
