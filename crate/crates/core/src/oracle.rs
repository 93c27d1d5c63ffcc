//! Independent checks on the main computations.
//!
//! These trade speed for independence: the Green's functions are summed from
//! their eigenfunction expansions rather than taken from closed forms, the
//! coefficients are recovered from a Green's function by finite differences,
//! and the half-integer Bessel summation identity is checked term by term.

use std::f64::consts::PI;

use log::warn;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::quadrature::{integrate, integrate_semi_infinite, sum_series, QuadResult, SeriesPolicy};
use crate::special::{
    bessel_j_half_sequence, bessel_j_integer_sequence, i_unchecked, k_unchecked, MAX_ORDER,
};
use crate::types::{Component, CylPoint, Point3, XiTriple};

/// Truncation of an eigenfunction series and accuracy of its `k` integrals.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct SeriesTruncation {
    /// Highest order kept.
    pub max_m: u32,
    /// Relative tolerance of the remaining `k` quadrature.
    pub k_rel_tol: f64,
    /// Accuracy the caller is aiming for; also sets the order cut-off of
    /// sums that converge geometrically.
    pub target_rel_err: f64,
}

impl Default for SeriesTruncation {
    fn default() -> Self {
        Self {
            max_m: 2000,
            k_rel_tol: 1e-11,
            target_rel_err: 1e-8,
        }
    }
}

impl SeriesTruncation {
    pub fn validate(&self) -> Result<()> {
        if self.max_m < 1 || self.max_m > MAX_ORDER {
            return Err(Error::invalid(format!(
                "max_m must lie in [1, {MAX_ORDER}], got {}",
                self.max_m
            )));
        }
        for (name, v) in [("k_rel_tol", self.k_rel_tol), ("target_rel_err", self.target_rel_err)] {
            if !(v > 0.0 && v < 1.0) {
                return Err(Error::invalid(format!("{name} must lie in (0, 1), got {v}")));
            }
        }
        Ok(())
    }

    /// Twice the orders and half the quadrature tolerance.
    pub fn refined(&self) -> Self {
        Self {
            max_m: (2 * self.max_m).min(MAX_ORDER),
            k_rel_tol: 0.5 * self.k_rel_tol,
            target_rel_err: self.target_rel_err,
        }
    }
}

/// An oracle value together with its convergence certificate.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Certified {
    /// Result at the refined truncation.
    pub value: f64,
    /// The larger of the refined run's own estimate and `change`.
    pub error_estimate: f64,
    /// `|refined - original|`.
    pub change: f64,
    /// Whether `change` stayed within the original run's error estimate.
    pub certified: bool,
}

/// Runs `f` at `trunc` and at [`SeriesTruncation::refined`]; the value is
/// certified when refining moves it by less than the first run's estimate.
pub fn certify<F>(f: F, trunc: &SeriesTruncation) -> Result<Certified>
where
    F: Fn(&SeriesTruncation) -> Result<QuadResult>,
{
    let coarse = f(trunc)?;
    let fine = f(&trunc.refined())?;
    let change = (fine.value - coarse.value).abs();
    let rounding = 8.0 * f64::EPSILON * fine.value.abs();
    Ok(Certified {
        value: fine.value,
        error_estimate: fine.abs_error_estimate.max(change),
        change,
        certified: change <= coarse.abs_error_estimate.max(rounding),
    })
}

/// Orders beyond this are negligible in a Bessel sum at argument `x`.
fn needed_orders(x: f64) -> u32 {
    (x + 15.0 * x.cbrt() + 20.0).ceil() as u32
}

/// The angular sum under the `k` integral of the halfplane series, and the
/// size of its last retained terms when the series had to be cut at `max_m`.
fn halfplane_spectrum(k: f64, p: f64, q: f64, sum: f64, diff: f64, max_m: u32) -> Result<(f64, f64)> {
    let natural = needed_orders(k * p.max(q));
    let top = natural.min(max_m);
    let (ip, iq) = (
        bessel_j_integer_sequence(top, k * p)?,
        bessel_j_integer_sequence(top, k * q)?,
    );
    let (hp, hq) = (
        bessel_j_half_sequence(top, k * p)?,
        bessel_j_half_sequence(top, k * q)?,
    );
    let mut s = 0.5 * ip[0] * iq[0] * 2.0;
    for m in 1..=top as usize {
        let mf = m as f64;
        s += ip[m] * iq[m] * ((mf * diff).cos() + (mf * sum).cos());
    }
    for n in 0..=top as usize {
        let nu = n as f64 + 0.5;
        s += hp[n] * hq[n] * ((nu * sum).cos() - (nu * diff).cos());
    }
    let t = top as usize;
    let tail = if natural > max_m {
        2.0 * ((ip[t] * iq[t]).abs() + (hp[t] * hq[t]).abs())
    } else {
        0.0
    };
    Ok((s, tail))
}

/// Homogeneous halfplane Green's function from its eigenfunction expansion,
///
/// `G_H = -(1/4pi) int_0^inf dk e^{-k|z - z'|} { sum'_m J_m J_m [cos m(phi - phi') + cos m(phi + phi')]
///        + sum_m J_{m+1/2} J_{m+1/2} [cos (m+1/2)(phi + phi') - cos (m+1/2)(phi - phi')] }`
///
/// with the Bessel functions at `k rho` and `k rho'`. The error estimate
/// combines the quadrature estimate with the size of the terms cut at
/// `max_m`. Needs `z != z'`: at equal heights the integral converges only
/// conditionally.
pub fn gh_halfplane_series(r: &CylPoint, r_prime: &CylPoint, trunc: &SeriesTruncation) -> Result<QuadResult> {
    r.check_off_halfplane()?;
    r_prime.check_off_halfplane()?;
    trunc.validate()?;
    let dz = (r.z - r_prime.z).abs();
    let scale = r.rho.max(r_prime.rho);
    if dz < 1e-3 * scale {
        warn!("halfplane series at |z - z'| = {dz}: the k integral converges slowly");
    }
    let decay = 1.0 / dz.max(1e-3 * scale);
    let (p, q) = (r.rho, r_prime.rho);
    let (sum, diff) = (r.phi + r_prime.phi, r.phi - r_prime.phi);
    let mut failure = None;
    let mut tails = Vec::new();
    let main = integrate_semi_infinite(
        |k| match halfplane_spectrum(k, p, q, sum, diff, trunc.max_m) {
            Ok((s, tail)) => {
                let w = (-k * dz).exp();
                if tail > 0.0 {
                    tails.push(w * tail);
                }
                w * s
            }
            Err(e) => {
                failure.get_or_insert(e);
                0.0
            }
        },
        decay,
        trunc.k_rel_tol,
        1e-16,
    );
    if let Some(e) = failure {
        return Err(e.context("halfplane series spectrum"));
    }
    let main = main.map_err(|e| e.context("k integral of the halfplane series"))?;
    // the truncation estimate is crude: the largest cut term times the
    // width of the k range that carries the integral
    let truncation = tails.iter().copied().fold(0.0, f64::max) * decay;
    let f = 1.0 / (4.0 * PI);
    Ok(QuadResult {
        value: -f * main.value,
        abs_error_estimate: f * (main.abs_error_estimate + truncation),
        evaluations: main.evaluations,
    })
}

/// Homogeneous Green's function outside a conducting cylinder of radius `R`
/// from its eigenfunction expansion,
///
/// `G_H = -(1/pi^2) sum'_m cos m(phi - phi') int_0^inf cos k(z - z') I_m(kR)/K_m(kR) K_m(k rho) K_m(k rho') dk`.
///
/// One point may lie on the surface, which is how the Dirichlet condition is
/// checked.
pub fn gh_wire_series(r: &CylPoint, r_prime: &CylPoint, radius: f64, trunc: &SeriesTruncation) -> Result<QuadResult> {
    trunc.validate()?;
    if !(radius > 0.0 && radius.is_finite()) {
        return Err(Error::invalid(format!("wire radius must be > 0, got {radius}")));
    }
    for p in [r, r_prime] {
        if !(p.rho.is_finite() && p.phi.is_finite() && p.z.is_finite()) {
            return Err(Error::invalid(format!("non-finite point {p:?}")));
        }
        if p.rho < radius {
            return Err(Error::invalid(format!("point inside the wire: rho = {} < R = {radius}", p.rho)));
        }
    }
    let gap = (r.rho - radius) + (r_prime.rho - radius);
    if gap <= 0.0 {
        return Err(Error::invalid("both points lie on the wire surface"));
    }
    let (p, q, dz, dphi) = (r.rho, r_prime.rho, r.z - r_prime.z, r.phi - r_prime.phi);
    let policy = SeriesPolicy {
        rel_tail_tol: 1e-2 * trunc.target_rel_err,
        min_terms: 8,
        max_terms: trunc.max_m + 1,
        consecutive_below: 3,
    };
    let sum = sum_series(
        |m| {
            let angular = (f64::from(m) * dphi).cos();
            let radial = integrate_semi_infinite(
                |k| {
                    if k == 0.0 {
                        return 0.0;
                    }
                    let v = i_unchecked(m, k * radius) / k_unchecked(m, k * radius)
                        * k_unchecked(m, k * p)
                        * k_unchecked(m, k * q);
                    (k * dz).cos() * v.value()
                },
                1.0 / gap,
                trunc.k_rel_tol,
                1e-18,
            )?;
            Ok(QuadResult {
                value: angular * radial.value,
                abs_error_estimate: angular.abs() * radial.abs_error_estimate,
                evaluations: radial.evaluations,
            })
        },
        0,
        &policy,
        true,
    )
    .map_err(|e| e.context("wire eigenfunction series"))?;
    let f = 1.0 / (PI * PI);
    Ok(QuadResult {
        value: -f * sum.value,
        abs_error_estimate: f * sum.abs_error_estimate,
        evaluations: sum.evaluations,
    })
}

/// Homogeneous Green's function of the grounded plane `x = plane_offset`,
/// vacuum at `x > plane_offset`: minus the potential of the image of `r'`.
pub fn gh_plane_image(r: &Point3, r_prime: &Point3, plane_offset: f64) -> Result<f64> {
    for p in [r, r_prime] {
        if !(p.x > plane_offset) || !p.y.is_finite() || !p.z.is_finite() || !p.x.is_finite() {
            return Err(Error::invalid(format!(
                "point {p:?} is not on the vacuum side of the plane x = {plane_offset}"
            )));
        }
    }
    let image = Point3::new(2.0 * plane_offset - r_prime.x, r_prime.y, r_prime.z);
    Ok(-1.0 / (4.0 * PI * r.distance(image)))
}

/// Relative disagreement between the two Richardson levels above which the
/// step is rejected.
const RICHARDSON_TOLERANCE: f64 = 1e-3;

/// `at` moved by `s` along the unit vector of `component`; the `phi` move is
/// along the arc, which leaves the mixed derivative at `s = s' = 0` unchanged.
fn displaced(at: &CylPoint, component: Component, s: f64) -> CylPoint {
    match component {
        Component::Rho => CylPoint::new(at.rho + s, at.phi, at.z),
        Component::Phi => CylPoint::new(at.rho, at.phi + s / at.rho, at.z),
        Component::Z => CylPoint::new(at.rho, at.phi, at.z + s),
    }
}

/// Central-difference estimate of `d_i d'_i G_H` at coincidence.
fn mixed_difference<G>(gh: &G, at: &CylPoint, c: Component, h: f64) -> Result<f64>
where
    G: Fn(&CylPoint, &CylPoint) -> Result<f64>,
{
    let (a, b) = (displaced(at, c, h), displaced(at, c, -h));
    let pp = gh(&a, &a)?;
    let pm = gh(&a, &b)?;
    let mp = gh(&b, &a)?;
    let mm = gh(&b, &b)?;
    Ok(((pp - pm) - (mp - mm)) / (4.0 * h * h))
}

/// Coefficients `Xi_i = -2 pi d_i d'_i G_H(r, r')` at `r = r' = at`, by a
/// mixed central difference along the physical (arc-length) directions at
/// steps `h`, `h/2`, `h/4`, extrapolated twice. With this sign convention
/// the energy shift is `-(1/4 pi eps0) sum_i Xi_i <mu_i^2>` and the plane
/// gives `Xi = 1/(8 d^3)` for the normal component.
///
/// Fails with [`Error::StepTooLarge`] when the two first-level
/// extrapolations disagree by more than `1e-3` relative to the largest
/// component.
pub fn xi_via_finite_difference<G>(gh: G, at: &CylPoint, step: f64) -> Result<XiTriple>
where
    G: Fn(&CylPoint, &CylPoint) -> Result<f64>,
{
    if !(step > 0.0 && step.is_finite()) {
        return Err(Error::invalid(format!("step must be > 0, got {step}")));
    }
    if step >= 0.5 * at.rho {
        return Err(Error::invalid(format!(
            "step {step} too large for rho = {}",
            at.rho
        )));
    }
    let mut first = [0.0; 3];
    let mut second = [0.0; 3];
    for (i, c) in Component::ALL.into_iter().enumerate() {
        let d: Vec<f64> = [step, 0.5 * step, 0.25 * step]
            .iter()
            .map(|&h| mixed_difference(&gh, at, c, h))
            .collect::<Result<_>>()
            .map_err(|e| e.context(format!("finite difference for Xi_{}", c.name())))?;
        first[i] = (4.0 * d[1] - d[0]) / 3.0;
        second[i] = (4.0 * d[2] - d[1]) / 3.0;
    }
    let scale = second.iter().fold(0.0f64, |a, v| a.max(v.abs()));
    let disagreement = first
        .iter()
        .zip(&second)
        .map(|(a, b)| (a - b).abs())
        .fold(0.0, f64::max)
        / scale;
    if !(disagreement <= RICHARDSON_TOLERANCE) {
        return Err(Error::StepTooLarge { disagreement });
    }
    let mut xi = XiTriple::default();
    for (i, c) in Component::ALL.into_iter().enumerate() {
        let best = (16.0 * second[i] - first[i]) / 15.0;
        let err = (second[i] - first[i]).abs() / 15.0;
        xi.set(c, -2.0 * PI * best, 2.0 * PI * err);
    }
    Ok(xi)
}

fn check_halfinteger_args(k: f64, rho: f64, rho_prime: f64, alpha: f64) -> Result<()> {
    for (name, v) in [("k", k), ("rho", rho), ("rho'", rho_prime)] {
        if !(v > 0.0 && v.is_finite()) {
            return Err(Error::invalid(format!("{name} must be > 0, got {v}")));
        }
    }
    if !alpha.is_finite() {
        return Err(Error::invalid(format!("alpha must be finite, got {alpha}")));
    }
    Ok(())
}

/// `sum_{m=0}^{max_m} J_{m+1/2}(k rho) J_{m+1/2}(k rho') cos((m+1/2) alpha)`
/// for any `alpha`. The sum changes sign under `alpha -> 2 pi - alpha`.
pub fn halfinteger_sum_lhs(k: f64, rho: f64, rho_prime: f64, alpha: f64, max_m: u32) -> Result<f64> {
    check_halfinteger_args(k, rho, rho_prime, alpha)?;
    let a = bessel_j_half_sequence(max_m, k * rho)?;
    let b = bessel_j_half_sequence(max_m, k * rho_prime)?;
    Ok(a.iter()
        .zip(&b)
        .enumerate()
        .map(|(m, (x, y))| x * y * ((m as f64 + 0.5) * alpha).cos())
        .sum())
}

/// `(1/pi) int_{t1}^{t2} sin t / sqrt(t^2 - t1^2) dt` with
/// `t1 = k |r - r'|` (in-plane distance at angle `alpha`) and
/// `t2 = k (rho + rho')`. The substitution `t^2 = t1^2 + v^2` removes the
/// endpoint singularity. Periodic in `alpha` with period `2 pi`.
pub fn halfinteger_sum_rhs(k: f64, rho: f64, rho_prime: f64, alpha: f64) -> Result<f64> {
    check_halfinteger_args(k, rho, rho_prime, alpha)?;
    let (s, c) = (0.5 * alpha).sin_cos();
    let pq = rho * rho_prime;
    let t1 = k * ((rho - rho_prime).powi(2) + 4.0 * pq * s * s).sqrt();
    let v_max = 2.0 * k * pq.sqrt() * c.abs();
    if v_max == 0.0 {
        return Ok(0.0);
    }
    let q = integrate(
        |v| {
            let t = t1.hypot(v);
            if t == 0.0 {
                1.0
            } else {
                t.sin() / t
            }
        },
        0.0,
        v_max,
        1e-12,
        1e-15,
    )?;
    Ok(q.value / PI)
}

/// Both sides of the half-integer Bessel summation identity, which holds
/// for `0 <= alpha <= pi` only.
pub fn check_halfinteger_sum(k: f64, rho: f64, rho_prime: f64, alpha: f64, max_m: u32) -> Result<(f64, f64)> {
    if !(0.0..=PI).contains(&alpha) {
        return Err(Error::invalid(format!(
            "the summation identity holds for alpha in [0, pi], got {alpha}"
        )));
    }
    let lhs = halfinteger_sum_lhs(k, rho, rho_prime, alpha, max_m)?;
    let rhs = halfinteger_sum_rhs(k, rho, rho_prime, alpha)?;
    Ok((lhs, rhs))
}
