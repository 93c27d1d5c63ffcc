//! Atom outside a perfectly conducting cylinder of radius `R`.
//!
//! The coefficients are sums over the azimuthal order `m` of integrals over
//! the axial wave number `k`:
//!
//! ```text
//! Xi_rho = (2/pi)       sum'_{m>=0}     int k^2 I_m(kR)/K_m(kR) K_m'(k rho)^2 dk
//! Xi_phi = (2/pi rho^2) sum_{m>=1} m^2  int       I_m(kR)/K_m(kR) K_m(k rho)^2  dk
//! Xi_z   = (2/pi)       sum'_{m>=0}     int k^2 I_m(kR)/K_m(kR) K_m(k rho)^2  dk
//! ```
//!
//! (`'` halves the `m = 0` term). Everything is evaluated in units where
//! `rho = 1` and rescaled by `rho^-3` at the end, so the result depends on
//! `R / rho` only and scales exactly under `(R, rho) -> (sR, s rho)`.

use std::f64::consts::PI;

use log::warn;

use crate::error::{Error, Result};
use crate::quadrature::{integrate_semi_infinite, sum_series, QuadResult};
use crate::special::{i_unchecked, k_prime_unchecked, k_unchecked, ScaledValue, MAX_ORDER};
use crate::types::{energy_shift, Component, DipoleMeanSquares, Energy, NumericsConfig, Units, XiTriple};

/// Wire radius and the atom's distance from the wire axis.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WireGeometry {
    radius: f64,
    rho: f64,
    gap: f64,
}

impl WireGeometry {
    pub fn new(radius: f64, rho: f64) -> Result<Self> {
        Self::validate(radius, rho, rho - radius)
    }

    /// Geometry from the radius and the atom-surface gap `d = rho - R`.
    pub fn from_gap(radius: f64, gap: f64) -> Result<Self> {
        Self::validate(radius, radius + gap, gap)
    }

    fn validate(radius: f64, rho: f64, gap: f64) -> Result<Self> {
        if !(radius.is_finite() && radius > 0.0) {
            return Err(Error::invalid(format!("wire radius must be > 0, got {radius}")));
        }
        if !(rho.is_finite() && gap.is_finite()) {
            return Err(Error::invalid("atom position must be finite"));
        }
        if !(gap > 0.0 && rho > radius) {
            return Err(Error::invalid(format!(
                "atom must lie outside the wire: rho = {rho} <= R = {radius}"
            )));
        }
        Ok(Self { radius, rho, gap })
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }

    pub fn rho(&self) -> f64 {
        self.rho
    }

    /// `d = rho - R`.
    pub fn gap(&self) -> f64 {
        self.gap
    }

    /// `R / rho`, in `(0, 1)`.
    pub fn ratio(&self) -> f64 {
        self.radius / self.rho
    }

    /// `d / rho`, computed without cancellation.
    fn relative_gap(&self) -> f64 {
        self.gap / self.rho
    }
}

/// `I_m(a)/K_m(a) * K_m(b)^2` with `b > a`; the `exp(2a - 2b)` factor is
/// carried in the log scale.
fn ratio_k_squared(m: u32, a: f64, kb: ScaledValue) -> ScaledValue {
    i_unchecked(m, a) / k_unchecked(m, a) * kb.square()
}

/// The `k`-integrand of order `m` for one component, in units `rho = 1`.
fn integrand(component: Component, m: u32, r: f64, k: f64) -> f64 {
    if k == 0.0 {
        return 0.0;
    }
    let kr = k * r;
    match component {
        Component::Z => k * k * ratio_k_squared(m, kr, k_unchecked(m, k)).value(),
        Component::Phi => {
            let mf = f64::from(m);
            mf * mf * ratio_k_squared(m, kr, k_unchecked(m, k)).value()
        }
        Component::Rho => k * k * ratio_k_squared(m, kr, k_prime_unchecked(m, k)).value(),
    }
}

fn check_order(m: u32) -> Result<()> {
    if m + 1 > MAX_ORDER {
        return Err(Error::invalid(format!(
            "order {m} exceeds the supported Bessel order {MAX_ORDER}"
        )));
    }
    Ok(())
}

/// The `k`-integral of order `m` in units `rho = 1`, without prefactors.
fn kappa_integral(
    component: Component,
    m: u32,
    r: f64,
    rel_gap: f64,
    cfg: &NumericsConfig,
) -> Result<QuadResult> {
    check_order(m)?;
    integrate_semi_infinite(
        |k| integrand(component, m, r, k),
        0.5 / rel_gap,
        cfg.rel_tol,
        cfg.abs_tol,
    )
}

/// Contribution of the single order `m` to `Xi_component`, prefactor and
/// prime weight included. `Xi_phi` has no `m = 0` term.
pub fn xi_wire_term(
    geom: &WireGeometry,
    component: Component,
    m: u32,
    cfg: &NumericsConfig,
) -> Result<QuadResult> {
    cfg.validate()?;
    let rho3 = geom.rho.powi(3);
    let weight = match (component, m) {
        (Component::Phi, 0) => {
            return Ok(QuadResult::default());
        }
        (_, 0) => 1.0 / PI,
        _ => 2.0 / PI,
    };
    let q = kappa_integral(component, m, geom.ratio(), geom.relative_gap(), cfg)?;
    Ok(QuadResult {
        value: weight * q.value / rho3,
        abs_error_estimate: weight * q.abs_error_estimate / rho3,
        evaluations: q.evaluations,
    })
}

fn xi_component_exact(
    geom: &WireGeometry,
    component: Component,
    cfg: &NumericsConfig,
) -> Result<QuadResult> {
    let (r, g) = (geom.ratio(), geom.relative_gap());
    let (first, prime) = match component {
        Component::Phi => (1, false),
        _ => (0, true),
    };
    let sum = sum_series(
        |m| kappa_integral(component, m, r, g, cfg),
        first,
        &cfg.series,
        prime,
    )
    .map_err(|e| e.context(format!("Xi_{} at R = {}, rho = {}", component.name(), geom.radius, geom.rho)))?;
    let f = 2.0 / (PI * geom.rho.powi(3));
    Ok(QuadResult {
        value: f * sum.value,
        abs_error_estimate: f * sum.abs_error_estimate,
        evaluations: sum.evaluations,
    })
}

/// The exact coefficients, summing orders until the series policy's tail
/// criterion is met.
pub fn xi_wire_exact(geom: &WireGeometry, cfg: &NumericsConfig) -> Result<XiTriple> {
    cfg.validate()?;
    let mut xi = XiTriple::default();
    for c in Component::ALL {
        let q = xi_component_exact(geom, c, cfg)?;
        xi.set(c, q.value, q.abs_error_estimate);
    }
    Ok(xi)
}

/// First summand of each sum: `m = 0` for `Xi_rho`, `Xi_z` and `m = 1` for
/// `Xi_phi`. Accurate on its own once `d/R` is large.
pub fn xi_wire_single_term(geom: &WireGeometry, cfg: &NumericsConfig) -> Result<XiTriple> {
    let mut xi = XiTriple::default();
    for c in Component::ALL {
        let m = if c == Component::Phi { 1 } else { 0 };
        let q = xi_wire_term(geom, c, m, cfg)?;
        xi.set(c, q.value, q.abs_error_estimate);
    }
    Ok(xi)
}

fn check_ratio(r: f64) -> Result<()> {
    if !(r > 0.0 && r < 1.0) {
        return Err(Error::invalid(format!("R/rho must lie in (0, 1), got {r}")));
    }
    Ok(())
}

/// `ln A(x)` in terms of the relative gap `delta = 1 - r`, free of the
/// cancellations in `1 - r` and `sqrt(1+x^2) - sqrt(1+x^2 r^2)`.
fn ln_a_kernel(x: f64, r: f64, delta: f64) -> f64 {
    let a = x.hypot(1.0);
    let b = (x * r).hypot(1.0);
    // a - b = x^2 (1 - r^2) / (a + b)
    let diff = x * x * delta * (1.0 + r) / (a + b);
    2.0 * (-delta).ln_1p() - 2.0 * diff + 2.0 * (diff / (1.0 + b)).ln_1p()
}

/// Kernel of the resummed large-order contributions,
///
/// `A(x) = r^2 exp(-2 (sqrt(1+x^2) - sqrt(1+x^2 r^2))) ((1 + sqrt(1+x^2)) / (1 + sqrt(1+x^2 r^2)))^2`
///
/// with `r = R / rho`. Lies in `(0, 1)`, equals `r^2` at `x = 0`.
pub fn a_kernel(x: f64, r: f64) -> Result<f64> {
    check_ratio(r)?;
    if !(x >= 0.0) {
        return Err(Error::invalid(format!("x must be >= 0, got {x}")));
    }
    if x.is_infinite() {
        return Ok(0.0);
    }
    Ok(ln_a_kernel(x, r, 1.0 - r).exp())
}

/// `A (A + 1) / (1 - A)^3` given `ln A`.
fn resummed_kernel(ln_a: f64) -> f64 {
    let a = ln_a.exp();
    let one_minus = -ln_a.exp_m1();
    a * (a + 1.0) / (one_minus * one_minus * one_minus)
}

/// The uniform-asymptotic approximation: the `m = 0` term kept exactly for
/// `Xi_rho`, `Xi_z`, and all higher orders resummed through [`a_kernel`].
pub fn xi_wire_asymptotic(geom: &WireGeometry, cfg: &NumericsConfig) -> Result<XiTriple> {
    cfg.validate()?;
    let r = geom.ratio();
    let delta = geom.relative_gap();
    let rho3 = geom.rho.powi(3);
    let mut xi = XiTriple::default();
    for c in Component::ALL {
        let weight = |x: f64| -> f64 {
            let a = x.hypot(1.0);
            match c {
                Component::Rho => a,
                Component::Phi => 1.0 / a,
                Component::Z => x * x / a,
            }
        };
        let resummed = integrate_semi_infinite(
            |x| weight(x) * resummed_kernel(ln_a_kernel(x, r, delta)),
            0.5 / delta,
            cfg.rel_tol,
            cfg.abs_tol,
        )
        .map_err(|e| e.context(format!("resummed integral for Xi_{}", c.name())))?;
        let mut value = resummed.value / PI;
        let mut err = resummed.abs_error_estimate / PI;
        if c != Component::Phi {
            let m0 = kappa_integral(c, 0, r, delta, cfg)
                .map_err(|e| e.context(format!("m = 0 term of Xi_{}", c.name())))?;
            value += m0.value / PI;
            err += m0.abs_error_estimate / PI;
        }
        xi.set(c, value / rho3, err / rho3);
    }
    Ok(xi)
}

/// Coefficients of an atom a distance `d` from an infinite conducting plane:
/// `(1/(8 d^3), 1/(16 d^3), 1/(16 d^3))`, the normal component first.
pub fn xi_plane_limit(d: f64) -> Result<XiTriple> {
    if !(d > 0.0 && d.is_finite()) {
        return Err(Error::invalid(format!("distance must be > 0, got {d}")));
    }
    let d3 = d * d * d;
    Ok(XiTriple::exact(1.0 / (8.0 * d3), 1.0 / (16.0 * d3), 1.0 / (16.0 * d3)))
}

/// Leading far-field behaviour `Xi_phi ~ 3 pi R^2 / (32 d^5)` for `d >> R`.
pub fn xi_phi_far(geom: &WireGeometry) -> Result<f64> {
    let (r, d) = (geom.radius, geom.gap);
    if d < 10.0 * r {
        warn!("far-field Xi_phi used at d/R = {} (< 10)", d / r);
    }
    Ok(3.0 * PI * r * r / (32.0 * d.powi(5)))
}

/// Energy shift of the atom; `units` selects the Coulomb prefactor.
pub fn shift_wire(
    geom: &WireGeometry,
    mu2: &DipoleMeanSquares,
    cfg: &NumericsConfig,
    units: Units,
) -> Result<Energy> {
    let xi = xi_wire_exact(geom, cfg)?;
    Ok(energy_shift(&xi, mu2, units))
}
