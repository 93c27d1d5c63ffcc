//! The `validate` suite: identities, boundary conditions, limits and
//! oracle comparisons, each with a budgeted tolerance.

use std::f64::consts::{PI, TAU};
use std::time::Instant;

use cpshift_core::halfplane::{gh_halfplane_closed, xi_halfplane, xi_halfplane_small_phi};
use cpshift_core::oracle::{
    certify, check_halfinteger_sum, gh_halfplane_series, gh_wire_series, halfinteger_sum_lhs,
    halfinteger_sum_rhs, xi_via_finite_difference, SeriesTruncation,
};
use cpshift_core::special::{
    bessel_i_prime_scaled, bessel_i_scaled, bessel_j_half_sequence, bessel_k_prime_scaled,
    bessel_k_scaled,
};
use cpshift_core::wire::{xi_phi_far, xi_plane_limit, xi_wire_exact};
use cpshift_core::{CylPoint, HalfplaneGeometry, NumericsConfig, WireGeometry, XiTriple};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::args::ValidateArgs;
use crate::error::CliError;

pub struct Context {
    pub numerics: NumericsConfig,
    /// Relative perturbation applied to every `K_m` in the Bessel checks.
    pub perturb_k: f64,
}

/// What a check measured. `ok` carries any pass condition beyond
/// `deviation <= tolerance`.
pub struct Measured {
    pub deviation: f64,
    pub points: usize,
    pub ok: bool,
    pub detail: String,
}

impl Measured {
    fn plain(deviation: f64, points: usize) -> Self {
        Self { deviation, points, ok: true, detail: String::new() }
    }
}

type CheckFn = fn(&Context) -> cpshift_core::Result<Measured>;

pub struct Check {
    pub name: &'static str,
    pub tolerance: f64,
    pub run: CheckFn,
}

pub const CHECKS: &[Check] = &[
    Check { name: "wronskian", tolerance: 1e-11, run: wronskian },
    Check { name: "recurrence", tolerance: 1e-11, run: recurrence },
    Check { name: "half-integer-closed-form", tolerance: 1e-13, run: half_integer_closed_form },
    Check { name: "wire-dirichlet", tolerance: 1e-6, run: wire_dirichlet },
    Check { name: "halfplane-dirichlet", tolerance: 1e-6, run: halfplane_dirichlet },
    Check { name: "closed-vs-series", tolerance: 1e-8, run: closed_vs_series },
    Check { name: "wire-plane-limit", tolerance: 0.05, run: wire_plane_limit },
    Check { name: "halfplane-plane-limit", tolerance: 0.02, run: halfplane_plane_limit },
    Check { name: "wire-far-field", tolerance: 0.05, run: wire_far_field },
    Check { name: "summation-formula", tolerance: 1e-8, run: summation_formula },
    Check { name: "mirror-symmetry", tolerance: 0.0, run: mirror_symmetry },
    Check { name: "finite-difference", tolerance: 1e-6, run: finite_difference },
];

#[derive(Debug, Clone, Serialize)]
pub struct CheckReport {
    pub name: String,
    pub passed: bool,
    pub deviation: Option<f64>,
    pub tolerance: f64,
    pub points: usize,
    pub detail: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wall_time_s: Option<f64>,
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub passed: bool,
    pub fingerprint: String,
    pub checks: Vec<CheckReport>,
}

pub fn run_check(check: &Check, tolerance: f64, ctx: &Context, timing: bool) -> CheckReport {
    let started = Instant::now();
    let outcome = (check.run)(ctx);
    let wall_time_s = timing.then(|| started.elapsed().as_secs_f64());
    match outcome {
        Ok(m) => CheckReport {
            name: check.name.to_string(),
            passed: m.ok && m.deviation <= tolerance,
            deviation: Some(m.deviation),
            tolerance,
            points: m.points,
            detail: m.detail,
            wall_time_s,
        },
        Err(e) => CheckReport {
            name: check.name.to_string(),
            passed: false,
            deviation: None,
            tolerance,
            points: 0,
            detail: e.to_string(),
            wall_time_s,
        },
    }
}

/// Runs the selected checks in suite order.
pub fn run_suite(
    args: &ValidateArgs,
    numerics: NumericsConfig,
    fingerprint: String,
    timing: bool,
) -> Result<Report, CliError> {
    let known = |n: &str| CHECKS.iter().any(|c| c.name == n);
    for n in args.only.iter().chain(args.tolerance.iter().map(|(n, _)| n)) {
        if !known(n) {
            return Err(CliError::Invalid(format!("unknown check `{n}`")));
        }
    }
    let ctx = Context { numerics, perturb_k: args.perturb_k };
    let checks: Vec<CheckReport> = CHECKS
        .iter()
        .filter(|c| args.only.is_empty() || args.only.iter().any(|n| n == c.name))
        .map(|c| {
            let tol = args
                .tolerance
                .iter()
                .rev()
                .find(|(n, _)| n == c.name)
                .map_or(c.tolerance, |&(_, t)| t);
            log::info!("running {}", c.name);
            run_check(c, tol, &ctx, timing)
        })
        .collect();
    Ok(Report {
        passed: checks.iter().all(|c| c.passed),
        fingerprint,
        checks,
    })
}

fn log_grid(lo: f64, hi: f64, n: usize) -> impl Iterator<Item = f64> {
    let (a, b) = (lo.ln(), hi.ln());
    (0..n).map(move |i| (a + (b - a) * i as f64 / (n - 1) as f64).exp())
}

fn rel(a: f64, b: f64) -> f64 {
    ((a - b) / b).abs()
}

fn wronskian(ctx: &Context) -> cpshift_core::Result<Measured> {
    // x (I_m K_m' - I_m' K_m) = -1
    let s = 1.0 + ctx.perturb_k;
    let mut worst: f64 = 0.0;
    let mut n = 0;
    for x in log_grid(1e-2, 1e4, 61) {
        for m in 0..=50 {
            let i = bessel_i_scaled(m, x)?;
            let ip = bessel_i_prime_scaled(m, x)?;
            let k = bessel_k_scaled(m, x)?.scale(s);
            let kp = bessel_k_prime_scaled(m, x)?.scale(s);
            let w = (i * kp).add(-(ip * k)).value();
            worst = worst.max((w * x + 1.0).abs());
            n += 1;
        }
    }
    Ok(Measured::plain(worst, n))
}

fn recurrence(ctx: &Context) -> cpshift_core::Result<Measured> {
    // K_{m+1} = K_{m-1} + (2m/x) K_m,  I_{m-1} = I_{m+1} + (2m/x) I_m
    // (both written as sums of positive terms)
    let s = 1.0 + ctx.perturb_k;
    let mut worst: f64 = 0.0;
    let mut n = 0;
    for x in log_grid(1e-2, 1e3, 31) {
        for m in 1..60u32 {
            let k = |n| bessel_k_scaled(n, x).map(|v| v.scale(s));
            let c = 2.0 * f64::from(m) / x;
            let lhs = k(m + 1)?;
            let rhs = k(m - 1)?.add(k(m)?.scale(c));
            worst = worst.max(((lhs / rhs).value() - 1.0).abs());

            let i = |n| bessel_i_scaled(n, x);
            let lhs = i(m - 1)?;
            let rhs = i(m + 1)?.add(i(m)?.scale(c));
            worst = worst.max(((lhs / rhs).value() - 1.0).abs());
            n += 2;
        }
    }
    Ok(Measured::plain(worst, n))
}

fn half_integer_closed_form(_: &Context) -> cpshift_core::Result<Measured> {
    let mut worst: f64 = 0.0;
    let mut n = 0;
    for &x in &[0.3, 1.0, 2.0, 7.5, 20.0, 100.0] {
        let j = bessel_j_half_sequence(2, x)?;
        let f = (2.0 / (PI * x)).sqrt();
        let (s, c) = x.sin_cos();
        let exact = [f * s, f * (s / x - c), f * ((3.0 / (x * x) - 1.0) * s - 3.0 * c / x)];
        for (a, b) in j.iter().zip(exact) {
            // relative to the envelope sqrt(2 / (pi x)): values pass through zeros
            worst = worst.max((a - b).abs() / f);
            n += 1;
        }
    }
    Ok(Measured::plain(worst, n))
}

fn free(a: &CylPoint, b: &CylPoint) -> f64 {
    1.0 / (4.0 * PI * a.to_cartesian().distance(b.to_cartesian()))
}

fn wire_dirichlet(_: &Context) -> cpshift_core::Result<Measured> {
    let radius = 1.0;
    let trunc = SeriesTruncation::default();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut worst: f64 = 0.0;
    for _ in 0..10 {
        let src = CylPoint::new(rng.random_range(1.2..3.0), rng.random_range(0.0..TAU), 0.0);
        let surf = CylPoint::new(radius, rng.random_range(0.0..TAU), rng.random_range(-1.0..1.0));
        let gh = gh_wire_series(&surf, &src, radius, &trunc)?.value;
        let g0 = free(&surf, &src);
        worst = worst.max((g0 + gh).abs() / g0);
    }
    Ok(Measured::plain(worst, 10))
}

fn halfplane_dirichlet(_: &Context) -> cpshift_core::Result<Measured> {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    let mut worst: f64 = 0.0;
    for i in 0..10 {
        let src = CylPoint::new(rng.random_range(0.3..3.0), rng.random_range(0.2..TAU - 0.2), 0.0);
        // approach both faces of the sheet
        let phi = if i % 2 == 0 { 1e-9 } else { TAU - 1e-9 };
        let surf = CylPoint::new(rng.random_range(0.3..3.0), phi, rng.random_range(-1.0..1.0));
        let gh = gh_halfplane_closed(&surf, &src)?;
        let g0 = free(&surf, &src);
        worst = worst.max((g0 + gh).abs() / g0);
    }
    Ok(Measured::plain(worst, 10))
}

fn closed_vs_series(_: &Context) -> cpshift_core::Result<Measured> {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    let trunc = SeriesTruncation::default();
    let mut worst: f64 = 0.0;
    let mut uncertified = 0;
    const PAIRS: usize = 20;
    for _ in 0..PAIRS {
        let a = CylPoint::new(rng.random_range(0.3..2.0), rng.random_range(0.1..TAU - 0.1), 0.0);
        let b = CylPoint::new(
            rng.random_range(0.3..2.0),
            rng.random_range(0.1..TAU - 0.1),
            rng.random_range(0.4..1.5),
        );
        let series = certify(|t| gh_halfplane_series(&a, &b, t), &trunc)?;
        if !series.certified {
            uncertified += 1;
        }
        worst = worst.max(rel(series.value, gh_halfplane_closed(&a, &b)?));
    }
    Ok(Measured {
        deviation: worst,
        points: PAIRS,
        ok: uncertified == 0,
        detail: format!("{} of {PAIRS} series values certified", PAIRS - uncertified),
    })
}

fn wire_plane_limit(ctx: &Context) -> cpshift_core::Result<Measured> {
    let mut devs = Vec::new();
    for &d in &[0.1, 0.05, 0.02, 0.01] {
        let xi = xi_wire_exact(&WireGeometry::from_gap(1.0, d)?, &ctx.numerics)?;
        devs.push(xi.max_relative_deviation(&xi_plane_limit(d)?));
    }
    let shrinking = devs.windows(2).all(|w| w[1] < w[0]);
    Ok(Measured {
        deviation: *devs.last().unwrap(),
        points: devs.len(),
        ok: shrinking,
        detail: format!("deviations at d = 0.1, 0.05, 0.02, 0.01: {devs:?}"),
    })
}

fn halfplane_plane_limit(_: &Context) -> cpshift_core::Result<Measured> {
    let phi = 0.01;
    let xi = xi_halfplane(&HalfplaneGeometry::new(1.0, phi)?).dimensionless(phi);
    let plane = XiTriple::exact(1.0 / 16.0, 1.0 / 8.0, 1.0 / 16.0);
    let small = xi_halfplane_small_phi(&HalfplaneGeometry::new(1.0, phi)?).dimensionless(phi);
    Ok(Measured {
        deviation: xi.max_relative_deviation(&plane),
        points: 1,
        ok: true,
        detail: format!("small-angle form deviates by {:e}", xi.max_relative_deviation(&small)),
    })
}

fn wire_far_field(ctx: &Context) -> cpshift_core::Result<Measured> {
    let g = WireGeometry::from_gap(1.0, 100.0)?;
    let xi = xi_wire_exact(&g, &ctx.numerics)?;
    let far = xi_phi_far(&g)?;
    Ok(Measured::plain(rel(xi.xi_phi, far), 1))
}

fn summation_formula(_: &Context) -> cpshift_core::Result<Measured> {
    let mut worst: f64 = 0.0;
    let mut n = 0;
    for &k in &[0.5, 1.0, 2.0, 5.0, 10.0] {
        for &ratio in &[0.2, 0.5, 1.0, 1.5, 3.0] {
            for i in 0..5 {
                let alpha = PI * f64::from(i) / 4.0;
                let (lhs, rhs) = check_halfinteger_sum(k, 1.0, ratio, alpha, 200)?;
                worst = worst.max((lhs - rhs).abs());
                n += 1;
            }
        }
    }
    // outside [0, pi] the sum changes sign while the integral does not
    let (k, p, q, alpha) = (2.0, 1.0, 0.5, PI / 3.0);
    let lhs = halfinteger_sum_lhs(k, p, q, TAU - alpha, 200)?;
    let rhs = halfinteger_sum_rhs(k, p, q, TAU - alpha)?;
    let flipped = (lhs + rhs).abs() < 1e-8 && rhs.abs() > 0.1;
    Ok(Measured {
        deviation: worst,
        points: n,
        ok: flipped,
        detail: format!("at alpha = 5 pi / 3: sum {lhs}, integral {rhs}"),
    })
}

fn mirror_symmetry(_: &Context) -> cpshift_core::Result<Measured> {
    // for phi in [pi, 2 pi) the mirror angle 2 pi - phi is exact, so the
    // images must agree to the last bit
    let mut worst: f64 = 0.0;
    let n = 64;
    for i in 0..n {
        let phi = PI + PI * f64::from(i) / f64::from(n);
        for rho in [0.4, 1.3] {
            let a = xi_halfplane(&HalfplaneGeometry::new(rho, phi)?);
            let b = xi_halfplane(&HalfplaneGeometry::new(rho, TAU - phi)?);
            worst = worst.max(a.max_scaled_deviation(&b));
        }
    }
    Ok(Measured::plain(worst, 2 * n as usize))
}

fn finite_difference(_: &Context) -> cpshift_core::Result<Measured> {
    let mut worst: f64 = 0.0;
    for i in 0..10 {
        let phi = 0.2 + (PI - 0.2) * f64::from(i) / 9.0;
        let at = CylPoint::new(1.0, phi, 0.0);
        let fd = xi_via_finite_difference(gh_halfplane_closed, &at, 0.02 * phi.min(1.0))?;
        let exact = xi_halfplane(&HalfplaneGeometry::new(1.0, phi)?);
        // scaled by the largest component: Xi_phi vanishes at phi = pi
        worst = worst.max(fd.max_scaled_deviation(&exact));
    }
    Ok(Measured::plain(worst, 10))
}
