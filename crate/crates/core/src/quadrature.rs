//! Adaptive Gauss-Kronrod quadrature and prime-weighted series summation.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Subdivision budget for one adaptive integration.
pub const MAX_SUBDIVISIONS: usize = 4000;

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct QuadResult {
    pub value: f64,
    pub abs_error_estimate: f64,
    pub evaluations: usize,
}

// 21-point Kronrod extension of the 10-point Gauss rule (QUADPACK qk21).
#[allow(clippy::excessive_precision)]
const XGK: [f64; 11] = [
    0.995_657_163_025_808_080_735_527_280_689_003,
    0.973_906_528_517_171_720_077_964_012_084_452,
    0.930_157_491_355_708_226_001_207_180_059_508,
    0.865_063_366_688_984_510_732_096_688_423_493,
    0.780_817_726_586_416_897_063_717_578_345_042,
    0.679_409_568_299_024_406_234_327_365_114_874,
    0.562_757_134_668_604_683_339_000_099_272_694,
    0.433_395_394_129_247_190_799_265_943_165_784,
    0.294_392_862_701_460_198_131_126_603_103_866,
    0.148_874_338_981_631_210_884_826_001_129_720,
    0.0,
];

#[allow(clippy::excessive_precision)]
const WGK: [f64; 11] = [
    0.011_694_638_867_371_874_278_064_396_062_192,
    0.032_558_162_307_964_727_478_818_972_459_390,
    0.054_755_896_574_351_996_031_381_300_244_580,
    0.075_039_674_810_919_952_767_043_140_916_190,
    0.093_125_454_583_697_605_535_065_465_083_366,
    0.109_387_158_802_297_641_899_210_590_325_805,
    0.123_491_976_262_065_851_077_958_109_831_074,
    0.134_709_217_311_473_325_928_054_001_771_707,
    0.142_775_938_577_060_080_797_094_273_138_717,
    0.147_739_104_901_338_491_374_841_515_972_068,
    0.149_445_554_002_916_905_664_936_468_389_821,
];

// Gauss weights for the odd-indexed Kronrod nodes.
#[allow(clippy::excessive_precision)]
const WG: [f64; 5] = [
    0.066_671_344_308_688_137_593_568_809_893_332,
    0.149_451_349_150_580_593_145_776_339_657_697,
    0.219_086_362_515_982_043_995_534_934_228_163,
    0.269_266_719_309_996_355_091_226_921_569_469,
    0.295_524_224_714_752_870_173_892_994_651_338,
];

#[derive(Debug, Clone, Copy)]
struct Panel {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
}

impl PartialEq for Panel {
    fn eq(&self, other: &Self) -> bool {
        self.error == other.error
    }
}
impl Eq for Panel {}
impl PartialOrd for Panel {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Panel {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.total_cmp(&other.error)
    }
}

fn gauss_kronrod_21<F: FnMut(f64) -> f64>(f: &mut F, a: f64, b: f64) -> Result<Panel> {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let mut eval = |x: f64| -> Result<f64> {
        let v = f(x);
        if v.is_finite() {
            Ok(v)
        } else {
            Err(Error::invalid(format!("integrand is not finite at {x}: {v}")))
        }
    };
    let fc = eval(center)?;
    let mut res_k = WGK[10] * fc;
    let mut res_g = 0.0;
    let mut res_abs = res_k.abs();
    let mut fv1 = [0.0; 10];
    let mut fv2 = [0.0; 10];
    for j in 0..10 {
        let dx = half * XGK[j];
        let f1 = eval(center - dx)?;
        let f2 = eval(center + dx)?;
        fv1[j] = f1;
        fv2[j] = f2;
        res_k += WGK[j] * (f1 + f2);
        res_abs += WGK[j] * (f1.abs() + f2.abs());
        if j % 2 == 1 {
            res_g += WG[j / 2] * (f1 + f2);
        }
    }
    let mean = 0.5 * res_k;
    let mut res_asc = WGK[10] * (fc - mean).abs();
    for j in 0..10 {
        res_asc += WGK[j] * ((fv1[j] - mean).abs() + (fv2[j] - mean).abs());
    }
    let value = res_k * half;
    let res_abs = res_abs * half.abs();
    let res_asc = res_asc * half.abs();
    let mut err = ((res_k - res_g) * half).abs();
    if res_asc != 0.0 && err != 0.0 {
        err = res_asc * (200.0 * err / res_asc).powf(1.5).min(1.0);
    }
    if res_abs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        err = err.max(50.0 * f64::EPSILON * res_abs);
    }
    Ok(Panel {
        a,
        b,
        value,
        error: err,
    })
}

fn check_tolerances(rel_tol: f64, abs_tol: f64) -> Result<()> {
    if !(rel_tol >= 0.0 && abs_tol >= 0.0 && (rel_tol > 0.0 || abs_tol > 0.0)) {
        return Err(Error::invalid(format!(
            "tolerances must be non-negative and not both zero (rel {rel_tol}, abs {abs_tol})"
        )));
    }
    Ok(())
}

/// Adaptive 21-point Gauss-Kronrod quadrature of `f` over `[a, b]`.
///
/// The panel with the largest error estimate is bisected until the total
/// estimate is below `max(abs_tol, rel_tol * |value|)`. Running out of
/// subdivisions, or reaching panels too narrow to split, is reported as
/// [`Error::QuadratureNonConvergence`] carrying the partial result.
pub fn integrate<F: FnMut(f64) -> f64>(
    mut f: F,
    a: f64,
    b: f64,
    rel_tol: f64,
    abs_tol: f64,
) -> Result<QuadResult> {
    check_tolerances(rel_tol, abs_tol)?;
    if !(a.is_finite() && b.is_finite()) {
        return Err(Error::invalid(format!("finite limits required, got [{a}, {b}]")));
    }
    if a == b {
        return Ok(QuadResult {
            value: 0.0,
            abs_error_estimate: 0.0,
            evaluations: 0,
        });
    }
    let first = gauss_kronrod_21(&mut f, a, b)?;
    let mut evaluations = 21;
    let mut heap = BinaryHeap::new();
    heap.push(first);
    let (mut total, mut total_err) = (first.value, first.error);
    let mut subdivisions = 0;
    loop {
        if total_err <= abs_tol.max(rel_tol * total.abs()) {
            break;
        }
        let worst = heap.pop().expect("heap holds at least one panel");
        let mid = 0.5 * (worst.a + worst.b);
        let too_narrow = mid <= worst.a || mid >= worst.b || (worst.b - worst.a).abs()
            <= 1e3 * f64::EPSILON * worst.a.abs().max(worst.b.abs());
        if subdivisions >= MAX_SUBDIVISIONS || too_narrow {
            heap.push(worst);
            let partial = summarize(&heap, evaluations);
            return Err(Error::QuadratureNonConvergence {
                partial,
                subdivisions,
            });
        }
        let left = gauss_kronrod_21(&mut f, worst.a, mid)?;
        let right = gauss_kronrod_21(&mut f, mid, worst.b)?;
        evaluations += 42;
        subdivisions += 1;
        total += left.value + right.value - worst.value;
        total_err += left.error + right.error - worst.error;
        heap.push(left);
        heap.push(right);
        // refresh the running sums now and then to shed accumulated rounding
        if subdivisions % 64 == 0 {
            let s = summarize(&heap, evaluations);
            total = s.value;
            total_err = s.abs_error_estimate;
        }
    }
    Ok(summarize(&heap, evaluations))
}

fn summarize(heap: &BinaryHeap<Panel>, evaluations: usize) -> QuadResult {
    let mut panels: Vec<&Panel> = heap.iter().collect();
    panels.sort_by(|p, q| p.a.total_cmp(&q.a));
    QuadResult {
        value: panels.iter().map(|p| p.value).sum(),
        abs_error_estimate: panels.iter().map(|p| p.error).sum(),
        evaluations,
    }
}

/// Integral of `f` over `(0, inf)` for integrands decaying at least like
/// `exp(-x / decay_scale)`.
///
/// The substitution `x = -decay_scale * ln(u)` maps the half line onto
/// `(0, 1)`, where such integrands stay bounded; [`integrate`] then refines
/// adaptively. Neither endpoint is ever evaluated, so integrands need not be
/// defined at `x = 0`.
pub fn integrate_semi_infinite<F: FnMut(f64) -> f64>(
    mut f: F,
    decay_scale: f64,
    rel_tol: f64,
    abs_tol: f64,
) -> Result<QuadResult> {
    if !(decay_scale > 0.0 && decay_scale.is_finite()) {
        return Err(Error::invalid(format!(
            "decay scale must be positive and finite, got {decay_scale}"
        )));
    }
    integrate(
        |u: f64| {
            let x = -decay_scale * u.ln();
            let v = f(x);
            if v == 0.0 {
                0.0
            } else {
                v * decay_scale / u
            }
        },
        0.0,
        1.0,
        rel_tol,
        abs_tol,
    )
}

/// Stopping rule for sums over an order index.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct SeriesPolicy {
    pub rel_tail_tol: f64,
    pub min_terms: u32,
    pub max_terms: u32,
    pub consecutive_below: u32,
}

impl Default for SeriesPolicy {
    fn default() -> Self {
        Self {
            rel_tail_tol: 1e-10,
            min_terms: 8,
            max_terms: 2000,
            consecutive_below: 3,
        }
    }
}

impl SeriesPolicy {
    pub fn validate(&self) -> Result<()> {
        if !(self.rel_tail_tol > 0.0 && self.rel_tail_tol.is_finite()) {
            return Err(Error::invalid(format!(
                "rel_tail_tol must be > 0, got {}",
                self.rel_tail_tol
            )));
        }
        if self.min_terms > self.max_terms {
            return Err(Error::invalid(format!(
                "min_terms {} exceeds max_terms {}",
                self.min_terms, self.max_terms
            )));
        }
        if self.consecutive_below < 2 {
            return Err(Error::invalid(format!(
                "consecutive_below must be >= 2, got {}",
                self.consecutive_below
            )));
        }
        Ok(())
    }
}

/// `sum_{m >= 0} term(m)`, with the `m = 0` term halved when `prime_weight`.
pub fn sum_primed_series<F: FnMut(u32) -> f64>(
    mut term: F,
    policy: &SeriesPolicy,
    prime_weight: bool,
) -> Result<QuadResult> {
    sum_series(
        |m| {
            Ok(QuadResult {
                value: term(m),
                abs_error_estimate: 0.0,
                evaluations: 1,
            })
        },
        0,
        policy,
        prime_weight,
    )
}

/// Sums `term(m)` for `m = first, first + 1, ...` where each term is itself an
/// approximate result (typically an integral). Term errors accumulate into the
/// returned estimate, together with a geometric tail estimate.
///
/// The sum stops once `consecutive_below` successive terms are each below
/// `rel_tail_tol` times the running sum and at least `min_terms` terms were
/// added. The `m = 0` term is halved when `prime_weight` is set.
pub fn sum_series<F>(
    mut term: F,
    first: u32,
    policy: &SeriesPolicy,
    prime_weight: bool,
) -> Result<QuadResult>
where
    F: FnMut(u32) -> Result<QuadResult>,
{
    policy.validate()?;
    let mut sum = 0.0;
    let mut term_err = 0.0;
    let mut evaluations = 0;
    let mut below = 0;
    let mut prev: Option<f64> = None;
    let mut added = 0;
    let mut m = first;
    loop {
        if added >= policy.max_terms {
            return Err(Error::SeriesNonConvergence {
                partial: QuadResult {
                    value: sum,
                    abs_error_estimate: term_err + prev.map_or(f64::INFINITY, f64::abs),
                    evaluations,
                },
                terms: added,
            });
        }
        let t = term(m).map_err(|e| e.context(format!("term m = {m}")))?;
        let w = if prime_weight && m == 0 { 0.5 } else { 1.0 };
        let value = w * t.value;
        sum += value;
        term_err += w * t.abs_error_estimate;
        evaluations += t.evaluations;
        added += 1;
        if value.abs() <= policy.rel_tail_tol * sum.abs() {
            below += 1;
        } else {
            below = 0;
        }
        if below >= policy.consecutive_below && added >= policy.min_terms {
            let tail = tail_estimate(prev, value, policy.consecutive_below);
            return Ok(QuadResult {
                value: sum,
                abs_error_estimate: term_err + tail,
                evaluations,
            });
        }
        prev = Some(value);
        m += 1;
    }
}

fn tail_estimate(prev: Option<f64>, last: f64, consecutive: u32) -> f64 {
    let last = last.abs();
    match prev.map(f64::abs) {
        Some(p) if p > 0.0 && last < p => {
            let q = last / p;
            last * q / (1.0 - q)
        }
        _ => f64::from(consecutive) * last,
    }
}
