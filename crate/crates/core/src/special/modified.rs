//! Modified Bessel functions `I_m`, `K_m` and `K_m'` of integer order.
//!
//! * `sqrt(m^2 + x^2) >= 22`: uniform asymptotic expansion ([`super::debye`]).
//! * otherwise, `I_m` from its ascending series, `K_0` and `K_1` from their
//!   ascending series (`x <= 2`) or Steed's continued fraction (`x > 2`),
//!   then forward recurrence in the order, which is stable for `K`.

use std::f64::consts::PI;

use super::debye::{debye, DEBYE_MIN_P};
use super::{check_argument, ScaledValue, MAX_ORDER};
use crate::error::{Error, Result};

const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

fn check_order(m: u32) -> Result<()> {
    if m > MAX_ORDER {
        return Err(Error::invalid(format!(
            "order {m} exceeds the supported maximum {MAX_ORDER}"
        )));
    }
    Ok(())
}

fn check_positive(x: f64) -> Result<()> {
    check_argument(x)?;
    if x <= 0.0 {
        return Err(Error::invalid(format!("argument must be > 0, got {x}")));
    }
    Ok(())
}

fn uses_debye(m: u32, x: f64) -> bool {
    f64::from(m).hypot(x) >= DEBYE_MIN_P
}

fn ln_factorial(n: u32) -> f64 {
    (2..=n).map(|k| f64::from(k).ln()).sum()
}

/// Ascending series, `I_m(x) = (x/2)^m / m! * sum_k (x^2/4)^k m! / (k! (m+k)!)`.
fn i_series(m: u32, x: f64) -> ScaledValue {
    let q = 0.25 * x * x;
    let mut term = 1.0;
    let mut sum = 1.0;
    let mut k = 1.0;
    let mf = f64::from(m);
    loop {
        term *= q / (k * (mf + k));
        sum += term;
        if term < 1e-17 * sum {
            break;
        }
        k += 1.0;
    }
    let log_pref = if m == 0 {
        0.0
    } else {
        mf * (0.5 * x).ln() - ln_factorial(m)
    };
    ScaledValue::new(sum, log_pref)
}

/// `(K_0(x), K_1(x))` for `0 < x <= 2` from the ascending series.
fn k01_series(x: f64) -> (f64, f64) {
    let q = 0.25 * x * x;
    let ln_half = (0.5 * x).ln();
    let (mut i0, mut i1s) = (1.0, 1.0);
    let mut s0 = 0.0;
    // psi(1) + psi(2) = -2 gamma + 1
    let mut s1 = 1.0 - 2.0 * EULER_GAMMA;
    let mut t0 = 1.0; // q^k / (k!)^2
    let mut t1 = 1.0; // q^k / (k! (k+1)!)
    let mut h = 0.0; // harmonic number H_k
    let mut k = 1.0;
    loop {
        t0 *= q / (k * k);
        t1 *= q / (k * (k + 1.0));
        h += 1.0 / k;
        i0 += t0;
        i1s += t1;
        s0 += t0 * h;
        // psi(k+1) + psi(k+2) = -2 gamma + 2 H_k + 1/(k+1)
        s1 += t1 * (2.0 * h + 1.0 / (k + 1.0) - 2.0 * EULER_GAMMA);
        if t0 < 1e-18 {
            break;
        }
        k += 1.0;
    }
    let i1 = 0.5 * x * i1s;
    let k0 = -(ln_half + EULER_GAMMA) * i0 + s0;
    let k1 = 1.0 / x + ln_half * i1 - 0.25 * x * s1;
    (k0, k1)
}

/// `(e^x K_0(x), e^x K_1(x))` for `x > 2` by Steed's method for the
/// continued fraction of `K_1/K_0` together with its normalization sum.
fn k01_scaled_cf(x: f64) -> (f64, f64) {
    let mut b = 2.0 * (1.0 + x);
    let mut d = 1.0 / b;
    let mut delh = d;
    let mut h = d;
    let mut q1 = 0.0;
    let mut q2 = 1.0;
    let a1 = 0.25;
    let mut q = a1;
    let mut c = a1;
    let mut a = -a1;
    let mut s = 1.0 + q * delh;
    for i in 2..10_000 {
        let fi = f64::from(i);
        a -= 2.0 * (fi - 1.0);
        c = -a * c / fi;
        let qnew = (q1 - b * q2) / a;
        q1 = q2;
        q2 = qnew;
        q += c * qnew;
        b += 2.0;
        d = 1.0 / (b + a * d);
        delh *= b * d - 1.0;
        h += delh;
        let dels = q * delh;
        s += dels;
        if dels.abs() < 1e-17 * s.abs() {
            break;
        }
    }
    h *= a1;
    let k0 = (PI / (2.0 * x)).sqrt() / s;
    let k1 = k0 * (x + 0.5 - h) / x;
    (k0, k1)
}

/// `I_m(x)` for integer `m >= 0`, `x > 0`.
pub fn bessel_i_scaled(m: u32, x: f64) -> Result<ScaledValue> {
    check_order(m)?;
    check_positive(x)?;
    Ok(i_unchecked(m, x))
}

pub(crate) fn i_unchecked(m: u32, x: f64) -> ScaledValue {
    if uses_debye(m, x) {
        let d = debye(f64::from(m), x);
        ScaledValue::new(d.i_mantissa(), d.eta)
    } else {
        i_series(m, x)
    }
}

/// `K_m(x)` for integer `m >= 0`, `x > 0`.
pub fn bessel_k_scaled(m: u32, x: f64) -> Result<ScaledValue> {
    check_order(m)?;
    check_positive(x)?;
    Ok(k_unchecked(m, x))
}

pub(crate) fn k_unchecked(m: u32, x: f64) -> ScaledValue {
    if uses_debye(m, x) {
        let d = debye(f64::from(m), x);
        return ScaledValue::new(d.k_mantissa(), -d.eta);
    }
    let (k0, k1) = if x <= 2.0 {
        let (a, b) = k01_series(x);
        (ScaledValue::from_f64(a), ScaledValue::from_f64(b))
    } else {
        let (a, b) = k01_scaled_cf(x);
        (ScaledValue::new(a, -x), ScaledValue::new(b, -x))
    };
    match m {
        0 => k0,
        1 => k1,
        _ => {
            let (mut prev, mut cur) = (k0, k1);
            for n in 1..m {
                let next = prev.add(cur.scale(2.0 * f64::from(n) / x));
                prev = cur;
                cur = next;
            }
            cur
        }
    }
}

/// `K_m'(x) = -(K_{m-1}(x) + K_{m+1}(x)) / 2`, with `K_0' = -K_1`.
pub fn bessel_k_prime_scaled(m: u32, x: f64) -> Result<ScaledValue> {
    check_order(m)?;
    check_positive(x)?;
    Ok(k_prime_unchecked(m, x))
}

pub(crate) fn k_prime_unchecked(m: u32, x: f64) -> ScaledValue {
    if m == 0 {
        -k_unchecked(1, x)
    } else {
        -(k_unchecked(m - 1, x).add(k_unchecked(m + 1, x))).scale(0.5)
    }
}

/// `I_m'(x) = (I_{m-1}(x) + I_{m+1}(x)) / 2`, with `I_0' = I_1`.
pub fn bessel_i_prime_scaled(m: u32, x: f64) -> Result<ScaledValue> {
    check_order(m)?;
    check_positive(x)?;
    Ok(if m == 0 {
        i_unchecked(1, x)
    } else {
        i_unchecked(m - 1, x).add(i_unchecked(m + 1, x)).scale(0.5)
    })
}
