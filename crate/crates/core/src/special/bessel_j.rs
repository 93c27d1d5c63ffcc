//! Bessel functions of the first kind for integer and half-integer order.
//!
//! Both families use Miller's backward recurrence, normalized with the
//! sum rules `J_0^2 + 2 sum J_n^2 = 1` and `sum (2n+1) j_n^2 = 1`
//! (`j_n` the spherical Bessel functions). The squares carry the magnitude;
//! the sign comes from `J_0 + 2 sum J_{2n} = 1` and from the closed forms of
//! `j_0`, `j_1` respectively.

use std::f64::consts::PI;

use super::{check_argument, MAX_ORDER};
use crate::error::{Error, Result};

// small enough that the running sum of squares cannot overflow
const RESCALE_AT: f64 = 1e100;

/// Order of a Bessel function of the first kind: a non-negative multiple of 1/2.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BesselOrder {
    Integer(u32),
    /// `n + 1/2`.
    HalfInteger(u32),
}

impl BesselOrder {
    pub fn from_f64(order: f64) -> Result<Self> {
        let twice = 2.0 * order;
        if !(order.is_finite() && order >= 0.0 && twice.fract() == 0.0) {
            return Err(Error::invalid(format!(
                "order must be a non-negative multiple of 1/2, got {order}"
            )));
        }
        if order > f64::from(MAX_ORDER) {
            return Err(Error::invalid(format!(
                "order {order} exceeds the supported maximum {MAX_ORDER}"
            )));
        }
        let twice = twice as u32;
        Ok(if twice.is_multiple_of(2) {
            BesselOrder::Integer(twice / 2)
        } else {
            BesselOrder::HalfInteger(twice / 2)
        })
    }

    pub fn value(self) -> f64 {
        match self {
            BesselOrder::Integer(n) => f64::from(n),
            BesselOrder::HalfInteger(n) => f64::from(n) + 0.5,
        }
    }
}

/// `J_order(x)` for `order` a non-negative multiple of 1/2 and `x >= 0`.
pub fn bessel_j(order: f64, x: f64) -> Result<f64> {
    check_argument(x)?;
    if x < 0.0 {
        return Err(Error::invalid(format!("argument must be >= 0, got {x}")));
    }
    Ok(match BesselOrder::from_f64(order)? {
        BesselOrder::Integer(n) => j_integer_sequence(n as usize, x)[n as usize],
        BesselOrder::HalfInteger(n) => j_half_sequence(n as usize, x)[n as usize],
    })
}

/// `[J_0(x), ..., J_max(x)]`.
pub fn bessel_j_integer_sequence(max: u32, x: f64) -> Result<Vec<f64>> {
    check_sequence(max, x)?;
    Ok(j_integer_sequence(max as usize, x))
}

/// `[J_{1/2}(x), ..., J_{max+1/2}(x)]`.
pub fn bessel_j_half_sequence(max: u32, x: f64) -> Result<Vec<f64>> {
    check_sequence(max, x)?;
    Ok(j_half_sequence(max as usize, x))
}

fn check_sequence(max: u32, x: f64) -> Result<()> {
    check_argument(x)?;
    if x < 0.0 {
        return Err(Error::invalid(format!("argument must be >= 0, got {x}")));
    }
    if max > MAX_ORDER {
        return Err(Error::invalid(format!(
            "order {max} exceeds the supported maximum {MAX_ORDER}"
        )));
    }
    Ok(())
}

/// Starting order for the backward recurrence: far enough past both `max`
/// and the turning point `n = x` that the start value's error is negligible.
fn miller_start(max: usize, x: f64) -> usize {
    let top = (max as f64).max(x.ceil()).max(1.0);
    let n = top + 20.0 + (15.0 * top.cbrt()).ceil();
    let n = n as usize;
    n + n % 2
}

fn tiny_argument(x: f64) -> bool {
    x < 1e-30
}

pub(crate) fn j_integer_sequence(max: usize, x: f64) -> Vec<f64> {
    let mut out = vec![0.0; max + 1];
    if x == 0.0 {
        out[0] = 1.0;
        return out;
    }
    if tiny_argument(x) {
        // leading term (x/2)^n / n!, exact to within x^2
        let mut t = 1.0;
        for (n, o) in out.iter_mut().enumerate() {
            if n > 0 {
                t *= 0.5 * x / n as f64;
            }
            *o = t;
        }
        return out;
    }
    let start = miller_start(max, x);
    let (mut above, mut cur) = (0.0f64, 1e-30f64);
    let mut linear = if start.is_multiple_of(2) { 2.0 * cur } else { 0.0 };
    let mut squares = 2.0 * cur * cur;
    for k in (1..=start).rev() {
        // cur = J_k, above = J_{k+1}  ->  J_{k-1}
        let below = (2.0 * k as f64 / x) * cur - above;
        above = cur;
        cur = below;
        let n = k - 1;
        if n <= max {
            out[n] = cur;
        }
        if n > 0 {
            squares += 2.0 * cur * cur;
            if n % 2 == 0 {
                linear += 2.0 * cur;
            }
        } else {
            squares += cur * cur;
            linear += cur;
        }
        if cur.abs() > RESCALE_AT {
            let s = 1.0 / RESCALE_AT;
            cur *= s;
            above *= s;
            linear *= s;
            squares *= s * s;
            for o in out.iter_mut().skip(n) {
                *o *= s;
            }
        }
    }
    let norm = linear.signum() / squares.sqrt();
    out.iter_mut().for_each(|o| *o *= norm);
    out
}

/// Spherical Bessel functions `[j_0(x), ..., j_max(x)]`.
fn spherical_sequence(max: usize, x: f64) -> Vec<f64> {
    let mut out = vec![0.0; max + 1];
    if x == 0.0 {
        out[0] = 1.0;
        return out;
    }
    if tiny_argument(x) {
        // x^n / (2n+1)!!
        let mut t = 1.0;
        for (n, o) in out.iter_mut().enumerate() {
            if n > 0 {
                t *= x / (2 * n + 1) as f64;
            }
            *o = t;
        }
        return out;
    }
    let start = miller_start(max, x);
    let (mut above, mut cur) = (0.0f64, 1e-30f64);
    let mut squares = (2 * start + 1) as f64 * cur * cur;
    let (mut r0, mut r1) = (0.0, 0.0);
    for k in (1..=start).rev() {
        let below = ((2 * k + 1) as f64 / x) * cur - above;
        above = cur;
        cur = below;
        let n = k - 1;
        if n <= max {
            out[n] = cur;
        }
        squares += (2 * n + 1) as f64 * cur * cur;
        if n == 1 {
            r1 = cur;
        }
        if n == 0 {
            r0 = cur;
        }
        if cur.abs() > RESCALE_AT {
            let s = 1.0 / RESCALE_AT;
            cur *= s;
            above *= s;
            squares *= s * s;
            r1 *= s;
            for o in out.iter_mut().skip(n) {
                *o *= s;
            }
        }
    }
    let (s, c) = x.sin_cos();
    let j0 = s / x;
    let j1 = if x < 1e-3 {
        x / 3.0 * (1.0 - x * x / 10.0)
    } else {
        (s / x - c) / x
    };
    let sign = if j0.abs() >= j1.abs() {
        j0.signum() * r0.signum()
    } else {
        j1.signum() * r1.signum()
    };
    let norm = sign / squares.sqrt();
    out.iter_mut().for_each(|o| *o *= norm);
    out
}

pub(crate) fn j_half_sequence(max: usize, x: f64) -> Vec<f64> {
    let mut out = spherical_sequence(max, x);
    let f = (2.0 * x / PI).sqrt();
    out.iter_mut().for_each(|o| *o *= f);
    out
}
