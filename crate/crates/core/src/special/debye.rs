//! Uniform (Debye) asymptotic expansion of `I_nu(x)` and `K_nu(x)`.
//!
//! With `p = sqrt(nu^2 + x^2)` and `t = nu / p`,
//!
//! ```text
//! I_nu(x) ~ exp(eta) / sqrt(2 pi p) * sum_k  w_k(t) / p^k
//! K_nu(x) ~ exp(-eta) * sqrt(pi / (2 p)) * sum_k (-1)^k w_k(t) / p^k
//! eta = p + nu ln(x / (nu + p))
//! ```
//!
//! where `w_k(t) = u_k(t) / t^k` and `u_k` are the usual Debye polynomials.
//! Written in terms of `p` the expansion stays valid at `nu = 0`, and its
//! truncation error is governed by `p` alone, so one code path covers both
//! large order and large argument.

use std::f64::consts::PI;
use std::sync::OnceLock;

/// Below this value of `sqrt(nu^2 + x^2)` the expansion is not used.
pub(crate) const DEBYE_MIN_P: f64 = 22.0;

const MAX_TERMS: usize = 24;

struct Coefficients {
    /// `w[k][j]` is the coefficient of `t^j` in `w_k`.
    w: Vec<Vec<f64>>,
    /// Upper bound of `|w_k(t)|` over `t` in `[0, 1]`.
    bound: Vec<f64>,
}

fn coefficients() -> &'static Coefficients {
    static COEFFS: OnceLock<Coefficients> = OnceLock::new();
    COEFFS.get_or_init(build_coefficients)
}

fn poly_eval(c: &[f64], t: f64) -> f64 {
    c.iter().rev().fold(0.0, |acc, &a| acc * t + a)
}

fn build_coefficients() -> Coefficients {
    // u_{k+1}(t) = t^2 (1 - t^2) u_k'(t) / 2 + (1/8) int_0^t (1 - 5 s^2) u_k(s) ds
    let mut u: Vec<Vec<f64>> = vec![vec![1.0]];
    for k in 0..MAX_TERMS {
        let uk = &u[k];
        let mut next = vec![0.0; uk.len() + 3];
        for (j, &c) in uk.iter().enumerate().skip(1) {
            let d = j as f64 * c; // coefficient of t^{j-1} in u_k'
            next[j + 1] += 0.5 * d;
            next[j + 3] -= 0.5 * d;
        }
        for (j, &c) in uk.iter().enumerate() {
            next[j + 1] += 0.125 * c / (j + 1) as f64;
            next[j + 3] -= 0.625 * c / (j + 3) as f64;
        }
        u.push(next);
    }
    let w: Vec<Vec<f64>> = u
        .iter()
        .enumerate()
        .map(|(k, uk)| uk.iter().skip(k).copied().collect())
        .collect();
    let bound = w
        .iter()
        .map(|wk| {
            let max = (0..=400)
                .map(|i| poly_eval(wk, f64::from(i) / 400.0).abs())
                .fold(0.0, f64::max);
            1.25 * max
        })
        .collect();
    Coefficients { w, bound }
}

/// Partial sums of the expansion and the exponent `eta`.
pub(crate) struct Debye {
    pub eta: f64,
    pub p: f64,
    pub sum_i: f64,
    pub sum_k: f64,
}

/// Evaluates both series at once. Requires `p >= DEBYE_MIN_P` and `x > 0`.
pub(crate) fn debye(nu: f64, x: f64) -> Debye {
    let p = nu.hypot(x);
    debug_assert!(p >= DEBYE_MIN_P * (1.0 - 1e-12));
    let t = nu / p;
    let eta = p + if nu == 0.0 { 0.0 } else { nu * (x / (nu + p)).ln() };
    let coeffs = coefficients();
    let inv_p = 1.0 / p;
    let (mut sum_i, mut sum_k) = (1.0, 1.0);
    let mut pk = 1.0;
    for k in 1..=MAX_TERMS {
        pk *= inv_p;
        if coeffs.bound[k] * pk < 1e-17 {
            break;
        }
        let term = poly_eval(&coeffs.w[k], t) * pk;
        sum_i += term;
        sum_k += if k % 2 == 0 { term } else { -term };
    }
    Debye {
        eta,
        p,
        sum_i,
        sum_k,
    }
}

impl Debye {
    /// `I_nu(x) = mantissa * exp(eta)`.
    pub fn i_mantissa(&self) -> f64 {
        self.sum_i / (2.0 * PI * self.p).sqrt()
    }

    /// `K_nu(x) = mantissa * exp(-eta)`.
    pub fn k_mantissa(&self) -> f64 {
        self.sum_k * (PI / (2.0 * self.p)).sqrt()
    }
}
