//! Bessel functions needed by the shift integrals and the series oracles.
//!
//! `J` is returned as a plain `f64`. The modified functions `I`, `K`, `K'`
//! overflow `f64` at large order or argument and are returned as
//! [`ScaledValue`]s.

mod bessel_j;
mod debye;
mod modified;
mod scaled;

pub use bessel_j::{bessel_j, bessel_j_half_sequence, bessel_j_integer_sequence, BesselOrder};
pub use modified::{
    bessel_i_prime_scaled, bessel_i_scaled, bessel_k_prime_scaled, bessel_k_scaled,
};
pub use scaled::ScaledValue;

pub(crate) use modified::{i_unchecked, k_prime_unchecked, k_unchecked};

use crate::error::{Error, Result};

/// Largest supported order for every function in this module.
pub const MAX_ORDER: u32 = 10_000;

fn check_argument(x: f64) -> Result<()> {
    if !x.is_finite() {
        return Err(Error::invalid(format!("argument must be finite, got {x}")));
    }
    Ok(())
}
