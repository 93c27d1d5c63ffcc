use std::cmp::Ordering;
use std::ops::{Div, Mul, Neg};

/// A real number stored as `mantissa * exp(log_scale)`.
///
/// Used for modified Bessel functions whose magnitude leaves the `f64` range
/// (large order at small argument, or large argument). Products and quotients
/// add and subtract `log_scale` exactly, so ratios such as
/// `I_m(a) / K_m(a) * K_m(b)^2` stay finite when every factor overflows.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScaledValue {
    pub mantissa: f64,
    pub log_scale: f64,
}

const RENORM_HI: f64 = 1e280;
const RENORM_LO: f64 = 1e-280;

impl ScaledValue {
    pub const ZERO: ScaledValue = ScaledValue {
        mantissa: 0.0,
        log_scale: 0.0,
    };

    pub fn new(mantissa: f64, log_scale: f64) -> Self {
        Self {
            mantissa,
            log_scale,
        }
        .renormalized()
    }

    pub fn from_f64(v: f64) -> Self {
        Self::new(v, 0.0)
    }

    /// The represented value as a plain `f64`; may overflow to infinity or
    /// underflow to zero.
    pub fn value(self) -> f64 {
        if self.mantissa == 0.0 {
            return 0.0;
        }
        self.mantissa * self.log_scale.exp()
    }

    /// `ln |value|`.
    pub fn ln_abs(self) -> f64 {
        self.mantissa.abs().ln() + self.log_scale
    }

    pub fn is_zero(self) -> bool {
        self.mantissa == 0.0
    }

    pub fn is_finite(self) -> bool {
        self.mantissa.is_finite() && self.log_scale.is_finite()
    }

    pub fn signum(self) -> f64 {
        if self.mantissa == 0.0 {
            0.0
        } else {
            self.mantissa.signum()
        }
    }

    /// Moves the binary exponent of the mantissa into `log_scale` when the
    /// mantissa drifts far from unity.
    fn renormalized(self) -> Self {
        let a = self.mantissa.abs();
        if a == 0.0 || !a.is_finite() || (RENORM_LO..=RENORM_HI).contains(&a) {
            return self;
        }
        self.normalized()
    }

    /// Brings the mantissa into `[1, 2)` in magnitude.
    fn normalized(self) -> Self {
        let a = self.mantissa.abs();
        if a == 0.0 || !a.is_finite() {
            return self;
        }
        let e = a.log2().floor() as i32;
        // split so that each power of two stays representable
        let half = e / 2;
        let m = self.mantissa * 2f64.powi(-half) * 2f64.powi(-(e - half));
        Self {
            mantissa: m,
            log_scale: self.log_scale + f64::from(e) * std::f64::consts::LN_2,
        }
    }

    pub fn recip(self) -> Self {
        Self::new(1.0 / self.mantissa, -self.log_scale)
    }

    pub fn scale(self, factor: f64) -> Self {
        Self::new(self.mantissa * factor, self.log_scale)
    }

    pub fn square(self) -> Self {
        self * self
    }

    /// Sum of two scaled values, aligned on the larger exponent.
    #[allow(clippy::should_implement_trait)]
    pub fn add(self, other: Self) -> Self {
        if self.mantissa == 0.0 {
            return other;
        }
        if other.mantissa == 0.0 {
            return self;
        }
        let (big, small) = match self.log_scale.partial_cmp(&other.log_scale) {
            Some(Ordering::Less) => (other, self),
            _ => (self, other),
        };
        let m = big.mantissa + small.mantissa * (small.log_scale - big.log_scale).exp();
        Self::new(m, big.log_scale)
    }

    /// Rewrites the value with the given `log_scale`, e.g. to express `I_m(x)`
    /// as `mantissa * exp(x)`. The mantissa may overflow.
    pub fn with_log_scale(self, log_scale: f64) -> Self {
        Self {
            mantissa: self.mantissa * (self.log_scale - log_scale).exp(),
            log_scale,
        }
    }
}

impl Mul for ScaledValue {
    type Output = ScaledValue;
    fn mul(self, rhs: Self) -> Self {
        let m = self.mantissa * rhs.mantissa;
        if m.is_finite() && (m != 0.0 || self.mantissa == 0.0 || rhs.mantissa == 0.0) {
            return Self::new(m, self.log_scale + rhs.log_scale);
        }
        let (a, b) = (self.normalized(), rhs.normalized());
        Self::new(a.mantissa * b.mantissa, a.log_scale + b.log_scale)
    }
}

impl Div for ScaledValue {
    type Output = ScaledValue;
    fn div(self, rhs: Self) -> Self {
        let m = self.mantissa / rhs.mantissa;
        if m.is_finite() && (m != 0.0 || self.mantissa == 0.0) {
            return Self::new(m, self.log_scale - rhs.log_scale);
        }
        let (a, b) = (self.normalized(), rhs.normalized());
        Self::new(a.mantissa / b.mantissa, a.log_scale - b.log_scale)
    }
}

impl Neg for ScaledValue {
    type Output = ScaledValue;
    fn neg(self) -> Self {
        Self {
            mantissa: -self.mantissa,
            log_scale: self.log_scale,
        }
    }
}
