//! Mantissa / log-scale representation of quantities such as `n^{-r}` that
//! leave the floating-point range long before the formulas stop making sense.

use core::cmp::Ordering;
use core::fmt;

use crate::real::Real;

/// A non-negative real stored as `mantissa * exp(log_scale)`.
///
/// Arithmetic between values is done by moving one of them to the other's
/// scale; the represented value is only materialized by [`ScaledValue::value`],
/// which trips the underflow/overflow [`sentinel`] when it leaves the normal
/// range.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct ScaledValue<T> {
    pub mantissa: T,
    pub log_scale: T,
}

const MANTISSA_LO: f64 = 1e-3;
const MANTISSA_HI: f64 = 1e3;

impl<T: Real> ScaledValue<T> {
    pub fn new(mantissa: T, log_scale: T) -> Self {
        Self {
            mantissa,
            log_scale,
        }
    }

    /// Wraps an ordinary value at scale 0.
    pub fn from_value(value: T) -> Self {
        Self::new(value, T::zero())
    }

    /// Builds a value from its natural logarithm, with mantissa 1.
    pub fn from_ln(ln_value: T) -> Self {
        Self::new(T::one(), ln_value)
    }

    /// Natural log of the represented value (`-inf` for a zero mantissa).
    pub fn ln(&self) -> T {
        self.mantissa.ln() + self.log_scale
    }

    /// Decimal exponent of the scale factor.
    pub fn log10_scale(&self) -> T {
        self.log_scale / T::LN_10()
    }

    /// Materializes `mantissa * exp(log_scale)`.
    pub fn value(&self) -> T {
        let v = self.mantissa * self.log_scale.exp();
        sentinel::check(v, self.mantissa);
        v
    }

    /// Mantissa this value would carry at `log_scale`.
    pub fn mantissa_at(&self, log_scale: T) -> T {
        if self.mantissa == T::zero() {
            return T::zero();
        }
        self.mantissa * (self.log_scale - log_scale).exp()
    }

    /// Same value, re-expressed at `log_scale`.
    pub fn rescaled(&self, log_scale: T) -> Self {
        Self::new(self.mantissa_at(log_scale), log_scale)
    }

    /// Shifts the scale so the mantissa lies in `[1e-3, 1e3]`.
    pub fn normalized(&self) -> Self {
        let m = self.mantissa;
        if m == T::zero() || !m.is_finite() {
            return *self;
        }
        let lo = T::lit(MANTISSA_LO);
        let hi = T::lit(MANTISSA_HI);
        if m >= lo && m <= hi {
            return *self;
        }
        let shift = m.ln();
        Self::new(T::one(), self.log_scale + shift)
    }

    pub fn is_normalized(&self) -> bool {
        self.mantissa == T::zero()
            || (self.mantissa >= T::lit(MANTISSA_LO) && self.mantissa <= T::lit(MANTISSA_HI))
    }

    pub fn scale_by(&self, factor: T) -> Self {
        Self::new(self.mantissa * factor, self.log_scale)
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self::new(self.mantissa * other.mantissa, self.log_scale + other.log_scale)
    }

    pub fn sqrt(&self) -> Self {
        Self::new(self.mantissa.sqrt(), self.log_scale / T::lit(2.0))
    }

    pub fn powf(&self, e: T) -> Self {
        Self::new(self.mantissa.powf(e), self.log_scale * e)
    }

    /// Sum of two values, expressed at `self`'s scale.
    pub fn add(&self, other: &Self) -> Self {
        Self::new(self.mantissa + other.mantissa_at(self.log_scale), self.log_scale)
    }

    /// Signed difference `self - other` in mantissa units of `self`'s scale.
    pub fn diff_mantissa(&self, other: &Self) -> T {
        self.mantissa - other.mantissa_at(self.log_scale)
    }

    /// `|self - other| / max(self, other)`, computed without leaving log space.
    pub fn rel_diff(&self, other: &Self) -> T {
        let scale = if self.ln() >= other.ln() {
            self.log_scale
        } else {
            other.log_scale
        };
        crate::real::rel_diff(self.mantissa_at(scale), other.mantissa_at(scale))
    }

    /// Orders two values by comparing logarithms.
    pub fn cmp_value(&self, other: &Self) -> Option<Ordering> {
        self.ln().partial_cmp(&other.ln())
    }
}

impl<T: Real> fmt::Display for ScaledValue<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}·e^{}", self.mantissa, self.log_scale)
    }
}

/// Thread-local counter of materializations that left the normal range.
///
/// Numerical code that must stay in log space can bracket a computation with
/// [`sentinel::reset`] and [`sentinel::trips`] to prove it never exponentiated
/// a scale factor that underflows or overflows.
pub mod sentinel {
    use core::cell::Cell;

    use crate::real::Real;

    thread_local! {
        static TRIPS: Cell<usize> = const { Cell::new(0) };
    }

    pub fn reset() {
        TRIPS.with(|t| t.set(0));
    }

    pub fn trips() -> usize {
        TRIPS.with(|t| t.get())
    }

    /// Records a trip when `v` is non-finite, or subnormal/zero while `source`
    /// is not.
    pub fn check<T: Real>(v: T, source: T) {
        let bad = !v.is_finite() || (source != T::zero() && source.is_finite() && !v.is_normal());
        if bad {
            TRIPS.with(|t| t.set(t.get() + 1));
        }
    }
}
