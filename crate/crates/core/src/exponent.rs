use core::fmt;

use crate::error::{domain, Result};
use crate::real::Real;

/// An `L_p` exponent in `[1, ∞]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Exponent<T> {
    Finite(T),
    Infinity,
}

impl<T: Real> Exponent<T> {
    pub fn new(p: T) -> Result<Self> {
        if p == T::infinity() {
            return Ok(Exponent::Infinity);
        }
        if !(p >= T::one()) {
            return Err(domain("exponent p must be at least 1", p.f64()));
        }
        Ok(Exponent::Finite(p))
    }

    /// Hölder conjugate `p'` with `1/p + 1/p' = 1`.
    pub fn conjugate(&self) -> Self {
        match *self {
            Exponent::Infinity => Exponent::Finite(T::one()),
            Exponent::Finite(p) if p == T::one() => Exponent::Infinity,
            Exponent::Finite(p) => Exponent::Finite(p / (p - T::one())),
        }
    }

    /// `p` as a scalar (`+inf` for `∞`).
    pub fn value(&self) -> T {
        match *self {
            Exponent::Finite(p) => p,
            Exponent::Infinity => T::infinity(),
        }
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, Exponent::Infinity)
    }

    /// `1/p` (zero for `∞`).
    pub fn recip(&self) -> T {
        match *self {
            Exponent::Finite(p) => p.recip(),
            Exponent::Infinity => T::zero(),
        }
    }

    /// True for `p ∈ {2, 4, 6, ...}`, where `|f|^p` is a trigonometric
    /// polynomial whenever `f` is.
    pub fn is_even_integer(&self) -> bool {
        match *self {
            Exponent::Finite(p) => {
                let two = T::lit(2.0);
                (p / two).fract() == T::zero()
            }
            Exponent::Infinity => false,
        }
    }
}

impl<T: Real> fmt::Display for Exponent<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Exponent::Finite(p) => write!(f, "{}", p.f64()),
            Exponent::Infinity => write!(f, "inf"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn conjugates() {
        assert_eq!(Exponent::new(1.0).unwrap().conjugate(), Exponent::Infinity);
        assert_eq!(Exponent::<f64>::Infinity.conjugate(), Exponent::Finite(1.0));
        assert_eq!(Exponent::new(2.0).unwrap().conjugate(), Exponent::Finite(2.0));
        assert_eq!(Exponent::new(1.5).unwrap().conjugate(), Exponent::Finite(3.0));
        assert!(Exponent::new(0.5).is_err());
        assert!(Exponent::new(f64::NAN).is_err());
        assert_eq!(Exponent::new(f64::INFINITY).unwrap(), Exponent::Infinity);
    }

    #[test]
    fn even_integers() {
        assert!(Exponent::Finite(2.0).is_even_integer());
        assert!(Exponent::Finite(4.0).is_even_integer());
        assert!(!Exponent::Finite(3.0).is_even_integer());
        assert!(!Exponent::Finite(1.5).is_even_integer());
        assert!(!Exponent::<f64>::Infinity.is_even_integer());
    }
}
