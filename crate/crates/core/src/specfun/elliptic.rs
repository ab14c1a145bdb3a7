use crate::error::{domain, Result};
use crate::real::Real;

const AGM_MAX_ITER: usize = 12;

/// Complete elliptic integral of the first kind in modulus form,
/// `K(q) = ∫_0^{π/2} (1 - q² sin² t)^{-1/2} dt`, via
/// `K(q) = π / (2 AGM(1, √(1 - q²)))`.
pub fn elliptic_k<T: Real>(q: T) -> Result<T> {
    if !(q >= T::zero() && q < T::one()) {
        return Err(domain("elliptic K needs modulus q in [0, 1)", q.f64()));
    }
    let mut a = T::one();
    // 1 - q² = (1 - q)(1 + q) keeps precision as q → 1
    let mut b = ((T::one() - q) * (T::one() + q)).sqrt();
    for _ in 0..AGM_MAX_ITER {
        if (a - b).abs() <= T::epsilon() * a {
            break;
        }
        let next = (a + b) / T::lit(2.0);
        b = (a * b).sqrt();
        a = next;
    }
    Ok(T::PI() / (T::lit(2.0) * a))
}
