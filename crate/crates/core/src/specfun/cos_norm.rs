use crate::error::{domain, Result};
use crate::real::Real;
use crate::specfun::gamma::ln_gamma_pos;

/// `‖cos‖_p` over one period `[-π, π)`:
/// `(2√π Γ((p+1)/2) / Γ(p/2 + 1))^{1/p}`, and exactly 1 for `p = ∞`.
pub fn cos_norm<T: Real>(p: T) -> Result<T> {
    if p == T::infinity() {
        return Ok(T::one());
    }
    if !(p >= T::one()) {
        return Err(domain("cos norm needs p >= 1", p.f64()));
    }
    let two = T::lit(2.0);
    let ln_int = two.ln() + T::PI().ln() / two + ln_gamma_pos((p + T::one()) / two) - ln_gamma_pos(p / two + T::one());
    Ok((ln_int / p).exp())
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn cos_norm_examples() {
        assert!((cos_norm(2.0f64).unwrap() - PI.sqrt()).abs() < 1e-14);
        assert!((cos_norm(1.0f64).unwrap() - 4.0).abs() < 1e-13);
        assert_eq!(cos_norm(f64::INFINITY).unwrap(), 1.0);
        assert!((cos_norm(1.5f64).unwrap() - 2.303_495_162_643_66).abs() < 1e-12);
        assert!((cos_norm(3.0f64).unwrap() - 1.386_722_548_701_27).abs() < 1e-12);
        assert!((cos_norm(10.0f64).unwrap() - 1.044_547_142_291_86).abs() < 1e-12);
        assert!(cos_norm(0.9f64).is_err());
    }

    #[test]
    fn matches_direct_quadrature() {
        // |cos|^p has kinks at ±π/2; integrate over [0, π/2] by Gauss-Legendre
        // on sub-panels, where the integrand is smooth.
        let (x, w) = crate::quad::gauss_legendre::<f64>(40);
        for &p in &[1.0f64, 1.5, 2.0, 3.0, 10.0, 37.5] {
            let panels = 64;
            let h = PI / 2.0 / panels as f64;
            let mut quarter = 0.0;
            for k in 0..panels {
                let mid = (k as f64 + 0.5) * h;
                for (xi, wi) in x.iter().zip(&w) {
                    quarter += wi * (h / 2.0) * (mid + xi * h / 2.0).cos().powf(p);
                }
            }
            let direct = (4.0 * quarter).powf(1.0 / p);
            let closed = cos_norm(p).unwrap();
            assert!((direct - closed).abs() < 1e-12 * closed, "p={p}");
        }
    }
}
