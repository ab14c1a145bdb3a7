use crate::error::{domain, Result};
use crate::real::Real;

// Lanczos approximation, g = 7, n = 9 (Godfrey's coefficients).
const LANCZOS_G: f64 = 7.0;
const LANCZOS_COEFFS: [f64; 9] = [
    0.999_999_999_999_809_9,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_1,
    -176.615_029_162_140_6,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_572e-6,
    1.505_632_735_149_311_6e-7,
];

/// `ln Γ(x)` for `x > 0`.
pub fn log_gamma<T: Real>(x: T) -> Result<T> {
    if !(x > T::zero()) || !x.is_finite() {
        return Err(domain("log_gamma needs x > 0", x.f64()));
    }
    Ok(ln_gamma_pos(x))
}

pub(crate) fn ln_gamma_pos<T: Real>(x: T) -> T {
    if x < T::lit(0.5) {
        // Γ(x) = Γ(x + 1) / x keeps the Lanczos sum in its accurate range.
        return ln_gamma_pos(x + T::one()) - x.ln();
    }
    let z = x - T::one();
    let mut sum = T::lit(LANCZOS_COEFFS[0]);
    for (i, &c) in LANCZOS_COEFFS[1..].iter().enumerate() {
        sum = sum + T::lit(c) / (z + T::of(i as u64 + 1));
    }
    let t = z + T::lit(LANCZOS_G + 0.5);
    T::lit(0.5) * (T::TAU()).ln() + (z + T::lit(0.5)) * t.ln() - t + sum.ln()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn log_gamma_examples() {
        assert!(log_gamma(1.0f64).unwrap().abs() < 1e-15);
        assert!(log_gamma(2.0f64).unwrap().abs() < 1e-15);
        let half = log_gamma(0.5f64).unwrap();
        assert!((half - std::f64::consts::PI.sqrt().ln()).abs() < 1e-14);
        assert!((log_gamma(5.0f64).unwrap() - 24.0f64.ln()).abs() < 1e-14);
        assert!(log_gamma(0.0f64).is_err());
        assert!(log_gamma(-1.5f64).is_err());
    }

    #[test]
    fn log_gamma_matches_factorials() {
        let mut ln_fact = 0.0f64;
        for k in 1..170u64 {
            let got = log_gamma((k + 1) as f64).unwrap();
            ln_fact += (k as f64).ln();
            assert!((got - ln_fact).abs() <= 1e-13 * ln_fact.max(1.0), "k={k}");
        }
    }

    #[test]
    fn log_gamma_small_arguments() {
        // Γ(0.1) = 9.513507698668731836...
        let v = log_gamma(0.1f64).unwrap();
        assert!((v - 9.513_507_698_668_732f64.ln()).abs() < 1e-14);
    }
}
