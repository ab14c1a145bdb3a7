//! Gauss hypergeometric function with third parameter 1, and the power
//! `F^{1/s}(s/2, s/2; 1; q²)` that appears in every main term.

use crate::error::{domain, Error, Result};
use crate::exponent::Exponent;
use crate::quad::LogSum;
use crate::real::Real;

const SERIES_TERM_CAP: usize = 400_000;
/// Above this `z` the Auto path switches to the integral representation.
pub const AUTO_SERIES_MAX_Z: f64 = 0.81;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HypergeomPath {
    Series,
    Integral,
    Auto,
}

/// Request for `F^{1/s}(s/2, s/2; 1; z)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HypergeomRequest<T> {
    pub s: Exponent<T>,
    pub z: T,
    pub tol: T,
    pub path: HypergeomPath,
}

/// `ln F(a, b; 1; z)` by the hypergeometric series, summed in log space so
/// that `a = b = s/2` with `s` in the thousands does not overflow.
///
/// Terminates once a rigorous geometric bound on the remaining terms falls
/// below `tol` relative to the partial sum and the term ratio has settled
/// below `(1 + z)/2`.
pub fn ln_hyp2f1_unit_c<T: Real>(a: T, b: T, z: T, tol: T) -> Result<T> {
    if !(a > T::zero() && b > T::zero()) {
        return Err(domain("hypergeometric series needs a, b > 0", a.min(b).f64()));
    }
    if !(z >= T::zero() && z < T::one()) {
        return Err(domain("hypergeometric argument z must lie in [0, 1)", z.f64()));
    }
    if z == T::zero() {
        return Ok(T::zero());
    }
    let one = T::one();
    let settle = (one + z) / T::lit(2.0);
    let ln_z = z.ln();
    let ln_tol = tol.ln();
    let mut acc = LogSum::new();
    let mut ln_term = T::zero();
    acc.push(ln_term);
    for k in 0..SERIES_TERM_CAP {
        let kf = T::of(k as u64);
        // t_{k+1} / t_k = (a + k)(b + k) / (k + 1)² · z
        ln_term = ln_term + (a + kf).ln() + (b + kf).ln() - T::lit(2.0) * (kf + one).ln() + ln_z;
        acc.push(ln_term);
        // All later ratios are z·g(u) with u = 1/(j+1) ≤ 1/(k+2), where
        // g(u) = 1 + (a+b-2)u + (a-1)(b-1)u².
        let rho = z * ratio_envelope(a, b, one / (kf + T::lit(2.0)));
        if rho < settle {
            let ln_tail = ln_term + (rho / (one - rho)).ln();
            if ln_tail <= ln_tol + acc.ln() {
                return Ok(acc.ln());
            }
        }
    }
    Err(Error::Accuracy {
        what: "hypergeometric series (use the integral path near z = 1)",
        estimate: acc.ln().exp().f64(),
        gauge: f64::NAN,
    })
}

/// `max_{0 < u ≤ u_max} 1 + (a+b-2)u + (a-1)(b-1)u²`.
fn ratio_envelope<T: Real>(a: T, b: T, u_max: T) -> T {
    let one = T::one();
    let c1 = a + b - T::lit(2.0);
    let c2 = (a - one) * (b - one);
    let g = |u: T| one + c1 * u + c2 * u * u;
    let mut best = g(T::zero()).max(g(u_max));
    if c2 < T::zero() {
        let v = -c1 / (T::lit(2.0) * c2);
        if v > T::zero() && v < u_max {
            best = best.max(g(v));
        }
    }
    best
}

/// `F(a, b; 1; z) = Σ (a)_k (b)_k / (k!)² z^k` for `a, b > 0`, `0 ≤ z < 1`.
pub fn hyp2f1_unit_c<T: Real>(a: T, b: T, z: T, tol: T) -> Result<T> {
    ln_hyp2f1_unit_c(a, b, z, tol).map(|v| v.exp())
}

/// `F^{1/s}(s/2, s/2; 1; q²)` as the normalized `L_s` mean of
/// `(1 - 2q cos x + q²)^{-1/2}` over one period, by the periodic trapezoid
/// rule on `grid_points` nodes (computed in log space).
pub fn f_power_via_integral<T: Real>(s: T, q: T, grid_points: usize) -> Result<T> {
    if !(s >= T::one()) {
        return Err(domain("F-power integral needs s >= 1", s.f64()));
    }
    if !(q >= T::zero() && q < T::one()) {
        return Err(domain("F-power integral needs q in [0, 1)", q.f64()));
    }
    if grid_points < 64 || !grid_points.is_power_of_two() {
        return Err(domain("grid_points must be a power of two >= 64", grid_points as f64));
    }
    if q == T::zero() {
        return Ok(T::one());
    }
    let half_s = s / T::lit(2.0);
    let one_minus_q_sq = (T::one() - q).powi(2);
    let four_q = T::lit(4.0) * q;
    // The integrand peaks at x = 0 with value (1 - q)^{-s}.
    let ln_peak = -s * (T::one() - q).ln();
    let m = grid_points;
    let h = T::TAU() / T::of(m as u64);
    let mut sum = T::zero();
    for j in 0..m {
        let half = (h * T::of(j as u64) / T::lit(2.0)).sin();
        // 1 - 2q cos x + q² = (1 - q)² + 4q sin²(x/2)
        let base = one_minus_q_sq + four_q * half * half;
        let ln_g = -half_s * base.ln();
        sum = sum + (ln_g - ln_peak).exp();
    }
    let ln_mean = (sum / T::of(m as u64)).ln() + ln_peak;
    let value = (ln_mean / s).exp();
    if !value.is_finite() {
        return Err(domain("F-power exceeds the representable range", s.f64()));
    }
    Ok(value)
}

/// Integral path with grid doubling until successive values agree to `tol`.
pub fn f_power_integral_adaptive<T: Real>(s: T, q: T, tol: T) -> Result<T> {
    let mut grid = 64usize;
    let mut prev = f_power_via_integral(s, q, grid)?;
    while grid < (1 << 22) {
        grid *= 2;
        let cur = f_power_via_integral(s, q, grid)?;
        if (cur - prev).abs() <= tol * cur {
            return Ok(cur);
        }
        prev = cur;
    }
    Err(Error::Accuracy {
        what: "F-power periodic trapezoid",
        estimate: prev.f64(),
        gauge: f64::NAN,
    })
}

/// `F^{1/s}(s/2, s/2; 1; z)` along the requested path; `s = ∞` gives
/// `1/(1 - √z)`.
pub fn f_power<T: Real>(req: &HypergeomRequest<T>) -> Result<T> {
    let z = req.z;
    if !(z >= T::zero() && z < T::one()) {
        return Err(domain("hypergeometric argument z must lie in [0, 1)", z.f64()));
    }
    if !(req.tol > T::zero()) {
        return Err(domain("tolerance must be positive", req.tol.f64()));
    }
    let q = z.sqrt();
    let s = match req.s {
        Exponent::Infinity => return Ok(T::one() / (T::one() - q)),
        Exponent::Finite(s) if s >= T::one() => s,
        Exponent::Finite(s) => return Err(domain("F-power needs s >= 1", s.f64())),
    };
    let series = || -> Result<T> {
        let half = s / T::lit(2.0);
        Ok((ln_hyp2f1_unit_c(half, half, z, req.tol)? / s).exp())
    };
    match req.path {
        HypergeomPath::Series => series(),
        HypergeomPath::Integral => f_power_integral_adaptive(s, q, req.tol),
        HypergeomPath::Auto => {
            if z <= T::lit(AUTO_SERIES_MAX_Z) {
                series()
            } else {
                f_power_integral_adaptive(s, q, req.tol)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specfun::elliptic_k;
    use std::f64::consts::PI;

    #[test]
    fn series_examples() {
        assert_eq!(hyp2f1_unit_c(0.7f64, 1.3, 0.0, 1e-15).unwrap(), 1.0);
        let v = hyp2f1_unit_c(1.0f64, 1.0, 0.25, 1e-15).unwrap();
        assert!((v - 4.0 / 3.0).abs() < 4e-15);
        let v = hyp2f1_unit_c(0.5f64, 0.5, 0.25, 1e-15).unwrap();
        let oracle = 2.0 / PI * elliptic_k(0.5f64).unwrap();
        assert!((v - oracle).abs() < 1e-14);
        assert!((v - 1.073_182_007_149_364_4).abs() < 1e-14);
    }

    #[test]
    fn series_domain_and_cap() {
        assert!(hyp2f1_unit_c(1.0f64, 1.0, 1.0, 1e-12).is_err());
        assert!(hyp2f1_unit_c(1.0f64, 1.0, -0.1, 1e-12).is_err());
        assert!(hyp2f1_unit_c(0.0f64, 1.0, 0.5, 1e-12).is_err());
        match hyp2f1_unit_c(0.5f64, 0.5, 0.999_999_9, 1e-15) {
            Err(Error::Accuracy { .. }) => {}
            other => panic!("expected accuracy error, got {other:?}"),
        }
    }

    #[test]
    fn integral_examples() {
        let v = f_power_via_integral(2.0f64, 0.6, 256).unwrap();
        assert!((v - 1.25).abs() < 1e-14);
        let v = f_power_via_integral(1.0f64, 0.5, 256).unwrap();
        assert!((v - 1.073_182_007_149_364_4).abs() < 1e-14);
        assert!(f_power_via_integral(1.0f64, 0.5, 100).is_err());
        assert!(f_power_via_integral(1.0f64, 0.5, 32).is_err());
        assert!(f_power_via_integral(0.5f64, 0.5, 64).is_err());
    }

    #[test]
    fn large_s_approaches_sup_bound() {
        // mpmath quadrature: 1.99882622436164760...
        let v = f_power_integral_adaptive(1e4f64, 0.5, 1e-13).unwrap();
        assert!((v - 1.998_826_224_361_647_6).abs() < 1e-11, "{v}");
        let lower = 2.0 / PI * elliptic_k(0.5f64).unwrap();
        assert!(v > lower && v < 2.0);
        let s = f_power(&HypergeomRequest {
            s: Exponent::Finite(1e4),
            z: 0.25,
            tol: 1e-14,
            path: HypergeomPath::Series,
        })
        .unwrap();
        assert!((s - v).abs() < 1e-11, "{s} vs {v}");
    }

    #[test]
    fn paths_agree() {
        for &s in &[1.0, 1.5, 2.0, 3.0, 6.0] {
            for i in 1..=9 {
                let q = i as f64 / 10.0;
                let series = (ln_hyp2f1_unit_c(s / 2.0, s / 2.0, q * q, 1e-15).unwrap() / s).exp();
                let integral = f_power_integral_adaptive(s, q, 1e-14).unwrap();
                assert!((series - integral).abs() <= 1e-12 * series, "s={s} q={q}");
            }
        }
    }

    #[test]
    fn infinite_exponent_branch() {
        let v = f_power(&HypergeomRequest {
            s: Exponent::<f64>::Infinity,
            z: 0.25,
            tol: 1e-12,
            path: HypergeomPath::Auto,
        })
        .unwrap();
        assert_eq!(v, 2.0);
    }
}
