//! Sharp worst-case errors of Fourier sums through duality: the error on the
//! class equals `1/π` times the centred `L_{p'}` distance of the kernel tail
//! to the constants.

use crate::error::{domain, Error, Result};
use crate::exponent::Exponent;
use crate::kernels::{Family, KernelSpec};
use crate::real::Real;
use crate::scaled::ScaledValue;
use crate::sharp::norm::{centered_lp_distance, NormRequest};
use crate::sharp::signal::CosineSeries;
use crate::specfun::zeta_tail;

/// Cap on retained terms for `p = 2` Weyl–Nagy tails; the squared tail past
/// the cap is added analytically.
const L2_TERM_CAP: usize = 1 << 17;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Metric<T> {
    UniformC,
    IntegralLp(Exponent<T>),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvalOptions<T> {
    /// Relative accuracy target for truncation and quadrature.
    pub tol: T,
    pub oversample: usize,
    /// Hard cap on retained tail terms.
    pub max_terms: usize,
}

impl<T: Real> Default for EvalOptions<T> {
    fn default() -> Self {
        Self {
            tol: T::lit(1e-12),
            oversample: 8,
            max_terms: 1 << 22,
        }
    }
}

#[derive(Debug, Clone)]
pub struct EValue<T: Real> {
    pub value: ScaledValue<T>,
    pub metric: Metric<T>,
    pub class_p: Exponent<T>,
    pub kernel: KernelSpec<T>,
    pub centering_constant: T,
    /// Quadrature change between the last two grid levels, relative to the value.
    pub quad_err: T,
    pub terms: usize,
    /// The `L_p` value on unit-`L_1` classes is the centred-distance surrogate.
    pub surrogate: bool,
}

/// Worst-case uniform error on `W^r_{β,p}` (or the Poisson class): the
/// tail's centred distance in `L_{p'}`, over `π`.
pub fn e_value_c<T: Real>(kernel: &KernelSpec<T>, class_p: Exponent<T>, opts: &EvalOptions<T>) -> Result<EValue<T>> {
    let (dist, c, quad_err, terms) = centered_tail_distance(kernel, class_p.conjugate(), opts)?;
    Ok(EValue {
        value: ScaledValue::new(dist / T::PI(), kernel.log_scale()),
        metric: Metric::UniformC,
        class_p,
        kernel: kernel.clone(),
        centering_constant: c,
        quad_err,
        terms,
        surrogate: false,
    })
}

/// Worst-case `L_p` error on the unit-`L_1` class, evaluated as the tail's
/// centred `L_p` distance over `π` (exact at `p = 2`).
pub fn e_value_l<T: Real>(kernel: &KernelSpec<T>, target_p: Exponent<T>, opts: &EvalOptions<T>) -> Result<EValue<T>> {
    let (dist, c, quad_err, terms) = centered_tail_distance(kernel, target_p, opts)?;
    Ok(EValue {
        value: ScaledValue::new(dist / T::PI(), kernel.log_scale()),
        metric: Metric::IntegralLp(target_p),
        class_p: Exponent::Finite(T::one()),
        kernel: kernel.clone(),
        centering_constant: c,
        quad_err,
        terms,
        surrogate: target_p != Exponent::Finite(T::lit(2.0)),
    })
}

/// Terms needed so the dropped tail moves the `L_s` norm by at most `tol`
/// relative to the tail's rms level. For `s ≤ 2` the dropped part is bounded in
/// `L_2` by its square-summed coefficients; otherwise by the sum of moduli.
pub fn terms_needed<T: Real>(kernel: &KernelSpec<T>, s: Exponent<T>, tol: T) -> Option<usize> {
    let tol = tol.f64();
    let l2 = matches!(s, Exponent::Finite(v) if v.f64() <= 2.0);
    let k = match kernel.family {
        Family::Poisson { q } => {
            let q = q.f64();
            let target = if l2 {
                tol
            } else {
                tol * (1.0 - q) / (2.0 * (1.0 - q * q)).sqrt()
            };
            (target.ln() / q.ln()).ceil()
        }
        Family::WeylNagy { r } => {
            let r = r.f64();
            let n = kernel.n as f64;
            // Σ_j (1 + j/n)^{-2r} ≥ n/(2r - 1)
            let rms = (0.5f64).max(n / (2.0 * (2.0 * r - 1.0))).sqrt();
            // Σ_{j ≥ K} (1 + j/n)^{-s} ≤ n/(s - 1) (1 + (K - 1)/n)^{1-s}
            let (decay, target) = if l2 {
                (2.0 * r, 2.0 * (tol * rms).powi(2))
            } else {
                (r, tol * rms)
            };
            if decay <= 1.0 {
                return None;
            }
            let x = (n / ((decay - 1.0) * target)).powf(1.0 / (decay - 1.0));
            (n * (x - 1.0)).max(0.0).ceil() + 1.0
        }
    };
    if k.is_finite() && k < 1e15 {
        Some((k as usize).max(1))
    } else {
        None
    }
}

/// `(min_c ‖tail - c‖_s, c*, relative quad error, retained terms)` in the
/// scaled units of the kernel.
fn centered_tail_distance<T: Real>(
    kernel: &KernelSpec<T>,
    s: Exponent<T>,
    opts: &EvalOptions<T>,
) -> Result<(T, T, T, usize)> {
    if !(opts.tol > T::zero()) {
        return Err(domain("tolerance must be positive", opts.tol.f64()));
    }
    let two = T::lit(2.0);
    let l2_weyl = s == Exponent::Finite(two) && kernel.r().is_some();
    let terms = match terms_needed(kernel, s, opts.tol) {
        Some(k) if l2_weyl => k.min(L2_TERM_CAP).min(opts.max_terms),
        Some(k) if k <= opts.max_terms => k,
        Some(k) => {
            return Err(Error::Truncation {
                terms: opts.max_terms,
                residual_bound: k as f64,
            })
        }
        None if l2_weyl => L2_TERM_CAP.min(opts.max_terms),
        None => {
            return Err(Error::Truncation {
                terms: opts.max_terms,
                residual_bound: f64::INFINITY,
            })
        }
    };
    let series = CosineSeries::kernel_tail(kernel, terms)?;
    let mut req = NormRequest::new(&series, s, opts.tol);
    req.oversample = opts.oversample;
    let out = centered_lp_distance(&req)?;
    let mut dist = out.value;
    if let (true, Some(r)) = (l2_weyl, kernel.r()) {
        // π Σ_{k ≥ n+K} (n/k)^{2r}: the part of the squared L2 norm beyond the
        // retained terms
        let n = kernel.n;
        let ln_n = T::of(n).ln();
        let rest = zeta_tail(two * r, n + terms as u64)?.mantissa_at(-two * r * ln_n);
        dist = (dist * dist + T::PI() * rest).sqrt();
    }
    let rel_err = if dist > T::zero() { out.quad_err / dist } else { out.quad_err };
    Ok((dist, out.center, rel_err, terms))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernels::PhaseRule;
    use crate::specfun::exact_l2_value;
    use std::f64::consts::PI;

    fn opts() -> EvalOptions<f64> {
        EvalOptions::default()
    }

    #[test]
    fn p2_examples() {
        let k = KernelSpec::weyl_nagy(1.0f64, 1, PhaseRule::constant(0.0)).unwrap();
        let v = e_value_c(&k, Exponent::Finite(2.0), &opts()).unwrap();
        assert!((v.value.value() - (PI / 6.0).sqrt()).abs() < 1e-9);
        let k = KernelSpec::weyl_nagy(2.0f64, 1, PhaseRule::constant(0.0)).unwrap();
        let v = e_value_c(&k, Exponent::Finite(2.0), &opts()).unwrap();
        // √(ζ(4)/π)
        assert!((v.value.value() - 0.586_953_307_629_035).abs() < 1e-12);
        let k = KernelSpec::poisson(0.5f64, 3, PhaseRule::constant(0.0)).unwrap();
        let v = e_value_l(&k, Exponent::Finite(2.0), &opts()).unwrap();
        assert!((v.value.value() - 0.125 / (PI * 0.75).sqrt()).abs() < 1e-12);
        assert!(!v.surrogate);
    }

    #[test]
    fn p2_is_phase_invariant() {
        let exact = exact_l2_value(3.0f64, 4).unwrap();
        for phases in [PhaseRule::constant(0.0), PhaseRule::constant(1.0), PhaseRule::pseudorandom(11)] {
            let k = KernelSpec::weyl_nagy(3.0f64, 4, phases).unwrap();
            let v = e_value_c(&k, Exponent::Finite(2.0), &opts()).unwrap();
            assert!((v.value.mantissa - exact.mantissa).abs() < 1e-10 * exact.mantissa);
        }
    }

    #[test]
    fn l_infinity_matches_c_at_one() {
        // the sup-norm truncation rule needs ~7e6 terms at 1e-12 for r = 3
        let o = EvalOptions { tol: 1e-9, ..opts() };
        let k = KernelSpec::weyl_nagy(3.0f64, 4, PhaseRule::constant(0.5)).unwrap();
        let l = e_value_l(&k, Exponent::Infinity, &o).unwrap();
        let c = e_value_c(&k, Exponent::Finite(1.0), &o).unwrap();
        assert!((l.value.mantissa - c.value.mantissa).abs() <= 1e-10 * c.value.mantissa);
        assert!(l.surrogate);
    }

    #[test]
    fn truncation_rule() {
        let k = KernelSpec::weyl_nagy(0.8f64, 4, PhaseRule::constant(0.0)).unwrap();
        assert!(terms_needed(&k, Exponent::Infinity, 1e-12).is_none());
        let k = KernelSpec::weyl_nagy(3.0f64, 4, PhaseRule::constant(0.0)).unwrap();
        let l2 = terms_needed(&k, Exponent::Finite(2.0), 1e-12).unwrap();
        let sup = terms_needed(&k, Exponent::Infinity, 1e-12).unwrap();
        assert!(l2 < sup);
        let k = KernelSpec::poisson(0.5f64, 4, PhaseRule::constant(0.0)).unwrap();
        assert_eq!(terms_needed(&k, Exponent::Finite(1.0), 1e-12), Some(40));
    }
}
