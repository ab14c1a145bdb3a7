//! Tails of Weyl–Nagy and Poisson kernels from frequency `n` on.
//!
//! Every quantity here is returned with the common decay factor removed:
//! Weyl–Nagy tails are multiplied by `n^r`, Poisson tails by `q^{-n}`. With
//! that normalization the `j`-th retained coefficient (frequency `n + j`) is
//! `(1 + j/n)^{-r}` or `q^j`, so nothing underflows even when `r ln n` is in
//! the thousands.

use std::fmt;
use std::sync::Arc;

use crate::error::{domain, Error, Result};
use crate::real::Real;

/// Phase shifts `β_k` of the cosine terms `cos(kt - β_k π/2)`.
#[derive(Clone)]
pub enum PhaseRule<T> {
    Constant(T),
    /// Arbitrary index rule; `label` is what reports print.
    Sequence {
        label: String,
        rule: Arc<dyn Fn(u64) -> T + Send + Sync>,
    },
}

impl<T: Real> PhaseRule<T> {
    pub fn constant(beta: T) -> Self {
        PhaseRule::Constant(beta)
    }

    pub fn sequence(label: impl Into<String>, rule: impl Fn(u64) -> T + Send + Sync + 'static) -> Self {
        PhaseRule::Sequence {
            label: label.into(),
            rule: Arc::new(rule),
        }
    }

    /// Deterministic pseudorandom phases in `[-2, 2)`, one per frequency.
    pub fn pseudorandom(seed: u64) -> Self {
        Self::sequence(format!("seq:{seed}"), move |k| {
            let u = splitmix64(seed ^ k.wrapping_mul(0x9E37_79B9_7F4A_7C15));
            let unit = (u >> 11) as f64 / (1u64 << 53) as f64;
            T::lit(4.0 * unit - 2.0)
        })
    }

    /// `β_k` for frequency `k ≥ 1`.
    #[inline]
    pub fn beta(&self, k: u64) -> T {
        match self {
            PhaseRule::Constant(b) => *b,
            PhaseRule::Sequence { rule, .. } => rule(k),
        }
    }

    pub fn as_constant(&self) -> Option<T> {
        match self {
            PhaseRule::Constant(b) => Some(*b),
            PhaseRule::Sequence { .. } => None,
        }
    }

    /// The rule with every phase shifted by `delta`.
    pub fn shifted(&self, delta: T) -> Self {
        match self {
            PhaseRule::Constant(b) => PhaseRule::Constant(*b + delta),
            PhaseRule::Sequence { label, rule } => {
                let rule = Arc::clone(rule);
                Self::sequence(format!("{label}{:+}", delta.f64()), move |k| rule(k) + delta)
            }
        }
    }

    /// Short text used in report rows.
    pub fn describe(&self) -> String {
        match self {
            PhaseRule::Constant(b) => format!("{}", b.f64()),
            PhaseRule::Sequence { label, .. } => label.clone(),
        }
    }

    /// Cosine phase offset `β_k π / 2`.
    #[inline]
    pub fn angle(&self, k: u64) -> T {
        self.beta(k) * T::FRAC_PI_2()
    }
}

impl<T: fmt::Debug> fmt::Debug for PhaseRule<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PhaseRule::Constant(b) => f.debug_tuple("Constant").field(b).finish(),
            PhaseRule::Sequence { label, .. } => f.debug_struct("Sequence").field("label", label).finish(),
        }
    }
}

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Family<T> {
    WeylNagy { r: T },
    Poisson { q: T },
}

/// A kernel tail: family, decay parameter, phases and the first retained
/// frequency `n`.
#[derive(Debug, Clone)]
pub struct KernelSpec<T> {
    pub family: Family<T>,
    pub phases: PhaseRule<T>,
    pub n: u64,
}

impl<T: Real> KernelSpec<T> {
    pub fn weyl_nagy(r: T, n: u64, phases: PhaseRule<T>) -> Result<Self> {
        if !(r > T::lit(0.5)) || !r.is_finite() {
            return Err(domain("Weyl-Nagy smoothness r must exceed 1/2", r.f64()));
        }
        if n == 0 {
            return Err(domain("tail start n must be at least 1", 0.0));
        }
        Ok(Self {
            family: Family::WeylNagy { r },
            phases,
            n,
        })
    }

    pub fn poisson(q: T, n: u64, phases: PhaseRule<T>) -> Result<Self> {
        if !(q > T::zero() && q < T::one()) {
            return Err(domain("Poisson decay q must lie in (0, 1)", q.f64()));
        }
        if n == 0 {
            return Err(domain("tail start n must be at least 1", 0.0));
        }
        Ok(Self {
            family: Family::Poisson { q },
            phases,
            n,
        })
    }

    /// The Poisson tail with `q = e^{-r/n}` that approximates this Weyl–Nagy
    /// tail.
    pub fn comparison_poisson(&self) -> Result<Self> {
        match self.family {
            Family::WeylNagy { r } => {
                let q = (-r / T::of(self.n)).exp();
                Self::poisson(q, self.n, self.phases.clone())
            }
            Family::Poisson { .. } => Ok(self.clone()),
        }
    }

    /// Natural log of the factor removed from the tail: `-r ln n` or `n ln q`.
    pub fn log_scale(&self) -> T {
        let n = T::of(self.n);
        match self.family {
            Family::WeylNagy { r } => -r * n.ln(),
            Family::Poisson { q } => n * q.ln(),
        }
    }

    /// Scaled amplitude of frequency `n + j`.
    #[inline]
    pub fn coefficient(&self, j: u64) -> T {
        match self.family {
            Family::WeylNagy { r } => (-r * (T::of(j) / T::of(self.n)).ln_1p()).exp(),
            Family::Poisson { q } => q.powi(j as i32),
        }
    }

    pub fn r(&self) -> Option<T> {
        match self.family {
            Family::WeylNagy { r } => Some(r),
            Family::Poisson { .. } => None,
        }
    }

    pub fn q(&self) -> Option<T> {
        match self.family {
            Family::Poisson { q } => Some(q),
            Family::WeylNagy { .. } => None,
        }
    }
}

/// Relative tolerance and hard term cap for truncating infinite series.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TruncationBudget<T> {
    pub tol: T,
    pub max_terms: usize,
}

impl<T: Real> TruncationBudget<T> {
    pub fn new(tol: T, max_terms: usize) -> Result<Self> {
        if !(tol > T::zero()) {
            return Err(domain("truncation tolerance must be positive", tol.f64()));
        }
        if max_terms == 0 {
            return Err(domain("term cap must be at least 1", 0.0));
        }
        Ok(Self { tol, max_terms })
    }
}

impl<T: Real> Default for TruncationBudget<T> {
    fn default() -> Self {
        Self {
            tol: T::lit(1e-12),
            max_terms: 1_000_000,
        }
    }
}

/// A truncated tail sum together with the analytic bound on what was dropped.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TailValue<T> {
    pub value: T,
    /// Number of summed terms.
    pub terms: usize,
    /// Upper bound on the sum of moduli of the omitted terms.
    pub residual_bound: T,
}

/// `ln` of `n/(r-1) (1 + K/n)^{1-r}`.
pub fn ln_tail_truncation_bound<T: Real>(r: T, n: u64, k: u64) -> T {
    let nf = T::of(n);
    (nf / (r - T::one())).ln() + (T::one() - r) * (T::of(k) / nf).ln_1p()
}

/// Integral-comparison bound on `Σ_{j>K} (1 + j/n)^{-r}`, valid for `r > 1`.
pub fn tail_truncation_bound<T: Real>(r: T, n: u64, k: u64) -> Result<T> {
    if !(r > T::one()) {
        return Err(domain("tail bound needs r > 1", r.f64()));
    }
    Ok(ln_tail_truncation_bound(r, n, k).exp())
}

/// `x - ln(1 + x)` without cancellation for small `x`.
fn x_minus_ln1p<T: Real>(x: T) -> T {
    if x < T::lit(0.1) {
        // Σ_{k≥2} (-1)^k x^k / k; 24 terms reach 1e-26 relative at x = 0.1.
        let mut term = x * x;
        let mut sum = T::zero();
        let mut sign = T::one();
        for k in 2..26u64 {
            sum = sum + sign * term / T::of(k);
            term = term * x;
            sign = -sign;
        }
        sum
    } else {
        x - x.ln_1p()
    }
}

/// `φ(x) = (1 + x)^{-r} - e^{-rx}`, the gap between polynomial and
/// exponential coefficient decay.
///
/// Evaluated as `(1+x)^{-r} (1 - e^{-r(x - ln(1+x))})`, which is free of
/// cancellation and stays finite for `r` far beyond the exponent range.
pub fn phi<T: Real>(x: T, r: T) -> T {
    if x == T::zero() {
        return T::zero();
    }
    let d = x_minus_ln1p(x);
    let poly = (-r * x.ln_1p()).exp();
    poly * -(-r * d).exp_m1()
}

fn weyl_params<T: Real>(spec: &KernelSpec<T>) -> Result<T> {
    match spec.family {
        Family::WeylNagy { r } => {
            if !(r > T::one()) {
                return Err(domain("pointwise Weyl-Nagy tails need r > 1", r.f64()));
            }
            Ok(r)
        }
        Family::Poisson { .. } => Err(domain("expected a Weyl-Nagy kernel", 0.0)),
    }
}

/// `n^r B_{r,β,n}(t) = Σ_{j≥0} (1 + j/n)^{-r} cos((n+j)t - β_{n+j}π/2)`.
///
/// Summation stops once [`tail_truncation_bound`] drops below
/// `budget.tol` times the accumulated modulus sum.
pub fn scaled_weyl_nagy_tail<T: Real>(spec: &KernelSpec<T>, t: T, budget: &TruncationBudget<T>) -> Result<TailValue<T>> {
    let r = weyl_params(spec)?;
    if !t.is_finite() {
        return Err(domain("angle must be finite", t.f64()));
    }
    let n = spec.n;
    let nf = T::of(n);
    let lead = nf / (r - T::one());
    let mut sum = T::zero();
    let mut modulus = T::zero();
    for j in 0..budget.max_terms as u64 {
        let x = T::of(j) / nf;
        let a = (-r * x.ln_1p()).exp();
        let k = n + j;
        sum = sum + a * (T::of(k) * t - spec.phases.angle(k)).cos();
        modulus = modulus + a;
        // n/(r-1) (1 + j/n)^{1-r} = n/(r-1) a_j (1 + j/n)
        let bound = lead * a * (T::one() + x);
        if bound <= budget.tol * modulus {
            return Ok(TailValue {
                value: sum,
                terms: j as usize + 1,
                residual_bound: bound,
            });
        }
    }
    Err(Error::Truncation {
        terms: budget.max_terms,
        residual_bound: tail_truncation_bound(r, n, budget.max_terms as u64 - 1)?.f64(),
    })
}

/// `q^{-n} P_{q,β,n}(t) = Σ_{j≥0} q^j cos((n+j)t - β_{n+j}π/2)`.
///
/// Constant phases use the closed geometric form; phase sequences are summed
/// directly under `budget`.
pub fn scaled_poisson_tail<T: Real>(spec: &KernelSpec<T>, t: T, budget: &TruncationBudget<T>) -> Result<T> {
    let q = poisson_q(spec)?;
    match spec.phases.as_constant() {
        Some(beta) => Ok(poisson_closed_form(q, spec.n, beta, t)),
        None => scaled_poisson_tail_series(spec, t, budget).map(|v| v.value),
    }
}

fn poisson_q<T: Real>(spec: &KernelSpec<T>) -> Result<T> {
    match spec.family {
        Family::Poisson { q } => Ok(q),
        Family::WeylNagy { .. } => Err(domain("expected a Poisson kernel", 0.0)),
    }
}

/// `[cos(nt - θ) - q cos((n-1)t - θ)] / (1 - 2q cos t + q²)` with `θ = βπ/2`.
pub(crate) fn poisson_closed_form<T: Real>(q: T, n: u64, beta: T, t: T) -> T {
    let theta = beta * T::FRAC_PI_2();
    let nf = T::of(n);
    let half = (t / T::lit(2.0)).sin();
    let denom = (T::one() - q).powi(2) + T::lit(4.0) * q * half * half;
    ((nf * t - theta).cos() - q * ((nf - T::one()) * t - theta).cos()) / denom
}

/// Direct summation of the scaled Poisson tail (any phase rule).
pub fn scaled_poisson_tail_series<T: Real>(spec: &KernelSpec<T>, t: T, budget: &TruncationBudget<T>) -> Result<TailValue<T>> {
    let q = poisson_q(spec)?;
    let n = spec.n;
    let mut sum = T::zero();
    let mut modulus = T::zero();
    let mut a = T::one();
    for j in 0..budget.max_terms as u64 {
        let k = n + j;
        sum = sum + a * (T::of(k) * t - spec.phases.angle(k)).cos();
        modulus = modulus + a;
        // Σ_{i>j} q^i = q^{j+1} / (1 - q)
        let bound = a * q / (T::one() - q);
        if bound <= budget.tol * modulus {
            return Ok(TailValue {
                value: sum,
                terms: j as usize + 1,
                residual_bound: bound,
            });
        }
        a = a * q;
    }
    Err(Error::Truncation {
        terms: budget.max_terms,
        residual_bound: (a * q / (T::one() - q)).f64(),
    })
}

/// `n^r R_n(t) = Σ_{j≥1} φ(j/n) cos((n+j)t - β_{n+j}π/2)`, the part of the
/// Weyl–Nagy tail not captured by the Poisson tail with `q = e^{-r/n}`.
pub fn scaled_remainder_kernel<T: Real>(
    r: T,
    phases: &PhaseRule<T>,
    n: u64,
    t: T,
    budget: &TruncationBudget<T>,
) -> Result<TailValue<T>> {
    if !(r > T::one()) {
        return Err(domain("remainder kernel needs r > 1", r.f64()));
    }
    if n == 0 {
        return Err(domain("tail start n must be at least 1", 0.0));
    }
    let nf = T::of(n);
    let lead = nf / (r - T::one());
    let mut sum = T::zero();
    let mut modulus = T::zero();
    for j in 1..=budget.max_terms as u64 {
        let x = T::of(j) / nf;
        let w = phi(x, r);
        let k = n + j;
        sum = sum + w * (T::of(k) * t - phases.angle(k)).cos();
        modulus = modulus + w;
        // φ(j/n) < (1 + j/n)^{-r}, so the Weyl–Nagy bound covers the rest.
        let bound = lead * (-(r - T::one()) * x.ln_1p()).exp();
        if bound <= budget.tol * modulus {
            return Ok(TailValue {
                value: sum,
                terms: j as usize,
                residual_bound: bound,
            });
        }
    }
    Err(Error::Truncation {
        terms: budget.max_terms,
        residual_bound: tail_truncation_bound(r, n, budget.max_terms as u64)?.f64(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn budget(tol: f64, max_terms: usize) -> TruncationBudget<f64> {
        TruncationBudget::new(tol, max_terms).unwrap()
    }

    #[test]
    fn weyl_tail_zeta_two_at_origin() {
        let spec = KernelSpec::weyl_nagy(2.0, 1, PhaseRule::constant(0.0)).unwrap();
        let v = scaled_weyl_nagy_tail(&spec, 0.0, &budget(1e-7, 50_000_000)).unwrap();
        let exact = PI * PI / 6.0;
        // the bound is nearly tight here, so allow for summation roundoff
        assert!((v.value - exact).abs() <= v.residual_bound + 1e-8);
        assert!((v.value - exact).abs() < 2e-7);
    }

    #[test]
    fn weyl_tail_sine_phase_vanishes_at_origin() {
        let spec = KernelSpec::weyl_nagy(2.0, 1, PhaseRule::constant(1.0)).unwrap();
        let v = scaled_weyl_nagy_tail(&spec, 0.0, &budget(1e-6, 10_000_000)).unwrap();
        assert!(v.value.abs() < 1e-12);
    }

    #[test]
    fn weyl_tail_alternating_zeta_three() {
        // 8 Σ_{k≥2} (-1)^k k^{-3} = 8 - 6 ζ(3), mpmath to 30 digits.
        let spec = KernelSpec::weyl_nagy(3.0, 2, PhaseRule::constant(0.0)).unwrap();
        let v = scaled_weyl_nagy_tail(&spec, PI, &budget(1e-13, 50_000_000)).unwrap();
        assert!((v.value - 0.787_658_581_042_434_3).abs() < 1e-11, "{}", v.value);
    }

    #[test]
    fn weyl_tail_reports_truncation_failure() {
        let spec = KernelSpec::weyl_nagy(1.5, 1, PhaseRule::constant(0.0)).unwrap();
        match scaled_weyl_nagy_tail(&spec, 0.3, &budget(1e-12, 1000)) {
            Err(Error::Truncation { terms, residual_bound }) => {
                assert_eq!(terms, 1000);
                assert!(residual_bound > 0.0);
            }
            other => panic!("expected truncation failure, got {other:?}"),
        }
        assert!(scaled_weyl_nagy_tail(&KernelSpec::weyl_nagy(1.0, 1, PhaseRule::constant(0.0)).unwrap(), 0.0, &budget(1e-3, 10)).is_err());
    }

    #[test]
    fn poisson_tail_examples() {
        let b = TruncationBudget::default();
        let s = KernelSpec::poisson(0.5f64, 1, PhaseRule::constant(0.0)).unwrap();
        assert!((scaled_poisson_tail(&s, 0.0, &b).unwrap() - 2.0).abs() < 1e-15);
        let s = KernelSpec::poisson(0.9, 7, PhaseRule::constant(0.0)).unwrap();
        assert!((scaled_poisson_tail(&s, 0.0, &b).unwrap() - 10.0).abs() < 1e-13);
        let s = KernelSpec::poisson(0.5, 2, PhaseRule::constant(0.0)).unwrap();
        assert!((scaled_poisson_tail(&s, PI, &b).unwrap() - 2.0 / 3.0).abs() < 1e-15);
    }

    #[test]
    fn poisson_closed_form_matches_series() {
        let b = budget(1e-17, 100_000);
        for &q in &[0.1f64, 0.5, 0.9, 0.99] {
            for &beta in &[0.0, 0.5, 1.0, -1.3] {
                let s = KernelSpec::poisson(q, 5, PhaseRule::constant(beta)).unwrap();
                for i in 0..40 {
                    let t = -PI + 2.0 * PI * i as f64 / 40.0 + 0.01;
                    let closed = scaled_poisson_tail(&s, t, &b).unwrap();
                    let series = scaled_poisson_tail_series(&s, t, &b).unwrap().value;
                    let scale = 1.0 / (1.0 - q);
                    assert!((closed - series).abs() <= 1e-13 * scale, "q={q} beta={beta} t={t}");
                }
            }
        }
    }

    #[test]
    fn phi_examples() {
        assert_eq!(phi(0.0f64, 5.0), 0.0);
        assert!((phi(1.0f64, 2.0) - (0.25 - (-2.0f64).exp())).abs() < 1e-16);
        // mpmath: 1.1^-100 - e^-10
        assert!((phi(0.1f64, 100.0) - 2.716_578_613_899_656e-5).abs() < 1e-18);
    }

    #[test]
    fn phi_stays_finite_for_huge_r() {
        let v = phi(1e-3f64, 1e6);
        assert!(v.is_finite() && v >= 0.0);
        assert!(phi(1e-9f64, 2.0) > 0.0);
    }

    #[test]
    fn remainder_kernel_example() {
        let v = scaled_remainder_kernel(2.0f64, &PhaseRule::constant(0.0), 1, 0.0, &budget(1e-6, 10_000_000)).unwrap();
        // (π²/6 - 1) - e^{-2}/(1 - e^{-2})
        assert!((v.value - 0.488_416_424_098_560_8).abs() <= v.residual_bound + 1e-8, "{}", v.value);
        let v = scaled_remainder_kernel(5.0f64, &PhaseRule::constant(1.0), 3, 0.0, &TruncationBudget::default()).unwrap();
        assert!(v.value.abs() < 1e-15);
    }

    #[test]
    fn truncation_bound_examples() {
        assert!((tail_truncation_bound(2.0f64, 1, 0).unwrap() - 1.0).abs() < 1e-15);
        assert!((tail_truncation_bound(3.0f64, 2, 2).unwrap() - 0.25).abs() < 1e-15);
        // true residual 8 ζ(3, 5) = 0.19516
        let residual: f64 = (5..2_000_000u64).map(|k| 8.0 / (k as f64).powi(3)).sum();
        assert!(residual < 0.25 && (residual - 0.195_158_928_980_458).abs() < 1e-9);
        let mut prev = f64::INFINITY;
        for r in [2.0, 4.0, 8.0, 16.0, 64.0] {
            let b = tail_truncation_bound(r, 5, 3).unwrap();
            assert!(b < prev);
            prev = b;
        }
        assert!(tail_truncation_bound(1.0, 5, 3).is_err());
    }

    #[test]
    fn spec_validation() {
        assert!(KernelSpec::weyl_nagy(0.5, 1, PhaseRule::constant(0.0)).is_err());
        assert!(KernelSpec::weyl_nagy(2.0, 0, PhaseRule::constant(0.0)).is_err());
        assert!(KernelSpec::poisson(1.0, 1, PhaseRule::constant(0.0)).is_err());
        assert!(KernelSpec::poisson(0.0, 1, PhaseRule::constant(0.0)).is_err());
        assert!(TruncationBudget::new(0.0, 5).is_err());
        assert!(TruncationBudget::new(1e-3, 0).is_err());
    }
}
