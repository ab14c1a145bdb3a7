//! Numerical checks of the bounds behind the remainder estimates: the sum
//! `Σ φ(k/n)` and its split, the second-band ratio, the elementary
//! inequalities, and the triangle/Hölder bound on the remainder kernel.

use crate::asymptotics::regime_classify;
use crate::error::{domain, Error, Result};
use crate::exponent::Exponent;
use crate::kernels::{ln_tail_truncation_bound, scaled_poisson_tail, KernelSpec, PhaseRule, TruncationBudget};
use crate::real::{rel_diff, Real};
use crate::sharp::{periodic_lp_norm, CosineSeries, NormRequest, PeriodicSignal};
use crate::specfun::zeta_tail;

/// Past this `r (x - ln(1 + x))` the exponential part of `φ` is below
/// `e^{-40}` of the polynomial part and the rest of the sum is taken in
/// closed form.
const EXP_NEGLIGIBLE: f64 = 40.0;
/// Relative accuracy of the Euler–Maclaurin tail.
const ZETA_REL: f64 = 1e-14;

/// Lemma constants.
pub const HEAD_CONST: f64 = 54.0 / std::f64::consts::E;
pub fn tail_const() -> f64 {
    16.0 - 8.0 * std::f64::consts::SQRT_2
}
pub const TOTAL_CONST: f64 = 24.5518;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhiSumResult<T> {
    /// `Σ_{k≥1} φ(k/n)`; may underflow, see `ln_value`.
    pub value: T,
    pub ln_value: T,
    /// `k ≤ m` part.
    pub split_head: T,
    /// `k > m` part.
    pub split_tail: T,
    /// `⌊n/√r⌋`.
    pub m: u64,
    /// Directly summed terms before the closed-form rest.
    pub terms: usize,
    pub residual_bound: T,
}

/// `ln φ(x)`, finite wherever `φ(x) > 0`.
fn ln_phi<T: Real>(x: T, r: T) -> T {
    let d = if x < T::lit(0.1) {
        // x - ln(1 + x) = Σ_{k≥2} (-1)^k x^k / k
        let (mut term, mut sum, mut sign) = (x * x, T::zero(), T::one());
        for k in 2..26u64 {
            sum = sum + sign * term / T::of(k);
            term = term * x;
            sign = -sign;
        }
        sum
    } else {
        x - x.ln_1p()
    };
    -r * x.ln_1p() + (-(-r * d).exp_m1()).ln()
}

/// `⌊n/√r⌋` with the integer comparison `m² r ≤ n² < (m + 1)² r` enforced,
/// so perfect squares do not flip by rounding.
pub fn split_index<T: Real>(r: T, n: u64) -> u64 {
    let (r, nf) = (r.f64(), n as f64);
    let mut m = (nf / r.sqrt()).floor().max(0.0) as u64;
    let n2 = nf * nf;
    while m > 0 && (m as f64).powi(2) * r > n2 {
        m -= 1;
    }
    while ((m + 1) as f64).powi(2) * r <= n2 {
        m += 1;
    }
    m
}

/// Neumaier-compensated sum.
fn compensated_sum<T: Real>(xs: impl Iterator<Item = T>) -> T {
    let (mut s, mut c) = (T::zero(), T::zero());
    for x in xs {
        let t = s + x;
        c = c + if s.abs() >= x.abs() { (s - t) + x } else { (x - t) + s };
        s = t;
    }
    s + c
}

/// `ln Σ exp(l_i)` with compensated summation.
fn ln_sum<T: Real>(ls: &[T]) -> T {
    let mx = ls.iter().copied().fold(T::neg_infinity(), T::max);
    if mx == T::neg_infinity() {
        return mx;
    }
    mx + compensated_sum(ls.iter().map(|&l| (l - mx).exp())).ln()
}

/// `Σ_{k≥1} φ(k/n)`, `φ(x) = (1 + x)^{-r} - e^{-rx}`.
///
/// Terms are summed directly until the exponential part is negligible; the
/// rest is `n^r ζ(r, n + K + 1)` minus the geometric series in closed form.
/// Works in log space, so second-band points with `r/n` in the hundreds are
/// fine.
pub fn phi_sum<T: Real>(r: T, n: u64, budget: &TruncationBudget<T>) -> Result<PhiSumResult<T>> {
    if !(r > T::one() && r.is_finite()) {
        return Err(domain("phi sum needs finite r > 1", r.f64()));
    }
    if n == 0 {
        return Err(domain("phi sum needs n >= 1", 0.0));
    }
    let nf = T::of(n);
    let m = split_index(r, n);
    let past = |k: u64| {
        let x = T::of(k) / nf;
        r * (x - x.ln_1p()) >= T::lit(EXP_NEGLIGIBLE)
    };
    let mut k_hi = 1u64;
    while !past(k_hi) {
        k_hi *= 2;
        if k_hi as usize > 2 * budget.max_terms {
            break;
        }
    }
    let mut k_lo = k_hi / 2;
    while k_hi - k_lo > 1 {
        let mid = k_lo + (k_hi - k_lo) / 2;
        if past(mid) {
            k_hi = mid;
        } else {
            k_lo = mid;
        }
    }
    let terms = k_hi.max(m);
    if terms as usize > budget.max_terms {
        return Err(Error::Truncation {
            terms: budget.max_terms,
            residual_bound: ln_tail_truncation_bound(r, n, budget.max_terms as u64).exp().f64(),
        });
    }
    let ln_terms: Vec<T> = (1..=terms).map(|k| ln_phi(T::of(k) / nf, r)).collect();
    let ln_head = ln_sum(&ln_terms[..m as usize]);
    let ln_mid = ln_sum(&ln_terms[m as usize..]);

    // Σ_{k>K} (1 + k/n)^{-r} - Σ_{k>K} e^{-rk/n}
    let ln_z = zeta_tail(r, n + terms + 1)?.ln() + r * nf.ln();
    let ln_tail = if ln_z > T::neg_infinity() {
        let ln_g = -r * T::of(terms + 1) / nf - (-(-r / nf).exp_m1()).ln();
        ln_z + (-(ln_g - ln_z).exp_m1()).ln()
    } else {
        T::neg_infinity()
    };
    let ln_value = ln_sum(&[ln_head, ln_mid, ln_tail]);
    let value = ln_value.exp();
    let tail = ln_tail.exp();
    let split_tail = ln_sum(&[ln_mid, ln_tail]).exp();
    let residual_bound = T::lit(ZETA_REL) * tail + T::lit(8.0) * T::epsilon() * value;
    if residual_bound > budget.tol * value {
        return Err(Error::Accuracy {
            what: "phi sum",
            estimate: value.f64(),
            gauge: residual_bound.f64(),
        });
    }
    Ok(PhiSumResult {
        value,
        ln_value,
        split_head: ln_head.exp(),
        split_tail,
        m,
        terms: terms as usize,
        residual_bound,
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Lemma1Report<T> {
    pub head: T,
    pub tail: T,
    pub total: T,
    pub head_bound: T,
    pub tail_bound: T,
    pub total_bound: T,
}

impl<T: Real> Lemma1Report<T> {
    pub fn holds(&self) -> bool {
        self.head < self.head_bound && self.tail < self.tail_bound && self.total < self.total_bound
    }

    /// Smallest relative margin `1 - value/bound` over the three bounds.
    pub fn margin(&self) -> T {
        let one = T::one();
        (one - self.head / self.head_bound)
            .min(one - self.tail / self.tail_bound)
            .min(one - self.total / self.total_bound)
    }
}

/// Split bounds of the lemma on `Σ φ(k/n)` in the first band.
pub fn lemma1_split_check<T: Real>(r: T, n: u64) -> Result<Lemma1Report<T>> {
    if !regime_classify(r, n).in_band1() {
        return Err(Error::Regime {
            r: r.f64(),
            n,
            expected: "sqrt(n)+1 <= r <= n+1",
        });
    }
    let s = phi_sum(r, n, &TruncationBudget::default())?;
    let unit = T::of(n) / (r * r);
    Ok(Lemma1Report {
        head: s.split_head,
        tail: s.split_tail,
        total: s.value,
        head_bound: T::lit(HEAD_CONST) * unit,
        tail_bound: T::lit(tail_const()) * unit,
        total_bound: T::lit(TOTAL_CONST) * unit,
    })
}

/// `Σ φ(k/n) · n² e^{r/n} / r` on the second band, formed in log space.
pub fn stechkin_sum_ratio<T: Real>(r: T, n: u64) -> Result<T> {
    if !regime_classify(r, n).in_band2() {
        return Err(Error::Regime {
            r: r.f64(),
            n,
            expected: "n+1 <= r <= n^2",
        });
    }
    let s = phi_sum(r, n, &TruncationBudget::default())?;
    let nf = T::of(n);
    Ok((s.ln_value + T::lit(2.0) * nf.ln() + r / nf - r.ln()).exp())
}

#[derive(Debug, Clone, PartialEq)]
pub struct InequalityCheck {
    pub name: &'static str,
    pub points: usize,
    /// Smallest slack `rhs - lhs` (relative where noted); negative means a
    /// violation. For the identity check it is `tol - max relative error`.
    pub worst_slack: f64,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct InequalityReport {
    pub checks: Vec<InequalityCheck>,
}

impl InequalityReport {
    pub fn all_hold(&self) -> bool {
        self.checks.iter().all(|c| c.holds)
    }
}

/// `per_decade` geometric points on `[lo, hi]`, both ends included.
pub fn geometric_grid(lo: f64, hi: f64, per_decade: usize) -> Vec<f64> {
    let decades = (hi / lo).log10();
    let count = (decades * per_decade as f64).ceil() as usize;
    (0..=count)
        .map(|i| lo * 10f64.powf(decades * i as f64 / count as f64))
        .collect()
}

const GRID_PER_DECADE: usize = 50;
const X_MIN: f64 = 1e-4;
const X_MAX: f64 = 50.0;
/// Rounding allowance on the grid inequalities, relative to the right side.
const ROUND_SLACK: f64 = 8.0 * f64::EPSILON;

fn grid_check(name: &'static str, xs: &[f64], f: impl Fn(f64) -> (f64, f64)) -> InequalityCheck {
    let mut worst = f64::INFINITY;
    let mut holds = true;
    for &x in xs {
        let (lhs, rhs) = f(x);
        let slack = (rhs - lhs) / rhs.abs();
        worst = worst.min(slack);
        holds &= slack >= -ROUND_SLACK;
    }
    InequalityCheck {
        name,
        points: xs.len(),
        worst_slack: worst,
        holds,
    }
}

/// `Σ_{k≥1} k² q^k` by direct summation.
fn brute_nabla(q: f64) -> f64 {
    let mut terms = Vec::new();
    let mut qk = q;
    for k in 1u64.. {
        let t = (k * k) as f64 * qk;
        terms.push(t);
        if k > 10 && t < 1e-20 {
            break;
        }
        qk *= q;
    }
    compensated_sum(terms.into_iter().rev())
}

/// `r²/(r - 1) (1 + 1/√r)^{1 - r}`.
pub fn split_tail_factor(r: f64) -> f64 {
    r * r / (r - 1.0) * ((1.0 - r) * (1.0 / r.sqrt()).ln_1p()).exp()
}

/// The elementary inequalities of the proofs on geometric grids.
pub fn inequality_suite() -> InequalityReport {
    let xs = geometric_grid(X_MIN, X_MAX, GRID_PER_DECADE);
    let e2 = std::f64::consts::E.powi(2);
    let mut checks = vec![
        grid_check("exp(-x) <= 1/(1+x)", &xs, |x| ((-x).exp(), 1.0 / (1.0 + x))),
        grid_check("1/(1-exp(-x)) <= (1+x)/x", &xs, |x| (1.0 / -(-x).exp_m1(), (1.0 + x) / x)),
        grid_check("exp(-x)(1+x)^3 <= 27/e^2", &xs, |x| ((-x).exp() * (1.0 + x).powi(3), 27.0 / e2)),
    ];
    // the bound above is attained at x = 2
    let at_two = (-2.0f64).exp() * 27.0;
    if let Some(c) = checks.last_mut() {
        c.holds &= rel_diff(at_two, 27.0 / e2) <= 1e-15;
    }

    let tol = 1e-12;
    let qs: Vec<f64> = (2..=19).map(|i| i as f64 * 0.05).collect();
    let worst = qs
        .iter()
        .map(|&q| rel_diff(brute_nabla(q), q * (1.0 + q) / (1.0 - q).powi(3)))
        .fold(0.0, f64::max);
    checks.push(InequalityCheck {
        name: "sum k^2 q^k = q(1+q)/(1-q)^3",
        points: qs.len(),
        worst_slack: tol - worst,
        holds: worst <= tol,
    });

    let rs = geometric_grid(2.0, 200.0, GRID_PER_DECADE);
    let vals: Vec<f64> = rs.iter().map(|&r| split_tail_factor(r)).collect();
    let peak = 8.0 - 4.0 * std::f64::consts::SQRT_2;
    let decreasing = vals.windows(2).all(|w| w[1] < w[0]);
    let max = vals.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    checks.push(InequalityCheck {
        name: "max r^2/(r-1)(1+1/sqrt r)^(1-r) = 8-4sqrt2",
        points: rs.len(),
        worst_slack: peak - max,
        holds: decreasing && (max - peak).abs() <= 1e-9,
    });
    InequalityReport { checks }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RemainderCheck<T> {
    /// `‖Σ φ(j/n) cos(...)‖_{p'} / Σ φ(k/n)`.
    pub norm_ratio: T,
    /// `(2π)^{1/p'}`.
    pub bound: T,
    pub terms: usize,
    pub quad_err: T,
}

impl<T: Real> RemainderCheck<T> {
    pub fn holds(&self, tol: T) -> bool {
        self.norm_ratio <= self.bound * (T::one() + tol)
    }
}

const REMAINDER_TERM_CAP: usize = 1 << 20;

/// Compares the quadrature `L_{p'}` norm of the scaled remainder kernel with
/// `(2π)^{1/p'} Σ φ(k/n)`. Both sides are divided by the sum, so nothing
/// underflows.
pub fn remainder_upper_check<T: Real>(
    r: T,
    n: u64,
    p_prime: Exponent<T>,
    phases: &PhaseRule<T>,
    tol: T,
) -> Result<RemainderCheck<T>> {
    if regime_classify(r, n).band == crate::asymptotics::Band::Outside {
        return Err(Error::Regime {
            r: r.f64(),
            n,
            expected: "sqrt(n)+1 <= r <= n^2",
        });
    }
    let s = phi_sum(r, n, &TruncationBudget::default())?;
    // stop once the dropped coefficients sum to below tol of the total
    let target = tol.ln() + s.ln_value;
    let mut terms = 1usize;
    while ln_tail_truncation_bound(r, n, terms as u64) > target {
        terms *= 2;
        if terms > REMAINDER_TERM_CAP {
            return Err(Error::Truncation {
                terms: REMAINDER_TERM_CAP,
                residual_bound: (ln_tail_truncation_bound(r, n, REMAINDER_TERM_CAP as u64) - s.ln_value)
                    .exp()
                    .f64(),
            });
        }
    }
    let nf = T::of(n);
    let series = CosineSeries {
        start: n + 1,
        coeffs: (1..=terms as u64)
            .map(|j| (ln_phi(T::of(j) / nf, r) - s.ln_value).exp())
            .collect(),
        phases: phases.clone(),
    };
    let out = periodic_lp_norm(&NormRequest::new(&series, p_prime, tol))?;
    Ok(RemainderCheck {
        norm_ratio: out.value,
        bound: T::TAU().powf(p_prime.recip()),
        terms,
        quad_err: out.quad_err,
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DecompositionReport<T> {
    /// `max_t |W(t) - P(t) - R(t)| / (1 + |W(t)|)` over the grid.
    pub max_residual: T,
    pub max_abs_value: T,
    /// Frequencies `n..n+K` kept on both sides.
    pub terms: usize,
    /// `q^K/(1 - q)`: what the Poisson side keeps beyond the common cut.
    pub poisson_rest: T,
}

/// Checks the split of the scaled Weyl–Nagy tail into the scaled Poisson
/// tail with `q = e^{-r/n}` plus the remainder kernel at `points` equispaced
/// `t`.
///
/// The Weyl–Nagy and remainder series are cut at the same frequency and
/// sampled by FFT, which is exact at grid nodes. Past the cut their
/// coefficients differ by `q^j`, so the residual is the Poisson rest plus
/// rounding. The Poisson side is evaluated independently (closed form for a
/// constant phase).
pub fn decomposition_residual<T: Real>(
    r: T,
    n: u64,
    phases: &PhaseRule<T>,
    points: usize,
) -> Result<DecompositionReport<T>> {
    if points == 0 {
        return Err(domain("need at least one grid point", 0.0));
    }
    let weyl = KernelSpec::weyl_nagy(r, n, phases.clone())?;
    let poisson = weyl.comparison_poisson()?;
    let q = (-r / T::of(n)).exp();
    // q^K/(1 - q) below 1e-17
    let k = ((T::lit(1e-17) * (T::one() - q)).ln() / q.ln()).ceil().to_u64().unwrap_or(1).max(2);
    if k > REMAINDER_TERM_CAP as u64 {
        return Err(Error::Truncation {
            terms: REMAINDER_TERM_CAP,
            residual_bound: (q.powf(T::of(REMAINDER_TERM_CAP as u64)) / (T::one() - q)).f64(),
        });
    }
    let w = CosineSeries::kernel_tail(&weyl, k as usize)?.sample(points);
    let rem = CosineSeries::remainder(r, phases, n, k as usize - 1)?.sample(points);
    let budget = TruncationBudget::new(T::lit(1e-17), 1 << 22)?;
    let h = T::TAU() / T::of(points as u64);
    let mut worst = T::zero();
    let mut top = T::zero();
    for i in 0..points {
        let t = h * T::of(i as u64);
        let p = scaled_poisson_tail(&poisson, t, &budget)?;
        let res = (w[i] - p - rem[i]).abs() / (T::one() + w[i].abs());
        worst = worst.max(res);
        top = top.max(w[i].abs());
    }
    Ok(DecompositionReport {
        max_residual: worst,
        max_abs_value: top,
        terms: k as usize,
        poisson_rest: q.powf(T::of(k)) / (T::one() - q),
    })
}
