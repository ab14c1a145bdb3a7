use crate::error::{domain, Error, Result};
use crate::quad::ln_integral_half_line;
use crate::real::{rel_diff, Real};
use crate::scaled::ScaledValue;
use crate::specfun::gamma::ln_gamma_pos;

const DIRECT_TERMS_MIN: u64 = 10;
const DIRECT_TERMS_MAX: u64 = 1 << 24;
const NEXT_TERM_REL: f64 = 1e-15;
/// Agreement required between the series and integral forms of the exact
/// `p = 2` value.
pub const L2_ROUTE_TOL: f64 = 1e-10;

/// `Σ_{k ≥ n} k^{-s}` returned at scale `n^{-s}`, i.e. the mantissa is
/// `Σ_{k ≥ n} (n/k)^s`.
///
/// Euler–Maclaurin with three Bernoulli corrections after `M` direct terms.
/// `M` starts at `max(10, ⌈s⌉)` and doubles while the first omitted correction
/// is still above `1e-15` of the sum.
pub fn zeta_tail<T: Real>(two_r: T, n: u64) -> Result<ScaledValue<T>> {
    if !(two_r > T::one()) || !two_r.is_finite() {
        return Err(domain("zeta tail diverges unless the exponent exceeds 1", two_r.f64()));
    }
    if n == 0 {
        return Err(domain("zeta tail needs n >= 1", 0.0));
    }
    let s = two_r;
    let ln_n = T::of(n).ln();
    let mut m = DIRECT_TERMS_MIN.max(s.ceil().to_u64().unwrap_or(u64::MAX));
    loop {
        let (sum, next) = euler_maclaurin(s, n, m);
        if next <= T::lit(NEXT_TERM_REL) * sum || m >= DIRECT_TERMS_MAX {
            return Ok(ScaledValue::new(sum, -s * ln_n));
        }
        m *= 2;
    }
}

/// Returns the scaled sum and the size of the first omitted (B8) correction.
fn euler_maclaurin<T: Real>(s: T, n: u64, m: u64) -> (T, T) {
    let nf = T::of(n);
    // Direct part, largest terms last so the small ones accumulate first.
    let mut direct = T::zero();
    for k in (n..n + m).rev() {
        direct = direct + (-s * (T::of(k) / nf).ln()).exp();
    }
    let big_n = T::of(n + m);
    // (n/N)^s
    let f_n = (-s * (big_n / nf).ln()).exp();
    let inv = big_n.recip();
    let integral = f_n * big_n / (s - T::one());
    let half = f_n / T::lit(2.0);
    let s1 = s + T::one();
    let s2 = s + T::lit(2.0);
    let s3 = s + T::lit(3.0);
    let s4 = s + T::lit(4.0);
    let s5 = s + T::lit(5.0);
    let s6 = s + T::lit(6.0);
    // -B_{2j}/(2j)! f^{(2j-1)}(N) with B2 = 1/6, B4 = -1/30, B6 = 1/42.
    let c1 = f_n * s * inv / T::lit(12.0);
    let c2 = -f_n * s * s1 * s2 * inv.powi(3) / T::lit(720.0);
    let c3 = f_n * s * s1 * s2 * s3 * s4 * inv.powi(5) / T::lit(30240.0);
    let next = (f_n * s * s1 * s2 * s3 * s4 * s5 * s6 * inv.powi(7) / T::lit(1_209_600.0)).abs();
    (direct + integral + half + c1 + c2 + c3, next)
}

/// Both routes to the exact `p = 2` worst-case value, at scale `n^{-r}`:
/// the zeta-tail series and the Gamma-weighted integral.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct L2Routes<T> {
    pub series: ScaledValue<T>,
    pub integral: ScaledValue<T>,
}

/// Computes both routes without checking that they agree.
pub fn exact_l2_routes<T: Real>(r: T, n: u64) -> Result<L2Routes<T>> {
    if !(r > T::lit(0.5)) || !r.is_finite() {
        return Err(domain("exact L2 value needs r > 1/2", r.f64()));
    }
    let two_r = T::lit(2.0) * r;
    let tail = zeta_tail(two_r, n)?;
    let ln_n = T::of(n).ln();
    let scale = -r * ln_n;
    let series = ScaledValue::new((tail.mantissa / T::PI()).sqrt(), scale);

    // Σ_{k≥n} (n/k)^{2r} = Γ(2r)^{-1} ∫_0^∞ u^{2r-1} e^{-u} / (1 - e^{-u/n}) du
    let nf = T::of(n);
    let ln_integrand = |u: T| (two_r - T::one()) * u.ln() - u - (-(-u / nf).exp_m1()).ln();
    let split = (two_r - T::lit(2.0)).max(T::one());
    let ln_int = ln_integral_half_line(ln_integrand, split, T::lit(1e-14));
    let ln_mantissa_sq = ln_int - ln_gamma_pos(two_r) - T::PI().ln();
    let integral = ScaledValue::new((ln_mantissa_sq / T::lit(2.0)).exp(), scale);
    Ok(L2Routes { series, integral })
}

/// `π^{-1/2} (Σ_{k≥n} k^{-2r})^{1/2}` at scale `n^{-r}`, cross-checked
/// against the integral representation.
pub fn exact_l2_value<T: Real>(r: T, n: u64) -> Result<ScaledValue<T>> {
    let routes = exact_l2_routes(r, n)?;
    let rel = rel_diff(routes.series.mantissa, routes.integral.mantissa);
    if !(rel <= T::lit(L2_ROUTE_TOL)) {
        return Err(Error::Consistency {
            what: "exact L2 value (series vs integral)",
            first: routes.series.mantissa.f64(),
            second: routes.integral.mantissa.f64(),
            rel: rel.f64(),
        });
    }
    Ok(routes.series)
}
