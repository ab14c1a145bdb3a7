//! Uniform periodic samples plus the machinery to integrate `|f - c|^p`
//! accurately when `f - c` changes sign.
//!
//! Positions are measured in grid units `u = t / h`, so node `m` sits at
//! `u = m` and the period is `u ∈ [0, M)`.

use crate::quad::{gauss_legendre, golden_section_max, golden_section_min};
use crate::real::Real;

/// Barycentric weights `(-1)^i C(15, i)` of the 16-node equispaced stencil.
const STENCIL: [f64; 16] = [
    1.0, -15.0, 105.0, -455.0, 1365.0, -3003.0, 5005.0, -6435.0, 6435.0, -5005.0, 3003.0, -1365.0, 455.0, -105.0,
    15.0, -1.0,
];
/// Cells handed to the endpoint rule on each side of a zero.
// Boole's rule sees the |x|^p kink through its sixth derivative, so the
// error of starting it d cells from a zero decays like d^{p-6}.
const END_CELLS: f64 = 48.0;
const END_ORDER: usize = 64;
const SHORT_ORDER: usize = 128;
const EXTREMA_REFINED: usize = 5;

pub(crate) struct SampledGrid<T> {
    values: Vec<T>,
    h: T,
    end_rule: (Vec<T>, Vec<T>),
    short_rule: (Vec<T>, Vec<T>),
}

/// `(∫ |g|^p, ∫ |g|^{p-1} sgn g)` over one period.
#[derive(Debug, Clone, Copy)]
pub(crate) struct Moments<T> {
    pub abs_p: T,
    pub signed_pm1: T,
}

impl<T: Real> SampledGrid<T> {
    pub fn new(values: Vec<T>) -> Self {
        let h = T::TAU() / T::of(values.len() as u64);
        Self {
            values,
            h,
            end_rule: gauss_legendre(END_ORDER),
            short_rule: gauss_legendre(SHORT_ORDER),
        }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    #[inline]
    fn node(&self, i: i64) -> T {
        let m = self.values.len() as i64;
        self.values[i.rem_euclid(m) as usize]
    }

    /// Local 16-point barycentric Lagrange interpolant at grid position `u`.
    pub fn interp(&self, u: T) -> T {
        let base = u.floor();
        let x = u - base;
        let i0 = base.to_i64().unwrap_or(0);
        if x == T::zero() {
            return self.node(i0);
        }
        let mut num = T::zero();
        let mut den = T::zero();
        for (s, &w) in STENCIL.iter().enumerate() {
            let off = s as i64 - 7;
            let q = T::lit(w) / (x - T::from_i64(off).unwrap());
            num = num + q * self.node(i0 + off);
            den = den + q;
        }
        num / den
    }

    pub fn mean(&self) -> T {
        self.values.iter().fold(T::zero(), |s, &v| s + v) / T::of(self.values.len() as u64)
    }

    pub fn min_max_nodes(&self) -> (T, T) {
        self.values
            .iter()
            .fold((T::infinity(), T::neg_infinity()), |(lo, hi), &v| (lo.min(v), hi.max(v)))
    }

    /// Periodic trapezoid `∫ (f - c)^k` for integer `k` (exact for trigonometric
    /// polynomials of degree below `M / k`).
    pub fn trapezoid_power(&self, c: T, k: i32) -> T {
        self.values.iter().fold(T::zero(), |s, &v| s + (v - c).powi(k)) * self.h
    }

    /// Zeros of `f - c` in `[0, M)`, one per sign change of the samples,
    /// refined on the interpolant.
    pub fn zeros(&self, c: T) -> Vec<T> {
        let m = self.values.len();
        let mut out = Vec::new();
        for i in 0..m {
            let g0 = self.values[i] - c;
            let g1 = self.values[(i + 1) % m] - c;
            if (g0 > T::zero()) != (g1 > T::zero()) {
                out.push(self.refine_zero(T::of(i as u64), g0, g1, c));
            }
        }
        out
    }

    fn refine_zero(&self, a0: T, g0: T, g1: T, c: T) -> T {
        // Illinois variant of regula falsi on the unit cell
        let (mut a, mut b) = (a0, a0 + T::one());
        let (mut fa, mut fb) = (g0, g1);
        let half = T::lit(0.5);
        let mut side = 0i8;
        for _ in 0..60 {
            let x = (a * fb - b * fa) / (fb - fa);
            if !(x > a && x < b) {
                break;
            }
            let fx = self.interp(x) - c;
            if fx == T::zero() || (b - a) < T::lit(1e-13) {
                return x;
            }
            if (fx > T::zero()) == (fb > T::zero()) {
                b = x;
                fb = fx;
                if side == -1 {
                    fa = fa * half;
                }
                side = -1;
            } else {
                a = x;
                fa = fx;
                if side == 1 {
                    fb = fb * half;
                }
                side = 1;
            }
        }
        if fa.abs() < fb.abs() {
            a
        } else {
            b
        }
    }

    /// Moments of `g = f - c` with the sign changes resolved: `|g|^{p-1}` has
    /// a power singularity at every zero, so each sign-constant run gets a
    /// cosine-mapped Gauss–Legendre rule near its ends and composite Boole
    /// on the grid in between.
    pub fn moments(&self, c: T, p: T) -> Moments<T> {
        let e = p - T::one();
        let zeros = self.zeros(c);
        if zeros.is_empty() {
            let mut abs_p = T::zero();
            let mut lower = T::zero();
            for &v in &self.values {
                let g = v - c;
                let a = pow_e(g.abs(), e);
                lower = lower + a;
                abs_p = abs_p + a * g.abs();
            }
            let sign = if self.values[0] - c > T::zero() { T::one() } else { -T::one() };
            return Moments {
                abs_p: abs_p * self.h,
                signed_pm1: sign * lower * self.h,
            };
        }
        let period = T::of(self.values.len() as u64);
        let mut abs_p = T::zero();
        let mut signed = T::zero();
        for (i, &za) in zeros.iter().enumerate() {
            let zb = if i + 1 < zeros.len() { zeros[i + 1] } else { zeros[0] + period };
            if zb <= za {
                continue;
            }
            let mid = (za + zb) / T::lit(2.0);
            let sign = if self.interp(mid) - c > T::zero() { T::one() } else { -T::one() };
            let (ip, ie) = self.run_integral(za, zb, c, e);
            abs_p = abs_p + ip;
            signed = signed + sign * ie;
        }
        Moments {
            abs_p: abs_p * self.h,
            signed_pm1: signed * self.h,
        }
    }

    /// `(∫ |g|^{e+1}, ∫ |g|^e)` over the run `[ua, ub]` in grid units.
    fn run_integral(&self, ua: T, ub: T, c: T, e: T) -> (T, T) {
        let len = ub - ua;
        let end = T::lit(END_CELLS);
        let at = |u: T| {
            let g = (self.interp(u) - c).abs();
            let a = pow_e(g, e);
            (a * g, a)
        };
        let quarter_pi = T::FRAC_PI_4();
        if len <= T::lit(2.0) * end + T::lit(4.0) {
            // u = ua + L(1 - cos θ)/2, θ ∈ [0, π]
            let (x, w) = &self.short_rule;
            let half_pi = T::FRAC_PI_2();
            let (mut s1, mut s0) = (T::zero(), T::zero());
            for (&xi, &wi) in x.iter().zip(w) {
                let th = half_pi * (T::one() + xi);
                let u = ua + len * (T::one() - th.cos()) / T::lit(2.0);
                let jac = wi * half_pi * len / T::lit(2.0) * th.sin();
                let (f1, f0) = at(u);
                s1 = s1 + jac * f1;
                s0 = s0 + jac * f0;
            }
            return (s1, s0);
        }
        let ia = (ua + end).ceil();
        let mut ib = (ub - end).floor();
        let cells = (ib - ia).to_i64().unwrap_or(0);
        ib = ib - T::from_i64(cells % 4).unwrap();
        let (x, w) = &self.end_rule;
        let (mut s1, mut s0) = (T::zero(), T::zero());
        // u = z ± ℓ(1 - cos θ), θ ∈ [0, π/2]: the zero end is approached as θ²
        for (start, ell, dir) in [(ua, ia - ua, T::one()), (ub, ub - ib, -T::one())] {
            for (&xi, &wi) in x.iter().zip(w) {
                let th = quarter_pi * (T::one() + xi);
                let u = start + dir * ell * (T::one() - th.cos());
                let jac = wi * quarter_pi * ell * th.sin();
                let (f1, f0) = at(u);
                s1 = s1 + jac * f1;
                s0 = s0 + jac * f0;
            }
        }
        // composite Boole on nodes ia..=ib
        let i0 = ia.to_i64().unwrap();
        let n = (ib - ia).to_i64().unwrap();
        let (mut b1, mut b0) = (T::zero(), T::zero());
        for k in 0..=n {
            let wgt = if k == 0 || k == n {
                7.0
            } else {
                match k % 4 {
                    0 => 14.0,
                    2 => 12.0,
                    _ => 32.0,
                }
            };
            let g = (self.node(i0 + k) - c).abs();
            let a = pow_e(g, e);
            b1 = b1 + T::lit(wgt) * a * g;
            b0 = b0 + T::lit(wgt) * a;
        }
        let boole = T::lit(2.0 / 45.0);
        (s1 + boole * b1, s0 + boole * b0)
    }

    /// Largest value of the interpolant: the top grid maxima refined by
    /// golden-section search.
    pub fn max_value(&self) -> T {
        self.extreme(true)
    }

    pub fn min_value(&self) -> T {
        self.extreme(false)
    }

    fn extreme(&self, want_max: bool) -> T {
        let m = self.values.len();
        let better = |a: T, b: T| if want_max { a > b } else { a < b };
        let mut cand: Vec<(T, usize)> = Vec::new();
        for i in 0..m {
            let v = self.values[i];
            let l = self.values[(i + m - 1) % m];
            let r = self.values[(i + 1) % m];
            if !better(l, v) && !better(r, v) {
                cand.push((v, i));
            }
        }
        if cand.is_empty() {
            // constant signal
            return self.values[0];
        }
        cand.sort_by(|a, b| {
            let o = a.0.partial_cmp(&b.0).unwrap_or(std::cmp::Ordering::Equal);
            if want_max {
                o.reverse()
            } else {
                o
            }
        });
        let mut best = cand[0].0;
        for &(_, i) in cand.iter().take(EXTREMA_REFINED) {
            let u = T::of(i as u64);
            let (lo, hi) = (u - T::one(), u + T::one());
            let tol = T::lit(1e-9);
            let v = if want_max {
                golden_section_max(|x| self.interp(x), lo, hi, tol, 200).1
            } else {
                golden_section_min(|x| self.interp(x), lo, hi, tol, 200).1
            };
            if better(v, best) {
                best = v;
            }
        }
        best
    }
}

#[inline]
fn pow_e<T: Real>(g: T, e: T) -> T {
    if e == T::zero() {
        T::one()
    } else if e == T::one() {
        g
    } else {
        g.powf(e)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{PI, TAU};

    fn grid_of(f: impl Fn(f64) -> f64, m: usize) -> SampledGrid<f64> {
        let h = TAU / m as f64;
        SampledGrid::new((0..m).map(|i| f(h * i as f64)).collect())
    }

    #[test]
    fn interpolant_reproduces_band_limited_signal() {
        let f = |t: f64| (3.0 * t).cos() + 0.5 * (5.0 * t - 0.3).sin();
        let g = grid_of(f, 256);
        let h = TAU / 256.0;
        for k in 0..50 {
            let u = 0.37 + k as f64 * 5.13;
            assert!((g.interp(u) - f(u * h)).abs() < 1e-13, "u={u}");
        }
    }

    #[test]
    fn zeros_of_cosine() {
        let g = grid_of(|t| t.cos(), 512);
        let z = g.zeros(0.0);
        assert_eq!(z.len(), 2);
        let h = TAU / 512.0;
        assert!((z[0] * h - PI / 2.0).abs() < 1e-13);
        assert!((z[1] * h - 1.5 * PI).abs() < 1e-13);
    }

    #[test]
    fn l1_and_fractional_moments_of_cosine() {
        let g = grid_of(|t| t.cos(), 512);
        let m = g.moments(0.0, 1.0);
        assert!((m.abs_p - 4.0).abs() < 1e-13);
        assert!(m.signed_pm1.abs() < 1e-12);
        // mpmath: ∫|cos|^{1.5} over a period
        let m = g.moments(0.0, 1.5);
        assert!((m.abs_p - 3.496_076_739_056_159_7).abs() < 1e-12, "{:e}", m.abs_p - 3.496_076_739_056_159_7);
    }

    #[test]
    fn extremes_are_refined_off_grid() {
        let g = grid_of(|t| (t - 0.0123).cos(), 64);
        assert!((g.max_value() - 1.0).abs() < 1e-14);
        assert!((g.min_value() + 1.0).abs() < 1e-14);
    }
}
