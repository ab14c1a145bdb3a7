//! Small quadrature and 1-D search helpers shared by the special functions,
//! the norm engine and the inequality checks.

use crate::real::Real;

/// Gauss–Legendre nodes and weights on `[-1, 1]`.
pub fn gauss_legendre<T: Real>(order: usize) -> (Vec<T>, Vec<T>) {
    assert!(order >= 1, "Gauss-Legendre order must be positive");
    let mut nodes = vec![T::zero(); order];
    let mut weights = vec![T::zero(); order];
    let m = (order + 1) / 2;
    let nf = order as f64;
    for i in 0..m {
        // Newton on P_n in f64, starting from the Tricomi-type guess.
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (nf + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (p, d) = legendre_with_derivative(order, x);
            dp = d;
            let dx = p / d;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let (_, d) = legendre_with_derivative(order, x);
        if d != 0.0 {
            dp = d;
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = T::lit(-x);
        nodes[order - 1 - i] = T::lit(x);
        weights[i] = T::lit(w);
        weights[order - 1 - i] = T::lit(w);
    }
    (nodes, weights)
}

fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    if n == 0 {
        return (1.0, 0.0);
    }
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

const INV_PHI: f64 = 0.618_033_988_749_894_9;

/// Golden-section minimization of a unimodal `f` on `[a, b]`.
///
/// Returns `(argmin, min)` once the bracket is narrower than `tol` or after
/// `max_iter` reductions.
pub fn golden_section_min<T: Real, F: FnMut(T) -> T>(mut f: F, mut a: T, mut b: T, tol: T, max_iter: usize) -> (T, T) {
    let g = T::lit(INV_PHI);
    let mut c = b - g * (b - a);
    let mut d = a + g * (b - a);
    let mut fc = f(c);
    let mut fd = f(d);
    for _ in 0..max_iter {
        if (b - a).abs() <= tol {
            break;
        }
        if fc <= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - g * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + g * (b - a);
            fd = f(d);
        }
    }
    if fc <= fd {
        (c, fc)
    } else {
        (d, fd)
    }
}

/// Golden-section maximization; see [`golden_section_min`].
pub fn golden_section_max<T: Real, F: FnMut(T) -> T>(mut f: F, a: T, b: T, tol: T, max_iter: usize) -> (T, T) {
    let (x, v) = golden_section_min(|x| -f(x), a, b, tol, max_iter);
    (x, -v)
}

/// Brent's root finder on a bracket `[a, b]` with `f(a) f(b) ≤ 0`.
///
/// Returns `None` when the bracket does not straddle a sign change.
pub fn brent_root<T: Real, F: FnMut(T) -> T>(mut f: F, mut a: T, mut b: T, tol: T, max_iter: usize) -> Option<T> {
    let two = T::lit(2.0);
    let mut fa = f(a);
    let mut fb = f(b);
    if fa == T::zero() {
        return Some(a);
    }
    if fb == T::zero() {
        return Some(b);
    }
    if (fa > T::zero()) == (fb > T::zero()) {
        return None;
    }
    let mut c = a;
    let mut fc = fa;
    let mut d = b - a;
    let mut e = d;
    for _ in 0..max_iter {
        if (fb > T::zero()) == (fc > T::zero()) {
            c = a;
            fc = fa;
            d = b - a;
            e = d;
        }
        if fc.abs() < fb.abs() {
            a = b;
            b = c;
            c = a;
            fa = fb;
            fb = fc;
            fc = fa;
        }
        let tol1 = two * T::epsilon() * b.abs() + tol / two;
        let xm = (c - b) / two;
        if xm.abs() <= tol1 || fb == T::zero() {
            return Some(b);
        }
        if e.abs() >= tol1 && fa.abs() > fb.abs() {
            // inverse quadratic interpolation, or secant when only two points
            let s = fb / fa;
            let (mut p, mut q);
            if a == c {
                p = two * xm * s;
                q = T::one() - s;
            } else {
                let qa = fa / fc;
                let r = fb / fc;
                p = s * (two * xm * qa * (qa - r) - (b - a) * (r - T::one()));
                q = (qa - T::one()) * (r - T::one()) * (s - T::one());
            }
            if p > T::zero() {
                q = -q;
            }
            p = p.abs();
            let min1 = T::lit(3.0) * xm * q - (tol1 * q).abs();
            let min2 = (e * q).abs();
            if two * p < min1.min(min2) {
                e = d;
                d = p / q;
            } else {
                d = xm;
                e = d;
            }
        } else {
            d = xm;
            e = d;
        }
        a = b;
        fa = fb;
        b = if d.abs() > tol1 { b + d } else { b + tol1.copysign(xm) };
        fb = f(b);
    }
    Some(b)
}

/// Streaming log-sum-exp accumulator.
#[derive(Debug, Clone, Copy)]
pub struct LogSum<T> {
    max: T,
    sum: T,
}

impl<T: Real> LogSum<T> {
    pub fn new() -> Self {
        Self {
            max: T::neg_infinity(),
            sum: T::zero(),
        }
    }

    pub fn push(&mut self, ln_term: T) {
        if ln_term == T::neg_infinity() || ln_term.is_nan() {
            return;
        }
        if ln_term > self.max {
            self.sum = self.sum * (self.max - ln_term).exp() + T::one();
            self.max = ln_term;
        } else {
            self.sum = self.sum + (ln_term - self.max).exp();
        }
    }

    /// `ln Σ exp(ln_term)`; `-inf` when empty.
    pub fn ln(&self) -> T {
        if self.sum == T::zero() {
            T::neg_infinity()
        } else {
            self.max + self.sum.ln()
        }
    }
}

impl<T: Real> Default for LogSum<T> {
    fn default() -> Self {
        Self::new()
    }
}

/// `ln ∫_0^∞ exp(ln_f(u)) du` by double-exponential quadrature.
///
/// `[0, split]` uses the tanh-sinh map (integrable endpoint singularities at 0
/// are fine), `[split, ∞)` the exp-sinh map. The step is halved until the log
/// of the integral changes by less than `tol`.
pub fn ln_integral_half_line<T: Real, F: Fn(T) -> T>(ln_f: F, split: T, tol: T) -> T {
    let half_pi = T::FRAC_PI_2();
    let two = T::lit(2.0);
    let ln_split_half = (split / two).ln();
    let ln4 = T::lit(4.0).ln();
    let eval = |h: T| -> T {
        let mut acc = LogSum::new();
        // The left tail runs further so u^{a-1} singularities with small a
        // still lose less than double precision.
        let steps = (T::lit(4.0) / h).to_i64().unwrap_or(64);
        let left = (T::lit(6.0) / h).to_i64().unwrap_or(96);
        for i in -left..=steps {
            let tau = h * T::from_i64(i).unwrap();
            let ch = tau.cosh();
            let y = half_pi * tau.sinh();
            // tanh-sinh on [0, split]: x = split / (1 + e^{-2y})
            let x = split / (T::one() + (-two * y).exp());
            if x > T::zero() && x < split {
                let ay = y.abs();
                let ln_w = ln_split_half + half_pi.ln() + ch.ln() + ln4
                    - two * (ay + (-two * ay).exp().ln_1p());
                acc.push(ln_f(x) + ln_w + h.ln());
            }
            // exp-sinh on [split, ∞): x = split + e^{y}
            if i >= -steps && y < T::lit(700.0) {
                let x = split + y.exp();
                if x.is_finite() && x > split {
                    let ln_w = half_pi.ln() + ch.ln() + y;
                    acc.push(ln_f(x) + ln_w + h.ln());
                }
            }
        }
        acc.ln()
    };
    let mut h = T::lit(0.5);
    let mut prev = eval(h);
    for _ in 0..8 {
        h = h / two;
        let cur = eval(h);
        if (cur - prev).abs() <= tol {
            return cur;
        }
        prev = cur;
    }
    prev
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gauss_legendre_integrates_polynomials_exactly() {
        let (x, w) = gauss_legendre::<f64>(8);
        let s: f64 = w.iter().sum();
        assert!((s - 2.0).abs() < 1e-14);
        // ∫ x^14 = 2/15
        let m: f64 = x.iter().zip(&w).map(|(x, w)| w * x.powi(14)).sum();
        assert!((m - 2.0 / 15.0).abs() < 1e-14);
        let (x5, _) = gauss_legendre::<f64>(5);
        assert!(x5[2].abs() < 1e-15);
    }

    #[test]
    fn golden_section_finds_quadratic_minimum() {
        let (x, v) = golden_section_min(|x: f64| (x - 0.3).powi(2), -2.0, 2.0, 1e-10, 200);
        assert!((x - 0.3).abs() < 1e-8);
        assert!(v < 1e-16);
        let (x, v) = golden_section_max(|x: f64| (-x).exp() * (1.0 + x).powi(3), 0.0, 10.0, 1e-10, 200);
        assert!((x - 2.0).abs() < 1e-6);
        assert!((v - 27.0 / (2.0f64).exp()).abs() < 1e-12);
    }

    #[test]
    fn brent_finds_roots() {
        let x = brent_root(|x: f64| x.powi(3) - 2.0, 0.0, 2.0, 1e-15, 100).unwrap();
        assert!((x - 2f64.cbrt()).abs() < 1e-14);
        let x = brent_root(|x: f64| x.cos() - x, 0.0, 1.0, 1e-15, 100).unwrap();
        assert!((x - 0.739_085_133_215_160_6).abs() < 1e-14);
        assert!(brent_root(|x: f64| x * x + 1.0, -1.0, 1.0, 1e-12, 100).is_none());
    }

    #[test]
    fn log_sum_matches_direct() {
        let mut s = LogSum::new();
        for v in [1.0f64, 2.0, 3.0] {
            s.push(v.ln());
        }
        assert!((s.ln() - 6.0f64.ln()).abs() < 1e-15);
        assert_eq!(LogSum::<f64>::new().ln(), f64::NEG_INFINITY);
    }

    #[test]
    fn half_line_integrals() {
        // ∫ u^{a-1} e^{-u} = Γ(a)
        let a = 0.2f64;
        let v = ln_integral_half_line(|u: f64| (a - 1.0) * u.ln() - u, 1.0, 1e-15);
        assert!((v - 4.590_843_711_998_803f64.ln()).abs() < 1e-13, "{v}");
        let a = 300.0f64;
        let v = ln_integral_half_line(|u: f64| (a - 1.0) * u.ln() - u, a - 1.0, 1e-15);
        // ln Γ(300) = ln(299!)
        let exact: f64 = (1..300).map(|k| (k as f64).ln()).sum();
        assert!((v - exact).abs() < 1e-11 * exact, "{v} vs {exact}");
    }
}
