//! Periodic signals the norm engine can sample.

use rustfft::num_complex::Complex;
use rustfft::FftPlanner;

use crate::error::{domain, Result};
use crate::kernels::{phi, KernelSpec, PhaseRule};
use crate::real::Real;

/// A real 2π-periodic function.
pub trait PeriodicSignal<T: Real>: Sync {
    fn eval(&self, t: T) -> T;

    /// Highest frequency present (or a safe over-estimate).
    fn bandwidth_hint(&self) -> u64;

    /// Values at `t_m = 2π m / m_points`, `m = 0..m_points`.
    fn sample(&self, m_points: usize) -> Vec<T> {
        let h = T::TAU() / T::of(m_points as u64);
        (0..m_points).map(|m| self.eval(h * T::of(m as u64))).collect()
    }
}

/// Wraps a closure with a declared bandwidth.
pub struct FnSignal<F> {
    f: F,
    bandwidth: u64,
}

impl<F> FnSignal<F> {
    pub fn new(f: F, bandwidth: u64) -> Self {
        Self { f, bandwidth }
    }
}

impl<T: Real, F: Fn(T) -> T + Sync> PeriodicSignal<T> for FnSignal<F> {
    fn eval(&self, t: T) -> T {
        (self.f)(t)
    }

    fn bandwidth_hint(&self) -> u64 {
        self.bandwidth
    }
}

/// A finite cosine series `Σ_i a_i cos((start + i) t - β_{start+i} π/2)`,
/// sampled by one inverse FFT.
#[derive(Debug, Clone)]
pub struct CosineSeries<T> {
    pub start: u64,
    pub coeffs: Vec<T>,
    pub phases: PhaseRule<T>,
}

impl<T: Real> CosineSeries<T> {
    /// The first `terms` coefficients of a scaled kernel tail.
    pub fn kernel_tail(spec: &KernelSpec<T>, terms: usize) -> Result<Self> {
        if terms == 0 {
            return Err(domain("tail needs at least one term", 0.0));
        }
        let coeffs = match spec.q() {
            Some(q) => {
                // repeated multiplication keeps q^j exact enough and cheap
                let mut c = Vec::with_capacity(terms);
                let mut v = T::one();
                for _ in 0..terms {
                    c.push(v);
                    v = v * q;
                }
                c
            }
            None => (0..terms as u64).map(|j| spec.coefficient(j)).collect(),
        };
        Ok(Self {
            start: spec.n,
            coeffs,
            phases: spec.phases.clone(),
        })
    }

    /// The first `terms` coefficients `φ(j/n)`, `j ≥ 1`, of the scaled
    /// Weyl–Nagy minus Poisson remainder.
    pub fn remainder(r: T, phases: &PhaseRule<T>, n: u64, terms: usize) -> Result<Self> {
        if n == 0 || terms == 0 {
            return Err(domain("remainder needs n >= 1 and at least one term", n as f64));
        }
        let nf = T::of(n);
        Ok(Self {
            start: n + 1,
            coeffs: (1..=terms as u64).map(|j| phi(T::of(j) / nf, r)).collect(),
            phases: phases.clone(),
        })
    }

    /// `Σ a_i²`.
    pub fn energy(&self) -> T {
        self.coeffs.iter().fold(T::zero(), |s, &a| s + a * a)
    }
}

impl<T: Real> PeriodicSignal<T> for CosineSeries<T> {
    fn eval(&self, t: T) -> T {
        self.coeffs.iter().enumerate().fold(T::zero(), |s, (i, &a)| {
            let k = self.start + i as u64;
            s + a * (T::of(k) * t - self.phases.angle(k)).cos()
        })
    }

    fn bandwidth_hint(&self) -> u64 {
        self.start + self.coeffs.len() as u64
    }

    fn sample(&self, m_points: usize) -> Vec<T> {
        // X[k mod M] = a e^{-iθ_k};  f(t_m) = Re Σ_k X[k] e^{i k t_m}
        let mut spec = vec![Complex::new(T::zero(), T::zero()); m_points];
        for (i, &a) in self.coeffs.iter().enumerate() {
            let k = self.start + i as u64;
            let theta = self.phases.angle(k);
            let bin = (k % m_points as u64) as usize;
            spec[bin] = spec[bin] + Complex::new(a * theta.cos(), -a * theta.sin());
        }
        let fft = FftPlanner::new().plan_fft_inverse(m_points);
        fft.process(&mut spec);
        spec.into_iter().map(|z| z.re).collect()
    }
}
