//! `L_p` norms and centred `L_p` distances of periodic signals.

use crate::error::{domain, Error, Result};
use crate::exponent::Exponent;
use crate::quad::brent_root;
use crate::real::Real;
use crate::sharp::grid::SampledGrid;
use crate::sharp::signal::PeriodicSignal;

const MIN_GRID: usize = 512;
const MAX_GRID: usize = 1 << 25;
const DOUBLINGS: usize = 3;

pub struct NormRequest<'a, T: Real> {
    pub signal: &'a dyn PeriodicSignal<T>,
    /// Highest frequency that must be resolved (at least the signal's own hint).
    pub bandwidth_hint: u64,
    pub p: Exponent<T>,
    pub center: bool,
    pub tol: T,
    /// Samples per period of the highest frequency.
    pub oversample: usize,
}

impl<'a, T: Real> NormRequest<'a, T> {
    pub fn new(signal: &'a dyn PeriodicSignal<T>, p: Exponent<T>, tol: T) -> Self {
        Self {
            signal,
            bandwidth_hint: signal.bandwidth_hint(),
            p,
            center: false,
            tol,
            oversample: 8,
        }
    }

    pub fn centered(mut self) -> Self {
        self.center = true;
        self
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NormOutcome<T> {
    pub value: T,
    /// The constant subtracted (0 unless centred).
    pub center: T,
    /// Change between the last two grid levels.
    pub quad_err: T,
    pub grid_points: usize,
}

/// `‖f‖_p` over one period (`‖f - c*‖_p` if the request is centred).
pub fn periodic_lp_norm<T: Real>(req: &NormRequest<'_, T>) -> Result<NormOutcome<T>> {
    if !(req.tol > T::zero()) {
        return Err(domain("norm tolerance must be positive", req.tol.f64()));
    }
    if req.oversample < 2 {
        return Err(domain("oversampling factor must be at least 2", req.oversample as f64));
    }
    let band = req.bandwidth_hint.max(req.signal.bandwidth_hint()).max(1);
    let mut m = (req.oversample as u64 * band.next_power_of_two()).max(MIN_GRID as u64) as usize;
    if m > MAX_GRID {
        return Err(domain("quadrature grid would exceed the size cap", m as f64));
    }
    let mut prev = evaluate_level(&SampledGrid::new(req.signal.sample(m)), req)?;
    let mut err = T::infinity();
    for _ in 0..DOUBLINGS {
        if m * 2 > MAX_GRID {
            break;
        }
        m *= 2;
        let cur = evaluate_level(&SampledGrid::new(req.signal.sample(m)), req)?;
        err = (cur.0 - prev.0).abs();
        let floor = T::epsilon() * T::lit(64.0) * cur.2;
        if err <= req.tol * cur.0 || err <= floor {
            return Ok(NormOutcome {
                value: cur.0,
                center: cur.1,
                quad_err: err,
                grid_points: m,
            });
        }
        prev = cur;
    }
    Err(Error::Accuracy {
        what: "periodic Lp quadrature",
        estimate: prev.0.f64(),
        gauge: err.f64(),
    })
}

/// `min_c ‖f - c‖_p` and its minimizer.
pub fn centered_lp_distance<T: Real>(req: &NormRequest<'_, T>) -> Result<NormOutcome<T>> {
    let req = NormRequest {
        center: true,
        ..*req
    };
    periodic_lp_norm(&req)
}

/// `(value, center, magnitude)` on one grid.
fn evaluate_level<T: Real>(grid: &SampledGrid<T>, req: &NormRequest<'_, T>) -> Result<(T, T, T)> {
    let (lo, hi) = grid.min_max_nodes();
    let magnitude = lo.abs().max(hi.abs());
    let p = match req.p {
        Exponent::Infinity => {
            let (mn, mx) = (grid.min_value(), grid.max_value());
            return Ok(if req.center {
                ((mx - mn) / T::lit(2.0), (mx + mn) / T::lit(2.0), magnitude)
            } else {
                (mx.abs().max(mn.abs()), T::zero(), magnitude)
            });
        }
        Exponent::Finite(p) => p,
    };
    if magnitude == T::zero() {
        return Ok((T::zero(), T::zero(), T::zero()));
    }
    let c_tol = T::lit(1e-3) * req.tol * magnitude;
    let band = req.bandwidth_hint.max(req.signal.bandwidth_hint()).max(1);
    // |f - c|^p is itself a trigonometric polynomial for even integer p, and
    // the trapezoid rule is exact once M exceeds p times the bandwidth.
    let even = req.p.is_even_integer() && p.f64() * (band as f64) < grid.len() as f64;
    if p == T::lit(2.0) {
        let c = if req.center { grid.mean() } else { T::zero() };
        return Ok((grid.trapezoid_power(c, 2).sqrt(), c, magnitude));
    }
    if even {
        let k = p.to_i32().unwrap_or(2);
        let c = if req.center {
            brent_root(|c| grid.trapezoid_power(c, k - 1), lo, hi, c_tol, 200).unwrap_or_else(|| grid.mean())
        } else {
            T::zero()
        };
        return Ok((grid.trapezoid_power(c, k).powf(p.recip()), c, magnitude));
    }
    let c = if req.center {
        // d/dc ∫|f - c|^p = -p ∫|f - c|^{p-1} sgn(f - c), increasing in c
        brent_root(|c| grid.moments(c, p).signed_pm1, lo, hi, c_tol, 200).unwrap_or_else(|| grid.mean())
    } else {
        T::zero()
    };
    Ok((grid.moments(c, p).abs_p.powf(p.recip()), c, magnitude))
}
