//! Grid sweeps: one report row per `(n, r, p)` point.

use std::f64::consts::LN_10;

use rayon::prelude::*;
use wna_core::asymptotics::{main_term_c, main_term_l, regime_classify, MainTermResult};
use wna_core::boundslab::{lemma1_split_check, phi_sum, stechkin_sum_ratio};
use wna_core::kernels::KernelSpec;
use wna_core::sharp::{e_value_c, e_value_l, EvalOptions};
use wna_core::{Exponent, ScaledValue};

use crate::config::{RRule, SweepSpec, Task};
use crate::error::{CliError, Result};
use crate::identities::identity_rows;
use crate::row::ReportRow;

pub const JOBS_ENV: &str = "WNA_JOBS";

/// `WNA_JOBS` wins over the command-line value.
pub fn resolve_jobs(flag: Option<usize>) -> Option<usize> {
    std::env::var(JOBS_ENV)
        .ok()
        .and_then(|v| v.trim().parse::<usize>().ok())
        .filter(|&j| j > 0)
        .or(flag)
}

/// `count` geometric samples of `[lo, hi]`, ends included.
pub fn geometric_samples(lo: f64, hi: f64, count: usize) -> Vec<f64> {
    if count == 0 || lo > hi {
        return Vec::new();
    }
    if count == 1 || lo == hi {
        return vec![lo];
    }
    (0..count)
        .map(|i| match i {
            0 => lo,
            _ if i == count - 1 => hi,
            _ => lo * (hi / lo).powf(i as f64 / (count - 1) as f64),
        })
        .collect()
}

/// The `r` range a task samples: the first band, the second band, or both.
pub fn band_range(task: Task, n: u64) -> (f64, f64) {
    let nf = n as f64;
    match task {
        Task::Thm1 | Task::Thm3 | Task::Lemma1 => (nf.sqrt() + 1.0, nf + 1.0),
        Task::Thm2 | Task::Thm4 | Task::StechkinSum => (nf + 1.0, nf * nf),
        _ => (nf.sqrt() + 1.0, nf * nf),
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Point {
    pub n: u64,
    pub r: f64,
    pub p: Option<Exponent<f64>>,
}

pub fn points(spec: &SweepSpec) -> Vec<Point> {
    let mut out = Vec::new();
    for &n in &spec.n_values {
        let rs = match &spec.r_rule {
            RRule::Explicit(rs) => rs.clone(),
            RRule::BandSamples(c) => {
                let (lo, hi) = band_range(spec.task, n);
                geometric_samples(lo, hi, *c)
            }
        };
        for r in rs {
            if spec.task.uses_p() {
                out.extend(spec.p_values.iter().map(|&p| Point { n, r, p: Some(p) }));
            } else {
                out.push(Point { n, r, p: None });
            }
        }
    }
    out
}

fn p_value(p: Option<Exponent<f64>>) -> f64 {
    p.map(|p| p.value()).unwrap_or(f64::NAN)
}

fn eval_options(spec: &SweepSpec) -> EvalOptions<f64> {
    EvalOptions {
        tol: spec.accuracy.tol,
        oversample: spec.oversample,
        max_terms: spec.accuracy.max_terms,
    }
}

fn scaled_row(spec: &SweepSpec, pt: &Point, computed: ScaledValue<f64>, quad_err: f64, main: Option<MainTermResult<f64>>) -> ReportRow {
    let log_scale = main.map(|m| m.main.log_scale).unwrap_or(computed.log_scale);
    let c = computed.mantissa_at(log_scale);
    let (m, rem, regime, id) = match main {
        Some(m) => (
            m.main.mantissa,
            m.remainder_scale.mantissa,
            m.regime.label().to_string(),
            m.formula_id.as_str().to_string(),
        ),
        None => (f64::NAN, f64::NAN, regime_classify(pt.r, pt.n).label().to_string(), "-".to_string()),
    };
    ReportRow {
        task: spec.task.as_str().into(),
        p: p_value(pt.p),
        r: pt.r,
        n: pt.n,
        beta: spec.phase.describe(),
        computed_mantissa: c,
        log10_scale: log_scale / LN_10,
        main_mantissa: m,
        remainder_mantissa: rem,
        gap: c - m,
        normalized_gap: (c - m) / rem,
        regime,
        formula_id: id,
        quad_err,
    }
}

fn run_point(spec: &SweepSpec, pt: &Point) -> Result<ReportRow> {
    let opts = eval_options(spec);
    let kernel = || KernelSpec::weyl_nagy(pt.r, pt.n, spec.phase.clone());
    let need_p = || pt.p.ok_or(CliError::Range { key: "p", msg: "missing".into() });
    let (r, n) = (pt.r, pt.n);
    match spec.task {
        Task::Thm1 | Task::Thm2 | Task::EvalC => {
            let p = need_p()?;
            let v = e_value_c(&kernel()?, p, &opts)?;
            let main = match spec.task {
                Task::EvalC => main_term_c(p, r, n).ok(),
                _ => Some(main_term_c(p, r, n)?),
            };
            Ok(scaled_row(spec, pt, v.value, v.quad_err, main))
        }
        Task::Thm3 | Task::Thm4 | Task::EvalL => {
            let p = need_p()?;
            let v = e_value_l(&kernel()?, p, &opts)?;
            let main = match spec.task {
                Task::EvalL => main_term_l(p, r, n).ok(),
                _ => Some(main_term_l(p, r, n)?),
            };
            Ok(scaled_row(spec, pt, v.value, v.quad_err, main))
        }
        Task::Lemma1 => {
            let rep = lemma1_split_check(r, n)?;
            let unit = n as f64 / (r * r);
            Ok(ReportRow {
                task: spec.task.as_str().into(),
                p: f64::NAN,
                r,
                n,
                beta: "-".into(),
                computed_mantissa: rep.total,
                log10_scale: 0.0,
                main_mantissa: 0.0,
                remainder_mantissa: unit,
                gap: rep.total,
                normalized_gap: rep.total / unit,
                regime: regime_classify(r, n).label().into(),
                formula_id: if rep.holds() { "lemma1" } else { "lemma1:violated" }.into(),
                quad_err: rep.margin(),
            })
        }
        Task::StechkinSum => {
            let ratio = stechkin_sum_ratio(r, n)?;
            let s = phi_sum(r, n, &spec.accuracy)?;
            // at scale e^{-r/n}
            let x = r / n as f64;
            let rem = r / (n as f64 * n as f64);
            let c = (s.ln_value + x).exp();
            Ok(ReportRow {
                task: spec.task.as_str().into(),
                p: f64::NAN,
                r,
                n,
                beta: "-".into(),
                computed_mantissa: c,
                log10_scale: -x / LN_10,
                main_mantissa: 0.0,
                remainder_mantissa: rem,
                gap: c,
                normalized_gap: ratio,
                regime: regime_classify(r, n).label().into(),
                formula_id: "stechkin_sum".into(),
                quad_err: f64::NAN,
            })
        }
        Task::Identities => unreachable!("identities are not a per-point task"),
    }
}

fn row_or_error(spec: &SweepSpec, pt: &Point) -> ReportRow {
    run_point(spec, pt).unwrap_or_else(|e| {
        let beta = spec.phase.describe();
        ReportRow::failed(spec.task.as_str(), p_value(pt.p), pt.r, pt.n, beta, e.to_string())
    })
}

/// Evaluates every point of the spec. Failing points become error rows and
/// the sweep carries on. Row order follows the spec and does not depend on
/// parallelism.
pub fn run_sweep(spec: &SweepSpec) -> Result<Vec<ReportRow>> {
    run_sweep_with_jobs(spec, None)
}

pub fn run_sweep_with_jobs(spec: &SweepSpec, jobs: Option<usize>) -> Result<Vec<ReportRow>> {
    spec.validate()?;
    if spec.task == Task::Identities {
        return identity_rows();
    }
    let pts = points(spec);
    if !spec.parallel {
        return Ok(pts.iter().map(|pt| row_or_error(spec, pt)).collect());
    }
    let run = || pts.par_iter().map(|pt| row_or_error(spec, pt)).collect::<Vec<_>>();
    match resolve_jobs(jobs) {
        Some(j) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(j)
                .build()
                .map_err(|e| CliError::Pool(e.to_string()))?;
            Ok(pool.install(run))
        }
        None => Ok(run()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn samples_span_the_band() {
        let s = geometric_samples(5.0, 17.0, 3);
        assert_eq!(s.len(), 3);
        assert_eq!(s[0], 5.0);
        assert_eq!(s[2], 17.0);
        assert!(geometric_samples(2.0, 1.0, 3).is_empty());
        assert_eq!(geometric_samples(3.0, 9.0, 1), vec![3.0]);
    }

    #[test]
    fn cardinality() {
        let mut spec = SweepSpec::new(Task::Thm1, vec![8, 16]);
        spec.r_rule = RRule::BandSamples(3);
        assert_eq!(points(&spec).len(), 6);
        spec.task = Task::Lemma1;
        spec.p_values = vec![Exponent::Finite(1.0), Exponent::Finite(2.0)];
        assert_eq!(points(&spec).len(), 6);
    }

    #[test]
    fn failing_points_become_rows() {
        let mut spec = SweepSpec::new(Task::Thm1, vec![16]);
        spec.r_rule = RRule::Explicit(vec![5.0, 300.0]);
        let rows = run_sweep(&spec).unwrap();
        assert_eq!(rows.len(), 2);
        assert!(!rows[0].is_error());
        assert!(rows[1].is_error());
        assert!(rows[1].formula_id.contains("regime"));
    }
}
