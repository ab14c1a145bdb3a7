//! `key=value` sweep configuration files.

use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use wna_core::kernels::{PhaseRule, TruncationBudget};
use wna_core::Exponent;

use crate::error::{CliError, Result};

const DEFAULT_BAND_SAMPLES: usize = 5;
const DEFAULT_MAX_TERMS: usize = 1 << 22;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Task {
    EvalC,
    EvalL,
    Lemma1,
    Thm1,
    Thm2,
    Thm3,
    Thm4,
    Identities,
    StechkinSum,
}

impl Task {
    pub fn as_str(&self) -> &'static str {
        match self {
            Task::EvalC => "evalC",
            Task::EvalL => "evalL",
            Task::Lemma1 => "lemma1",
            Task::Thm1 => "thm1",
            Task::Thm2 => "thm2",
            Task::Thm3 => "thm3",
            Task::Thm4 => "thm4",
            Task::Identities => "identities",
            Task::StechkinSum => "stechkin",
        }
    }

    /// Whether rows depend on `p`.
    pub fn uses_p(&self) -> bool {
        matches!(self, Task::EvalC | Task::EvalL | Task::Thm1 | Task::Thm2 | Task::Thm3 | Task::Thm4)
    }
}

impl fmt::Display for Task {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Task {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        Ok(match s.to_ascii_lowercase().as_str() {
            "evalc" | "eval_c" => Task::EvalC,
            "evall" | "eval_l" => Task::EvalL,
            "lemma1" => Task::Lemma1,
            "thm1" => Task::Thm1,
            "thm2" => Task::Thm2,
            "thm3" => Task::Thm3,
            "thm4" => Task::Thm4,
            "identities" => Task::Identities,
            "stechkin" | "stechkinsum" | "stechkin_sum" => Task::StechkinSum,
            _ => return Err(format!("unknown task '{s}'")),
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum RRule {
    Explicit(Vec<f64>),
    /// Geometric samples across the band that belongs to the task.
    BandSamples(usize),
}

#[derive(Debug, Clone)]
pub struct SweepSpec {
    pub task: Task,
    pub n_values: Vec<u64>,
    pub r_rule: RRule,
    pub p_values: Vec<Exponent<f64>>,
    pub phase: PhaseRule<f64>,
    pub accuracy: TruncationBudget<f64>,
    pub oversample: usize,
    pub parallel: bool,
    pub out: Option<PathBuf>,
}

impl SweepSpec {
    pub fn new(task: Task, n_values: Vec<u64>) -> Self {
        Self {
            task,
            n_values,
            r_rule: RRule::BandSamples(DEFAULT_BAND_SAMPLES),
            p_values: vec![Exponent::Finite(2.0)],
            phase: PhaseRule::constant(0.0),
            accuracy: TruncationBudget {
                tol: 1e-12,
                max_terms: DEFAULT_MAX_TERMS,
            },
            oversample: 8,
            parallel: true,
            out: None,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.task != Task::Identities && self.n_values.is_empty() {
            return Err(range("n", "needs at least one value"));
        }
        if self.n_values.contains(&0) {
            return Err(range("n", "values must be at least 1"));
        }
        match &self.r_rule {
            RRule::BandSamples(0) => return Err(range("r", "band sample count must be at least 1")),
            RRule::Explicit(rs) if rs.is_empty() => return Err(range("r", "needs at least one value")),
            RRule::Explicit(rs) => {
                if let Some(bad) = rs.iter().find(|r| !(r.is_finite() && **r > 0.0)) {
                    return Err(range("r", format!("must be positive and finite (got {bad})")));
                }
            }
            RRule::BandSamples(_) => {}
        }
        if self.p_values.is_empty() {
            return Err(range("p", "needs at least one value"));
        }
        if !(self.accuracy.tol > 0.0) {
            return Err(range("tol", "must be positive"));
        }
        if self.oversample < 2 {
            return Err(range("oversample", "must be at least 2"));
        }
        Ok(())
    }
}

fn range(key: &'static str, msg: impl Into<String>) -> CliError {
    CliError::Range { key, msg: msg.into() }
}

pub fn parse_p(s: &str) -> std::result::Result<Exponent<f64>, String> {
    let v = match s.trim().to_ascii_lowercase().as_str() {
        "inf" | "infinity" | "∞" => f64::INFINITY,
        t => t.parse::<f64>().map_err(|e| format!("bad exponent '{s}': {e}"))?,
    };
    Exponent::new(v).map_err(|_| format!("exponent must be in [1, inf] (got {s})"))
}

pub fn parse_phase(s: &str) -> std::result::Result<PhaseRule<f64>, String> {
    let s = s.trim();
    if let Some(seed) = s.strip_prefix("seq:") {
        let seed = seed.parse::<u64>().map_err(|e| format!("bad phase seed '{seed}': {e}"))?;
        return Ok(PhaseRule::pseudorandom(seed));
    }
    let b = s.parse::<f64>().map_err(|e| format!("bad beta '{s}': {e}"))?;
    if !b.is_finite() {
        return Err(format!("beta must be finite (got {s})"));
    }
    Ok(PhaseRule::constant(b))
}

fn parse_bool(s: &str) -> std::result::Result<bool, String> {
    match s.to_ascii_lowercase().as_str() {
        "true" | "yes" | "on" | "1" => Ok(true),
        "false" | "no" | "off" | "0" => Ok(false),
        _ => Err(format!("expected a boolean, got '{s}'")),
    }
}

fn list<T>(s: &str, f: impl Fn(&str) -> std::result::Result<T, String>) -> std::result::Result<Vec<T>, String> {
    s.split(',').map(str::trim).filter(|x| !x.is_empty()).map(f).collect()
}

/// Parses a sweep configuration. Blank lines and `#` comments are ignored;
/// unknown or repeated keys are errors.
pub fn parse_config(text: &str) -> Result<SweepSpec> {
    let mut task = None;
    let mut spec = SweepSpec::new(Task::EvalC, Vec::new());
    let mut seen: Vec<String> = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let err = |msg: String| CliError::Parse { line, msg };
        let body = raw.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        let (key, value) = body
            .split_once('=')
            .ok_or_else(|| err(format!("expected key=value, got '{body}'")))?;
        let (key, value) = (key.trim().to_ascii_lowercase(), value.trim());
        if seen.contains(&key) {
            return Err(err(format!("duplicate key '{key}'")));
        }
        match key.as_str() {
            "task" => task = Some(value.parse::<Task>().map_err(err)?),
            "n" => {
                spec.n_values = list(value, |x| x.parse::<u64>().map_err(|e| format!("bad n '{x}': {e}"))).map_err(err)?
            }
            "r" => {
                spec.r_rule = match value.strip_prefix("band:") {
                    Some(c) => RRule::BandSamples(c.trim().parse().map_err(|e| err(format!("bad sample count: {e}")))?),
                    None => {
                        RRule::Explicit(list(value, |x| x.parse::<f64>().map_err(|e| format!("bad r '{x}': {e}"))).map_err(err)?)
                    }
                }
            }
            "p" => {
                spec.p_values = list(value, parse_p).map_err(|msg| match msg.starts_with("exponent must") {
                    true => range("p", msg),
                    false => err(msg),
                })?
            }
            "beta" => spec.phase = parse_phase(value).map_err(err)?,
            "tol" => {
                spec.accuracy.tol = value.parse().map_err(|e| err(format!("bad tol '{value}': {e}")))?;
            }
            "oversample" => spec.oversample = value.parse().map_err(|e| err(format!("bad oversample '{value}': {e}")))?,
            "parallel" => spec.parallel = parse_bool(value).map_err(err)?,
            "out" => spec.out = Some(PathBuf::from(value)),
            _ => return Err(err(format!("unknown key '{key}'"))),
        }
        seen.push(key);
    }
    spec.task = task.ok_or_else(|| range("task", "is required"))?;
    spec.validate()?;
    Ok(spec)
}
