//! Pass/fail assertions over report rows.

use crate::config::Task;
use crate::row::ReportRow;

/// Default cap on `|normalized_gap|` for theorem rows. The asymptotic
/// constants are unspecified, so this only guards against blow-ups.
pub const DEFAULT_GAP_CAP: f64 = 50.0;
/// Lemma bound on `Σ φ(k/n) · r²/n`.
pub const LEMMA_CONST: f64 = 24.5518;

#[derive(Debug, Clone, PartialEq)]
pub struct Failure {
    pub row: usize,
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Verdict {
    pub checked: usize,
    pub failures: Vec<Failure>,
    /// Largest `|normalized_gap|` seen on non-error rows.
    pub max_normalized_gap: f64,
}

impl Verdict {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Checks each row against what its task claims.
pub fn verify_rows(task: Task, rows: &[ReportRow], gap_cap: f64) -> Verdict {
    let mut failures = Vec::new();
    let mut max_gap = 0.0f64;
    for (i, row) in rows.iter().enumerate() {
        let mut fail = |reason: String| failures.push(Failure { row: i, reason });
        if row.is_error() {
            fail(format!("point failed: {}", row.formula_id));
            continue;
        }
        let g = row.normalized_gap.abs();
        if g.is_finite() {
            max_gap = max_gap.max(g);
        }
        match task {
            Task::Thm1 | Task::Thm2 | Task::Thm3 | Task::Thm4 => {
                if !g.is_finite() {
                    fail("normalized gap is not finite".into());
                } else if g > gap_cap {
                    fail(format!("normalized gap {g:.3e} above cap {gap_cap}"));
                }
            }
            Task::Lemma1 => {
                if row.formula_id != "lemma1" || !(row.normalized_gap < LEMMA_CONST) {
                    fail(format!("lemma bound violated (sum * r^2/n = {})", row.normalized_gap));
                }
            }
            Task::StechkinSum => {
                if !(row.normalized_gap.is_finite() && row.normalized_gap > 0.0) {
                    fail("ratio is not finite and positive".into());
                }
            }
            Task::Identities => {
                if !(row.normalized_gap <= 1.0) {
                    fail(format!("{} off by {:.3e} (tolerance {:.1e})", row.formula_id, row.gap, row.remainder_mantissa));
                }
            }
            Task::EvalC | Task::EvalL => {
                if !row.computed_mantissa.is_finite() {
                    fail("value is not finite".into());
                }
            }
        }
    }
    Verdict {
        checked: rows.len(),
        failures,
        max_normalized_gap: max_gap,
    }
}
