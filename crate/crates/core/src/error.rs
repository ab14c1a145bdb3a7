use thiserror::Error;

/// Errors raised by the numerical routines.
///
/// Payloads are carried as `f64` regardless of the scalar type the failing
/// routine was instantiated with.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument lies outside the routine's domain.
    #[error("domain error: {what} (got {value})")]
    Domain { what: &'static str, value: f64 },

    /// A series could not be truncated within the term budget.
    #[error("truncation failure after {terms} terms: residual bound {residual_bound:e} still above target")]
    Truncation { terms: usize, residual_bound: f64 },

    /// Iterative refinement did not reach the requested accuracy.
    #[error("accuracy not reached in {what}: best estimate {estimate}, error gauge {gauge:e}")]
    Accuracy {
        what: &'static str,
        estimate: f64,
        gauge: f64,
    },

    /// The (r, n) point is outside the region where a formula applies.
    #[error("regime error: (r={r}, n={n}) is not in {expected}")]
    Regime { r: f64, n: u64, expected: &'static str },

    /// Two independent evaluation routes disagree.
    #[error("internal consistency error in {what}: {first} vs {second} (relative difference {rel:e})")]
    Consistency {
        what: &'static str,
        first: f64,
        second: f64,
        rel: f64,
    },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain(what: &'static str, value: impl Into<f64>) -> Error {
    Error::Domain {
        what,
        value: value.into(),
    }
}
