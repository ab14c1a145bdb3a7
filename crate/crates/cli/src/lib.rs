//! Sweeps, verification and CSV/JSON reports on top of `wna-core`.

pub mod config;
pub mod emit;
pub mod error;
pub mod identities;
pub mod row;
pub mod sweep;
pub mod verify;

pub use config::{parse_config, RRule, SweepSpec, Task};
pub use emit::{emit, Format};
pub use error::{CliError, Result};
pub use row::ReportRow;
pub use sweep::{run_sweep, run_sweep_with_jobs};
