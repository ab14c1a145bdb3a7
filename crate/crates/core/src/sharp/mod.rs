//! Sharp values of the worst-case Fourier-sum error, computed as centred
//! `L_p` distances of kernel tails.

mod evalue;
mod grid;
mod norm;
mod signal;

pub use evalue::{e_value_c, e_value_l, terms_needed, EValue, EvalOptions, Metric};
pub use norm::{centered_lp_distance, periodic_lp_norm, NormOutcome, NormRequest};
pub use signal::{CosineSeries, FnSignal, PeriodicSignal};
