//! Truncated complex power series and the dual `f/z`, `z/f` representation
//! of normalized functions.

mod function_rep;
mod majorant;
mod series;

pub use function_rep::{dilate, integrate_t_over_f, FunctionRep};
pub use majorant::Majorant;
pub use series::{linear_combine, CircleSamples, TruncatedSeries, RECIPROCAL_THRESHOLD};

/// Default truncation order.
pub const DEFAULT_ORDER: usize = 256;

/// Default number of circle samples.
pub const DEFAULT_SAMPLES: usize = 4096;
