//! Path simulation and Monte-Carlo estimators.
//!
//! Both processes start at zero and move by independent exact-law increments
//! over a time grid. The max-norm process draws each increment from the
//! radially symmetric law on `Q_p^d`; the product process advances every
//! coordinate by its own one-dimensional increment.
//!
//! Estimators split their samples over `workers` independent [`RngStream`]s
//! (stream id = worker index), so results depend only on the seed and the
//! worker count, never on thread scheduling.
//!
//! [`RngStream`]: crate::sampling::RngStream

mod estimate;
mod path;

pub use estimate::{
    estimate_conditional, estimate_exit_survival, marginal_radial_histogram, CondEstimate, ExitEstimate, ExitMethod,
    McConfig, DEFAULT_SEED,
};
pub use path::{simulate_maxnorm_path, simulate_product_path, PathSample, PathSimulator, ProcessKind, TimeGrid};
