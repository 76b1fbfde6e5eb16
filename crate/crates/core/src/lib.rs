//! Brownian motion on `Q_p^d`: closed-form laws and exact-increment Monte-Carlo.
//!
//! The crate is split along the path from numbers to experiments:
//!
//! - [`padic`]: finite-precision p-adic scalars and vectors, norms, balls and spheres.
//! - [`laws`]: measures, the character integral, the density series, ball and
//!   conditional probabilities, the rate factors `alpha_d` and `Gamma`, and the
//!   exit-time survival functions.
//! - [`sampling`]: reproducible RNG streams and exact samplers for the time-`t` law.
//! - [`sim`]: path simulation of the max-norm and product processes and the
//!   Monte-Carlo estimators built on it.
//! - [`stats`]: confidence intervals, chi-square tests and verdicts.
//!
//! ```
//! use padic_brownian::laws::{self, ProcessParams};
//!
//! let params = ProcessParams::new(2, 2, 1.0, 1.0).unwrap();
//! let s = laws::survival_maxnorm(&params, 1.0, 0).unwrap();
//! assert!((s - (-6.0f64 / 7.0).exp()).abs() < 1e-15);
//! ```

pub mod error;
pub mod laws;
pub mod padic;
pub mod sampling;
pub mod sim;
pub mod stats;

pub use error::{Error, Result};

// The guide under `book/` is compiled here so its snippets run as doc-tests.
#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/padic-numbers.md")]
    mod padic_numbers {}
    #[doc = include_str!("../../../book/src/density.md")]
    mod density {}
    #[doc = include_str!("../../../book/src/sampling.md")]
    mod sampling {}
    #[doc = include_str!("../../../book/src/components.md")]
    mod components {}
    #[doc = include_str!("../../../book/src/exit-times.md")]
    mod exit_times {}
    #[doc = include_str!("../../../book/src/verification.md")]
    mod verification {}
}
