//! Closed-form laws of the max-norm process and of the product process.
//!
//! Everything here is a pure function of [`ProcessParams`]. Measures and the
//! character integral are exact; the density series and everything built on
//! it are evaluated in `f64` with certified truncation (see [`SeriesTolerance`]).
//!
//! The workhorse is the lower tail sum
//!
//! ```text
//! G(R, dd, t) = sum_{j <= -R} (exp(-s t p^{jb}) - exp(-s t p^{(j+1)b})) p^{dd j}
//! ```
//!
//! from which the density (`rho_d(t, x) = G(k, d, t)` on the sphere of level
//! `k`), the radial masses, ball probabilities and conditional probabilities
//! all follow.

mod conditional;
mod exit;
mod measure;
mod params;
mod series;

pub use conditional::{conditional_ball_prob, conditional_ratio, conditional_small_time_limit, ConditionalLaw};
pub use exit::{
    alpha, alpha_exact, ball_probability_rate_at_zero, gamma_factor, gamma_exact, survival_maxnorm,
    survival_product,
};
pub use measure::{ball_measure, char_integral, sphere_measure, PowerOfP};
pub use params::{ProcessParams, SeriesTolerance};
pub use series::{
    ball_probability, density, density_at_level, g_rate_at_zero, g_sum, radial_law, radial_mass, upper_tail,
    RadialLaw,
};
