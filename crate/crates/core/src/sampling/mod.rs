//! Exact samplers for the time-`t` law of the max-norm process.
//!
//! The law is radially symmetric, so a draw is a radius (inverse CDF over the
//! discrete radial law) followed by a direction (Haar-uniform on the sphere of
//! that radius). Every sampler takes its randomness from an [`RngStream`].

mod increment;
mod radial;
mod rng;
mod uniform;

pub use increment::{sample_increment, IncrementSampler};
pub use radial::{sample_radius, RadialSampler, RadiusDraw, TAIL_TARGET};
pub use rng::RngStream;
pub use uniform::{uniform_ball_scalar, uniform_sphere_vector, SphereDraw};
