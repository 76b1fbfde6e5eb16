//! Finite-precision elements of `Q_p` and `Q_p^d`.
//!
//! A [`PadicScalar`] stores a normalized digit window: the valuation `v` of the
//! leading nonzero digit followed by `W` base-`p` digits, so that the value is
//! `sum_i digits[i] * p^(v + i)`. Digits beyond the window are taken to be zero,
//! which makes every scalar an exact rational and lets arithmetic report
//! precisely when it had to drop information (see [`Precision`]).
//!
//! Norms never go through floating point here: a [`Norm`] is either zero or an
//! integer level `k` standing for `p^k`.

mod ball;
mod scalar;
mod text;
mod vector;

pub use ball::{Ball, Sphere};
pub use scalar::{PadicScalar, Precision, ScalarSum};
pub use vector::{PadicVector, VectorSum};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Digits kept below the leading digit unless a caller asks otherwise.
pub const DEFAULT_WIDTH: usize = 48;

/// Smallest supported valuation (largest norm level is `-MIN_VALUATION`).
pub const MIN_VALUATION: i32 = -64;

/// Largest supported valuation; anything deeper is treated as zero.
pub const MAX_VALUATION: i32 = 64;

/// The p-adic absolute value (or max-norm) of an element, kept exact.
///
/// `Level(k)` means `p^k`. The derived ordering puts `Zero` below every level.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Norm {
    Zero,
    Level(i32),
}

impl Norm {
    pub fn level(self) -> Option<i32> {
        match self {
            Norm::Zero => None,
            Norm::Level(k) => Some(k),
        }
    }

    /// `true` when the norm is at most `p^k`.
    pub fn within(self, k: i32) -> bool {
        match self {
            Norm::Zero => true,
            Norm::Level(l) => l <= k,
        }
    }

    pub fn to_f64(self, prime: u32) -> f64 {
        match self {
            Norm::Zero => 0.0,
            Norm::Level(k) => (prime as f64).powi(k),
        }
    }
}

/// Checks primality by trial division; primes here are small.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut f = 3;
    while f * f <= n {
        if n % f == 0 {
            return false;
        }
        f += 2;
    }
    true
}

pub(crate) fn check_prime(p: u32) -> Result<()> {
    // Digits are summed in u64 with a carry, so p must leave headroom.
    if !is_prime(p as u64) || p > u16::MAX as u32 {
        return Err(Error::NotPrime(p as u64));
    }
    Ok(())
}

pub(crate) fn check_valuation(v: i64) -> Result<i32> {
    if v < MIN_VALUATION as i64 || v > MAX_VALUATION as i64 {
        return Err(Error::ValuationOutOfRange(v));
    }
    Ok(v as i32)
}
