use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::padic::check_prime;

/// `(p, d, b, sigma)`: the law of a Brownian motion in `Q_p^d` with diffusion
/// exponent `b` and diffusion constant `sigma`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ProcessParams {
    prime: u32,
    dim: u32,
    exponent: f64,
    sigma: f64,
}

impl ProcessParams {
    pub fn new(prime: u32, dim: u32, exponent: f64, sigma: f64) -> Result<Self> {
        check_prime(prime)?;
        if dim == 0 {
            return Err(Error::InvalidParameter("dimension must be at least 1".into()));
        }
        if !(exponent.is_finite() && exponent > 0.0) {
            return Err(Error::InvalidParameter(format!("exponent b must be positive, got {exponent}")));
        }
        if !(sigma.is_finite() && sigma > 0.0) {
            return Err(Error::InvalidParameter(format!("sigma must be positive, got {sigma}")));
        }
        Ok(ProcessParams {
            prime,
            dim,
            exponent,
            sigma,
        })
    }

    pub fn prime(&self) -> u32 {
        self.prime
    }

    pub fn dim(&self) -> u32 {
        self.dim
    }

    pub fn exponent(&self) -> f64 {
        self.exponent
    }

    pub fn sigma(&self) -> f64 {
        self.sigma
    }

    /// Same `p`, `b`, `sigma` in another dimension.
    pub fn with_dim(&self, dim: u32) -> Result<Self> {
        ProcessParams::new(self.prime, dim, self.exponent, self.sigma)
    }

    pub(crate) fn ln_p(&self) -> f64 {
        (self.prime as f64).ln()
    }

    /// `p^x` for real `x`.
    pub(crate) fn p_pow(&self, x: f64) -> f64 {
        if x.fract() == 0.0 && x.abs() <= 1000.0 {
            (self.prime as f64).powi(x as i32)
        } else {
            (x * self.ln_p()).exp()
        }
    }
}

/// Truncation control for the infinite sums over scale levels.
///
/// `epsilon` bounds the neglected remainder relative to the partial sum.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SeriesTolerance {
    pub epsilon: f64,
    pub max_terms: usize,
}

impl Default for SeriesTolerance {
    fn default() -> Self {
        SeriesTolerance {
            epsilon: 1e-15,
            max_terms: 10_000,
        }
    }
}

impl SeriesTolerance {
    pub fn new(epsilon: f64, max_terms: usize) -> Result<Self> {
        if !(epsilon.is_finite() && epsilon > 0.0) {
            return Err(Error::InvalidParameter(format!("epsilon must be positive, got {epsilon}")));
        }
        if max_terms == 0 {
            return Err(Error::InvalidParameter("max_terms must be positive".into()));
        }
        Ok(SeriesTolerance { epsilon, max_terms })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validation() {
        assert!(ProcessParams::new(2, 1, 1.0, 1.0).is_ok());
        assert!(ProcessParams::new(4, 1, 1.0, 1.0).is_err());
        assert!(ProcessParams::new(2, 0, 1.0, 1.0).is_err());
        assert!(ProcessParams::new(2, 1, 0.0, 1.0).is_err());
        assert!(ProcessParams::new(2, 1, 1.0, -1.0).is_err());
        assert!(ProcessParams::new(2, 1, f64::NAN, 1.0).is_err());
        assert!(SeriesTolerance::new(0.0, 10).is_err());
        assert!(SeriesTolerance::new(1e-12, 0).is_err());
    }

    #[test]
    fn real_powers() {
        let params = ProcessParams::new(3, 2, 0.5, 1.0).unwrap();
        assert!((params.p_pow(2.0) - 9.0).abs() < 1e-13);
        assert!((params.p_pow(-1.0) - 1.0 / 3.0).abs() < 1e-15);
        assert_eq!(params.with_dim(5).unwrap().dim(), 5);
    }
}
