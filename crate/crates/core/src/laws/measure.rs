use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::padic::check_prime;

/// The exact number `p^exponent`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PowerOfP {
    pub prime: u32,
    pub exponent: i64,
}

impl PowerOfP {
    pub fn to_rational(self) -> BigRational {
        let base = num_traits::pow(BigInt::from(self.prime), self.exponent.unsigned_abs() as usize);
        if self.exponent >= 0 {
            BigRational::from_integer(base)
        } else {
            BigRational::new(BigInt::one(), base)
        }
    }

    pub fn to_f64(self) -> f64 {
        match i32::try_from(self.exponent) {
            Ok(e) => (self.prime as f64).powi(e),
            Err(_) => (self.exponent as f64 * (self.prime as f64).ln()).exp(),
        }
    }
}

fn check_dim(d: u32) -> Result<()> {
    if d == 0 {
        return Err(Error::InvalidParameter("dimension must be at least 1".into()));
    }
    Ok(())
}

/// Haar measure of `B_d(k)`: `p^(kd)`.
pub fn ball_measure(prime: u32, k: i64, d: u32) -> Result<PowerOfP> {
    check_prime(prime)?;
    check_dim(d)?;
    Ok(PowerOfP {
        prime,
        exponent: k * d as i64,
    })
}

/// Haar measure of `S_d(k)`: `p^(kd) (1 - p^-d)`.
pub fn sphere_measure(prime: u32, k: i64, d: u32) -> Result<BigRational> {
    let ball = ball_measure(prime, k, d)?.to_rational();
    let shrink = PowerOfP {
        prime,
        exponent: -(d as i64),
    }
    .to_rational();
    let value = ball * (BigRational::one() - shrink);
    debug_assert!(value > BigRational::zero());
    Ok(value)
}

/// `int_{B_d(m)} int_{B_d(n)} chi(x . y) dx dy = p^(d (n + min(-n, m)))`.
pub fn char_integral(prime: u32, m: i64, n: i64, d: u32) -> Result<PowerOfP> {
    check_prime(prime)?;
    check_dim(d)?;
    Ok(PowerOfP {
        prime,
        exponent: d as i64 * (n + (-n).min(m)),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn ball_measures() {
        for d in 1..5 {
            assert_eq!(ball_measure(5, 0, d).unwrap().to_rational(), rat(1, 1));
        }
        assert_eq!(ball_measure(3, 1, 2).unwrap().to_rational(), rat(9, 1));
        assert_eq!(ball_measure(2, -1, 3).unwrap().to_rational(), rat(1, 8));
        assert!(ball_measure(2, 0, 0).is_err());
    }

    #[test]
    fn sphere_measures() {
        assert_eq!(sphere_measure(2, 0, 1).unwrap(), rat(1, 2));
        assert_eq!(sphere_measure(3, 0, 2).unwrap(), rat(8, 9));
        for (p, d) in [(2, 1), (3, 2), (5, 3)] {
            for k in -3..4 {
                let diff = ball_measure(p, k, d).unwrap().to_rational() - ball_measure(p, k - 1, d).unwrap().to_rational();
                assert_eq!(sphere_measure(p, k, d).unwrap(), diff);
            }
        }
    }

    #[test]
    fn char_integral_values() {
        assert_eq!(char_integral(2, 0, 0, 1).unwrap().to_rational(), rat(1, 1));
        assert_eq!(char_integral(3, 1, 1, 2).unwrap().to_rational(), rat(1, 1));
        assert_eq!(char_integral(2, 1, -2, 1).unwrap().to_rational(), rat(1, 2));
    }

    #[test]
    fn power_to_f64() {
        assert_eq!(PowerOfP { prime: 2, exponent: -3 }.to_f64(), 0.125);
        assert!((PowerOfP { prime: 3, exponent: 4 }.to_f64() - 81.0).abs() < 1e-12);
    }
}
