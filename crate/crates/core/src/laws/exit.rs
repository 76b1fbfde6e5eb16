use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use super::params::ProcessParams;
use super::series::check_time;
use crate::error::{Error, Result};
use crate::padic::check_prime;

/// `alpha_dd = 1 - (p^b - 1) / (p^{b+dd} - 1)`.
pub fn alpha(params: &ProcessParams, dd: u32) -> Result<f64> {
    if dd == 0 {
        return Err(Error::InvalidParameter("alpha needs dd >= 1".into()));
    }
    // 1 - p^-dd (1 - p^-b) / (1 - p^-(b+dd)), no overflow for large dd
    let b = params.exponent();
    let lp = params.ln_p();
    let shrink = |x: f64| -(-x * lp).exp_m1();
    Ok(1.0 - params.p_pow(-(dd as f64)) * shrink(b) / shrink(b + dd as f64))
}

fn int_pow(prime: u32, e: u32) -> BigRational {
    BigRational::from_integer(num_traits::pow(BigInt::from(prime), e as usize))
}

/// `alpha_dd` as an exact rational for integer `b`.
pub fn alpha_exact(prime: u32, b: u32, dd: u32) -> Result<BigRational> {
    check_prime(prime)?;
    if b == 0 || dd == 0 {
        return Err(Error::InvalidParameter("alpha needs b >= 1 and dd >= 1".into()));
    }
    let one = BigRational::one();
    Ok(&one - (int_pow(prime, b) - &one) / (int_pow(prime, b + dd) - &one))
}

/// `Gamma(p, b, d) = (p^{b+d} - p) / (p^{b+d+1} - p)`.
pub fn gamma_factor(params: &ProcessParams) -> f64 {
    let e = params.exponent() + params.dim() as f64;
    let lp = params.ln_p();
    let shrink = |x: f64| -(-x * lp).exp_m1();
    shrink(e - 1.0) / shrink(e) / params.prime() as f64
}

/// `Gamma(p, b, d)` as an exact rational for integer `b`.
pub fn gamma_exact(prime: u32, b: u32, d: u32) -> Result<BigRational> {
    check_prime(prime)?;
    if b == 0 || d == 0 {
        return Err(Error::InvalidParameter("Gamma needs b >= 1 and d >= 1".into()));
    }
    let p = int_pow(prime, 1);
    Ok((int_pow(prime, b + d) - &p) / (int_pow(prime, b + d + 1) - &p))
}

/// `P(sup_{s <= T} ||X_s|| <= p^R) = exp(-sigma alpha_d T p^{-Rb})`.
pub fn survival_maxnorm(params: &ProcessParams, horizon: f64, r_level: i32) -> Result<f64> {
    check_time(horizon)?;
    let a = alpha(params, params.dim())?;
    Ok((-params.sigma() * a * horizon * params.p_pow(-(r_level as f64) * params.exponent())).exp())
}

/// Survival of `d` independent one-dimensional motions:
/// `exp(-d sigma alpha_1 T p^{-Rb})`, evaluated as the `d`-th power of the
/// one-dimensional survival.
pub fn survival_product(params: &ProcessParams, horizon: f64, r_level: i32) -> Result<f64> {
    let one = survival_maxnorm(&params.with_dim(1)?, horizon, r_level)?;
    Ok(one.powi(params.dim() as i32))
}

/// `d/dt P(X_t in B_d(R))` at `t = 0`, which is `-sigma alpha_d p^{-Rb}`.
pub fn ball_probability_rate_at_zero(params: &ProcessParams, r_level: i32) -> Result<f64> {
    Ok(-params.sigma() * alpha(params, params.dim())? * params.p_pow(-(r_level as f64) * params.exponent()))
}
