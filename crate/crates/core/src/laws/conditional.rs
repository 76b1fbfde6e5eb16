use serde::{Deserialize, Serialize};

use super::exit::gamma_factor;
use super::params::{ProcessParams, SeriesTolerance};
use super::series::{check_time, g_sum};
use crate::error::{Error, Result};

/// `P(X^(i)_t in B(r) | ||X_{t,i}|| = p^R)` for every `r <= R`.
///
/// The probability is `p^r G(R, d, t) / G(R, d-1, t)`; the `r`-free ratio is
/// computed once, so `prob(r) / p^r` is the same number for every `r`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConditionalLaw {
    params: ProcessParams,
    time: f64,
    r_level: i32,
    ratio: f64,
}

impl ConditionalLaw {
    pub fn new(params: &ProcessParams, t: f64, r_level: i32, tol: &SeriesTolerance) -> Result<Self> {
        Ok(ConditionalLaw {
            params: *params,
            time: t,
            r_level,
            ratio: conditional_ratio(params, t, r_level, tol)?,
        })
    }

    pub fn params(&self) -> &ProcessParams {
        &self.params
    }

    pub fn time(&self) -> f64 {
        self.time
    }

    pub fn r_level(&self) -> i32 {
        self.r_level
    }

    /// `G(R, d, t) / G(R, d-1, t)`.
    pub fn ratio(&self) -> f64 {
        self.ratio
    }

    pub fn prob(&self, r: i32) -> Result<f64> {
        if r > self.r_level {
            return Err(Error::Domain(format!("need r <= R, got r={r}, R={}", self.r_level)));
        }
        Ok(self.params.p_pow(r as f64) * self.ratio)
    }
}

/// `G(R, d, t) / G(R, d-1, t)`; needs `d >= 2`.
pub fn conditional_ratio(params: &ProcessParams, t: f64, r_level: i32, tol: &SeriesTolerance) -> Result<f64> {
    check_time(t)?;
    let d = params.dim();
    if d < 2 {
        return Err(Error::Domain("conditioning on the other components needs d >= 2".into()));
    }
    let num = g_sum(params, r_level, d, t, tol)?;
    let den = g_sum(params, r_level, d - 1, t, tol)?;
    if den <= 0.0 {
        return Err(Error::Domain(format!("conditioning event has probability zero at t={t}")));
    }
    Ok(num / den)
}

pub fn conditional_ball_prob(
    params: &ProcessParams,
    t: f64,
    r: i32,
    r_level: i32,
    tol: &SeriesTolerance,
) -> Result<f64> {
    if r > r_level {
        return Err(Error::Domain(format!("need r <= R, got r={r}, R={r_level}")));
    }
    ConditionalLaw::new(params, t, r_level, tol)?.prob(r)
}

/// `lim_{t -> 0} conditional_ball_prob(r, R, t) = p^{r-R} p Gamma(p, b, d)`.
///
/// Both `G` sums vanish linearly in `t`, and the ratio of their slopes carries
/// the extra factor `p` relative to `Gamma p^{-R}`.
pub fn conditional_small_time_limit(params: &ProcessParams, r: i32, r_level: i32) -> Result<f64> {
    if params.dim() < 2 {
        return Err(Error::Domain("conditioning on the other components needs d >= 2".into()));
    }
    if r > r_level {
        return Err(Error::Domain(format!("need r <= R, got r={r}, R={r_level}")));
    }
    Ok(params.p_pow((r - r_level + 1) as f64) * gamma_factor(params))
}
