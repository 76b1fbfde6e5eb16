use serde::{Deserialize, Serialize};

use super::params::{ProcessParams, SeriesTolerance};
use crate::error::{Error, Result};
use crate::padic::{Norm, PadicVector};

pub(crate) fn check_time(t: f64) -> Result<()> {
    if !(t.is_finite() && t > 0.0) {
        return Err(Error::InvalidParameter(format!("time must be positive, got {t}")));
    }
    Ok(())
}

/// `exp(-s t p^{jb}) - exp(-s t p^{(j+1)b})`, written as
/// `exp(-a) * (1 - exp(-a (p^b - 1)))` so small `t` keeps its digits.
pub(crate) fn exp_diff(params: &ProcessParams, t: f64, j: i64) -> f64 {
    if t == 0.0 {
        return 0.0;
    }
    let a = params.sigma() * t * params.p_pow(j as f64 * params.exponent());
    if a.is_infinite() {
        return 0.0;
    }
    let gap = a * (params.p_pow(params.exponent()) - 1.0);
    (-a).exp() * -(-gap).exp_m1()
}

/// `sum_{j <= top} exp_diff(j) * p^{dd (j + shift)}`.
///
/// Each term is at most `s t p^{(j+1)b} p^{dd (j + shift)}`, so after term `j`
/// the remainder is bounded by the geometric tail
/// `s t p^b p^{dd shift} p^{(b+dd)(j-1)} / (1 - p^{-(b+dd)})`.
pub(crate) fn tail_sum(
    params: &ProcessParams,
    t: f64,
    top: i64,
    dd: u32,
    shift: i64,
    tol: &SeriesTolerance,
) -> Result<f64> {
    if t == 0.0 {
        return Ok(0.0);
    }
    let b = params.exponent();
    let ln_p = params.ln_p();
    let rate = b + dd as f64;
    let ln_const = (params.sigma() * t).ln() + b * ln_p - (-(-rate * ln_p).exp_m1()).ln();
    let mut sum = 0.0;
    let mut j = top;
    for _ in 0..tol.max_terms {
        let weight = params.p_pow((dd as i64 * (j + shift)) as f64);
        sum += exp_diff(params, t, j) * weight;
        let ln_bound = ln_const + (rate * (j - 1) as f64 + dd as f64 * shift as f64) * ln_p;
        if ln_bound.exp() <= tol.epsilon * sum {
            return Ok(sum);
        }
        j -= 1;
    }
    Err(Error::NonConvergence(tol.max_terms))
}

/// `G(R, dd, t) = sum_{j <= -R} exp_diff(j) p^{dd j}`, defined for `t >= 0`.
pub fn g_sum(params: &ProcessParams, r_level: i32, dd: u32, t: f64, tol: &SeriesTolerance) -> Result<f64> {
    if !(t.is_finite() && t >= 0.0) {
        return Err(Error::InvalidParameter(format!("time must be nonnegative, got {t}")));
    }
    if dd == 0 {
        return Err(Error::InvalidParameter("G needs dd >= 1".into()));
    }
    tail_sum(params, t, -(r_level as i64), dd, 0, tol)
}

/// `dG/dt` at `t = 0`: `s (p^b - 1) p^{(b+dd)(1-R)} / (p^{b+dd} - 1)`.
pub fn g_rate_at_zero(params: &ProcessParams, r_level: i32, dd: u32) -> f64 {
    let b = params.exponent();
    let rate = b + dd as f64;
    params.sigma() * (params.p_pow(b) - 1.0) * params.p_pow(rate * (1 - r_level) as f64) / (params.p_pow(rate) - 1.0)
}

/// The density `rho_d(t, x)` for `||x|| = norm`.
///
/// Off the origin this is `G(k, d, t)`. At the origin every scale contributes,
/// and the upward terms carry a growing weight `p^{dr}`; they are summed until
/// they have started halving and the last one is below `epsilon / 2` of the
/// total, after which the remainder is at most that last term.
pub fn density_at_level(params: &ProcessParams, t: f64, norm: Norm, tol: &SeriesTolerance) -> Result<f64> {
    check_time(t)?;
    let d = params.dim();
    match norm {
        Norm::Level(k) => tail_sum(params, t, -(k as i64), d, 0, tol),
        Norm::Zero => {
            let lower = tail_sum(params, t, 0, d, 0, tol)?;
            let mut upper = 0.0;
            let mut prev = f64::INFINITY;
            for r in 1..=tol.max_terms as i64 {
                let term = exp_diff(params, t, r) * params.p_pow((d as i64 * r) as f64);
                upper += term;
                if 2.0 * term <= prev && 2.0 * term <= tol.epsilon * (lower + upper) {
                    return Ok(lower + upper);
                }
                prev = term;
            }
            Err(Error::NonConvergence(tol.max_terms))
        }
    }
}

/// `rho_d(t, x)`.
pub fn density(params: &ProcessParams, t: f64, x: &PadicVector, tol: &SeriesTolerance) -> Result<f64> {
    if x.prime() != params.prime() {
        return Err(Error::PrimeMismatch(params.prime(), x.prime()));
    }
    if x.dim() != params.dim() as usize {
        return Err(Error::DimensionMismatch(params.dim() as usize, x.dim()));
    }
    density_at_level(params, t, x.max_norm(), tol)
}

/// `P(X_t in B_d(R)) = exp(-s t p^{(1-R)b}) + p^{dR} G(R, d, t)`.
pub fn ball_probability(params: &ProcessParams, t: f64, r_level: i32, tol: &SeriesTolerance) -> Result<f64> {
    check_time(t)?;
    let r = r_level as i64;
    let head = (-params.sigma() * t * params.p_pow((1 - r) as f64 * params.exponent())).exp();
    let tail = tail_sum(params, t, -r, params.dim(), r, tol)?;
    Ok((head + tail).min(1.0))
}

/// `P(||X_t|| > p^k)`, computed without subtracting from one.
pub fn upper_tail(params: &ProcessParams, t: f64, k: i32, tol: &SeriesTolerance) -> Result<f64> {
    check_time(t)?;
    let k = k as i64;
    let escape = -(-params.sigma() * t * params.p_pow((1 - k) as f64 * params.exponent())).exp_m1();
    let inside = tail_sum(params, t, -k, params.dim(), k, tol)?;
    Ok((escape - inside).max(0.0))
}

/// `P(||X_t|| = p^k) = G(k, d, t) mu_d(S_d(k))`.
pub fn radial_mass(params: &ProcessParams, t: f64, k: i32, tol: &SeriesTolerance) -> Result<f64> {
    check_time(t)?;
    let d = params.dim();
    let shell = -(-(d as f64) * params.ln_p()).exp_m1();
    Ok(tail_sum(params, t, -(k as i64), d, k as i64, tol)? * shell)
}

/// The law of `||X_t||` over the levels `k_min..=k_max`, with the mass below
/// and above the window kept separately.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RadialLaw {
    params: ProcessParams,
    time: f64,
    k_min: i32,
    masses: Vec<f64>,
    lower_tail: f64,
    upper_tail: f64,
}

impl RadialLaw {
    /// Assembles a law from explicit masses, e.g. a degenerate law for tests.
    pub fn from_masses(
        params: ProcessParams,
        time: f64,
        k_min: i32,
        masses: Vec<f64>,
        lower_tail: f64,
        upper_tail: f64,
    ) -> Result<Self> {
        if masses.is_empty() {
            return Err(Error::InvalidParameter("a radial law needs at least one level".into()));
        }
        let all = masses.iter().chain([&lower_tail, &upper_tail]);
        if all.clone().any(|m| !(m.is_finite() && *m >= 0.0)) {
            return Err(Error::InvalidParameter("masses must be finite and nonnegative".into()));
        }
        let total: f64 = all.sum();
        if (total - 1.0).abs() > 1e-9 {
            return Err(Error::InvalidParameter(format!("masses sum to {total}, not 1")));
        }
        Ok(RadialLaw {
            params,
            time,
            k_min,
            masses,
            lower_tail,
            upper_tail,
        })
    }

    pub fn params(&self) -> &ProcessParams {
        &self.params
    }

    pub fn time(&self) -> f64 {
        self.time
    }

    pub fn k_min(&self) -> i32 {
        self.k_min
    }

    pub fn k_max(&self) -> i32 {
        self.k_min + self.masses.len() as i32 - 1
    }

    pub fn masses(&self) -> &[f64] {
        &self.masses
    }

    /// `(k, P(||X_t|| = p^k))` in increasing `k`.
    pub fn levels(&self) -> impl Iterator<Item = (i32, f64)> + '_ {
        self.masses.iter().enumerate().map(|(i, &m)| (self.k_min + i as i32, m))
    }

    /// Mass at level `k`; zero outside the window.
    pub fn mass(&self, k: i32) -> f64 {
        if k < self.k_min || k > self.k_max() {
            0.0
        } else {
            self.masses[(k - self.k_min) as usize]
        }
    }

    /// `P(||X_t|| < p^{k_min})`, including the null event `X_t = 0`.
    pub fn lower_tail(&self) -> f64 {
        self.lower_tail
    }

    /// `P(||X_t|| > p^{k_max})`.
    pub fn upper_tail(&self) -> f64 {
        self.upper_tail
    }

    pub fn total(&self) -> f64 {
        self.lower_tail + self.masses.iter().sum::<f64>() + self.upper_tail
    }
}

pub fn radial_law(params: &ProcessParams, t: f64, k_min: i32, k_max: i32, tol: &SeriesTolerance) -> Result<RadialLaw> {
    check_time(t)?;
    if k_min > k_max {
        return Err(Error::InvalidParameter(format!("empty level range {k_min}..={k_max}")));
    }
    let masses = (k_min..=k_max)
        .map(|k| radial_mass(params, t, k, tol))
        .collect::<Result<Vec<_>>>()?;
    Ok(RadialLaw {
        params: *params,
        time: t,
        k_min,
        masses,
        lower_tail: ball_probability(params, t, k_min - 1, tol)?,
        upper_tail: upper_tail(params, t, k_max, tol)?,
    })
}
