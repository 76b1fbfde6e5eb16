use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::path::{PathSimulator, ProcessKind, TimeGrid};
use crate::error::{Error, Result};
use crate::laws::{
    ball_probability, conditional_ball_prob, conditional_small_time_limit, survival_maxnorm, survival_product,
    ProcessParams, SeriesTolerance,
};
use crate::padic::DEFAULT_WIDTH;
use crate::sampling::{IncrementSampler, RngStream};
use crate::stats::{binomial_se, LevelHistogram};

pub const DEFAULT_SEED: u64 = 0x5EED_CAFE;

/// Below this many accepted samples a conditional estimate is flagged.
pub const LOW_STATISTICS: u64 = 100;

/// Seed, worker split and numerical settings shared by all estimators.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct McConfig {
    pub seed: u64,
    pub workers: usize,
    pub width: usize,
    pub tol: SeriesTolerance,
}

impl Default for McConfig {
    fn default() -> Self {
        McConfig {
            seed: DEFAULT_SEED,
            workers: 8,
            width: DEFAULT_WIDTH,
            tol: SeriesTolerance::default(),
        }
    }
}

impl McConfig {
    pub fn new(seed: u64, workers: usize) -> Self {
        McConfig {
            seed,
            workers,
            ..Self::default()
        }
    }
}

/// Runs `job(rng, count)` on each worker's stream; results come back in
/// worker order.
fn run_workers<T, F>(n: u64, config: &McConfig, job: F) -> Result<Vec<T>>
where
    T: Send,
    F: Fn(&mut RngStream, u64) -> Result<T> + Sync,
{
    if config.workers == 0 {
        return Err(Error::InvalidParameter("need at least one worker".into()));
    }
    let w = config.workers as u64;
    (0..w)
        .into_par_iter()
        .map(|i| {
            let mut rng = RngStream::new(config.seed, i);
            job(&mut rng, n / w + u64::from(i < n % w))
        })
        .collect()
}

fn check_samples(n: u64) -> Result<()> {
    if n == 0 {
        return Err(Error::InvalidParameter("need at least one sample".into()));
    }
    Ok(())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ExitMethod {
    /// Read survival off increment norm levels (ultrametric shortcut).
    IncrementMax,
    /// Sum the increments and check the position at every grid time.
    FullPath,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExitEstimate {
    pub kind: ProcessKind,
    pub method: ExitMethod,
    pub horizon: f64,
    pub r_level: i32,
    pub survival_estimate: f64,
    pub standard_error: f64,
    pub n_samples: u64,
    /// Survival of the continuous-time process.
    pub closed_form: f64,
    /// Exact survival on the grid, `P(X_{T/n} in B(R))^n` (per coordinate
    /// for the product process). The estimator is unbiased for this value,
    /// which lies above `closed_form`.
    pub grid_closed_form: f64,
    pub grid_size: usize,
}

/// Estimates `P(max_j ||X_{t_j}|| <= p^R)` on `n_grid` equal steps over `[0, T]`.
#[allow(clippy::too_many_arguments)]
pub fn estimate_exit_survival(
    kind: ProcessKind,
    method: ExitMethod,
    params: &ProcessParams,
    horizon: f64,
    r_level: i32,
    n_grid: usize,
    n_samples: u64,
    config: &McConfig,
) -> Result<ExitEstimate> {
    check_samples(n_samples)?;
    let grid = TimeGrid::uniform(horizon, n_grid)?;
    let dt = grid.steps()[0];
    let sim = PathSimulator::new(kind, params, grid, config.width, &config.tol)?;
    let counts = run_workers(n_samples, config, |rng, n| {
        let mut alive = 0u64;
        for _ in 0..n {
            let survived = match method {
                ExitMethod::IncrementMax => sim.increments_survive(r_level, rng)?,
                ExitMethod::FullPath => sim.path_survives(r_level, rng)?,
            };
            alive += u64::from(survived);
        }
        Ok(alive)
    })?;
    let alive: u64 = counts.iter().sum();
    let (closed_form, grid_closed_form) = match kind {
        ProcessKind::MaxNorm => (
            survival_maxnorm(params, horizon, r_level)?,
            ball_probability(params, dt, r_level, &config.tol)?.powi(n_grid as i32),
        ),
        ProcessKind::Product => {
            let one = params.with_dim(1)?;
            let per_coord = ball_probability(&one, dt, r_level, &config.tol)?.powi(n_grid as i32);
            (
                survival_product(params, horizon, r_level)?,
                per_coord.powi(params.dim() as i32),
            )
        }
    };
    Ok(ExitEstimate {
        kind,
        method,
        horizon,
        r_level,
        survival_estimate: alive as f64 / n_samples as f64,
        standard_error: binomial_se(alive, n_samples),
        n_samples,
        closed_form,
        grid_closed_form,
        grid_size: n_grid,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CondEstimate {
    pub r: i32,
    pub r_level: i32,
    pub time: f64,
    /// `P(|X^(1)_t| <= p^r | ||(X^(2), ..., X^(d))|| = p^R)` among accepted draws.
    pub estimate: f64,
    pub standard_error: f64,
    pub n_conditioned: u64,
    pub n_samples: u64,
    pub closed_form: f64,
    /// `lim_{t -> 0}` of the closed form.
    pub small_time_limit: f64,
    /// `P(|X^(1)_t| <= p^r)` over all draws.
    pub unconditional_estimate: f64,
    pub unconditional_se: f64,
    pub unconditional_closed_form: f64,
    pub low_statistics: bool,
}

/// Draws `n_samples` full vectors `X_t`, keeps those whose last `d - 1`
/// coordinates have max-norm exactly `p^R`, and estimates the probability
/// that the first coordinate lies in `B(r)`.
pub fn estimate_conditional(
    params: &ProcessParams,
    t: f64,
    r: i32,
    r_level: i32,
    n_samples: u64,
    config: &McConfig,
) -> Result<CondEstimate> {
    check_samples(n_samples)?;
    let closed_form = conditional_ball_prob(params, t, r, r_level, &config.tol)?;
    let sampler = IncrementSampler::new(params, t, config.width, &config.tol)?;
    let parts = run_workers(n_samples, config, |rng, n| {
        let (mut hit, mut cond, mut inner) = (0u64, 0u64, 0u64);
        for _ in 0..n {
            let x = sampler.increment(rng)?;
            let first_in = x.coords()[0].norm().within(r);
            inner += u64::from(first_in);
            if x.max_norm_without(0).level() == Some(r_level) {
                cond += 1;
                hit += u64::from(first_in);
            }
        }
        Ok((hit, cond, inner))
    })?;
    let (hit, cond, inner) = parts
        .iter()
        .fold((0, 0, 0), |a, p| (a.0 + p.0, a.1 + p.1, a.2 + p.2));
    let (estimate, standard_error) = if cond == 0 {
        (f64::NAN, f64::NAN)
    } else {
        (hit as f64 / cond as f64, binomial_se(hit, cond))
    };
    Ok(CondEstimate {
        r,
        r_level,
        time: t,
        estimate,
        standard_error,
        n_conditioned: cond,
        n_samples,
        closed_form,
        small_time_limit: conditional_small_time_limit(params, r, r_level)?,
        unconditional_estimate: inner as f64 / n_samples as f64,
        unconditional_se: binomial_se(inner, n_samples),
        unconditional_closed_form: ball_probability(&params.with_dim(1)?, t, r, &config.tol)?,
        low_statistics: cond < LOW_STATISTICS,
    })
}

/// Histogram of `|X^(i)_t|` from full `d`-dimensional draws (`component` is
/// zero-based).
pub fn marginal_radial_histogram(
    params: &ProcessParams,
    t: f64,
    component: usize,
    n_samples: u64,
    config: &McConfig,
) -> Result<LevelHistogram> {
    check_samples(n_samples)?;
    if component >= params.dim() as usize {
        return Err(Error::InvalidParameter(format!(
            "component {component} out of range for d = {}",
            params.dim()
        )));
    }
    let sampler = IncrementSampler::new(params, t, config.width, &config.tol)?;
    let parts = run_workers(n_samples, config, |rng, n| {
        let mut h = LevelHistogram::new();
        for _ in 0..n {
            h.record(sampler.increment(rng)?.coords()[component].norm());
        }
        Ok(h)
    })?;
    let mut total = LevelHistogram::new();
    for h in &parts {
        total.merge(h);
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn work_is_split_exactly() {
        let config = McConfig::new(1, 7);
        let counts = run_workers(100, &config, |_, n| Ok(n)).unwrap();
        assert_eq!(counts.iter().sum::<u64>(), 100);
        assert_eq!(counts, vec![15, 15, 14, 14, 14, 14, 14]);
        assert!(run_workers(1, &McConfig::new(1, 0), |_, n| Ok(n)).is_err());
    }

    #[test]
    fn argument_errors() {
        let params = ProcessParams::new(2, 2, 1.0, 1.0).unwrap();
        let c = McConfig::default();
        assert!(estimate_conditional(&params, 1.0, 1, 0, 10, &c).is_err());
        assert!(estimate_conditional(&params.with_dim(1).unwrap(), 1.0, 0, 0, 10, &c).is_err());
        assert!(marginal_radial_histogram(&params, 1.0, 2, 10, &c).is_err());
        assert!(estimate_exit_survival(ProcessKind::MaxNorm, ExitMethod::IncrementMax, &params, 1.0, 0, 0, 10, &c)
            .is_err());
        assert!(estimate_exit_survival(ProcessKind::MaxNorm, ExitMethod::IncrementMax, &params, 1.0, 0, 4, 0, &c)
            .is_err());
    }

    #[test]
    fn low_statistics_flag() {
        let params = ProcessParams::new(2, 2, 1.0, 1.0).unwrap();
        let est = estimate_conditional(&params, 1.0, 0, 0, 50, &McConfig::default()).unwrap();
        assert!(est.low_statistics);
        assert!(est.n_conditioned <= 50);
    }
}
