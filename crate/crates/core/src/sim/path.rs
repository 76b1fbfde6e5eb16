use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::laws::{ProcessParams, SeriesTolerance};
use crate::padic::{Norm, PadicVector};
use crate::sampling::IncrementSampler;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ProcessKind {
    #[serde(rename = "maxnorm")]
    MaxNorm,
    Product,
}

/// Observation times `0 = t_0 < t_1 < ... < t_N`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TimeGrid {
    times: Vec<f64>,
    steps: Vec<f64>,
}

impl TimeGrid {
    pub fn new(times: Vec<f64>) -> Result<Self> {
        if times.first() != Some(&0.0) {
            return Err(Error::InvalidParameter("a time grid starts at 0".into()));
        }
        if times.windows(2).any(|w| !(w[1] > w[0]) || !w[1].is_finite()) {
            return Err(Error::InvalidParameter("grid times must increase strictly".into()));
        }
        let steps = times.windows(2).map(|w| w[1] - w[0]).collect();
        Ok(TimeGrid { times, steps })
    }

    /// `n` equal steps of exactly `horizon / n`.
    pub fn uniform(horizon: f64, n: usize) -> Result<Self> {
        if !(horizon.is_finite() && horizon > 0.0) {
            return Err(Error::InvalidParameter(format!("horizon must be positive, got {horizon}")));
        }
        if n == 0 {
            return Err(Error::InvalidParameter("a grid needs at least one step".into()));
        }
        let dt = horizon / n as f64;
        Ok(TimeGrid {
            times: (0..=n).map(|i| if i == n { horizon } else { i as f64 * dt }).collect(),
            steps: vec![dt; n],
        })
    }

    pub fn times(&self) -> &[f64] {
        &self.times
    }

    pub fn steps(&self) -> &[f64] {
        &self.steps
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }
}

/// Positions of one path at the grid times; `positions[0]` is zero.
#[derive(Clone, Debug, PartialEq)]
pub struct PathSample {
    pub params: ProcessParams,
    pub times: Vec<f64>,
    pub positions: Vec<PadicVector>,
}

impl PathSample {
    /// `max_j ||X_{t_j}||`.
    pub fn running_max(&self) -> Norm {
        self.positions.iter().map(PadicVector::max_norm).max().unwrap_or(Norm::Zero)
    }
}

/// Simulates paths of one process on one grid, with the increment samplers
/// built once.
#[derive(Clone, Debug)]
pub struct PathSimulator {
    kind: ProcessKind,
    params: ProcessParams,
    grid: TimeGrid,
    width: usize,
    // one sampler per distinct step length; step j uses samplers[which[j]]
    samplers: Vec<IncrementSampler>,
    which: Vec<usize>,
}

impl PathSimulator {
    pub fn new(
        kind: ProcessKind,
        params: &ProcessParams,
        grid: TimeGrid,
        width: usize,
        tol: &SeriesTolerance,
    ) -> Result<Self> {
        let law = match kind {
            ProcessKind::MaxNorm => *params,
            ProcessKind::Product => params.with_dim(1)?,
        };
        let mut samplers: Vec<IncrementSampler> = Vec::new();
        let mut which = Vec::with_capacity(grid.len());
        for &dt in grid.steps() {
            let idx = match samplers.iter().position(|s| s.dt() == dt) {
                Some(i) => i,
                None => {
                    samplers.push(IncrementSampler::new(&law, dt, width, tol)?);
                    samplers.len() - 1
                }
            };
            which.push(idx);
        }
        Ok(PathSimulator {
            kind,
            params: *params,
            grid,
            width,
            samplers,
            which,
        })
    }

    pub fn kind(&self) -> ProcessKind {
        self.kind
    }

    pub fn grid(&self) -> &TimeGrid {
        &self.grid
    }

    fn increment<R: Rng + ?Sized>(&self, step: usize, rng: &mut R) -> Result<PadicVector> {
        let sampler = &self.samplers[self.which[step]];
        match self.kind {
            ProcessKind::MaxNorm => sampler.increment(rng),
            ProcessKind::Product => {
                let coords = (0..self.params.dim())
                    .map(|_| Ok(sampler.increment(rng)?.coords()[0].clone()))
                    .collect::<Result<Vec<_>>>()?;
                PadicVector::new(coords)
            }
        }
    }

    fn origin(&self) -> Result<PadicVector> {
        PadicVector::zero(self.params.prime(), self.params.dim() as usize, self.width)
    }

    pub fn simulate<R: Rng + ?Sized>(&self, rng: &mut R) -> Result<PathSample> {
        let mut positions = vec![self.origin()?];
        for step in 0..self.grid.len() {
            let next = positions[step].add(&self.increment(step, rng)?)?.value;
            positions.push(next);
        }
        Ok(PathSample {
            params: self.params,
            times: self.grid.times().to_vec(),
            positions,
        })
    }

    /// Whether the summed path stays in `B_d(R)` at every grid time. Stops at
    /// the first exit.
    pub fn path_survives<R: Rng + ?Sized>(&self, r_level: i32, rng: &mut R) -> Result<bool> {
        let mut pos = self.origin()?;
        for step in 0..self.grid.len() {
            pos = pos.add(&self.increment(step, rng)?)?.value;
            if !pos.in_ball(r_level) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// The same event read off increment levels only: by the ultrametric
    /// inequality the path stays in `B_d(R)` iff every increment does.
    /// For the product process each coordinate increment is checked.
    pub fn increments_survive<R: Rng + ?Sized>(&self, r_level: i32, rng: &mut R) -> Result<bool> {
        let draws = match self.kind {
            ProcessKind::MaxNorm => 1,
            ProcessKind::Product => self.params.dim(),
        };
        for step in 0..self.grid.len() {
            let sampler = &self.samplers[self.which[step]];
            for _ in 0..draws {
                if !sampler.level(rng)?.within(r_level) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}

pub fn simulate_maxnorm_path<R: Rng + ?Sized>(
    params: &ProcessParams,
    grid: &TimeGrid,
    width: usize,
    rng: &mut R,
    tol: &SeriesTolerance,
) -> Result<PathSample> {
    PathSimulator::new(ProcessKind::MaxNorm, params, grid.clone(), width, tol)?.simulate(rng)
}

pub fn simulate_product_path<R: Rng + ?Sized>(
    params: &ProcessParams,
    grid: &TimeGrid,
    width: usize,
    rng: &mut R,
    tol: &SeriesTolerance,
) -> Result<PathSample> {
    PathSimulator::new(ProcessKind::Product, params, grid.clone(), width, tol)?.simulate(rng)
}
