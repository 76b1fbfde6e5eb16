use rand::Rng;

use super::radial::{RadialSampler, RadiusDraw};
use super::uniform::uniform_sphere_vector;
use crate::error::{Error, Result};
use crate::laws::{radial_mass, ProcessParams, SeriesTolerance};
use crate::padic::{Norm, PadicVector, DEFAULT_WIDTH, MIN_VALUATION};

/// Sampler for `X_dt`, the increment of the process over a step of length `dt`.
///
/// A draw below the level window resolves to the zero vector. A draw above it
/// walks the masses beyond the window. Levels past the representable range
/// are still returned by [`level`](Self::level) but make
/// [`increment`](Self::increment) fail.
#[derive(Clone, Debug)]
pub struct IncrementSampler {
    params: ProcessParams,
    dt: f64,
    width: usize,
    tol: SeriesTolerance,
    radial: RadialSampler,
}

impl IncrementSampler {
    pub fn new(params: &ProcessParams, dt: f64, width: usize, tol: &SeriesTolerance) -> Result<Self> {
        Ok(IncrementSampler {
            params: *params,
            dt,
            width,
            tol: *tol,
            radial: RadialSampler::adaptive(params, dt, tol)?,
        })
    }

    pub fn params(&self) -> &ProcessParams {
        &self.params
    }

    pub fn dt(&self) -> f64 {
        self.dt
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn radial(&self) -> &RadialSampler {
        &self.radial
    }

    /// `||X_dt||` alone, without drawing a direction.
    pub fn level<R: Rng + ?Sized>(&self, rng: &mut R) -> Result<Norm> {
        match self.radial.sample(rng) {
            RadiusDraw::Level(k) => Ok(Norm::Level(k)),
            RadiusDraw::TailLow => Ok(Norm::Zero),
            RadiusDraw::TailHigh => self.beyond_window(rng),
        }
    }

    fn beyond_window<R: Rng + ?Sized>(&self, rng: &mut R) -> Result<Norm> {
        let law = self.radial.law();
        let u = rng.random::<f64>() * law.upper_tail();
        let mut acc = 0.0;
        let start = law.k_max() + 1;
        for k in start..start.saturating_add(self.tol.max_terms as i32) {
            acc += radial_mass(&self.params, self.dt, k, &self.tol)?;
            if acc > u {
                return Ok(Norm::Level(k));
            }
        }
        Err(Error::NonConvergence(self.tol.max_terms))
    }

    pub fn increment<R: Rng + ?Sized>(&self, rng: &mut R) -> Result<PadicVector> {
        let dim = self.params.dim() as usize;
        match self.level(rng)? {
            Norm::Zero => PadicVector::zero(self.params.prime(), dim, self.width),
            Norm::Level(k) if k > -MIN_VALUATION => Err(Error::ValuationOutOfRange(-(k as i64))),
            Norm::Level(k) => Ok(uniform_sphere_vector(self.params.prime(), k, dim, self.width, rng)?.vector),
        }
    }
}

/// One draw of `X_dt`. Builds the sampler on every call; reuse an
/// [`IncrementSampler`] for repeated draws.
pub fn sample_increment<R: Rng + ?Sized>(
    params: &ProcessParams,
    dt: f64,
    rng: &mut R,
    tol: &SeriesTolerance,
) -> Result<PadicVector> {
    IncrementSampler::new(params, dt, DEFAULT_WIDTH, tol)?.increment(rng)
}
