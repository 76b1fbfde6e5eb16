use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::laws::{ball_probability, radial_law, upper_tail, ProcessParams, RadialLaw, SeriesTolerance};
use crate::padic::{MAX_VALUATION, MIN_VALUATION};

/// Tail mass left outside an adaptively chosen level window.
pub const TAIL_TARGET: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum RadiusDraw {
    /// Below the window, i.e. `||X_t|| < p^{k_min}` (possibly zero).
    TailLow,
    Level(i32),
    /// Above the window.
    TailHigh,
}

/// Inverse-CDF sampler over a [`RadialLaw`].
#[derive(Clone, Debug)]
pub struct RadialSampler {
    law: RadialLaw,
    cdf: Vec<f64>,
}

impl RadialSampler {
    pub fn new(law: RadialLaw) -> Self {
        let mut acc = law.lower_tail();
        let cdf = law
            .masses()
            .iter()
            .map(|m| {
                acc += m;
                acc
            })
            .collect();
        RadialSampler { law, cdf }
    }

    /// The law of `||X_t||` on a window whose tails are both below
    /// [`TAIL_TARGET`], clamped to the representable levels `-64..=64`.
    ///
    /// The upper tail only decays like `s t p^{-kb}`, so for small `b` or
    /// large `t` the clamp can leave more than the target above the window.
    pub fn adaptive(params: &ProcessParams, t: f64, tol: &SeriesTolerance) -> Result<Self> {
        let (lo, hi) = (-MAX_VALUATION, -MIN_VALUATION);
        let centre = ((params.sigma() * t).ln() / (params.exponent() * (params.prime() as f64).ln())).floor();
        let centre = centre.clamp(lo as f64, hi as f64) as i32;
        let mut k_min = centre;
        while k_min > lo && ball_probability(params, t, k_min - 1, tol)? >= TAIL_TARGET {
            k_min -= 1;
        }
        let mut k_max = centre;
        while k_max < hi && upper_tail(params, t, k_max, tol)? >= TAIL_TARGET {
            k_max += 1;
        }
        Ok(RadialSampler::new(radial_law(params, t, k_min, k_max, tol)?))
    }

    pub fn law(&self) -> &RadialLaw {
        &self.law
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> RadiusDraw {
        let u: f64 = rng.random();
        if u < self.law.lower_tail() {
            return RadiusDraw::TailLow;
        }
        match self.cdf.partition_point(|&c| c <= u) {
            i if i == self.cdf.len() => RadiusDraw::TailHigh,
            i => RadiusDraw::Level(self.law.k_min() + i as i32),
        }
    }
}

pub fn sample_radius<R: Rng + ?Sized>(sampler: &RadialSampler, rng: &mut R) -> RadiusDraw {
    sampler.sample(rng)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sampling::RngStream;

    #[test]
    fn degenerate_law() {
        let params = ProcessParams::new(2, 1, 1.0, 1.0).unwrap();
        let law = RadialLaw::from_masses(params, 1.0, 0, vec![1.0], 0.0, 0.0).unwrap();
        let sampler = RadialSampler::new(law);
        let mut rng = RngStream::new(0, 0);
        for _ in 0..1000 {
            assert_eq!(sampler.sample(&mut rng), RadiusDraw::Level(0));
        }
    }

    #[test]
    fn zero_mass_levels_are_never_drawn() {
        let params = ProcessParams::new(2, 1, 1.0, 1.0).unwrap();
        let law = RadialLaw::from_masses(params, 1.0, -1, vec![0.5, 0.0, 0.5], 0.0, 0.0).unwrap();
        let sampler = RadialSampler::new(law);
        let mut rng = RngStream::new(0, 0);
        for _ in 0..10_000 {
            assert_ne!(sampler.sample(&mut rng), RadiusDraw::Level(0));
        }
    }

    #[test]
    fn adaptive_window_has_small_tails() {
        let tol = SeriesTolerance::default();
        for (p, d, b, t) in [(2, 1, 1.0, 1.0), (3, 3, 2.0, 1e-4), (2, 2, 0.5, 50.0), (5, 1, 1.0, 1.0 / 64.0)] {
            let params = ProcessParams::new(p, d, b, 1.0).unwrap();
            let sampler = RadialSampler::adaptive(&params, t, &tol).unwrap();
            let law = sampler.law();
            assert!(law.lower_tail() < TAIL_TARGET);
            assert!(law.upper_tail() < TAIL_TARGET || law.k_max() == 64);
            assert!(law.k_min() >= -64);
            assert!((law.total() - 1.0).abs() < 1e-12);
        }
    }
}
