use rand::Rng;

use crate::error::{Error, Result};
use crate::padic::{check_prime, PadicScalar, PadicVector, MAX_VALUATION, MIN_VALUATION};

fn check_level(k: i32) -> Result<()> {
    if -k < MIN_VALUATION || -k > MAX_VALUATION {
        return Err(Error::ValuationOutOfRange(-(k as i64)));
    }
    Ok(())
}

/// Digits `lead, d1, ..., d_{W-1}` with `lead` given and the rest uniform.
fn complete<R: Rng + ?Sized>(prime: u32, valuation: i32, lead: u16, width: usize, rng: &mut R) -> PadicScalar {
    let mut digits = vec![0u16; width];
    digits[0] = lead;
    for d in &mut digits[1..] {
        *d = rng.random_range(0..prime) as u16;
    }
    PadicScalar::from_normalized(prime, valuation, digits.into_boxed_slice())
}

/// Haar-uniform element of `B(k) = {|x| <= p^k}`.
///
/// Digits from position `-k` down are i.i.d. uniform; zeros are skipped until
/// the first nonzero digit, after which `width - 1` further digits are drawn,
/// so the result always carries a full window below its leading digit. If no
/// nonzero digit appears before the valuation limit the result is zero.
pub fn uniform_ball_scalar<R: Rng + ?Sized>(prime: u32, k: i32, width: usize, rng: &mut R) -> Result<PadicScalar> {
    check_prime(prime)?;
    check_level(k)?;
    let zero = PadicScalar::zero(prime, width)?;
    for v in -k..=MAX_VALUATION {
        let lead = rng.random_range(0..prime) as u16;
        if lead != 0 {
            return Ok(complete(prime, v, lead, width, rng));
        }
    }
    Ok(zero)
}

/// A uniform point of a sphere and the number of rejected leading-digit draws.
#[derive(Clone, Debug, PartialEq)]
pub struct SphereDraw {
    pub vector: PadicVector,
    pub rejections: u32,
}

/// Haar-uniform element of `S_d(k) = {||x|| = p^k}`.
///
/// Rejection on the ball: a uniform point of `B_d(k)` is redrawn while all of
/// its coordinates lie in `B(k-1)`. Only the leading digits decide
/// acceptance, so those are drawn first and the rest of each coordinate is
/// filled in after.
pub fn uniform_sphere_vector<R: Rng + ?Sized>(
    prime: u32,
    k: i32,
    dim: usize,
    width: usize,
    rng: &mut R,
) -> Result<SphereDraw> {
    check_prime(prime)?;
    check_level(k)?;
    if dim == 0 {
        return Err(Error::InvalidParameter("dimension must be at least 1".into()));
    }
    PadicScalar::zero(prime, width)?;
    let mut leads = vec![0u16; dim];
    let mut rejections = 0;
    loop {
        for l in leads.iter_mut() {
            *l = rng.random_range(0..prime) as u16;
        }
        if leads.iter().any(|&l| l != 0) {
            break;
        }
        rejections += 1;
    }
    let coords = leads
        .iter()
        .map(|&lead| {
            if lead != 0 {
                Ok(complete(prime, -k, lead, width, rng))
            } else if -k == MAX_VALUATION {
                PadicScalar::zero(prime, width)
            } else {
                uniform_ball_scalar(prime, k - 1, width, rng)
            }
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(SphereDraw {
        vector: PadicVector::from_coords_unchecked(prime, width, coords),
        rejections,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::padic::{Norm, DEFAULT_WIDTH};
    use crate::sampling::RngStream;

    #[test]
    fn ball_draws_stay_in_the_ball() {
        let mut rng = RngStream::new(1, 0);
        for k in [-3, 0, 5] {
            for _ in 0..1000 {
                let x = uniform_ball_scalar(3, k, DEFAULT_WIDTH, &mut rng).unwrap();
                assert!(x.norm().within(k));
                if !x.is_zero() {
                    assert_ne!(x.digits()[0], 0);
                }
            }
        }
    }

    #[test]
    fn sphere_draws_have_the_right_norm() {
        let mut rng = RngStream::new(2, 0);
        for (p, d) in [(2, 1), (2, 3), (5, 2)] {
            for _ in 0..1000 {
                let s = uniform_sphere_vector(p, -2, d, 16, &mut rng).unwrap();
                assert_eq!(s.vector.max_norm(), Norm::Level(-2));
            }
        }
    }

    #[test]
    fn out_of_range_levels() {
        let mut rng = RngStream::new(3, 0);
        assert!(uniform_ball_scalar(2, 65, 8, &mut rng).is_err());
        assert!(uniform_sphere_vector(2, -65, 1, 8, &mut rng).is_err());
        assert!(uniform_sphere_vector(2, 0, 0, 8, &mut rng).is_err());
        assert!(uniform_ball_scalar(4, 0, 8, &mut rng).is_err());
    }
}
