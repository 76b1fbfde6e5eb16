use super::{Norm, PadicVector};
use crate::error::{Error, Result};

/// The closed ball `B_d(k, x) = { y : ||y - x|| <= p^k }`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ball {
    pub level: i32,
    pub dim: usize,
    /// `None` means the origin.
    pub center: Option<PadicVector>,
}

/// The sphere `S_d(k, x) = { y : ||y - x|| = p^k }`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Sphere {
    pub level: i32,
    pub dim: usize,
    pub center: Option<PadicVector>,
}

fn distance_norm(y: &PadicVector, dim: usize, center: Option<&PadicVector>) -> Result<Norm> {
    if y.dim() != dim {
        return Err(Error::DimensionMismatch(dim, y.dim()));
    }
    match center {
        None => Ok(y.max_norm()),
        // Negation truncates digits far below the levels compared here.
        Some(c) => Ok(y.sub(c)?.value.max_norm()),
    }
}

impl Ball {
    pub fn origin(level: i32, dim: usize) -> Self {
        Ball { level, dim, center: None }
    }

    pub fn centered(level: i32, center: PadicVector) -> Self {
        Ball {
            level,
            dim: center.dim(),
            center: Some(center),
        }
    }

    pub fn contains(&self, y: &PadicVector) -> Result<bool> {
        Ok(distance_norm(y, self.dim, self.center.as_ref())?.within(self.level))
    }
}

impl Sphere {
    pub fn origin(level: i32, dim: usize) -> Self {
        Sphere { level, dim, center: None }
    }

    pub fn centered(level: i32, center: PadicVector) -> Self {
        Sphere {
            level,
            dim: center.dim(),
            center: Some(center),
        }
    }

    pub fn contains(&self, y: &PadicVector) -> Result<bool> {
        Ok(distance_norm(y, self.dim, self.center.as_ref())? == Norm::Level(self.level))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::padic::PadicScalar;

    fn v(p: u32, coords: &[(i64, &[u32])]) -> PadicVector {
        PadicVector::new(
            coords
                .iter()
                .map(|&(val, d)| PadicScalar::from_digits(p, val, d, 16).unwrap())
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn every_point_of_a_ball_is_a_center() {
        let x = v(3, &[(-1, &[1, 2]), (0, &[2])]);
        let y = v(3, &[(-1, &[2]), (1, &[1])]);
        // ||x|| = ||y|| = 3, so both lie in B(1) and B(1, x) = B(1, y) = B(1).
        let b0 = Ball::origin(1, 2);
        let bx = Ball::centered(1, x.clone());
        for z in [&x, &y] {
            assert_eq!(b0.contains(z).unwrap(), bx.contains(z).unwrap());
        }
        assert!(Ball::centered(1, y.clone()).contains(&x).unwrap());
        // x - y has first coordinate (1 + 2*3 - 2)/3 = 5/3, norm 3; so it is on S(1, y).
        assert!(Sphere::centered(1, y).contains(&x).unwrap());
    }

    #[test]
    fn sphere_about_origin() {
        let x = v(2, &[(-1, &[1]), (0, &[1])]);
        assert!(Sphere::origin(1, 2).contains(&x).unwrap());
        assert!(!Sphere::origin(0, 2).contains(&x).unwrap());
        assert!(Ball::origin(0, 3).contains(&x).is_err());
    }
}
