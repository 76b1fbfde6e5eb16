use super::{check_prime, Norm, PadicScalar, Precision};
use crate::error::{Error, Result};

/// An element of `Q_p^d` whose coordinates share a prime and a digit window.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PadicVector {
    prime: u32,
    width: usize,
    coords: Vec<PadicScalar>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VectorSum {
    pub value: PadicVector,
    pub precision: Precision,
}

impl PadicVector {
    pub fn new(coords: Vec<PadicScalar>) -> Result<Self> {
        let first = coords
            .first()
            .ok_or_else(|| Error::InvalidParameter("a vector needs at least one coordinate".into()))?;
        let (prime, width) = (first.prime(), first.width());
        for c in &coords {
            if c.prime() != prime {
                return Err(Error::PrimeMismatch(prime, c.prime()));
            }
            if c.width() != width {
                return Err(Error::WidthMismatch(width, c.width()));
            }
        }
        Ok(PadicVector { prime, width, coords })
    }

    pub fn zero(prime: u32, dim: usize, width: usize) -> Result<Self> {
        check_prime(prime)?;
        if dim == 0 {
            return Err(Error::InvalidParameter("dimension must be at least 1".into()));
        }
        let zero = PadicScalar::zero(prime, width)?;
        Ok(PadicVector {
            prime,
            width,
            coords: vec![zero; dim],
        })
    }

    pub(crate) fn from_coords_unchecked(prime: u32, width: usize, coords: Vec<PadicScalar>) -> Self {
        debug_assert!(coords.iter().all(|c| c.prime() == prime && c.width() == width));
        PadicVector { prime, width, coords }
    }

    pub fn prime(&self) -> u32 {
        self.prime
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn coords(&self) -> &[PadicScalar] {
        &self.coords
    }

    pub fn coord(&self, i: usize) -> Option<&PadicScalar> {
        self.coords.get(i)
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(PadicScalar::is_zero)
    }

    /// `max_i |x_i|`.
    pub fn max_norm(&self) -> Norm {
        self.coords.iter().map(PadicScalar::norm).max().unwrap_or(Norm::Zero)
    }

    /// Max-norm of the coordinates other than `skip`, i.e. of the `(d-1)`-tuple
    /// obtained by deleting one component.
    pub fn max_norm_without(&self, skip: usize) -> Norm {
        self.coords
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != skip)
            .map(|(_, c)| c.norm())
            .max()
            .unwrap_or(Norm::Zero)
    }

    /// Membership in the ball `B_d(k)` about the origin.
    pub fn in_ball(&self, k: i32) -> bool {
        self.max_norm().within(k)
    }

    /// Membership in the sphere `S_d(k)` about the origin.
    pub fn in_sphere(&self, k: i32) -> bool {
        self.max_norm() == Norm::Level(k)
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        if self.prime != other.prime {
            return Err(Error::PrimeMismatch(self.prime, other.prime));
        }
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch(self.dim(), other.dim()));
        }
        if self.width != other.width {
            return Err(Error::WidthMismatch(self.width, other.width));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<VectorSum> {
        self.check_compatible(other)?;
        let mut precision = Precision::Exact;
        let mut coords = Vec::with_capacity(self.dim());
        for (a, b) in self.coords.iter().zip(&other.coords) {
            let s = a.add(b)?;
            precision = precision.combine(s.precision);
            coords.push(s.value);
        }
        Ok(VectorSum {
            value: PadicVector::from_coords_unchecked(self.prime, self.width, coords),
            precision,
        })
    }

    pub fn sub(&self, other: &Self) -> Result<VectorSum> {
        self.check_compatible(other)?;
        let mut precision = Precision::Exact;
        let mut coords = Vec::with_capacity(self.dim());
        for (a, b) in self.coords.iter().zip(&other.coords) {
            let s = a.sub(b)?;
            precision = precision.combine(s.precision);
            coords.push(s.value);
        }
        Ok(VectorSum {
            value: PadicVector::from_coords_unchecked(self.prime, self.width, coords),
            precision,
        })
    }
}
