use std::cmp::Ordering;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::{check_prime, check_valuation, Norm, MAX_VALUATION};
use crate::error::{Error, Result};

/// How much an arithmetic result can be trusted.
///
/// Ordered from best to worst so that combining outcomes is a `max`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Precision {
    /// The result is the exact sum of the operands.
    #[default]
    Exact,
    /// Nonzero digits fell outside the result window. The error has norm at
    /// most `p^-(v + W)` where `v` is the result valuation.
    Truncated,
    /// Every digit in the window cancelled or the valuation passed
    /// [`MAX_VALUATION`]; the result was flushed to zero.
    Underflow,
}

impl Precision {
    pub fn combine(self, other: Precision) -> Precision {
        self.max(other)
    }
}

/// One element of `Q_p` with a fixed digit window.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PadicScalar {
    prime: u32,
    valuation: i32,
    digits: Box<[u16]>,
    is_zero: bool,
}

/// Result of an addition together with its precision flag.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScalarSum {
    pub value: PadicScalar,
    pub precision: Precision,
}

impl PadicScalar {
    pub fn zero(prime: u32, width: usize) -> Result<Self> {
        check_prime(prime)?;
        check_width(width)?;
        Ok(Self::zero_unchecked(prime, width))
    }

    pub(crate) fn zero_unchecked(prime: u32, width: usize) -> Self {
        PadicScalar {
            prime,
            valuation: 0,
            digits: vec![0; width].into_boxed_slice(),
            is_zero: true,
        }
    }

    /// Builds `sum_i digits[i] * p^(valuation + i)`.
    ///
    /// Leading zero digits are stripped; significant digits that do not fit in
    /// `width` are rejected rather than silently dropped.
    pub fn from_digits(prime: u32, valuation: i64, digits: &[u32], width: usize) -> Result<Self> {
        check_prime(prime)?;
        check_width(width)?;
        if let Some(&digit) = digits.iter().find(|&&d| d >= prime) {
            return Err(Error::DigitOutOfRange { digit, prime });
        }
        let Some(lead) = digits.iter().position(|&d| d != 0) else {
            return Ok(Self::zero_unchecked(prime, width));
        };
        let significant = &digits[lead..];
        let last = significant.iter().rposition(|&d| d != 0).unwrap_or(0);
        if last >= width {
            return Err(Error::InvalidParameter(format!(
                "{} significant digits do not fit in a window of {width}",
                last + 1
            )));
        }
        let v = check_valuation(valuation + lead as i64)?;
        let mut out = vec![0u16; width];
        for (slot, &d) in out.iter_mut().zip(significant) {
            *slot = d as u16;
        }
        Ok(PadicScalar {
            prime,
            valuation: v,
            digits: out.into_boxed_slice(),
            is_zero: false,
        })
    }

    pub fn from_u64(prime: u32, mut n: u64, width: usize) -> Result<Self> {
        check_prime(prime)?;
        let mut digits = Vec::new();
        while n > 0 {
            digits.push((n % prime as u64) as u32);
            n /= prime as u64;
        }
        Self::from_digits(prime, 0, &digits, width)
    }

    /// Caller guarantees a normalized window: `digits[0] != 0`, digits `< p`
    /// and the valuation in range.
    pub(crate) fn from_normalized(prime: u32, valuation: i32, digits: Box<[u16]>) -> Self {
        debug_assert!(digits[0] != 0);
        debug_assert!(digits.iter().all(|&d| (d as u32) < prime));
        PadicScalar {
            prime,
            valuation,
            digits,
            is_zero: false,
        }
    }

    pub fn prime(&self) -> u32 {
        self.prime
    }

    pub fn width(&self) -> usize {
        self.digits.len()
    }

    pub fn is_zero(&self) -> bool {
        self.is_zero
    }

    /// Exponent of the leading digit, `None` for zero.
    pub fn valuation(&self) -> Option<i32> {
        (!self.is_zero).then_some(self.valuation)
    }

    /// The digit window, starting at the leading digit. All zeros for zero.
    pub fn digits(&self) -> &[u16] {
        &self.digits
    }

    pub fn norm(&self) -> Norm {
        if self.is_zero {
            Norm::Zero
        } else {
            Norm::Level(-self.valuation)
        }
    }

    /// The digit `a_x(position)` of the expansion; zero outside the window.
    pub fn digit_at(&self, position: i64) -> u32 {
        if self.is_zero {
            return 0;
        }
        let idx = position - self.valuation as i64;
        if idx < 0 || idx >= self.digits.len() as i64 {
            0
        } else {
            self.digits[idx as usize] as u32
        }
    }

    /// The exact rational value of the digit window.
    pub fn to_rational(&self) -> BigRational {
        if self.is_zero {
            return BigRational::zero();
        }
        let p = BigInt::from(self.prime);
        let mut numer = BigInt::zero();
        for &d in self.digits.iter().rev() {
            numer = numer * &p + BigInt::from(d);
        }
        let scale = num_traits::pow(p, self.valuation.unsigned_abs() as usize);
        match self.valuation.cmp(&0) {
            Ordering::Less => BigRational::new(numer, scale),
            _ => BigRational::from_integer(numer * scale),
        }
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        if self.prime != other.prime {
            return Err(Error::PrimeMismatch(self.prime, other.prime));
        }
        if self.width() != other.width() {
            return Err(Error::WidthMismatch(self.width(), other.width()));
        }
        Ok(())
    }

    /// Digitwise base-`p` addition with carry over the window that starts at
    /// the smaller valuation.
    pub fn add(&self, other: &Self) -> Result<ScalarSum> {
        self.check_compatible(other)?;
        if self.is_zero {
            return Ok(ScalarSum::exact(other.clone()));
        }
        if other.is_zero {
            return Ok(ScalarSum::exact(self.clone()));
        }
        let width = self.width();
        let p = self.prime as u64;
        let lo = self.valuation.min(other.valuation) as i64;
        let mut precision = Precision::Exact;
        for operand in [self, other] {
            let offset = (operand.valuation as i64 - lo) as usize;
            let dropped = operand
                .digits
                .iter()
                .enumerate()
                .any(|(i, &d)| d != 0 && offset + i >= width);
            if dropped {
                precision = Precision::Truncated;
            }
        }
        let mut out = vec![0u16; width];
        let mut carry = 0u64;
        for (i, slot) in out.iter_mut().enumerate() {
            let pos = lo + i as i64;
            let s = self.digit_at(pos) as u64 + other.digit_at(pos) as u64 + carry;
            *slot = (s % p) as u16;
            carry = s / p;
        }
        if carry != 0 {
            precision = Precision::Truncated;
        }
        Ok(normalize(self.prime, lo, out, precision))
    }

    /// Additive inverse. A nonzero finite expansion has an infinite negative,
    /// so the result is always flagged [`Precision::Truncated`].
    pub fn neg(&self) -> ScalarSum {
        if self.is_zero {
            return ScalarSum::exact(self.clone());
        }
        let p = self.prime as u16;
        let digits: Box<[u16]> = self
            .digits
            .iter()
            .enumerate()
            .map(|(i, &d)| if i == 0 { p - d } else { p - 1 - d })
            .collect();
        ScalarSum {
            value: PadicScalar::from_normalized(self.prime, self.valuation, digits),
            precision: Precision::Truncated,
        }
    }

    pub fn sub(&self, other: &Self) -> Result<ScalarSum> {
        self.check_compatible(other)?;
        let negated = other.neg();
        let mut sum = self.add(&negated.value)?;
        if !other.is_zero {
            sum.precision = sum.precision.combine(negated.precision);
        }
        Ok(sum)
    }
}

impl ScalarSum {
    fn exact(value: PadicScalar) -> Self {
        ScalarSum {
            value,
            precision: Precision::Exact,
        }
    }
}

fn check_width(width: usize) -> Result<()> {
    if width == 0 {
        return Err(Error::InvalidParameter("digit window must be nonempty".into()));
    }
    Ok(())
}

/// Strips leading zeros from a window starting at `lo`, shifting in zeros at
/// the deep end.
fn normalize(prime: u32, lo: i64, mut digits: Vec<u16>, precision: Precision) -> ScalarSum {
    let width = digits.len();
    let Some(lead) = digits.iter().position(|&d| d != 0) else {
        return ScalarSum {
            value: PadicScalar::zero_unchecked(prime, width),
            precision: Precision::Underflow,
        };
    };
    let valuation = lo + lead as i64;
    if valuation > MAX_VALUATION as i64 {
        return ScalarSum {
            value: PadicScalar::zero_unchecked(prime, width),
            precision: Precision::Underflow,
        };
    }
    if lead > 0 {
        digits.copy_within(lead.., 0);
        digits[width - lead..].fill(0);
    }
    ScalarSum {
        value: PadicScalar::from_normalized(prime, valuation as i32, digits.into_boxed_slice()),
        precision,
    }
}
