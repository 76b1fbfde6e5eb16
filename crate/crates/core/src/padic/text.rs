//! Textual forms.
//!
//! The long form `p^v * (d0 d1 d2 ...)` is what `Display` prints and `FromStr`
//! reads; digits are decimal and space separated, trailing zeros are omitted.
//! Zero is written `0` and needs the prime from context, so `FromStr` rejects
//! it; use [`PadicScalar::parse_with`].
//!
//! The compact form `p^v:d0d1d2...` (one base-36 character per digit, so
//! `p <= 36`) is the point syntax of the command line, with coordinates
//! separated by commas.

use std::fmt;
use std::str::FromStr;

use super::{PadicScalar, PadicVector, DEFAULT_WIDTH};
use crate::error::{Error, Result};

impl fmt::Display for PadicScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let Some(v) = self.valuation() else {
            return f.write_str("0");
        };
        let digits = self.digits();
        let last = digits.iter().rposition(|&d| d != 0).unwrap_or(0);
        write!(f, "{}^{} * (", self.prime(), v)?;
        for (i, d) in digits[..=last].iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{d}")?;
        }
        f.write_str(")")
    }
}

impl fmt::Display for PadicVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, c) in self.coords().iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str("]")
    }
}

fn split_power(input: &str, head: &str) -> Result<(u32, i64)> {
    let (p, v) = head
        .trim()
        .split_once('^')
        .ok_or_else(|| Error::parse(input, "expected p^v"))?;
    let p: u32 = p.trim().parse().map_err(|_| Error::parse(input, "bad prime"))?;
    let v: i64 = v.trim().parse().map_err(|_| Error::parse(input, "bad valuation"))?;
    Ok((p, v))
}

impl PadicScalar {
    /// Parses the long form with an explicit prime (needed for `0`) and window.
    pub fn parse_with(input: &str, prime: u32, width: usize) -> Result<Self> {
        let text = input.trim();
        if text == "0" {
            return PadicScalar::zero(prime, width);
        }
        let value: PadicScalar = parse_long(input, width)?;
        if value.prime() != prime {
            return Err(Error::PrimeMismatch(prime, value.prime()));
        }
        Ok(value)
    }

    /// Parses the compact form `p^v:d0d1d2...`, or `0`.
    pub fn parse_compact(input: &str, prime: u32, width: usize) -> Result<Self> {
        let text = input.trim();
        if text == "0" {
            return PadicScalar::zero(prime, width);
        }
        let (head, body) = text
            .split_once(':')
            .ok_or_else(|| Error::parse(input, "expected p^v:digits"))?;
        let (p, v) = split_power(input, head)?;
        if p != prime {
            return Err(Error::PrimeMismatch(prime, p));
        }
        if p > 36 {
            return Err(Error::parse(input, "compact digits support p <= 36 only"));
        }
        let digits = body
            .chars()
            .map(|c| c.to_digit(36).ok_or_else(|| Error::parse(input, format!("bad digit {c:?}"))))
            .collect::<Result<Vec<u32>>>()?;
        if digits.is_empty() {
            return Err(Error::parse(input, "no digits"));
        }
        PadicScalar::from_digits(p, v, &digits, width)
    }
}

fn parse_long(input: &str, width: usize) -> Result<PadicScalar> {
    let (head, body) = input
        .split_once('*')
        .ok_or_else(|| Error::parse(input, "expected p^v * (digits)"))?;
    let (p, v) = split_power(input, head)?;
    let body = body
        .trim()
        .strip_prefix('(')
        .and_then(|b| b.strip_suffix(')'))
        .ok_or_else(|| Error::parse(input, "digits must be parenthesized"))?;
    let digits = body
        .split_whitespace()
        .map(|d| d.parse::<u32>().map_err(|_| Error::parse(input, format!("bad digit {d:?}"))))
        .collect::<Result<Vec<u32>>>()?;
    if digits.is_empty() {
        return Err(Error::parse(input, "no digits"));
    }
    PadicScalar::from_digits(p, v, &digits, width)
}

impl FromStr for PadicScalar {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s.trim() == "0" {
            return Err(Error::parse(s, "zero needs a prime; use PadicScalar::parse_with"));
        }
        parse_long(s, DEFAULT_WIDTH)
    }
}

impl PadicVector {
    /// Parses comma-separated compact coordinates, e.g. `2^-1:1,0,2^3:101`.
    pub fn parse_compact(input: &str, prime: u32, width: usize) -> Result<Self> {
        let coords = input
            .split(',')
            .map(|c| PadicScalar::parse_compact(c, prime, width))
            .collect::<Result<Vec<_>>>()?;
        PadicVector::new(coords)
    }
}
