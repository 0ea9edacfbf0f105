//! Extended-real exponents in `[1, inf]` and vectors of them.
//!
//! An [`Exponent`] carries both its value and its reciprocal. All affine
//! exponent arithmetic happens on reciprocals, where `inf` is exactly `0`.

use alloc::string::ToString;
use alloc::vec::Vec;
use core::fmt;
use core::ops::Index;
use core::str::FromStr;

use crate::error::{Error, Result};

/// An exponent `p` in `[1, inf]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Exponent {
    value: f64,
    recip: f64,
}

impl Exponent {
    pub const ONE: Exponent = Exponent {
        value: 1.0,
        recip: 1.0,
    };
    pub const TWO: Exponent = Exponent {
        value: 2.0,
        recip: 0.5,
    };
    pub const INFINITY: Exponent = Exponent {
        value: f64::INFINITY,
        recip: 0.0,
    };

    pub fn new(value: f64) -> Result<Self> {
        if value.is_nan() || value < 1.0 {
            return Err(Error::InvalidExponent(value));
        }
        if value == f64::INFINITY {
            return Ok(Self::INFINITY);
        }
        Ok(Exponent {
            value,
            recip: 1.0 / value,
        })
    }

    /// Builds the exponent whose reciprocal is `recip`, which must lie in `[0, 1]`.
    pub fn from_recip(recip: f64) -> Result<Self> {
        if recip.is_nan() || !(0.0..=1.0).contains(&recip) {
            return Err(Error::InvalidExponent(1.0 / recip));
        }
        if recip == 0.0 {
            return Ok(Self::INFINITY);
        }
        Ok(Exponent {
            value: 1.0 / recip,
            recip,
        })
    }

    /// The exponent `numer / denom` for positive `numer` and `denom`. Both
    /// the value and its reciprocal are rounded once from the same operands.
    pub fn from_fraction(numer: f64, denom: f64) -> Result<Self> {
        if !(numer > 0.0 && denom >= 0.0) {
            return Err(Error::InvalidExponent(numer / denom));
        }
        if denom == 0.0 {
            return Ok(Self::INFINITY);
        }
        let value = numer / denom;
        if value.is_nan() || value < 1.0 {
            return Err(Error::InvalidExponent(value));
        }
        if value == f64::INFINITY {
            return Ok(Self::INFINITY);
        }
        Ok(Exponent {
            value,
            recip: denom / numer,
        })
    }

    #[inline]
    pub fn value(self) -> f64 {
        self.value
    }

    /// `1/p`, exactly `0` for `inf`.
    #[inline]
    pub fn recip(self) -> f64 {
        self.recip
    }

    #[inline]
    pub fn is_infinite(self) -> bool {
        self.recip == 0.0
    }

    #[inline]
    pub fn is_one(self) -> bool {
        self.recip == 1.0
    }

    /// The Hölder conjugate `p*` with `1/p + 1/p* = 1`.
    pub fn conjugate(self) -> Exponent {
        match self.recip {
            0.0 => Exponent::ONE,
            1.0 => Exponent::INFINITY,
            r => {
                let recip = 1.0 - r;
                Exponent {
                    value: 1.0 / recip,
                    recip,
                }
            }
        }
    }
}

impl fmt::Display for Exponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_infinite() {
            f.write_str("inf")
        } else {
            fmt::Display::fmt(&self.value, f)
        }
    }
}

impl FromStr for Exponent {
    type Err = Error;

    /// Accepts decimals, `a/b` fractions and `inf` (also `infinity`, `∞`).
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        let bad = || Error::ParseExponent(t.to_string());
        match t.to_ascii_lowercase().as_str() {
            "inf" | "infinity" | "+inf" | "∞" => return Ok(Exponent::INFINITY),
            _ => {}
        }
        match t.split_once('/') {
            Some((num, den)) => {
                let num: f64 = num.trim().parse().map_err(|_| bad())?;
                let den: f64 = den.trim().parse().map_err(|_| bad())?;
                Exponent::from_fraction(num, den)
            }
            None => Exponent::new(t.parse().map_err(|_| bad())?),
        }
    }
}

/// A nonempty list of exponents `(p_1, ..., p_m)`.
#[derive(Debug, Clone, PartialEq)]
pub struct ExponentVector(Vec<Exponent>);

impl ExponentVector {
    pub fn new(entries: Vec<Exponent>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::EmptyExponents);
        }
        Ok(ExponentVector(entries))
    }

    pub fn from_values(values: &[f64]) -> Result<Self> {
        let entries = values
            .iter()
            .map(|&v| Exponent::new(v))
            .collect::<Result<Vec<_>>>()?;
        Self::new(entries)
    }

    pub fn from_recips(recips: &[f64]) -> Result<Self> {
        let entries = recips
            .iter()
            .map(|&r| Exponent::from_recip(r))
            .collect::<Result<Vec<_>>>()?;
        Self::new(entries)
    }

    /// `(p, ..., p)` of length `len`.
    pub fn constant(p: Exponent, len: usize) -> Result<Self> {
        Self::new(alloc::vec![p; len])
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.0.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> core::slice::Iter<'_, Exponent> {
        self.0.iter()
    }

    pub fn as_slice(&self) -> &[Exponent] {
        &self.0
    }

    pub fn values(&self) -> Vec<f64> {
        self.0.iter().map(|e| e.value()).collect()
    }

    pub fn recips(&self) -> Vec<f64> {
        self.0.iter().map(|e| e.recip()).collect()
    }

    pub fn conjugate(&self) -> ExponentVector {
        ExponentVector(self.0.iter().map(|e| e.conjugate()).collect())
    }

    /// `|1/p|`, the harmonic sum over every index.
    pub fn harmonic_total(&self) -> f64 {
        crate::numeric::compensated_sum(self.0.iter().map(|e| e.recip()))
    }
}

impl Index<usize> for ExponentVector {
    type Output = Exponent;

    fn index(&self, i: usize) -> &Exponent {
        &self.0[i]
    }
}

impl<'a> IntoIterator for &'a ExponentVector {
    type Item = &'a Exponent;
    type IntoIter = core::slice::Iter<'a, Exponent>;

    fn into_iter(self) -> Self::IntoIter {
        self.0.iter()
    }
}

impl fmt::Display for ExponentVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, e) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{e}")?;
        }
        Ok(())
    }
}

impl FromStr for ExponentVector {
    type Err = Error;

    /// Comma-separated list, e.g. `4,4,inf` or `4/3,2`.
    fn from_str(s: &str) -> Result<Self> {
        let entries = s
            .split(',')
            .map(str::parse)
            .collect::<Result<Vec<Exponent>>>()?;
        ExponentVector::new(entries)
    }
}
