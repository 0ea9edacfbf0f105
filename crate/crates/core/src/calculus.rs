//! Closed-form exponent arithmetic: harmonic sums, inclusion exponent
//! systems for block sets, anisotropic Hardy–Littlewood exponents and the
//! triviality test for block summing classes.
//!
//! Every formula is affine in reciprocals, so all arithmetic is done on
//! `1/p` and converted back only when building the resulting [`Exponent`].
//! Strict inequalities are checked with a configurable slack (default
//! `1e-12`) because user-entered rationals such as `4/3` are inexact.

use alloc::vec::Vec;

use crate::error::{Error, Result, Violation};
use crate::exponent::{Exponent, ExponentVector};
use crate::numeric::compensated_sum;
use crate::partition::BlockPartition;

pub const DEFAULT_SLACK: f64 = 1e-12;

/// Which side of `|1/p| = 1/2` an isotropic exponent was computed on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IsotropicRegime {
    /// `|1/p| < 1/2`, outside the range where the isotropic exponent is known to be sharp.
    BelowHalf,
    /// `1/2 <= |1/p| < 1`.
    HalfToOne,
}

/// `sum_{j in set} 1/p_j` with `1/inf = 0`. Indices are 0-based.
pub fn harmonic_sum(p: &ExponentVector, set: &[usize]) -> Result<f64> {
    let m = p.len();
    if let Some(&index) = set.iter().find(|&&j| j >= m) {
        return Err(Error::IndexOutOfRange { index, m });
    }
    Ok(compensated_sum(set.iter().map(|&j| p[j].recip())))
}

fn check_len(expected: usize, found: usize) -> Result<()> {
    if expected != found {
        return Err(Error::LengthMismatch { expected, found });
    }
    Ok(())
}

/// Exponent calculus with an explicit slack for strict inequalities.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Calculus {
    pub slack: f64,
}

impl Default for Calculus {
    fn default() -> Self {
        Calculus {
            slack: DEFAULT_SLACK,
        }
    }
}

impl Calculus {
    pub fn with_slack(slack: f64) -> Self {
        Calculus { slack }
    }

    /// Output exponents `s_1 >= ... >= s_d >= r` of the block inclusion
    /// `Π^I_(r;p) ⊂ Π^I_(s;q)`:
    ///
    /// `1/s_k = 1/r - |1/p|_{I_k ∪ ... ∪ I_d} + |1/q|_{I_k ∪ ... ∪ I_d}`.
    ///
    /// Hypothesis A (`q >= p` and a positive balance) yields the exponents.
    /// Hypothesis B (`q_1 > p_1`, zero balance) is recognized but always
    /// ends in [`Error::DegenerateExponent`], since it forces `1/s_1 = 0`.
    pub fn inclusion_exponents(
        &self,
        r: Exponent,
        p: &ExponentVector,
        q: &ExponentVector,
        part: &BlockPartition,
    ) -> Result<ExponentVector> {
        let m = part.m();
        check_len(m, p.len())?;
        check_len(m, q.len())?;

        let mut gaps = Vec::with_capacity(m);
        for j in 0..m {
            let gap = p[j].recip() - q[j].recip();
            if gap < -self.slack {
                return Err(Error::Hypothesis(Violation::OutputBelowInput { index: j }));
            }
            gaps.push(gap.max(0.0));
        }
        let level = |k: usize| r.recip() - compensated_sum(part.tail(k).map(|j| gaps[j]));

        let balance = level(0);
        if balance > self.slack {
            let recips: Vec<f64> = (0..part.len()).map(level).collect();
            return ExponentVector::from_recips(&recips);
        }
        if balance.abs() <= self.slack {
            if gaps[0] <= self.slack {
                return Err(Error::Hypothesis(Violation::FirstNotStrict));
            }
            if let Some(k) = (1..part.len()).find(|&k| level(k) <= self.slack) {
                return Err(Error::DegenerateExponent { level: k + 1 });
            }
            return Err(Error::DegenerateExponent { level: 1 });
        }
        Err(Error::Hypothesis(Violation::InclusionBalance {
            value: balance,
        }))
    }

    /// Anisotropic Hardy–Littlewood exponents for forms on
    /// `ℓ_{p_1} × ... × ℓ_{p_m}` restricted to the block set of `part`:
    ///
    /// `s_k = [1/2 - |1/p|_{I_k ∪ ... ∪ I_d} + (|I_k| + ... + |I_d|)/(2m)]^{-1}`.
    ///
    /// Requires `p in (1, 2m]^m` and `|1/p| < 1`.
    pub fn hl_block_exponents(
        &self,
        p: &ExponentVector,
        part: &BlockPartition,
    ) -> Result<ExponentVector> {
        let m = part.m();
        check_len(m, p.len())?;
        let two_m = 2.0 * m as f64;
        for (j, e) in p.iter().enumerate() {
            if e.recip() >= 1.0 - self.slack || e.recip() < 1.0 / two_m - self.slack {
                return Err(Error::Hypothesis(Violation::OutsideHlRange {
                    index: j,
                    value: e.value(),
                    upper: two_m,
                }));
            }
        }
        let total = p.harmonic_total();
        if total >= 1.0 - self.slack {
            return Err(Error::Hypothesis(Violation::HarmonicSumTooLarge {
                value: total,
            }));
        }
        let recips: Vec<f64> = (0..part.len())
            .map(|k| {
                let mut tail: Vec<usize> = part.tail(k).collect();
                tail.sort_unstable();
                let h = compensated_sum(tail.iter().map(|&j| p[j].recip()));
                // 1/s_k = (1 - h) - (m - count)/(2m); the second term vanishes at k = 1
                (1.0 - h) - (m - tail.len()) as f64 / two_m
            })
            .collect();
        ExponentVector::from_recips(&recips)
    }

    /// `(1 - |1/p|)^{-1}`, the isotropic Hardy–Littlewood exponent.
    pub fn isotropic_hl_exponent(&self, p: &ExponentVector) -> Result<(Exponent, IsotropicRegime)> {
        let total = p.harmonic_total();
        if total >= 1.0 - self.slack {
            return Err(Error::Hypothesis(Violation::HarmonicSumTooLarge {
                value: total,
            }));
        }
        let regime = if total >= 0.5 - self.slack {
            IsotropicRegime::HalfToOne
        } else {
            IsotropicRegime::BelowHalf
        };
        Ok((Exponent::from_fraction(1.0, 1.0 - total)?, regime))
    }

    /// Exponents for `p_1 = ... = p_m = p` and contiguous blocks of the given
    /// sizes: `s_k = [1/2 - (n_k + ... + n_d)(1/p - 1/(2m))]^{-1}`, valid for
    /// `m < p <= 2m`.
    pub fn corollary_exponents(&self, p: Exponent, sizes: &[usize]) -> Result<ExponentVector> {
        let part = BlockPartition::from_sizes(sizes)?;
        let m = part.m();
        let two_m = 2.0 * m as f64;
        if p.recip() >= 1.0 / m as f64 - self.slack || p.recip() < 1.0 / two_m - self.slack {
            return Err(Error::Hypothesis(Violation::OutsideCorollaryRange {
                p: p.value(),
                m,
            }));
        }
        let mut tail = 0usize;
        let mut recips = Vec::with_capacity(sizes.len());
        for &n in sizes.iter().rev() {
            tail += n;
            // 1/s_k = (p - N)/p - (m - N)/(2m) with N = n_k + ... + n_d; p is finite here
            let head = (p.value() - tail as f64) / p.value();
            recips.push(head - (m - tail) as f64 / two_m);
        }
        recips.reverse();
        ExponentVector::from_recips(&recips)
    }

    /// First block `k` (0-based) with `1/q_k > sum_{j in I_k} 1/p_j`, which
    /// makes the class `Π^I_(q;p)` trivial. `None` when no block witnesses it.
    pub fn triviality_check(
        &self,
        p: &ExponentVector,
        q: &ExponentVector,
        part: &BlockPartition,
    ) -> Result<Option<usize>> {
        check_len(part.m(), p.len())?;
        check_len(part.len(), q.len())?;
        for (k, block) in part.blocks().iter().enumerate() {
            let h = harmonic_sum(p, block)?;
            if q[k].recip() > h + self.slack {
                return Ok(Some(k));
            }
        }
        Ok(None)
    }
}

pub fn inclusion_exponents(
    r: Exponent,
    p: &ExponentVector,
    q: &ExponentVector,
    part: &BlockPartition,
) -> Result<ExponentVector> {
    Calculus::default().inclusion_exponents(r, p, q, part)
}

pub fn hl_block_exponents(p: &ExponentVector, part: &BlockPartition) -> Result<ExponentVector> {
    Calculus::default().hl_block_exponents(p, part)
}

pub fn isotropic_hl_exponent(p: &ExponentVector) -> Result<(Exponent, IsotropicRegime)> {
    Calculus::default().isotropic_hl_exponent(p)
}

pub fn corollary_exponents(p: Exponent, sizes: &[usize]) -> Result<ExponentVector> {
    Calculus::default().corollary_exponents(p, sizes)
}

pub fn triviality_check(
    p: &ExponentVector,
    q: &ExponentVector,
    part: &BlockPartition,
) -> Result<Option<usize>> {
    Calculus::default().triviality_check(p, q, part)
}
