//! Ordered block partitions `I_1, ..., I_d` of `{1, ..., m}`.
//!
//! Indices are stored 0-based. The text form is 1-based: blocks separated
//! by `|`, indices by `,`, e.g. `1,2|3`. Block order is significant and is
//! never normalized; it fixes the nesting order of mixed sums.

use alloc::format;
use alloc::string::ToString;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockPartition {
    m: usize,
    blocks: Vec<Vec<usize>>,
}

impl BlockPartition {
    /// Validates that `blocks` are nonempty, disjoint and cover `0..m`.
    pub fn new(m: usize, blocks: Vec<Vec<usize>>) -> Result<Self> {
        if m == 0 {
            return Err(Error::InvalidPartition("m must be positive".into()));
        }
        if blocks.is_empty() {
            return Err(Error::InvalidPartition("no blocks".into()));
        }
        let mut seen = alloc::vec![false; m];
        for (k, block) in blocks.iter().enumerate() {
            if block.is_empty() {
                return Err(Error::InvalidPartition(format!("block {} is empty", k + 1)));
            }
            for &j in block {
                if j >= m {
                    return Err(Error::IndexOutOfRange { index: j, m });
                }
                if seen[j] {
                    return Err(Error::InvalidPartition(format!(
                        "index {} appears twice",
                        j + 1
                    )));
                }
                seen[j] = true;
            }
        }
        if let Some(j) = seen.iter().position(|s| !s) {
            return Err(Error::InvalidPartition(format!(
                "index {} is not covered",
                j + 1
            )));
        }
        Ok(BlockPartition { m, blocks })
    }

    /// `{{1, ..., m}}`: the diagonal (absolutely summing) block set.
    pub fn absolutely_summing(m: usize) -> Result<Self> {
        Self::new(m, alloc::vec![(0..m).collect()])
    }

    /// `{{1}, ..., {m}}`: the full grid (multiple summing) block set.
    pub fn multiple_summing(m: usize) -> Result<Self> {
        Self::new(m, (0..m).map(|j| alloc::vec![j]).collect())
    }

    /// Contiguous blocks of the given sizes.
    pub fn from_sizes(sizes: &[usize]) -> Result<Self> {
        let mut blocks = Vec::with_capacity(sizes.len());
        let mut next = 0;
        for &n in sizes {
            blocks.push((next..next + n).collect());
            next += n;
        }
        Self::new(next, blocks)
    }

    #[inline]
    pub fn m(&self) -> usize {
        self.m
    }

    /// Number of blocks `d`.
    #[inline]
    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn block(&self, k: usize) -> &[usize] {
        &self.blocks[k]
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.blocks.iter().map(Vec::len).collect()
    }

    /// Indices in `I_k ∪ ... ∪ I_d` (0-based `k`).
    pub fn tail(&self, k: usize) -> impl Iterator<Item = usize> + '_ {
        self.blocks[k..].iter().flatten().copied()
    }

    /// Block index owning each axis.
    pub fn owner(&self) -> Vec<usize> {
        let mut owner = alloc::vec![0; self.m];
        for (k, block) in self.blocks.iter().enumerate() {
            for &j in block {
                owner[j] = k;
            }
        }
        owner
    }
}

impl fmt::Display for BlockPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, block) in self.blocks.iter().enumerate() {
            if k > 0 {
                f.write_str("|")?;
            }
            for (i, j) in block.iter().enumerate() {
                if i > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{}", j + 1)?;
            }
        }
        Ok(())
    }
}

impl FromStr for BlockPartition {
    type Err = Error;

    /// Parses `1,2|3`. `m` is the largest index mentioned.
    fn from_str(s: &str) -> Result<Self> {
        let mut blocks = Vec::new();
        for part in s.split('|') {
            let mut block = Vec::new();
            for tok in part.split(',') {
                let tok = tok.trim();
                let j: usize = tok
                    .parse()
                    .map_err(|_| Error::InvalidPartition(format!("bad index {tok:?}")))?;
                if j == 0 {
                    return Err(Error::InvalidPartition("indices are 1-based".to_string()));
                }
                block.push(j - 1);
            }
            blocks.push(block);
        }
        let m = blocks.iter().flatten().max().map_or(0, |j| j + 1);
        BlockPartition::new(m, blocks)
    }
}
