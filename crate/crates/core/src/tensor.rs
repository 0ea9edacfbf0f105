//! Dense real tensors in row-major order (last index fastest).

use alloc::format;
use alloc::vec::Vec;

use crate::error::{Error, Result};

/// Coefficients `a_{j_1 ... j_m}` of an `m`-linear form on canonical bases.
#[derive(Debug, Clone, PartialEq)]
pub struct CoefficientTensor {
    dims: Vec<usize>,
    entries: Vec<f64>,
}

impl CoefficientTensor {
    pub fn new(dims: Vec<usize>, entries: Vec<f64>) -> Result<Self> {
        if dims.is_empty() {
            return Err(Error::InvalidTensor("order must be positive".into()));
        }
        if dims.contains(&0) {
            return Err(Error::InvalidTensor(
                "every dimension must be positive".into(),
            ));
        }
        let len = dims
            .iter()
            .try_fold(1usize, |acc, &n| acc.checked_mul(n))
            .ok_or_else(|| Error::InvalidTensor("size overflows usize".into()))?;
        if entries.len() != len {
            return Err(Error::InvalidTensor(format!(
                "expected {len} entries for dims {dims:?}, found {}",
                entries.len()
            )));
        }
        if let Some(i) = entries.iter().position(|x| !x.is_finite()) {
            return Err(Error::InvalidTensor(format!("entry {i} is not finite")));
        }
        Ok(CoefficientTensor { dims, entries })
    }

    pub fn zeros(dims: Vec<usize>) -> Result<Self> {
        let len = dims.iter().product();
        Self::new(dims, alloc::vec![0.0; len])
    }

    /// Fills the tensor from a function of the multi-index.
    pub fn from_fn(dims: Vec<usize>, mut f: impl FnMut(&[usize]) -> f64) -> Result<Self> {
        let mut t = Self::zeros(dims)?;
        let mut idx = alloc::vec![0usize; t.order()];
        for e in t.entries.iter_mut() {
            *e = f(&idx);
            increment(&mut idx, &t.dims);
        }
        if let Some(i) = t.entries.iter().position(|x| !x.is_finite()) {
            return Err(Error::InvalidTensor(format!("entry {i} is not finite")));
        }
        Ok(t)
    }

    /// The `order`-way tensor of size `n` with ones where all indices agree.
    pub fn diagonal(order: usize, n: usize) -> Result<Self> {
        Self::from_fn(alloc::vec![n; order], |idx| {
            if idx.iter().all(|&i| i == idx[0]) {
                1.0
            } else {
                0.0
            }
        })
    }

    pub fn identity(n: usize) -> Result<Self> {
        Self::diagonal(2, n)
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.dims.len()
    }

    #[inline]
    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    #[inline]
    pub fn entries(&self) -> &[f64] {
        &self.entries
    }

    pub fn into_entries(self) -> Vec<f64> {
        self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn strides(&self) -> Vec<usize> {
        strides(&self.dims)
    }

    pub fn get(&self, idx: &[usize]) -> Option<f64> {
        if idx.len() != self.order() || idx.iter().zip(&self.dims).any(|(i, n)| i >= n) {
            return None;
        }
        let off: usize = idx.iter().zip(self.strides()).map(|(i, s)| i * s).sum();
        Some(self.entries[off])
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|&x| x == 0.0)
    }

    pub fn scaled(&self, lambda: f64) -> Self {
        CoefficientTensor {
            dims: self.dims.clone(),
            entries: self.entries.iter().map(|x| lambda * x).collect(),
        }
    }

    /// Tensor with axes reordered: axis `k` of the result is axis `perm[k]` of `self`.
    pub fn permuted(&self, perm: &[usize]) -> Result<Self> {
        let m = self.order();
        let mut seen = alloc::vec![false; m];
        if perm.len() != m
            || perm
                .iter()
                .any(|&a| a >= m || core::mem::replace(&mut seen[a], true))
        {
            return Err(Error::InvalidTensor(format!(
                "{perm:?} is not a permutation of 0..{m}"
            )));
        }
        let src_strides = self.strides();
        let dims: Vec<usize> = perm.iter().map(|&a| self.dims[a]).collect();
        let gather: Vec<usize> = perm.iter().map(|&a| src_strides[a]).collect();
        let mut idx = alloc::vec![0usize; m];
        let mut entries = Vec::with_capacity(self.len());
        for _ in 0..self.len() {
            let off: usize = idx.iter().zip(&gather).map(|(i, s)| i * s).sum();
            entries.push(self.entries[off]);
            increment(&mut idx, &dims);
        }
        Ok(CoefficientTensor { dims, entries })
    }

    pub fn transpose(&self) -> Result<Self> {
        let perm: Vec<usize> = (0..self.order()).rev().collect();
        self.permuted(&perm)
    }
}

pub(crate) fn strides(dims: &[usize]) -> Vec<usize> {
    let mut s = alloc::vec![1usize; dims.len()];
    for k in (0..dims.len().saturating_sub(1)).rev() {
        s[k] = s[k + 1] * dims[k + 1];
    }
    s
}

/// Row-major odometer step; wraps to all zeros after the last index.
pub(crate) fn increment(idx: &mut [usize], dims: &[usize]) {
    for k in (0..idx.len()).rev() {
        idx[k] += 1;
        if idx[k] < dims[k] {
            return;
        }
        idx[k] = 0;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn validation() {
        assert!(CoefficientTensor::new(vec![], vec![]).is_err());
        assert!(CoefficientTensor::new(vec![2, 0], vec![]).is_err());
        assert!(CoefficientTensor::new(vec![2, 2], vec![1.0; 3]).is_err());
        assert!(CoefficientTensor::new(vec![2], vec![1.0, f64::NAN]).is_err());
        assert!(CoefficientTensor::new(vec![2], vec![1.0, f64::INFINITY]).is_err());
    }

    #[test]
    fn row_major_layout() {
        let t = CoefficientTensor::new(vec![2, 3], (0..6).map(f64::from).collect()).unwrap();
        assert_eq!(t.get(&[1, 0]), Some(3.0));
        assert_eq!(t.get(&[0, 2]), Some(2.0));
        assert_eq!(t.get(&[2, 0]), None);
        let tt = t.transpose().unwrap();
        assert_eq!(tt.dims(), &[3, 2]);
        assert_eq!(tt.get(&[2, 1]), Some(5.0));
        assert_eq!(tt.entries(), &[0.0, 3.0, 1.0, 4.0, 2.0, 5.0]);
    }

    #[test]
    fn permutation_checks() {
        let t = CoefficientTensor::diagonal(3, 2).unwrap();
        assert!(t.permuted(&[0, 0, 1]).is_err());
        assert!(t.permuted(&[0, 1]).is_err());
        assert_eq!(t.permuted(&[2, 0, 1]).unwrap(), t);
    }

    #[test]
    fn diagonal_tensor() {
        let d = CoefficientTensor::diagonal(3, 3).unwrap();
        assert_eq!(d.entries().iter().sum::<f64>(), 3.0);
        assert_eq!(d.get(&[1, 1, 1]), Some(1.0));
        assert_eq!(d.get(&[1, 1, 0]), Some(0.0));
    }
}
