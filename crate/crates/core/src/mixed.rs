//! Block restriction, anisotropic mixed `ℓ_(s_1, ..., s_d)` norms and weak
//! `ℓ_w` norms of finite vector sequences.

use alloc::format;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::exponent::{Exponent, ExponentVector};
use crate::form::{self, AscentConfig, FormInstance};
use crate::numeric::lp_norm;
use crate::partition::BlockPartition;
use crate::tensor::{increment, CoefficientTensor};

/// A `d`-way tensor pulled back from an `m`-way tensor along a block partition.
#[derive(Debug, Clone, PartialEq)]
pub struct BlockTensor {
    pub tensor: CoefficientTensor,
    pub partition: BlockPartition,
}

/// `b(i_1, ..., i_d) = a(j)` where `j` carries `i_n` on every axis of `I_n`.
///
/// `lengths[k]` may not exceed the dimension of any axis in block `k`.
pub fn block_restrict(
    a: &CoefficientTensor,
    part: &BlockPartition,
    lengths: &[usize],
) -> Result<BlockTensor> {
    if part.m() != a.order() {
        return Err(Error::LengthMismatch {
            expected: a.order(),
            found: part.m(),
        });
    }
    if lengths.len() != part.len() {
        return Err(Error::LengthMismatch {
            expected: part.len(),
            found: lengths.len(),
        });
    }
    for (k, block) in part.blocks().iter().enumerate() {
        for &j in block {
            if lengths[k] > a.dims()[j] {
                return Err(Error::DimensionMismatch {
                    axis: j,
                    expected: a.dims()[j],
                    found: lengths[k],
                });
            }
        }
    }
    let src = a.strides();
    // moving i_k by one moves every axis of I_k by one
    let block_strides: Vec<usize> = part
        .blocks()
        .iter()
        .map(|b| b.iter().map(|&j| src[j]).sum())
        .collect();
    let total: usize = lengths.iter().product();
    let mut idx = alloc::vec![0usize; part.len()];
    let mut entries = Vec::with_capacity(total);
    for _ in 0..total {
        let off: usize = idx.iter().zip(&block_strides).map(|(i, s)| i * s).sum();
        entries.push(a.entries()[off]);
        increment(&mut idx, lengths);
    }
    Ok(BlockTensor {
        tensor: CoefficientTensor::new(lengths.to_vec(), entries)?,
        partition: part.clone(),
    })
}

/// Largest common length per block: the minimum dimension over its axes.
pub fn full_lengths(a: &CoefficientTensor, part: &BlockPartition) -> Vec<usize> {
    part.blocks()
        .iter()
        .map(|b| b.iter().map(|&j| a.dims()[j]).min().unwrap_or(0))
        .collect()
}

/// Nested norm: the innermost (last) index at `s_d`, the outermost at `s_1`.
/// An infinite exponent is a supremum of absolute values at that level.
pub fn mixed_norm(t: &CoefficientTensor, s: &ExponentVector) -> Result<f64> {
    if s.len() != t.order() {
        return Err(Error::LengthMismatch {
            expected: t.order(),
            found: s.len(),
        });
    }
    let dims = t.dims();
    let mut level: Vec<f64> = t.entries().to_vec();
    for axis in (0..t.order()).rev() {
        let n = dims[axis];
        level = level
            .chunks_exact(n)
            .map(|chunk| lp_norm(chunk, s[axis]))
            .collect();
    }
    Ok(level[0])
}

/// `L` vectors of `ℓ_p^n`, stored row by row.
#[derive(Debug, Clone, PartialEq)]
pub struct VectorSequence {
    len: usize,
    dim: usize,
    ambient: Exponent,
    vectors: Vec<f64>,
}

impl VectorSequence {
    pub fn new(len: usize, dim: usize, ambient: Exponent, vectors: Vec<f64>) -> Result<Self> {
        if len == 0 || dim == 0 {
            return Err(Error::InvalidTensor("empty vector sequence".into()));
        }
        if vectors.len() != len * dim {
            return Err(Error::InvalidTensor(format!(
                "expected {} coordinates, found {}",
                len * dim,
                vectors.len()
            )));
        }
        if vectors.iter().any(|x| !x.is_finite()) {
            return Err(Error::InvalidTensor("non-finite coordinate".into()));
        }
        Ok(VectorSequence {
            len,
            dim,
            ambient,
            vectors,
        })
    }

    /// `(e_1, ..., e_n)` in `ℓ_p^n`.
    pub fn canonical_basis(n: usize, ambient: Exponent) -> Result<Self> {
        let mut v = alloc::vec![0.0; n * n];
        for i in 0..n {
            v[i * n + i] = 1.0;
        }
        Self::new(n, n, ambient, v)
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn ambient(&self) -> Exponent {
        self.ambient
    }

    pub fn vector(&self, i: usize) -> &[f64] {
        &self.vectors[i * self.dim..(i + 1) * self.dim]
    }
}

/// Weak-norm estimation settings.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WeakNormConfig {
    /// Total restarts: one deterministic, the rest seeded random.
    pub restarts: usize,
    pub tol: f64,
    pub max_iter: usize,
    pub seed: u64,
}

impl Default for WeakNormConfig {
    fn default() -> Self {
        WeakNormConfig {
            restarts: 8,
            tol: 1e-12,
            max_iter: 500,
            seed: 0,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct WeakNorm {
    /// Certified lower bound attained at `functional`.
    pub value: f64,
    /// Unit vector of the dual `ℓ_{p*}^n`.
    pub functional: Vec<f64>,
    pub converged: bool,
}

/// Leading right singular direction of the `rows × cols` matrix `x` by
/// power iteration on `x^T x`, started at the all-ones vector.
fn leading_direction(x: &[f64], rows: usize, cols: usize) -> Vec<f64> {
    let mut v = alloc::vec![1.0; cols];
    for _ in 0..64 {
        let xv: Vec<f64> = (0..rows)
            .map(|r| {
                x[r * cols..(r + 1) * cols]
                    .iter()
                    .zip(&v)
                    .map(|(a, b)| a * b)
                    .sum()
            })
            .collect();
        let mut next = alloc::vec![0.0; cols];
        for r in 0..rows {
            for (n, a) in next.iter_mut().zip(&x[r * cols..(r + 1) * cols]) {
                *n += xv[r] * a;
            }
        }
        let norm = lp_norm(&next, Exponent::TWO);
        if norm == 0.0 {
            break;
        }
        next.iter_mut().for_each(|a| *a /= norm);
        v = next;
    }
    v
}

/// `sup_{‖φ‖_{p*} <= 1} ‖(φ(x_i))_i‖_w`, the `(p* → w)` operator norm of the
/// `L × n` matrix of the sequence.
///
/// Computed as the norm of the bilinear form `z^T X φ` on
/// `ℓ_{w*}^L × ℓ_{p*}^n` with alternating ascent. The value is always a
/// lower bound; `converged` reports whether every restart met `tol`.
pub fn weak_norm(x: &VectorSequence, w: Exponent, cfg: &WeakNormConfig) -> Result<WeakNorm> {
    let matrix = CoefficientTensor::new(alloc::vec![x.len, x.dim], x.vectors.clone())?;
    let exps = ExponentVector::new(alloc::vec![w.conjugate(), x.ambient.conjugate()])?;
    let inst = FormInstance::new(matrix, exps)?;
    let first = alloc::vec![
        alloc::vec![1.0; x.len],
        leading_direction(&x.vectors, x.len, x.dim),
    ];
    let ascent = AscentConfig {
        restarts: cfg.restarts,
        tol: cfg.tol,
        max_iter: cfg.max_iter,
        seed: cfg.seed,
    };
    let est = form::norm_ascent_from(&inst, &ascent, Some(first))?;
    let functional = est.maximizer[1].clone();
    // report ‖Xφ‖_w at the returned φ
    let pairings: Vec<f64> = (0..x.len)
        .map(|i| {
            x.vector(i)
                .iter()
                .zip(&functional)
                .map(|(a, b)| a * b)
                .sum()
        })
        .collect();
    Ok(WeakNorm {
        value: lp_norm(&pairings, w),
        functional,
        converged: est.converged,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn ev(v: &[f64]) -> ExponentVector {
        ExponentVector::from_values(v).unwrap()
    }

    #[test]
    fn restrict_diagonal_to_identity() {
        let n = 4;
        let d = CoefficientTensor::diagonal(3, n).unwrap();
        let part: BlockPartition = "1,2|3".parse().unwrap();
        let b = block_restrict(&d, &part, &[n, n]).unwrap();
        assert_eq!(b.tensor, CoefficientTensor::identity(n).unwrap());
    }

    #[test]
    fn restrict_multiple_summing_is_identity() {
        let t = CoefficientTensor::from_fn(vec![2, 3, 2], |i| (i[0] * 6 + i[1] * 2 + i[2]) as f64)
            .unwrap();
        let part = BlockPartition::multiple_summing(3).unwrap();
        let b = block_restrict(&t, &part, &[2, 3, 2]).unwrap();
        assert_eq!(b.tensor, t);
    }

    #[test]
    fn restrict_absolutely_summing_extracts_diagonal() {
        let t = CoefficientTensor::from_fn(vec![3, 3, 3], |i| (i[0] * 9 + i[1] * 3 + i[2]) as f64)
            .unwrap();
        let part = BlockPartition::absolutely_summing(3).unwrap();
        let b = block_restrict(&t, &part, &[3]).unwrap();
        assert_eq!(b.tensor.entries(), &[0.0, 13.0, 26.0]);
    }

    #[test]
    fn restrict_five_way_worked_example() {
        // b(i1, i2, i3) = a(i1, i2, i1, i2, i3)
        let dims = vec![3, 2, 3, 2, 2];
        let code =
            |i: &[usize]| (i[0] * 10000 + i[1] * 1000 + i[2] * 100 + i[3] * 10 + i[4]) as f64;
        let a = CoefficientTensor::from_fn(dims, code).unwrap();
        let part: BlockPartition = "1,3|2,4|5".parse().unwrap();
        let b = block_restrict(&a, &part, &[3, 2, 2]).unwrap();
        for i1 in 0..3 {
            for i2 in 0..2 {
                for i3 in 0..2 {
                    assert_eq!(
                        b.tensor.get(&[i1, i2, i3]).unwrap(),
                        code(&[i1, i2, i1, i2, i3])
                    );
                }
            }
        }
    }

    #[test]
    fn restrict_errors() {
        let a = CoefficientTensor::zeros(vec![2, 3]).unwrap();
        let part: BlockPartition = "1,2".parse().unwrap();
        assert!(block_restrict(&a, &part, &[3]).is_err());
        assert!(block_restrict(&a, &part, &[2]).is_ok());
        assert_eq!(full_lengths(&a, &part), vec![2]);
        let part3 = BlockPartition::multiple_summing(3).unwrap();
        assert!(block_restrict(&a, &part3, &[1, 1, 1]).is_err());
    }

    #[test]
    fn mixed_norm_examples() {
        let id = CoefficientTensor::identity(2).unwrap();
        assert_eq!(mixed_norm(&id, &ev(&[1.0, 2.0])).unwrap(), 2.0);
        let v = mixed_norm(&id, &ev(&[2.0, 1.0])).unwrap();
        assert!((v - core::f64::consts::SQRT_2).abs() < 1e-15);
        let ones = CoefficientTensor::new(vec![2, 2], vec![1.0; 4]).unwrap();
        for r in [1.0, 2.0, 4.0] {
            let v = mixed_norm(&ones, &ev(&[r, r])).unwrap();
            assert!((v - libm::pow(4.0, 1.0 / r)).abs() < 1e-15);
        }
        let v = mixed_norm(&ones, &ev(&[f64::INFINITY, 1.0])).unwrap();
        assert_eq!(v, 2.0);
        assert!(mixed_norm(&ones, &ev(&[1.0])).is_err());
    }

    #[test]
    fn weak_norm_examples() {
        let cfg = WeakNormConfig::default();
        for p in [1.5, 2.0, 3.0, f64::INFINITY] {
            let p = Exponent::new(p).unwrap();
            let basis = VectorSequence::canonical_basis(4, p).unwrap();
            let w = weak_norm(&basis, p.conjugate(), &cfg).unwrap();
            assert!((w.value - 1.0).abs() < 1e-9, "p={p}: {}", w.value);
        }
        let v =
            VectorSequence::new(1, 3, Exponent::new(3.0).unwrap(), vec![1.0, -2.0, 0.5]).unwrap();
        for w in [1.0, 2.0, 7.0] {
            let est = weak_norm(&v, Exponent::new(w).unwrap(), &cfg).unwrap();
            let expected = lp_norm(&[1.0, -2.0, 0.5], Exponent::new(3.0).unwrap());
            assert!((est.value - expected).abs() < 1e-9);
        }
        let e11 = VectorSequence::new(2, 2, Exponent::TWO, vec![1.0, 0.0, 1.0, 0.0]).unwrap();
        let est = weak_norm(&e11, Exponent::TWO, &cfg).unwrap();
        // oracle: dense grid over the unit circle
        let mut best: f64 = 0.0;
        for i in 0..100_000 {
            let t = core::f64::consts::TAU * i as f64 / 100_000.0;
            let phi = [libm::cos(t), libm::sin(t)];
            let pair = phi[0];
            best = best.max(libm::sqrt(2.0 * pair * pair));
        }
        assert!((best - core::f64::consts::SQRT_2).abs() < 1e-8);
        assert!((est.value - best).abs() < 1e-8);
        assert!(est.converged);
    }

    #[test]
    fn weak_norm_of_basis_in_l1() {
        // ℓ_1^L: dual ball is the ℓ_∞ cube, so the weak ℓ_w norm is L^{1/w}
        let basis = VectorSequence::canonical_basis(16, Exponent::ONE).unwrap();
        let w = weak_norm(
            &basis,
            Exponent::new(4.0).unwrap(),
            &WeakNormConfig::default(),
        )
        .unwrap();
        assert!((w.value - 2.0).abs() < 1e-12);
    }
}
