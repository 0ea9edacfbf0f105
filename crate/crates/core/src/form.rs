//! Norm of an `m`-linear form on `ℓ_{p_1}^{n_1} × ... × ℓ_{p_m}^{n_m}`.
//!
//! Two estimators are provided. [`norm_ascent`] runs alternating Hölder-dual
//! ascent: every slot update replaces one argument by the exact maximizer
//! of the linear functional obtained by fixing all other arguments, so the
//! objective never decreases and the result is always a lower bound.
//! [`exact_norm_signs`] computes the exact norm when every domain is an
//! `ℓ_∞` ball, where the maximum is attained at sign vectors.

use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::exponent::{Exponent, ExponentVector};
use crate::numeric::{lp_norm, max_abs, sign};
use crate::tensor::CoefficientTensor;

/// Default sign-enumeration budget in bits.
pub const DEFAULT_SIGN_BUDGET: usize = 24;

/// A coefficient tensor together with the domain exponents of its slots.
#[derive(Debug, Clone, PartialEq)]
pub struct FormInstance {
    tensor: CoefficientTensor,
    exponents: ExponentVector,
}

impl FormInstance {
    pub fn new(tensor: CoefficientTensor, exponents: ExponentVector) -> Result<Self> {
        if tensor.order() != exponents.len() {
            return Err(Error::LengthMismatch {
                expected: tensor.order(),
                found: exponents.len(),
            });
        }
        Ok(FormInstance { tensor, exponents })
    }

    pub fn tensor(&self) -> &CoefficientTensor {
        &self.tensor
    }

    pub fn exponents(&self) -> &ExponentVector {
        &self.exponents
    }

    pub fn order(&self) -> usize {
        self.tensor.order()
    }

    pub fn evaluate(&self, xs: &[&[f64]]) -> Result<f64> {
        evaluate(&self.tensor, xs)
    }

    pub fn scaled(&self, lambda: f64) -> Self {
        FormInstance {
            tensor: self.tensor.scaled(lambda),
            exponents: self.exponents.clone(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    Ascent,
    ExactSign,
    ExactClosed,
}

impl Method {
    pub fn as_str(self) -> &'static str {
        match self {
            Method::Ascent => "ascent",
            Method::ExactSign => "exact-sign",
            Method::ExactClosed => "exact-closed",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct NormEstimate {
    /// Form evaluated at `maximizer`; a lower bound of the norm.
    pub value: f64,
    /// One unit vector per slot.
    pub maximizer: Vec<Vec<f64>>,
    pub method: Method,
    pub converged: bool,
    pub restarts_used: usize,
    /// Some slot update hit a zero coefficient vector and was skipped.
    pub stagnated: bool,
}

fn check_args(a: &CoefficientTensor, xs: &[&[f64]]) -> Result<()> {
    if xs.len() != a.order() {
        return Err(Error::LengthMismatch {
            expected: a.order(),
            found: xs.len(),
        });
    }
    for (axis, (x, &n)) in xs.iter().zip(a.dims()).enumerate() {
        if x.len() != n {
            return Err(Error::DimensionMismatch {
                axis,
                expected: n,
                found: x.len(),
            });
        }
    }
    Ok(())
}

/// Contracts `axis` of a row-major array with `v`.
fn contract_axis(data: &[f64], dims: &[usize], axis: usize, v: &[f64]) -> Vec<f64> {
    let n = dims[axis];
    let inner: usize = dims[axis + 1..].iter().product();
    let outer: usize = dims[..axis].iter().product();
    let mut out = alloc::vec![0.0; outer * inner];
    for o in 0..outer {
        let dst = &mut out[o * inner..(o + 1) * inner];
        for (j, &vj) in v.iter().enumerate() {
            if vj == 0.0 {
                continue;
            }
            let src = &data[(o * n + j) * inner..(o * n + j + 1) * inner];
            for (d, s) in dst.iter_mut().zip(src) {
                *d += vj * s;
            }
        }
    }
    out
}

fn contract_all_but(a: &CoefficientTensor, xs: &[&[f64]], keep: Option<usize>) -> Vec<f64> {
    let mut dims = a.dims().to_vec();
    let mut data: Option<Vec<f64>> = None;
    for axis in (0..a.order()).rev() {
        if Some(axis) == keep {
            continue;
        }
        let next = contract_axis(
            data.as_deref().unwrap_or(a.entries()),
            &dims,
            axis,
            xs[axis],
        );
        dims.remove(axis);
        data = Some(next);
    }
    data.unwrap_or_else(|| a.entries().to_vec())
}

/// `sum a_{j_1...j_m} x_1(j_1) ... x_m(j_m)`.
pub fn evaluate(a: &CoefficientTensor, xs: &[&[f64]]) -> Result<f64> {
    check_args(a, xs)?;
    Ok(contract_all_but(a, xs, None)[0])
}

/// Coefficients of the linear functional in slot `k` obtained by fixing every
/// other argument. The entry for slot `k` of `xs` is ignored.
pub fn contract_except(a: &CoefficientTensor, xs: &[&[f64]], k: usize) -> Result<Vec<f64>> {
    check_args(a, xs)?;
    if k >= a.order() {
        return Err(Error::IndexOutOfRange {
            index: k,
            m: a.order(),
        });
    }
    Ok(contract_all_but(a, xs, Some(k)))
}

#[derive(Debug, Clone, PartialEq)]
pub struct HolderMax {
    pub point: Vec<f64>,
    pub value: f64,
    /// `c = 0`: `point` is `e_1` by convention.
    pub degenerate: bool,
}

/// Maximizer of `<c, x>` over the unit sphere of `ℓ_p`; the maximum is `‖c‖_{p*}`.
///
/// Ties at `p = 1` go to the smallest index and `sign(0) = +1` at `p = inf`.
pub fn holder_argmax(c: &[f64], p: Exponent) -> HolderMax {
    let n = c.len();
    let scale = max_abs(c);
    if scale == 0.0 {
        let mut point = alloc::vec![0.0; n];
        if n > 0 {
            point[0] = 1.0;
        }
        return HolderMax {
            point,
            value: 0.0,
            degenerate: true,
        };
    }
    let dual = p.conjugate();
    if p.is_infinite() {
        let point = c.iter().map(|&x| sign(x)).collect();
        return HolderMax {
            point,
            value: lp_norm(c, dual),
            degenerate: false,
        };
    }
    if p.is_one() {
        let i = c.iter().position(|x| libm::fabs(*x) == scale).unwrap_or(0);
        let mut point = alloc::vec![0.0; n];
        point[i] = sign(c[i]);
        return HolderMax {
            point,
            value: scale,
            degenerate: false,
        };
    }
    // x_i ∝ sign(c_i) |c_i|^{p*-1}; scale first so the powers stay in range
    let power = dual.value() - 1.0;
    let mut point: Vec<f64> = c
        .iter()
        .map(|&x| {
            let u = libm::fabs(x) / scale;
            if u == 0.0 {
                0.0
            } else {
                sign(x) * libm::pow(u, power)
            }
        })
        .collect();
    let norm = lp_norm(&point, p);
    for x in point.iter_mut() {
        *x /= norm;
    }
    HolderMax {
        point,
        value: lp_norm(c, dual),
        degenerate: false,
    }
}

/// Configuration of [`norm_ascent`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AscentConfig {
    pub restarts: usize,
    /// Stop a restart once the relative gain of one sweep drops below `tol`.
    pub tol: f64,
    pub max_iter: usize,
    pub seed: u64,
}

impl Default for AscentConfig {
    fn default() -> Self {
        AscentConfig {
            restarts: 20,
            tol: 1e-12,
            max_iter: 500,
            seed: 0,
        }
    }
}

/// One restart of alternating ascent.
#[derive(Debug, Clone, PartialEq)]
pub struct AscentRun {
    pub value: f64,
    pub point: Vec<Vec<f64>>,
    pub sweeps: usize,
    pub converged: bool,
    pub stagnated: bool,
    /// Objective before the first sweep and after each sweep.
    pub trace: Vec<f64>,
}

fn refs(xs: &[Vec<f64>]) -> Vec<&[f64]> {
    xs.iter().map(Vec::as_slice).collect()
}

fn normalize(mut x: Vec<f64>, p: Exponent) -> Vec<f64> {
    let norm = lp_norm(&x, p);
    if norm == 0.0 {
        x.iter_mut().for_each(|v| *v = 1.0);
        return normalize(x, p);
    }
    x.iter_mut().for_each(|v| *v /= norm);
    x
}

/// Normalized all-ones start in every slot.
pub fn uniform_start(inst: &FormInstance) -> Vec<Vec<f64>> {
    inst.tensor
        .dims()
        .iter()
        .zip(inst.exponents.iter())
        .map(|(&n, &p)| normalize(alloc::vec![1.0; n], p))
        .collect()
}

/// Random start for `restart`, drawn from the `(seed, restart)` stream.
pub fn random_start(inst: &FormInstance, seed: u64, restart: usize) -> Vec<Vec<f64>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(restart as u64);
    inst.tensor
        .dims()
        .iter()
        .zip(inst.exponents.iter())
        .map(|(&n, &p)| {
            let x = (0..n).map(|_| rng.random_range(-1.0..=1.0)).collect();
            normalize(x, p)
        })
        .collect()
}

/// Alternating ascent from `start`; each vector is normalized first.
pub fn ascend_from(
    inst: &FormInstance,
    start: Vec<Vec<f64>>,
    tol: f64,
    max_iter: usize,
) -> Result<AscentRun> {
    let m = inst.order();
    let mut x: Vec<Vec<f64>> = start
        .into_iter()
        .zip(inst.exponents.iter())
        .map(|(v, &p)| normalize(v, p))
        .collect();
    let mut value = evaluate(&inst.tensor, &refs(&x))?;
    let mut trace = alloc::vec![value];
    let mut stagnated = false;
    let mut converged = false;
    let mut sweeps = 0;
    while sweeps < max_iter {
        sweeps += 1;
        let before = value;
        for k in 0..m {
            let c = contract_all_but(&inst.tensor, &refs(&x), Some(k));
            let best = holder_argmax(&c, inst.exponents[k]);
            if best.degenerate {
                stagnated = true;
                continue;
            }
            x[k] = best.point;
            value = best.value;
        }
        debug_assert!(value >= before - 1e-12 * libm::fabs(before).max(1.0));
        trace.push(value);
        if value - before <= tol * libm::fabs(value) {
            converged = true;
            break;
        }
    }
    Ok(AscentRun {
        value: evaluate(&inst.tensor, &refs(&x))?,
        point: x,
        sweeps,
        converged,
        stagnated,
        trace,
    })
}

/// Best of `cfg.restarts` ascent runs. Restart 0 starts from `first`, or
/// from [`uniform_start`] when `first` is `None`; restart `i > 0` from
/// [`random_start`]`(seed, i)`. Ties keep the earliest restart.
pub fn norm_ascent_from(
    inst: &FormInstance,
    cfg: &AscentConfig,
    first: Option<Vec<Vec<f64>>>,
) -> Result<NormEstimate> {
    if inst.tensor.is_zero() {
        return Ok(NormEstimate {
            value: 0.0,
            maximizer: uniform_start(inst),
            method: Method::Ascent,
            converged: true,
            restarts_used: 0,
            stagnated: false,
        });
    }
    if inst.order() == 1 {
        let best = holder_argmax(inst.tensor.entries(), inst.exponents[0]);
        let value = evaluate(&inst.tensor, &[&best.point])?;
        return Ok(NormEstimate {
            value,
            maximizer: alloc::vec![best.point],
            method: Method::ExactClosed,
            converged: true,
            restarts_used: 0,
            stagnated: false,
        });
    }
    let restarts = cfg.restarts.max(1);
    let mut first = first;
    let mut best: Option<AscentRun> = None;
    let mut all_converged = true;
    let mut stagnated = false;
    for i in 0..restarts {
        let start = if i == 0 {
            first.take().unwrap_or_else(|| uniform_start(inst))
        } else {
            random_start(inst, cfg.seed, i)
        };
        let run = ascend_from(inst, start, cfg.tol, cfg.max_iter)?;
        all_converged &= run.converged;
        stagnated |= run.stagnated;
        if best.as_ref().is_none_or(|b| run.value > b.value) {
            best = Some(run);
        }
    }
    let best = best.expect("at least one restart");
    Ok(NormEstimate {
        value: best.value,
        maximizer: best.point,
        method: Method::Ascent,
        converged: all_converged,
        restarts_used: restarts,
        stagnated,
    })
}

/// Lower bound of `‖A‖` by alternating Hölder-dual ascent.
pub fn norm_ascent(inst: &FormInstance, cfg: &AscentConfig) -> Result<NormEstimate> {
    norm_ascent_from(inst, cfg, None)
}

/// Maximizes `‖x^T B‖_1` over sign vectors `x` by Gray-code enumeration.
/// When `fix_first` is set, `x_0 = +1`.
fn best_signs_bilinear(b: &[f64], rows: usize, cols: usize, fix_first: bool) -> (f64, Vec<f64>) {
    let mut x = alloc::vec![1.0; rows];
    let mut c = alloc::vec![0.0; cols];
    for r in 0..rows {
        for (cj, bj) in c.iter_mut().zip(&b[r * cols..(r + 1) * cols]) {
            *cj += bj;
        }
    }
    let l1 = |c: &[f64]| c.iter().map(|v| libm::fabs(*v)).sum::<f64>();
    let mut best = l1(&c);
    let mut best_x = x.clone();
    let offset = usize::from(fix_first);
    let free = rows - offset;
    for step in 1u64..(1u64 << free) {
        let r = step.trailing_zeros() as usize + offset;
        let f = -2.0 * x[r];
        for (cj, bj) in c.iter_mut().zip(&b[r * cols..(r + 1) * cols]) {
            *cj += f * bj;
        }
        x[r] = -x[r];
        let v = l1(&c);
        if v > best {
            best = v;
            best_x.copy_from_slice(&x);
        }
    }
    (best, best_x)
}

/// Exhaustive search over slots `0..` of `data`; returns the best value and
/// sign vectors for every remaining slot.
fn best_signs(data: &[f64], dims: &[usize], fix_first: bool) -> (f64, Vec<Vec<f64>>) {
    if dims.len() == 2 {
        let (v, x) = best_signs_bilinear(data, dims[0], dims[1], fix_first);
        let c = contract_axis(data, dims, 0, &x);
        return (v, alloc::vec![x, c.iter().map(|&v| sign(v)).collect()]);
    }
    let n = dims[0];
    let offset = usize::from(fix_first);
    let mut x = alloc::vec![1.0; n];
    let mut best: Option<(f64, Vec<Vec<f64>>)> = None;
    for mask in 0u64..(1u64 << (n - offset)) {
        for (i, xi) in x.iter_mut().enumerate().skip(offset) {
            *xi = if mask >> (i - offset) & 1 == 1 {
                -1.0
            } else {
                1.0
            };
        }
        let sub = contract_axis(data, dims, 0, &x);
        let (v, mut rest) = best_signs(&sub, &dims[1..], false);
        if best.as_ref().is_none_or(|b| v > b.0) {
            rest.insert(0, x.clone());
            best = Some((v, rest));
        }
    }
    best.expect("nonempty enumeration")
}

/// Exact norm of a form on a product of `ℓ_∞` balls by sign enumeration of
/// slots `1..m-1`; the last slot is solved in closed form. Fails when
/// `n_1 + ... + n_{m-1}` exceeds `budget` bits.
pub fn exact_norm_signs(inst: &FormInstance, budget: usize) -> Result<NormEstimate> {
    if !inst.exponents.iter().all(|e| e.is_infinite()) {
        return Err(Error::NotSupNorm);
    }
    let m = inst.order();
    if m == 1 {
        return norm_ascent(inst, &AscentConfig::default());
    }
    let dims = inst.tensor.dims();
    let bits: usize = dims[..m - 1].iter().sum();
    if bits > budget || bits >= 64 {
        return Err(Error::BudgetExceeded { bits, budget });
    }
    let (_, maximizer) = best_signs(inst.tensor.entries(), dims, true);
    let value = evaluate(&inst.tensor, &refs(&maximizer))?;
    Ok(NormEstimate {
        value,
        maximizer,
        method: Method::ExactSign,
        converged: true,
        restarts_used: 0,
        stagnated: false,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn inst(t: CoefficientTensor, p: &[f64]) -> FormInstance {
        FormInstance::new(t, ExponentVector::from_values(p).unwrap()).unwrap()
    }

    fn mat(rows: usize, cols: usize, e: &[f64]) -> CoefficientTensor {
        CoefficientTensor::new(vec![rows, cols], e.to_vec()).unwrap()
    }

    #[test]
    fn evaluate_examples() {
        let d = CoefficientTensor::diagonal(3, 2).unwrap();
        let e1 = [1.0, 0.0];
        assert_eq!(evaluate(&d, &[&e1, &e1, &e1]).unwrap(), 1.0);
        let z = [0.0, 0.0];
        let y = [0.3, -2.0];
        assert_eq!(evaluate(&d, &[&y, &z, &y]).unwrap(), 0.0);
        let ones = mat(2, 2, &[1.0; 4]);
        assert_eq!(evaluate(&ones, &[&[1.0, 1.0], &[1.0, -1.0]]).unwrap(), 0.0);
        assert!(matches!(
            evaluate(&ones, &[&[1.0, 1.0], &[1.0]]),
            Err(Error::DimensionMismatch { axis: 1, .. })
        ));
        assert!(evaluate(&ones, &[&[1.0, 1.0]]).is_err());
    }

    #[test]
    fn evaluate_matches_brute_force() {
        let t = CoefficientTensor::from_fn(vec![2, 3, 2], |i| {
            (i[0] * 7 + i[1] * 3 + i[2]) as f64 - 4.5
        })
        .unwrap();
        let xs = [vec![0.5, -1.0], vec![2.0, 0.25, -0.75], vec![1.5, 3.0]];
        let mut direct = 0.0;
        for a in 0..2 {
            for b in 0..3 {
                for c in 0..2 {
                    direct += t.get(&[a, b, c]).unwrap() * xs[0][a] * xs[1][b] * xs[2][c];
                }
            }
        }
        let v = evaluate(&t, &refs(&xs)).unwrap();
        assert!((v - direct).abs() < 1e-12);
        for k in 0..3 {
            let c = contract_except(&t, &refs(&xs), k).unwrap();
            let dot: f64 = c.iter().zip(&xs[k]).map(|(a, b)| a * b).sum();
            assert!((dot - direct).abs() < 1e-12);
        }
    }

    #[test]
    fn holder_examples() {
        let c = [3.0, 4.0];
        let h = holder_argmax(&c, Exponent::TWO);
        assert!((h.point[0] - 0.6).abs() < 1e-15 && (h.point[1] - 0.8).abs() < 1e-15);
        assert!((h.value - 5.0).abs() < 1e-15);
        let h = holder_argmax(&c, Exponent::INFINITY);
        assert_eq!(h.point, vec![1.0, 1.0]);
        assert_eq!(h.value, 7.0);
        let h = holder_argmax(&[-3.0, 4.0, -4.0], Exponent::ONE);
        assert_eq!(h.point, vec![0.0, 1.0, 0.0]);
        assert_eq!(h.value, 4.0);
        let h = holder_argmax(&[0.0, -1.0], Exponent::INFINITY);
        assert_eq!(h.point, vec![1.0, -1.0]);
        let h = holder_argmax(&[0.0, 0.0], Exponent::TWO);
        assert!(h.degenerate);
        assert_eq!(h.point, vec![1.0, 0.0]);
        assert_eq!(h.value, 0.0);
    }

    #[test]
    fn holder_l4_matches_grid_search() {
        // brute force over the ℓ_4 sphere parameterized by angle
        let c = [3.0, 4.0];
        let p = Exponent::new(4.0).unwrap();
        let mut best: f64 = 0.0;
        let steps = 200_000;
        for i in 0..steps {
            let t = core::f64::consts::TAU * i as f64 / steps as f64;
            let (s, co) = (libm::sin(t), libm::cos(t));
            let norm = libm::pow(libm::pow(s.abs(), 4.0) + libm::pow(co.abs(), 4.0), 0.25);
            best = best.max((c[0] * co + c[1] * s) / norm);
        }
        let expected = libm::pow(libm::pow(3.0, 4.0 / 3.0) + libm::pow(4.0, 4.0 / 3.0), 0.75);
        assert!((best - expected).abs() < 1e-6);
        let h = holder_argmax(&c, p);
        assert!((h.value - expected).abs() < 1e-12);
        assert!((lp_norm(&h.point, p) - 1.0).abs() < 1e-14);
        let dot = c[0] * h.point[0] + c[1] * h.point[1];
        assert!((dot - h.value).abs() < 1e-12);
    }

    #[test]
    fn ascent_on_diagonal_l4() {
        for n in [1usize, 2, 5, 9] {
            let a = inst(CoefficientTensor::diagonal(3, n).unwrap(), &[4.0, 4.0, 4.0]);
            let est = norm_ascent(&a, &AscentConfig::default()).unwrap();
            let expected = libm::pow(n as f64, 0.25);
            assert!((est.value - expected).abs() < 1e-8, "n={n}: {}", est.value);
            assert_eq!(est.method, Method::Ascent);
        }
    }

    #[test]
    fn ascent_identity_examples() {
        let a = inst(CoefficientTensor::identity(5).unwrap(), &[2.0, 2.0]);
        let est = norm_ascent(&a, &AscentConfig::default()).unwrap();
        assert!((est.value - 1.0).abs() < 1e-10);
        let a = inst(CoefficientTensor::identity(5).unwrap(), &[f64::INFINITY; 2]);
        let est = norm_ascent(&a, &AscentConfig::default()).unwrap();
        assert!((est.value - 5.0).abs() < 1e-12);
        let exact = exact_norm_signs(&a, DEFAULT_SIGN_BUDGET).unwrap();
        assert_eq!(exact.value, 5.0);
    }

    #[test]
    fn exact_examples() {
        let inf = [f64::INFINITY; 2];
        let id = inst(CoefficientTensor::identity(2).unwrap(), &inf);
        assert_eq!(exact_norm_signs(&id, 24).unwrap().value, 2.0);
        let ones = inst(mat(2, 2, &[1.0; 4]), &inf);
        assert_eq!(exact_norm_signs(&ones, 24).unwrap().value, 4.0);
        let h = inst(mat(2, 2, &[1.0, 1.0, 1.0, -1.0]), &inf);
        let e = exact_norm_signs(&h, 24).unwrap();
        assert_eq!(e.value, 2.0);
        assert_eq!(e.method, Method::ExactSign);
    }

    #[test]
    fn exact_errors() {
        let a = inst(
            CoefficientTensor::identity(30).unwrap(),
            &[f64::INFINITY; 2],
        );
        assert_eq!(
            exact_norm_signs(&a, 24),
            Err(Error::BudgetExceeded {
                bits: 30,
                budget: 24
            })
        );
        let a = inst(
            CoefficientTensor::identity(2).unwrap(),
            &[2.0, f64::INFINITY],
        );
        assert_eq!(exact_norm_signs(&a, 24), Err(Error::NotSupNorm));
    }

    #[test]
    fn exact_matches_naive_enumeration() {
        // naive oracle: all sign vectors in every slot
        let t = CoefficientTensor::from_fn(vec![3, 2, 3], |i| {
            let h = (i[0] * 31 + i[1] * 17 + i[2] * 7 + 3) % 11;
            h as f64 - 5.0
        })
        .unwrap();
        let a = inst(t.clone(), &[f64::INFINITY; 3]);
        let mut best = f64::MIN;
        for mask in 0u32..(1 << 8) {
            let bit = |k: u32| if mask >> k & 1 == 1 { -1.0 } else { 1.0 };
            let x = [bit(0), bit(1), bit(2)];
            let y = [bit(3), bit(4)];
            let z = [bit(5), bit(6), bit(7)];
            best = best.max(evaluate(&t, &[&x, &y, &z]).unwrap());
        }
        let e = exact_norm_signs(&a, 24).unwrap();
        assert_eq!(e.value, best);
    }

    #[test]
    fn zero_tensor_returns_zero() {
        let a = inst(CoefficientTensor::zeros(vec![3, 3]).unwrap(), &[2.0, 3.0]);
        let est = norm_ascent(&a, &AscentConfig::default()).unwrap();
        assert_eq!(est.value, 0.0);
        assert!(est.converged);
    }

    #[test]
    fn stagnation_keeps_previous_slot() {
        // y starts orthogonal to the only nonzero column
        let a = inst(mat(2, 2, &[0.0, 0.0, 1.0, 0.0]), &[2.0, 2.0]);
        let run = ascend_from(&a, vec![vec![1.0, 0.0], vec![0.0, 1.0]], 1e-12, 50).unwrap();
        assert!(run.stagnated);
        assert!(run.point.iter().all(|x| x.iter().all(|v| v.is_finite())));
    }

    #[test]
    fn linear_form_is_closed_form() {
        let a = inst(
            CoefficientTensor::new(vec![2], vec![3.0, 4.0]).unwrap(),
            &[2.0],
        );
        let est = norm_ascent(&a, &AscentConfig::default()).unwrap();
        assert_eq!(est.method, Method::ExactClosed);
        assert!((est.value - 5.0).abs() < 1e-14);
    }
}
