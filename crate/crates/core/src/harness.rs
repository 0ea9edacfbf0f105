//! Instance generators and experiment drivers for Hardy–Littlewood type
//! inequalities on block sets.
//!
//! Everything here is a pure function of its inputs. Random families draw
//! from a ChaCha stream keyed by `(master_seed, family, n, instance)`, so a
//! single row of a sweep can be regenerated in isolation.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::calculus::{hl_block_exponents, isotropic_hl_exponent, triviality_check};
use crate::error::{Error, Result, Violation};
use crate::exponent::{Exponent, ExponentVector};
use crate::form::{
    evaluate, exact_norm_signs, norm_ascent, AscentConfig, FormInstance, NormEstimate,
    DEFAULT_SIGN_BUDGET,
};
use crate::mixed::{
    block_restrict, full_lengths, mixed_norm, weak_norm, VectorSequence, WeakNormConfig,
};
use crate::partition::BlockPartition;
use crate::tensor::{increment, CoefficientTensor};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum FamilyKind {
    /// `sum_i x_1(i) ... x_m(i)`.
    Diagonal,
    /// i.i.d. `±1` coefficients.
    RandomSign,
    /// i.i.d. standard normal coefficients.
    RandomGaussian,
    /// i.i.d. `±1` on the block set of the partition, zero elsewhere.
    BlockRepeated,
}

impl FamilyKind {
    pub const ALL: [FamilyKind; 4] = [
        FamilyKind::Diagonal,
        FamilyKind::RandomSign,
        FamilyKind::RandomGaussian,
        FamilyKind::BlockRepeated,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            FamilyKind::Diagonal => "diagonal",
            FamilyKind::RandomSign => "random-sign",
            FamilyKind::RandomGaussian => "random-gaussian",
            FamilyKind::BlockRepeated => "block-repeated",
        }
    }

    fn tag(self) -> u64 {
        self as u64
    }
}

impl fmt::Display for FamilyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for FamilyKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        FamilyKind::ALL
            .into_iter()
            .find(|k| k.as_str() == s)
            .ok_or_else(|| Error::InvalidConfig(alloc::format!("unknown family {s:?}")))
    }
}

/// Generator stream for one instance.
pub fn instance_rng(master_seed: u64, kind: FamilyKind, n: usize, instance: u64) -> ChaCha8Rng {
    let mut key = [0u8; 32];
    key[..8].copy_from_slice(&master_seed.to_le_bytes());
    key[8..16].copy_from_slice(&kind.tag().to_le_bytes());
    key[16..24].copy_from_slice(&(n as u64).to_le_bytes());
    key[24..].copy_from_slice(&instance.to_le_bytes());
    ChaCha8Rng::from_seed(key)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WitnessFamily {
    pub kind: FamilyKind,
    pub n: usize,
    pub master_seed: u64,
    pub instance: u64,
    pub scale: f64,
}

impl WitnessFamily {
    pub fn new(kind: FamilyKind, n: usize) -> Self {
        WitnessFamily {
            kind,
            n,
            master_seed: 0,
            instance: 0,
            scale: 1.0,
        }
    }

    pub fn with_seed(mut self, master_seed: u64, instance: u64) -> Self {
        self.master_seed = master_seed;
        self.instance = instance;
        self
    }

    pub fn with_scale(mut self, scale: f64) -> Self {
        self.scale = scale;
        self
    }

    /// The `m`-way coefficient tensor of size `n` on every axis.
    pub fn generate(&self, part: &BlockPartition) -> Result<CoefficientTensor> {
        let m = part.m();
        let dims = alloc::vec![self.n; m];
        let mut rng = instance_rng(self.master_seed, self.kind, self.n, self.instance);
        let scale = self.scale;
        let sign = |rng: &mut ChaCha8Rng| if rng.random::<bool>() { scale } else { -scale };
        match self.kind {
            FamilyKind::Diagonal => Ok(CoefficientTensor::diagonal(m, self.n)?.scaled(scale)),
            FamilyKind::RandomSign => CoefficientTensor::from_fn(dims, |_| sign(&mut rng)),
            FamilyKind::RandomGaussian => {
                CoefficientTensor::from_fn(dims, |_| scale * rng.sample::<f64, _>(StandardNormal))
            }
            FamilyKind::BlockRepeated => {
                let owner = part.owner();
                let mut t = CoefficientTensor::zeros(dims.clone())?;
                let strides = t.strides();
                let mut entries = t.entries().to_vec();
                let block_dims = alloc::vec![self.n; part.len()];
                let mut idx = alloc::vec![0usize; part.len()];
                for _ in 0..self.n.pow(part.len() as u32) {
                    let off: usize = (0..m).map(|j| idx[owner[j]] * strides[j]).sum();
                    entries[off] = sign(&mut rng);
                    increment(&mut idx, &block_dims);
                }
                t = CoefficientTensor::new(dims, entries)?;
                Ok(t)
            }
        }
    }
}

/// How norm estimates are obtained inside experiments.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NormConfig {
    pub ascent: AscentConfig,
    /// Sign-enumeration budget in bits.
    pub exact_budget: usize,
    /// Use exact sign enumeration when every exponent is `inf` and the budget allows.
    pub prefer_exact: bool,
}

impl Default for NormConfig {
    fn default() -> Self {
        NormConfig {
            ascent: AscentConfig::default(),
            exact_budget: DEFAULT_SIGN_BUDGET,
            prefer_exact: true,
        }
    }
}

pub fn estimate_norm(inst: &FormInstance, cfg: &NormConfig) -> Result<NormEstimate> {
    if cfg.prefer_exact && inst.exponents().iter().all(|e| e.is_infinite()) {
        match exact_norm_signs(inst, cfg.exact_budget) {
            Ok(est) => return Ok(est),
            Err(Error::BudgetExceeded { .. }) => {}
            Err(e) => return Err(e),
        }
    }
    norm_ascent(inst, &cfg.ascent)
}

/// Left side of the block Hardy–Littlewood inequality: the mixed `ℓ_s` norm
/// of the coefficients on the block set, over the full index range.
pub fn hl_lhs(a: &CoefficientTensor, part: &BlockPartition, s: &ExponentVector) -> Result<f64> {
    let lengths = full_lengths(a, part);
    let b = block_restrict(a, part, &lengths)?;
    mixed_norm(&b.tensor, s)
}

#[derive(Debug, Clone, PartialEq)]
pub struct HlRatio {
    pub ratio: f64,
    pub lhs: f64,
    pub norm: NormEstimate,
}

/// `hl_lhs / ‖A‖`. A zero form has ratio `0`.
pub fn hl_ratio(
    inst: &FormInstance,
    part: &BlockPartition,
    s: &ExponentVector,
    cfg: &NormConfig,
) -> Result<HlRatio> {
    let lhs = hl_lhs(inst.tensor(), part, s)?;
    let norm = estimate_norm(inst, cfg)?;
    let ratio = if norm.value > 0.0 {
        lhs / norm.value
    } else if lhs == 0.0 {
        0.0
    } else {
        return Err(Error::DegenerateNorm { lhs });
    };
    Ok(HlRatio { ratio, lhs, norm })
}

#[derive(Debug, Clone, PartialEq)]
pub struct AnisotropyGain {
    pub lhs_aniso: f64,
    pub lhs_iso: f64,
    pub s_aniso: ExponentVector,
    pub s_iso: ExponentVector,
}

/// Compares the block left side at the anisotropic exponents with the same
/// quantity at the constant isotropic exponent.
pub fn anisotropy_gain(inst: &FormInstance, part: &BlockPartition) -> Result<AnisotropyGain> {
    let p = inst.exponents();
    let s_aniso = hl_block_exponents(p, part)?;
    let (rho, _) = isotropic_hl_exponent(p)?;
    let s_iso = ExponentVector::constant(rho, part.len())?;
    Ok(AnisotropyGain {
        lhs_aniso: hl_lhs(inst.tensor(), part, &s_aniso)?,
        lhs_iso: hl_lhs(inst.tensor(), part, &s_iso)?,
        s_aniso,
        s_iso,
    })
}

/// Mixed `ℓ_q` norm of `T(x^1_{i_1}, ..., x^m_{i_m})` over the block set of
/// `part`: every sequence in block `n` is indexed by the same `i_n`, so all
/// sequences of a block must share a length.
pub fn lambda_lhs(
    a: &CoefficientTensor,
    sequences: &[VectorSequence],
    part: &BlockPartition,
    q: &ExponentVector,
) -> Result<f64> {
    let m = part.m();
    if sequences.len() != m || a.order() != m {
        return Err(Error::LengthMismatch {
            expected: m,
            found: sequences.len(),
        });
    }
    let mut lengths = Vec::with_capacity(part.len());
    for block in part.blocks() {
        let len = sequences[block[0]].len();
        if let Some(&j) = block.iter().find(|&&j| sequences[j].len() != len) {
            return Err(Error::DimensionMismatch {
                axis: j,
                expected: len,
                found: sequences[j].len(),
            });
        }
        lengths.push(len);
    }
    let owner = part.owner();
    let values = CoefficientTensor::from_fn(lengths, |idx| {
        let xs: Vec<&[f64]> = (0..m).map(|j| sequences[j].vector(idx[owner[j]])).collect();
        evaluate(a, &xs).unwrap_or(f64::NAN)
    })?;
    mixed_norm(&values, q)
}

/// Least-squares slope of `ln y` against `ln x`; `None` with fewer than two
/// distinct abscissae or any nonpositive value.
pub fn loglog_slope(xs: &[f64], ys: &[f64]) -> Option<f64> {
    if xs.len() != ys.len() || xs.len() < 2 || xs.iter().chain(ys).any(|&v| v.is_nan() || v <= 0.0)
    {
        return None;
    }
    let lx: Vec<f64> = xs.iter().map(|&x| libm::log(x)).collect();
    let ly: Vec<f64> = ys.iter().map(|&y| libm::log(y)).collect();
    let k = lx.len() as f64;
    let mx = lx.iter().sum::<f64>() / k;
    let my = ly.iter().sum::<f64>() / k;
    let sxx: f64 = lx.iter().map(|x| (x - mx) * (x - mx)).sum();
    if sxx == 0.0 {
        return None;
    }
    let sxy: f64 = lx.iter().zip(&ly).map(|(x, y)| (x - mx) * (y - my)).sum();
    Some(sxy / sxx)
}

#[derive(Debug, Clone, PartialEq)]
pub struct ProbeRow {
    pub length: usize,
    pub lhs: f64,
    pub weak_product: f64,
    pub quotient: f64,
    pub weak_converged: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ProbeReport {
    /// 0-based witnessing block.
    pub witness: usize,
    /// `1/q_k - sum_{j in I_k} 1/p_j`.
    pub expected_slope: f64,
    /// `None` when fewer than two lengths were probed.
    pub slope: Option<f64>,
    pub rows: Vec<ProbeRow>,
}

/// Divergence probe for a trivial block summing class.
///
/// For the witnessing block `I_k`, every space `E_j` with `j ∈ I_k` is
/// `ℓ_1^L` carrying its canonical basis, whose weak `ℓ_{p_j}` norm is
/// `L^{1/p_j}`; every other slot gets the single vector `e_1` of `ℓ_1^1`.
/// The form is the diagonal form on the `I_k` axes. Its summing quotient
/// grows like `L^{1/q_k - sum 1/p_j}`. Weak norms are computed numerically.
pub fn triviality_probe(
    p: &ExponentVector,
    q: &ExponentVector,
    part: &BlockPartition,
    lengths: &[usize],
    weak_cfg: &WeakNormConfig,
) -> Result<ProbeReport> {
    let witness = triviality_check(p, q, part)?.ok_or(Error::Hypothesis(Violation::NotTrivial))?;
    let block = part.block(witness);
    let m = part.m();
    let mut in_block = alloc::vec![false; m];
    block.iter().for_each(|&j| in_block[j] = true);
    let expected_slope = q[witness].recip() - block.iter().map(|&j| p[j].recip()).sum::<f64>();

    let mut rows = Vec::with_capacity(lengths.len());
    for &len in lengths {
        if len == 0 {
            return Err(Error::InvalidConfig(
                "probe lengths must be positive".into(),
            ));
        }
        let dims: Vec<usize> = (0..m).map(|j| if in_block[j] { len } else { 1 }).collect();
        let form = CoefficientTensor::from_fn(dims, |idx| {
            let first = idx[block[0]];
            if block.iter().all(|&j| idx[j] == first) {
                1.0
            } else {
                0.0
            }
        })?;
        let sequences = (0..m)
            .map(|j| {
                VectorSequence::canonical_basis(if in_block[j] { len } else { 1 }, Exponent::ONE)
            })
            .collect::<Result<Vec<_>>>()?;
        let lhs = lambda_lhs(&form, &sequences, part, q)?;
        let mut weak_product = 1.0;
        let mut weak_converged = true;
        for (j, seq) in sequences.iter().enumerate() {
            let w = weak_norm(seq, p[j], weak_cfg)?;
            weak_product *= w.value;
            weak_converged &= w.converged;
        }
        rows.push(ProbeRow {
            length: len,
            lhs,
            weak_product,
            quotient: lhs / weak_product,
            weak_converged,
        });
    }
    let xs: Vec<f64> = rows.iter().map(|r| r.length as f64).collect();
    let ys: Vec<f64> = rows.iter().map(|r| r.quotient).collect();
    Ok(ProbeReport {
        witness,
        expected_slope,
        slope: loglog_slope(&xs, &ys),
        rows,
    })
}

/// Where the output exponents of a sweep come from.
#[derive(Debug, Clone, PartialEq)]
pub enum ExponentRule {
    HlBlock,
    Isotropic,
    Custom(ExponentVector),
}

impl ExponentRule {
    pub fn name(&self) -> &'static str {
        match self {
            ExponentRule::HlBlock => "hl-block",
            ExponentRule::Isotropic => "isotropic",
            ExponentRule::Custom(_) => "custom",
        }
    }

    pub fn resolve(&self, p: &ExponentVector, part: &BlockPartition) -> Result<ExponentVector> {
        match self {
            ExponentRule::HlBlock => hl_block_exponents(p, part),
            ExponentRule::Isotropic => {
                let (rho, _) = isotropic_hl_exponent(p)?;
                ExponentVector::constant(rho, part.len())
            }
            ExponentRule::Custom(s) => {
                if s.len() != part.len() {
                    return Err(Error::LengthMismatch {
                        expected: part.len(),
                        found: s.len(),
                    });
                }
                Ok(s.clone())
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepConfig {
    pub families: Vec<FamilyKind>,
    pub n_grid: Vec<usize>,
    pub seeds: Vec<u64>,
    pub master_seed: u64,
    pub p: ExponentVector,
    pub partition: BlockPartition,
    pub rule: ExponentRule,
    pub scale: f64,
    pub norm: NormConfig,
}

impl SweepConfig {
    pub fn new(p: ExponentVector, partition: BlockPartition, rule: ExponentRule) -> Self {
        SweepConfig {
            families: alloc::vec![FamilyKind::Diagonal],
            n_grid: Vec::new(),
            seeds: alloc::vec![0],
            master_seed: 0,
            p,
            partition,
            rule,
            scale: 1.0,
            norm: NormConfig::default(),
        }
    }

    /// Checks the whole configuration and returns the output exponents.
    pub fn validate(&self) -> Result<ExponentVector> {
        if self.p.len() != self.partition.m() {
            return Err(Error::LengthMismatch {
                expected: self.partition.m(),
                found: self.p.len(),
            });
        }
        if self.families.is_empty() {
            return Err(Error::InvalidConfig("no families".into()));
        }
        if self.seeds.is_empty() {
            return Err(Error::InvalidConfig("no seeds".into()));
        }
        if self.n_grid.contains(&0) {
            return Err(Error::InvalidConfig("n must be positive".into()));
        }
        if !(self.scale.is_finite() && self.scale != 0.0) {
            return Err(Error::InvalidConfig(
                "scale must be finite and nonzero".into(),
            ));
        }
        if self.norm.ascent.restarts == 0
            || self.norm.ascent.tol.is_nan()
            || self.norm.ascent.tol <= 0.0
        {
            return Err(Error::InvalidConfig(
                "restarts must be >= 1 and tol > 0".into(),
            ));
        }
        self.rule.resolve(&self.p, &self.partition)
    }

    /// Row tasks in emission order: sorted by `(family, n, seed)`.
    pub fn tasks(&self) -> Vec<SweepTask> {
        let mut families = self.families.clone();
        families.sort();
        families.dedup();
        let mut ns = self.n_grid.clone();
        ns.sort_unstable();
        ns.dedup();
        let mut seeds = self.seeds.clone();
        seeds.sort_unstable();
        seeds.dedup();
        let mut tasks = Vec::new();
        for &family in &families {
            for &n in &ns {
                for &seed in &seeds {
                    tasks.push(SweepTask { family, n, seed });
                }
            }
        }
        tasks
    }

    /// Computes one row. Depends only on the config and the task.
    pub fn run_task(&self, s: &ExponentVector, task: &SweepTask) -> Result<SweepRow> {
        let witness = WitnessFamily {
            kind: task.family,
            n: task.n,
            master_seed: self.master_seed,
            instance: task.seed,
            scale: self.scale,
        };
        let tensor = witness.generate(&self.partition)?;
        let inst = FormInstance::new(tensor, self.p.clone())?;
        let mut norm_cfg = self.norm;
        let mut rng = instance_rng(self.master_seed, task.family, task.n, task.seed);
        rng.set_stream(1);
        norm_cfg.ascent.seed = rng.next_u64();
        let r = hl_ratio(&inst, &self.partition, s, &norm_cfg)?;
        Ok(SweepRow {
            family: task.family,
            n: task.n,
            seed: task.seed,
            rule: String::from(self.rule.name()),
            s: s.clone(),
            lhs: r.lhs,
            norm: r.norm.value,
            ratio: r.ratio,
            converged: r.norm.converged,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct SweepTask {
    pub family: FamilyKind,
    pub n: usize,
    pub seed: u64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub family: FamilyKind,
    pub n: usize,
    pub seed: u64,
    pub rule: String,
    pub s: ExponentVector,
    pub lhs: f64,
    pub norm: f64,
    pub ratio: f64,
    pub converged: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepReport {
    pub rows: Vec<SweepRow>,
}

/// Runs every row sequentially. The whole config is validated first.
pub fn sweep(config: &SweepConfig) -> Result<SweepReport> {
    let s = config.validate()?;
    let rows = config
        .tasks()
        .iter()
        .map(|t| config.run_task(&s, t))
        .collect::<Result<Vec<_>>>()?;
    Ok(SweepReport { rows })
}
