//! Subcommand arguments and their implementations. Each command returns the
//! JSON document it prints on stdout plus a one-line human summary.

use std::path::PathBuf;

use blocksum_core::harness::{anisotropy_gain, triviality_probe};
use blocksum_core::mixed::full_lengths;
use blocksum_core::{
    block_restrict, corollary_exponents, estimate_norm, exact_norm_signs, hl_block_exponents,
    hl_ratio, inclusion_exponents, isotropic_hl_exponent, mixed_norm, norm_ascent, AscentConfig,
    BlockPartition, Exponent, ExponentVector, IsotropicRegime, NormConfig, WeakNormConfig,
    DEFAULT_SIGN_BUDGET,
};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::error::{CliError, CliResult};
use crate::format::{human, parse_exponents, to_tokens, TensorDoc};
use crate::sweep::{render_csv, run_parallel, sidecar_path, write_atomic, Sidecar, SweepFile};

#[derive(Debug, Parser)]
#[command(
    name = "blocksum",
    version,
    about = "Block Hardy-Littlewood exponents, mixed norms and form-norm experiments"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Suppress the human summary on stderr.
    #[arg(short, long, global = true)]
    pub quiet: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Compute output exponents for a partition.
    Exponents(ExponentsArgs),
    /// Mixed norm of a tensor, optionally restricted to a block set first.
    MixedNorm(MixedNormArgs),
    /// Estimate the norm of a multilinear form on ell_p spaces.
    FormNorm(FormNormArgs),
    /// Ratio of the block Hardy-Littlewood left side to the form norm.
    VerifyHl(VerifyHlArgs),
    /// Run a seeded sweep and write a CSV report with a JSON sidecar.
    Sweep(SweepArgs),
    /// Divergence probe for a trivial block summing class.
    ProbeTrivial(ProbeArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Rule {
    HlBlock,
    Isotropic,
    Corollary,
    Inclusion,
}

#[derive(Debug, Args)]
pub struct ExponentsArgs {
    /// Input exponents, comma separated ("inf" and "a/b" allowed). A single value for `corollary`.
    #[arg(long)]
    pub p: String,
    /// Blocks separated by `|`, 1-based indices by `,`, e.g. "1,2|3".
    #[arg(long)]
    pub partition: Option<String>,
    #[arg(long, value_enum, default_value = "hl-block")]
    pub rule: Rule,
    /// Source exponent for `inclusion`.
    #[arg(long)]
    pub r: Option<String>,
    /// Target exponents for `inclusion`, one per slot.
    #[arg(long)]
    pub q: Option<String>,
    /// Number of slots; checked against the partition when both are given.
    #[arg(long)]
    pub m: Option<usize>,
}

#[derive(Debug, Args)]
pub struct MixedNormArgs {
    #[arg(long)]
    pub input: PathBuf,
    /// One exponent per axis, or per block with --partition; outermost first.
    #[arg(long)]
    pub s: String,
    #[arg(long)]
    pub partition: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum NormMethod {
    /// Exact sign enumeration when every exponent is inf and the budget allows.
    Auto,
    Ascent,
    Exact,
}

#[derive(Debug, Args, Clone)]
pub struct NormArgs {
    #[arg(long, default_value_t = AscentConfig::default().restarts)]
    pub restarts: usize,
    #[arg(long, default_value_t = AscentConfig::default().tol)]
    pub tol: f64,
    #[arg(long, default_value_t = AscentConfig::default().max_iter)]
    pub max_iter: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, value_enum, default_value = "auto")]
    pub method: NormMethod,
    /// Bit budget for exact sign enumeration.
    #[arg(long, default_value_t = DEFAULT_SIGN_BUDGET)]
    pub budget: usize,
    /// Exit with code 3 when the estimate did not converge.
    #[arg(long)]
    pub strict: bool,
}

impl NormArgs {
    fn config(&self) -> CliResult<NormConfig> {
        if self.restarts == 0 || self.tol.is_nan() || self.tol <= 0.0 || self.max_iter == 0 {
            return Err(CliError::Invalid(
                "need restarts >= 1, tol > 0, max-iter >= 1".into(),
            ));
        }
        Ok(NormConfig {
            ascent: AscentConfig {
                restarts: self.restarts,
                tol: self.tol,
                max_iter: self.max_iter,
                seed: self.seed,
            },
            exact_budget: self.budget,
            prefer_exact: self.method == NormMethod::Auto,
        })
    }

    fn settings(&self) -> Value {
        json!({
            "restarts": self.restarts,
            "tol": self.tol,
            "max_iter": self.max_iter,
            "seed": self.seed,
            "method": format!("{:?}", self.method).to_lowercase(),
            "budget": self.budget,
        })
    }
}

#[derive(Debug, Args)]
pub struct FormNormArgs {
    #[arg(long)]
    pub input: PathBuf,
    /// Domain exponents; overrides "p" in the input file.
    #[arg(long)]
    pub p: Option<String>,
    #[command(flatten)]
    pub norm: NormArgs,
    /// Include the maximizing vectors in the output.
    #[arg(long)]
    pub maximizer: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum HlRule {
    HlBlock,
    Isotropic,
    Custom,
}

#[derive(Debug, Args)]
pub struct VerifyHlArgs {
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long)]
    pub p: Option<String>,
    #[arg(long)]
    pub partition: String,
    #[arg(long, value_enum, default_value = "hl-block")]
    pub rule: HlRule,
    /// Output exponents for `custom`.
    #[arg(long)]
    pub s: Option<String>,
    #[command(flatten)]
    pub norm: NormArgs,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    #[arg(long)]
    pub config: PathBuf,
    #[arg(long)]
    pub out: PathBuf,
    /// Worker threads; the report is identical for every value.
    #[arg(long)]
    pub threads: Option<usize>,
    #[arg(long)]
    pub strict: bool,
}

#[derive(Debug, Args)]
pub struct ProbeArgs {
    #[arg(long)]
    pub p: String,
    #[arg(long)]
    pub q: String,
    #[arg(long)]
    pub partition: String,
    /// Sequence lengths.
    #[arg(long, value_delimiter = ',', default_values_t = vec![8usize, 16, 32, 64])]
    pub lengths: Vec<usize>,
    #[arg(long, default_value_t = WeakNormConfig::default().restarts)]
    pub restarts: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

pub struct Output {
    pub json: Value,
    pub summary: String,
}

pub fn run(cmd: &Command) -> CliResult<Output> {
    match cmd {
        Command::Exponents(a) => exponents(a),
        Command::MixedNorm(a) => mixed(a),
        Command::FormNorm(a) => form_norm(a),
        Command::VerifyHl(a) => verify_hl(a),
        Command::Sweep(a) => sweep(a),
        Command::ProbeTrivial(a) => probe(a),
    }
}

fn partition(text: &str) -> CliResult<BlockPartition> {
    Ok(text.parse()?)
}

fn required<'a>(v: &'a Option<String>, flag: &str, rule: &str) -> CliResult<&'a str> {
    v.as_deref()
        .ok_or_else(|| CliError::Invalid(format!("--{flag} is required for rule {rule}")))
}

fn floats(v: &ExponentVector) -> Vec<f64> {
    v.values()
}

pub fn exponents(a: &ExponentsArgs) -> CliResult<Output> {
    let part = a.partition.as_deref().map(partition).transpose()?;
    if let (Some(m), Some(pt)) = (a.m, &part) {
        if pt.m() != m {
            return Err(CliError::Invalid(format!(
                "--m {m} but partition covers {} slots",
                pt.m()
            )));
        }
    }
    let need_part = || {
        part.clone()
            .ok_or_else(|| CliError::Invalid("--partition is required for this rule".into()))
    };
    let (s, hypotheses): (ExponentVector, Vec<String>) = match a.rule {
        Rule::HlBlock => {
            let p = parse_exponents(&a.p)?;
            let s = hl_block_exponents(&p, &need_part()?)?;
            let m = p.len();
            (
                s,
                vec![
                    format!("1 < p_j <= {} for every j", 2 * m),
                    format!("|1/p| = {} < 1", p.harmonic_total()),
                ],
            )
        }
        Rule::Isotropic => {
            let p = parse_exponents(&a.p)?;
            let (rho, regime) = isotropic_hl_exponent(&p)?;
            let d = part.as_ref().map_or(1, |pt| pt.len());
            let regime = match regime {
                IsotropicRegime::HalfToOne => "1/2 <= |1/p| < 1",
                IsotropicRegime::BelowHalf => "|1/p| < 1/2 (formula outside its stated regime)",
            };
            (ExponentVector::constant(rho, d)?, vec![regime.to_string()])
        }
        Rule::Corollary => {
            let p: Exponent = a.p.parse()?;
            let pt = need_part()?;
            let s = corollary_exponents(p, &pt.sizes())?;
            let m = pt.m();
            (s, vec![format!("{m} < p <= {}", 2 * m)])
        }
        Rule::Inclusion => {
            let p = parse_exponents(&a.p)?;
            let r: Exponent = required(&a.r, "r", "inclusion")?.parse()?;
            let q = parse_exponents(required(&a.q, "q", "inclusion")?)?;
            let pt = need_part()?;
            let s = inclusion_exponents(r, &p, &q, &pt)?;
            let balance = r.recip() - p.harmonic_total() + q.harmonic_total();
            (
                s,
                vec![
                    "q_j >= p_j for every j".to_string(),
                    format!("1/r - |1/p| + |1/q| = {balance} > 0"),
                ],
            )
        }
    };
    let summary = format!(
        "s = ({})",
        s.iter()
            .map(|e| if e.is_infinite() {
                "inf".into()
            } else {
                human(e.value())
            })
            .collect::<Vec<_>>()
            .join(", ")
    );
    Ok(Output {
        json: json!({ "s": to_tokens(&s), "hypotheses": hypotheses }),
        summary,
    })
}

pub fn mixed(a: &MixedNormArgs) -> CliResult<Output> {
    let t = TensorDoc::read(&a.input)?.tensor()?;
    let s = parse_exponents(&a.s)?;
    let value = match &a.partition {
        Some(text) => {
            let pt = partition(text)?;
            let b = block_restrict(&t, &pt, &full_lengths(&t, &pt))?;
            mixed_norm(&b.tensor, &s)?
        }
        None => mixed_norm(&t, &s)?,
    };
    Ok(Output {
        json: json!({ "value": value, "s": to_tokens(&s) }),
        summary: format!("mixed norm = {}", human(value)),
    })
}

fn non_converged(strict: bool, converged: bool, what: &str) -> CliResult<()> {
    if strict && !converged {
        return Err(CliError::NotConverged(what.into()));
    }
    Ok(())
}

pub fn form_norm(a: &FormNormArgs) -> CliResult<Output> {
    let p = a.p.as_deref().map(parse_exponents).transpose()?;
    let inst = TensorDoc::read(&a.input)?.instance(p.as_ref())?;
    let cfg = a.norm.config()?;
    let est = match a.norm.method {
        NormMethod::Auto => estimate_norm(&inst, &cfg)?,
        NormMethod::Ascent => norm_ascent(&inst, &cfg.ascent)?,
        NormMethod::Exact => exact_norm_signs(&inst, cfg.exact_budget)?,
    };
    non_converged(a.norm.strict, est.converged, "form norm ascent")?;
    let mut json = json!({
        "value": est.value,
        "method": est.method.as_str(),
        "converged": est.converged,
        "stagnated": est.stagnated,
        "restarts_used": est.restarts_used,
        "p": to_tokens(inst.exponents()),
        "settings": a.norm.settings(),
    });
    if a.maximizer {
        json["maximizer"] = json!(est.maximizer);
    }
    Ok(Output {
        json,
        summary: format!(
            "norm = {} ({}, {})",
            human(est.value),
            est.method.as_str(),
            if est.converged {
                "converged"
            } else {
                "not converged"
            }
        ),
    })
}

pub fn verify_hl(a: &VerifyHlArgs) -> CliResult<Output> {
    let p = a.p.as_deref().map(parse_exponents).transpose()?;
    let inst = TensorDoc::read(&a.input)?.instance(p.as_ref())?;
    let pt = partition(&a.partition)?;
    let s = match a.rule {
        HlRule::HlBlock => hl_block_exponents(inst.exponents(), &pt)?,
        HlRule::Isotropic => {
            let (rho, _) = isotropic_hl_exponent(inst.exponents())?;
            ExponentVector::constant(rho, pt.len())?
        }
        HlRule::Custom => parse_exponents(required(&a.s, "s", "custom")?)?,
    };
    let cfg = a.norm.config()?;
    let r = hl_ratio(&inst, &pt, &s, &cfg)?;
    non_converged(a.norm.strict, r.norm.converged, "form norm ascent")?;
    let mut json = json!({
        "ratio": r.ratio,
        "lhs": r.lhs,
        "norm": r.norm.value,
        "method": r.norm.method.as_str(),
        "converged": r.norm.converged,
        "s": to_tokens(&s),
        "settings": a.norm.settings(),
    });
    if a.rule == HlRule::HlBlock {
        let g = anisotropy_gain(&inst, &pt)?;
        json["lhs_isotropic"] = json!(g.lhs_iso);
        json["s_isotropic"] = json!(floats(&g.s_iso));
    }
    Ok(Output {
        json,
        summary: format!(
            "ratio = {} (lhs {}, norm {})",
            human(r.ratio),
            human(r.lhs),
            human(r.norm.value)
        ),
    })
}

pub fn sweep(a: &SweepArgs) -> CliResult<Output> {
    let file = SweepFile::read(&a.config)?;
    let cfg = file.to_config()?;
    let canonical = SweepFile::from_config(&cfg);
    let report = run_parallel(&cfg, a.threads)?;
    let csv = render_csv(&report);
    let sidecar = Sidecar::new(&canonical, &csv, &report);
    let side_path = sidecar_path(&a.out);
    let side_json = serde_json::to_string_pretty(&sidecar).expect("sidecar serializes") + "\n";
    write_atomic(&a.out, &csv)?;
    write_atomic(&side_path, side_json.as_bytes())?;
    non_converged(
        a.strict,
        sidecar.unconverged_rows == 0,
        &format!("{} of {} rows", sidecar.unconverged_rows, sidecar.rows),
    )?;
    let max_ratio = report.rows.iter().map(|r| r.ratio).fold(f64::NAN, f64::max);
    Ok(Output {
        json: json!({
            "csv": a.out,
            "sidecar": side_path,
            "rows": sidecar.rows,
            "unconverged_rows": sidecar.unconverged_rows,
            "csv_sha256": sidecar.csv_sha256,
        }),
        summary: format!("{} rows, max ratio {}", sidecar.rows, human(max_ratio)),
    })
}

pub fn probe(a: &ProbeArgs) -> CliResult<Output> {
    let p = parse_exponents(&a.p)?;
    let q = parse_exponents(&a.q)?;
    let pt = partition(&a.partition)?;
    let cfg = WeakNormConfig {
        restarts: a.restarts,
        seed: a.seed,
        ..WeakNormConfig::default()
    };
    let rep = triviality_probe(&p, &q, &pt, &a.lengths, &cfg)?;
    let rows: Vec<Value> = rep
        .rows
        .iter()
        .map(|r| {
            json!({
                "length": r.length,
                "lhs": r.lhs,
                "weak_product": r.weak_product,
                "quotient": r.quotient,
                "weak_converged": r.weak_converged,
            })
        })
        .collect();
    let summary = match rep.slope {
        Some(sl) => format!(
            "slope {} (expected {})",
            human(sl),
            human(rep.expected_slope)
        ),
        None => "slope undefined: need at least two lengths".to_string(),
    };
    Ok(Output {
        json: json!({
            "witness_block": rep.witness + 1,
            "expected_slope": rep.expected_slope,
            "slope": rep.slope,
            "slope_defined": rep.slope.is_some(),
            "rows": rows,
        }),
        summary,
    })
}
