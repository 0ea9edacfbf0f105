//! Sweep configuration files, parallel execution and report artifacts.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use blocksum_core::harness::{SweepRow, SweepTask};
use blocksum_core::{
    AscentConfig, BlockPartition, ExponentRule, FamilyKind, NormConfig, SweepConfig, SweepReport,
    DEFAULT_SIGN_BUDGET,
};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{CliError, CliResult};
use crate::format::{to_tokens, to_vector, ExponentToken};

pub const CSV_HEADER: [&str; 9] = [
    "family",
    "n",
    "seed",
    "rule",
    "s",
    "lhs",
    "norm",
    "ratio",
    "converged",
];

fn default_seeds() -> Vec<u64> {
    vec![0]
}
fn default_rule() -> String {
    "hl-block".into()
}
fn default_scale() -> f64 {
    1.0
}
fn default_restarts() -> usize {
    AscentConfig::default().restarts
}
fn default_tol() -> f64 {
    AscentConfig::default().tol
}
fn default_max_iter() -> usize {
    AscentConfig::default().max_iter
}
fn default_budget() -> usize {
    DEFAULT_SIGN_BUDGET
}
fn default_true() -> bool {
    true
}

/// JSON sweep configuration. Every omitted field takes its default, and the
/// rendered form lists all fields, so rendering a parsed file is canonical.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepFile {
    pub families: Vec<String>,
    pub n: Vec<usize>,
    #[serde(default = "default_seeds")]
    pub seeds: Vec<u64>,
    #[serde(default)]
    pub master_seed: u64,
    pub p: Vec<ExponentToken>,
    pub partition: String,
    #[serde(default = "default_rule")]
    pub rule: String,
    /// Output exponents for `rule = "custom"`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub s: Option<Vec<ExponentToken>>,
    #[serde(default = "default_scale")]
    pub scale: f64,
    #[serde(default = "default_restarts")]
    pub restarts: usize,
    #[serde(default = "default_tol")]
    pub tol: f64,
    #[serde(default = "default_max_iter")]
    pub max_iter: usize,
    #[serde(default = "default_budget")]
    pub exact_budget: usize,
    #[serde(default = "default_true")]
    pub prefer_exact: bool,
}

impl SweepFile {
    pub fn from_json(text: &str) -> CliResult<Self> {
        serde_json::from_str(text).map_err(|e| CliError::Invalid(format!("sweep config: {e}")))
    }

    pub fn read(path: &Path) -> CliResult<Self> {
        let text = fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
        Self::from_json(&text)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("sweep configs always serialize")
    }

    pub fn from_config(cfg: &SweepConfig) -> Self {
        let (rule, s) = match &cfg.rule {
            ExponentRule::Custom(s) => ("custom".to_string(), Some(to_tokens(s))),
            other => (other.name().to_string(), None),
        };
        SweepFile {
            families: cfg
                .families
                .iter()
                .map(|f| f.as_str().to_string())
                .collect(),
            n: cfg.n_grid.clone(),
            seeds: cfg.seeds.clone(),
            master_seed: cfg.master_seed,
            p: to_tokens(&cfg.p),
            partition: cfg.partition.to_string(),
            rule,
            s,
            scale: cfg.scale,
            restarts: cfg.norm.ascent.restarts,
            tol: cfg.norm.ascent.tol,
            max_iter: cfg.norm.ascent.max_iter,
            exact_budget: cfg.norm.exact_budget,
            prefer_exact: cfg.norm.prefer_exact,
        }
    }

    pub fn to_config(&self) -> CliResult<SweepConfig> {
        let families = self
            .families
            .iter()
            .map(|f| f.parse::<FamilyKind>())
            .collect::<Result<Vec<_>, _>>()?;
        let partition: BlockPartition = self.partition.parse()?;
        let rule = match (self.rule.as_str(), &self.s) {
            ("hl-block", None) => ExponentRule::HlBlock,
            ("isotropic", None) => ExponentRule::Isotropic,
            ("custom", Some(s)) => ExponentRule::Custom(to_vector(s)?),
            ("custom", None) => {
                return Err(CliError::Invalid("rule \"custom\" needs \"s\"".into()))
            }
            (r @ ("hl-block" | "isotropic"), Some(_)) => {
                return Err(CliError::Invalid(format!(
                    "\"s\" is only allowed with rule \"custom\", not {r:?}"
                )))
            }
            (r, _) => return Err(CliError::Invalid(format!("unknown rule {r:?}"))),
        };
        Ok(SweepConfig {
            families,
            n_grid: self.n.clone(),
            seeds: self.seeds.clone(),
            master_seed: self.master_seed,
            p: to_vector(&self.p)?,
            partition,
            rule,
            scale: self.scale,
            norm: NormConfig {
                ascent: AscentConfig {
                    restarts: self.restarts,
                    tol: self.tol,
                    max_iter: self.max_iter,
                    seed: 0,
                },
                exact_budget: self.exact_budget,
                prefer_exact: self.prefer_exact,
            },
        })
    }
}

/// Validates, then computes every row in parallel. Rows come back in task
/// order, so the result does not depend on the thread count.
pub fn run_parallel(cfg: &SweepConfig, threads: Option<usize>) -> CliResult<SweepReport> {
    let s = cfg.validate()?;
    let tasks: Vec<SweepTask> = cfg.tasks();
    let work = || {
        tasks
            .par_iter()
            .map(|t| cfg.run_task(&s, t))
            .collect::<Result<Vec<SweepRow>, _>>()
    };
    let rows = match threads {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(|e| CliError::Invalid(format!("thread pool: {e}")))?
            .install(work),
        None => work(),
    }?;
    Ok(SweepReport { rows })
}

/// Shortest representation that parses back to the same `f64`.
pub fn float_field(x: f64) -> String {
    format!("{x:?}")
}

pub fn render_csv(report: &SweepReport) -> Vec<u8> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(CSV_HEADER).expect("in-memory write");
    for r in &report.rows {
        w.write_record([
            r.family.as_str().to_string(),
            r.n.to_string(),
            r.seed.to_string(),
            r.rule.clone(),
            r.s.to_string(),
            float_field(r.lhs),
            float_field(r.norm),
            float_field(r.ratio),
            r.converged.to_string(),
        ])
        .expect("in-memory write");
    }
    w.into_inner().expect("in-memory flush")
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    Sha256::digest(bytes)
        .iter()
        .map(|b| format!("{b:02x}"))
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Sidecar {
    pub tool: String,
    pub version: String,
    pub config: SweepFile,
    pub config_sha256: String,
    pub csv_sha256: String,
    pub rows: usize,
    pub unconverged_rows: usize,
}

impl Sidecar {
    pub fn new(file: &SweepFile, csv: &[u8], report: &SweepReport) -> Self {
        Sidecar {
            tool: env!("CARGO_PKG_NAME").into(),
            version: env!("CARGO_PKG_VERSION").into(),
            config: file.clone(),
            config_sha256: sha256_hex(file.to_json().as_bytes()),
            csv_sha256: sha256_hex(csv),
            rows: report.rows.len(),
            unconverged_rows: report.rows.iter().filter(|r| !r.converged).count(),
        }
    }
}

/// Sidecar path next to the CSV: `r.csv` → `r.csv.json`.
pub fn sidecar_path(csv: &Path) -> PathBuf {
    let mut name = csv.as_os_str().to_owned();
    name.push(".json");
    PathBuf::from(name)
}

/// Writes through a temporary file in the target directory and renames it
/// into place, so readers never observe a partial file.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> CliResult<()> {
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(|e| CliError::io(dir, e))?;
    tmp.write_all(bytes)
        .map_err(|e| CliError::io(tmp.path(), e))?;
    tmp.as_file()
        .sync_all()
        .map_err(|e| CliError::io(tmp.path(), e))?;
    tmp.persist(path).map_err(|e| CliError::io(path, e.error))?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    const MINIMAL: &str = r#"{"families":["diagonal"],"n":[2,4],"p":[4,4,4],"partition":"1,2|3"}"#;

    #[test]
    fn defaults_fill_in_and_render_canonically() {
        let file = SweepFile::from_json(MINIMAL).unwrap();
        assert_eq!(file.seeds, vec![0]);
        assert_eq!(file.restarts, 20);
        assert_eq!(file.rule, "hl-block");
        let again = SweepFile::from_json(&file.to_json()).unwrap();
        assert_eq!(again, file);
        assert_eq!(again.to_json(), file.to_json());
        let cfg = file.to_config().unwrap();
        assert_eq!(SweepFile::from_config(&cfg), file);
    }

    #[test]
    fn bad_rules_are_rejected() {
        let custom = MINIMAL.replace("}", r#","rule":"custom"}"#);
        assert!(SweepFile::from_json(&custom).unwrap().to_config().is_err());
        let unknown = MINIMAL.replace("}", r#","rule":"sharp"}"#);
        assert!(SweepFile::from_json(&unknown).unwrap().to_config().is_err());
        let stray = MINIMAL.replace("}", r#","s":[4,4]}"#);
        assert!(SweepFile::from_json(&stray).unwrap().to_config().is_err());
        let family = MINIMAL.replace("diagonal", "gauss");
        assert!(SweepFile::from_json(&family).unwrap().to_config().is_err());
    }

    #[test]
    fn csv_layout() {
        let cfg = SweepFile::from_json(MINIMAL).unwrap().to_config().unwrap();
        let report = run_parallel(&cfg, Some(2)).unwrap();
        let text = String::from_utf8(render_csv(&report)).unwrap();
        let mut lines = text.lines();
        assert_eq!(lines.next().unwrap(), CSV_HEADER.join(","));
        assert!(lines
            .next()
            .unwrap()
            .starts_with("diagonal,2,0,hl-block,\"4,2.4\","));
        assert_eq!(text.lines().count(), 3);
    }

    #[test]
    fn thread_count_does_not_change_bytes() {
        let text = r#"{"families":["random-sign","random-gaussian"],"n":[2,3],"seeds":[0,1,2],
            "master_seed":11,"p":[4,4,4],"partition":"1,2|3","restarts":3}"#;
        let cfg = SweepFile::from_json(text).unwrap().to_config().unwrap();
        let one = render_csv(&run_parallel(&cfg, Some(1)).unwrap());
        let four = render_csv(&run_parallel(&cfg, Some(4)).unwrap());
        assert_eq!(one, four);
        assert_eq!(render_csv(&blocksum_core::sweep(&cfg).unwrap()), one);
    }

    #[test]
    fn sidecar_path_appends_suffix() {
        assert_eq!(
            sidecar_path(Path::new("out/r.csv")),
            PathBuf::from("out/r.csv.json")
        );
    }
}
