//! Experiment configuration files.
//!
//! A config names its `kind` at the top level and carries that kind's
//! parameters in a table of the same name:
//!
//! ```toml
//! kind = "subgraph"
//! trials = 100000
//! seed = 7
//!
//! [subgraph]
//! n = 30
//! p = 0.3
//!
//! [output]
//! format = "csv"
//! path = "triangles.csv"
//! ```
//!
//! The JSON mirror has the same shape.

use std::path::{Path, PathBuf};

use cumdev_core::dpp::DEFAULT_GOODNESS_TOL;
use cumdev_core::generators::{Kernel, LawSpec};
use cumdev_core::mdp::{DppKernelConfig, GeneratorSpec, MIN_TRIALS};
use cumdev_core::quadrature::QuadratureRule;
use cumdev_core::rmt::IndexRange;
use serde::{Deserialize, Serialize};

use crate::CliError;

pub const DEFAULT_TRIALS: usize = 100_000;
pub const DEFAULT_ORDER: usize = 4;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Kind {
    Subgraph,
    Chain,
    Ustat,
    HeteroSum,
    Dpp,
    RmtExact,
    MdpSweep,
}

impl Kind {
    pub const ALL: [Kind; 7] =
        [Kind::Subgraph, Kind::Chain, Kind::Ustat, Kind::HeteroSum, Kind::Dpp, Kind::RmtExact, Kind::MdpSweep];

    pub fn name(&self) -> &'static str {
        match self {
            Kind::Subgraph => "subgraph",
            Kind::Chain => "chain",
            Kind::Ustat => "ustat",
            Kind::HeteroSum => "hetero-sum",
            Kind::Dpp => "dpp",
            Kind::RmtExact => "rmt-exact",
            Kind::MdpSweep => "mdp-sweep",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Format {
    #[default]
    Csv,
    Json,
}

impl Format {
    pub fn extension(&self) -> &'static str {
        match self {
            Format::Csv => "csv",
            Format::Json => "json",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputConfig {
    #[serde(default)]
    pub format: Format,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub path: Option<PathBuf>,
}

fn default_trials() -> usize {
    DEFAULT_TRIALS
}

fn default_order() -> usize {
    DEFAULT_ORDER
}

fn default_motif() -> String {
    "triangle".into()
}

fn default_rule() -> QuadratureRule {
    QuadratureRule::GaussLegendre
}

fn default_goodness() -> f64 {
    DEFAULT_GOODNESS_TOL
}

fn default_j_max() -> usize {
    6
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SubgraphParams {
    pub n: usize,
    pub p: f64,
    #[serde(default = "default_motif")]
    pub motif: String,
    #[serde(default = "default_order")]
    pub order: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ChainParams {
    pub n: usize,
    #[serde(default)]
    pub law: LawSpec,
    #[serde(default = "default_order")]
    pub order: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct UstatParams {
    pub n: usize,
    pub kernel: Kernel,
    #[serde(default)]
    pub law: LawSpec,
    #[serde(default = "default_order")]
    pub order: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HeteroSumParams {
    pub sigmas: Vec<f64>,
    #[serde(default = "default_order")]
    pub order: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DppParams {
    pub kernel: DppKernelConfig,
    pub a: f64,
    pub b: f64,
    pub points: usize,
    #[serde(default = "default_rule")]
    pub rule: QuadratureRule,
    #[serde(default = "default_goodness")]
    pub goodness_tol: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RmtExactParams {
    pub beta: u32,
    pub n: usize,
    #[serde(default = "default_j_max")]
    pub j_max: usize,
    #[serde(default)]
    pub index_range: IndexRange,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SweepMode {
    #[default]
    Rate,
    NormalZone,
    Corridor,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MdpSweepParams {
    pub generator: GeneratorSpec,
    pub a_n: f64,
    pub x_grid: Vec<f64>,
    #[serde(default)]
    pub mode: SweepMode,
    #[serde(default)]
    pub allow_rare: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub kind: Kind,
    #[serde(default = "default_trials")]
    pub trials: usize,
    #[serde(default)]
    pub seed: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub subgraph: Option<SubgraphParams>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub chain: Option<ChainParams>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ustat: Option<UstatParams>,
    #[serde(default, rename = "hetero-sum", skip_serializing_if = "Option::is_none")]
    pub hetero_sum: Option<HeteroSumParams>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dpp: Option<DppParams>,
    #[serde(default, rename = "rmt-exact", skip_serializing_if = "Option::is_none")]
    pub rmt_exact: Option<RmtExactParams>,
    #[serde(default, rename = "mdp-sweep", skip_serializing_if = "Option::is_none")]
    pub mdp_sweep: Option<MdpSweepParams>,
    #[serde(default)]
    pub output: OutputConfig,
}

/// Parameters of the configured kind.
pub enum Params<'a> {
    Cumulant { spec: GeneratorSpec, order: usize },
    Dpp(&'a DppParams),
    RmtExact(&'a RmtExactParams),
    MdpSweep(&'a MdpSweepParams),
}

impl ExperimentConfig {
    /// Parses TOML, or the JSON mirror when the text starts with `{`.
    /// Errors carry the line and column reported by the parser.
    pub fn parse(text: &str, origin: &Path) -> Result<Self, CliError> {
        let cfg: Self = if text.trim_start().starts_with('{') {
            serde_json::from_str(text)
                .map_err(|e| CliError::Validation(format!("{}: JSON config: {e}", origin.display())))?
        } else {
            toml::from_str(text).map_err(|e| CliError::Validation(format!("{}: {e}", origin.display())))?
        };
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Validation(format!("cannot read config {}: {e}", path.display())))?;
        Self::parse(&text, path)
    }

    fn present(&self) -> Vec<Kind> {
        let flags = [
            self.subgraph.is_some(),
            self.chain.is_some(),
            self.ustat.is_some(),
            self.hetero_sum.is_some(),
            self.dpp.is_some(),
            self.rmt_exact.is_some(),
            self.mdp_sweep.is_some(),
        ];
        Kind::ALL.into_iter().zip(flags).filter(|(_, f)| *f).map(|(k, _)| k).collect()
    }

    /// Structural checks: exactly the table of `kind` is present and the
    /// trial count is usable. Module preconditions are checked when the
    /// experiment is prepared.
    pub fn check_shape(&self) -> Result<(), CliError> {
        let present = self.present();
        let others: Vec<&str> = present.iter().filter(|k| **k != self.kind).map(|k| k.name()).collect();
        if !others.is_empty() {
            return Err(CliError::Validation(format!(
                "config of kind '{}' also has parameter tables for: {}",
                self.kind.name(),
                others.join(", ")
            )));
        }
        if !present.contains(&self.kind) {
            return Err(CliError::Validation(format!(
                "config of kind '{0}' is missing its [{0}] parameter table",
                self.kind.name()
            )));
        }
        if self.kind != Kind::RmtExact && self.trials < MIN_TRIALS {
            return Err(CliError::Validation(format!("trials must be at least {MIN_TRIALS}, got {}", self.trials)));
        }
        Ok(())
    }

    pub fn params(&self) -> Result<Params<'_>, CliError> {
        self.check_shape()?;
        let missing = || CliError::Validation(format!("missing [{}] table", self.kind.name()));
        Ok(match self.kind {
            Kind::Subgraph => {
                let p = self.subgraph.as_ref().ok_or_else(missing)?;
                Params::Cumulant {
                    spec: GeneratorSpec::Subgraph { n: p.n, p: p.p, motif: p.motif.clone() },
                    order: p.order,
                }
            }
            Kind::Chain => {
                let p = self.chain.as_ref().ok_or_else(missing)?;
                Params::Cumulant { spec: GeneratorSpec::Chain { n: p.n, law: p.law.clone() }, order: p.order }
            }
            Kind::Ustat => {
                let p = self.ustat.as_ref().ok_or_else(missing)?;
                Params::Cumulant {
                    spec: GeneratorSpec::Ustat { n: p.n, kernel: p.kernel, law: p.law.clone() },
                    order: p.order,
                }
            }
            Kind::HeteroSum => {
                let p = self.hetero_sum.as_ref().ok_or_else(missing)?;
                Params::Cumulant { spec: GeneratorSpec::HeteroSum { sigmas: p.sigmas.clone() }, order: p.order }
            }
            Kind::Dpp => Params::Dpp(self.dpp.as_ref().ok_or_else(missing)?),
            Kind::RmtExact => Params::RmtExact(self.rmt_exact.as_ref().ok_or_else(missing)?),
            Kind::MdpSweep => Params::MdpSweep(self.mdp_sweep.as_ref().ok_or_else(missing)?),
        })
    }

    /// Custom kernel paths are taken relative to the config file.
    pub fn resolve_paths(&mut self, base: &Path) {
        let fix = |k: &mut DppKernelConfig| {
            if let DppKernelConfig::Custom { path } = k {
                if path.is_relative() {
                    *path = base.join(&*path);
                }
            }
        };
        if let Some(d) = self.dpp.as_mut() {
            fix(&mut d.kernel);
        }
        if let Some(GeneratorSpec::Dpp { kernel, .. }) = self.mdp_sweep.as_mut().map(|m| &mut m.generator) {
            fix(kernel);
        }
    }
}
