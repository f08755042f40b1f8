use std::path::PathBuf;

use serde::{Deserialize, Serialize};

use crate::bounds::{
    bernstein_delta, dependency_graph_condition, subgraph_delta, CumulantCondition, UStatSpec, USTAT_MIN_N,
};
use crate::dpp::{
    build_kernel_matrix, occupation_moments, poisson_binomial_pmf, read_kernel_matrix, sample_occupation,
    spectral_data, GridSpec, KernelSpec, SpectralData, DEFAULT_GOODNESS_TOL, MAX_PMF_COUNT,
};
use crate::error::{Error, Result};
use crate::generators::{
    dependency_summary_for_subgraphs, exact_subgraph_mean, sample_chain, sample_subgraph_count,
    sample_ustatistic, ChainConfig, DiscreteLaw, GnpConfig, HeteroSumConfig, InputLaw, Kernel, LawSpec, Motif,
    UStatConfig,
};
use crate::quadrature::QuadratureRule;
use crate::rng::SimRng;
use crate::specfun::log_gamma;

/// Highest order used when fitting the U-statistic moment constant.
const USTAT_MOMENT_ORDER: usize = 12;

/// Exact law of a lattice-valued standardized statistic.
///
/// `values` are computed with the same floating-point expression the sampler
/// uses, so exact and empirical tails count the same atoms.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LatticeLaw {
    values: Vec<f64>,
    probs: Vec<f64>,
}

impl LatticeLaw {
    /// Atoms must be given in increasing order.
    pub fn new(values: Vec<f64>, probs: Vec<f64>) -> Result<Self> {
        if values.is_empty() || values.len() != probs.len() {
            return Err(Error::Precondition("lattice law needs one probability per atom".into()));
        }
        if values.windows(2).any(|w| !(w[0] < w[1])) {
            return Err(Error::Precondition("lattice atoms must be strictly increasing".into()));
        }
        Ok(Self { values, probs })
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    /// P(Z ≥ t), summed from the far tail inwards.
    pub fn upper_tail(&self, t: f64) -> f64 {
        let start = self.values.partition_point(|&v| v < t);
        self.probs[start..].iter().rev().sum()
    }

    /// P(Z ≤ −t).
    pub fn lower_tail(&self, t: f64) -> f64 {
        let end = self.values.partition_point(|&v| v <= -t);
        self.probs[..end].iter().sum()
    }
}

/// A seeded source of standardized draws for the harness.
pub trait Generator: Send + Sync {
    fn id(&self) -> &str;
    /// One draw of the standardized statistic.
    fn draw(&self, rng: &mut SimRng) -> f64;
    /// A cumulant condition the statistic provably satisfies, when one is known.
    fn condition(&self) -> Option<CumulantCondition<f64>>;
    fn exact_law(&self) -> Option<&LatticeLaw> {
        None
    }
}

/// Kernel family of the DPP generator.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "kebab-case")]
pub enum DppKernelConfig {
    Sine,
    Gue { n: usize },
    /// Whitespace matrix text, already weighted.
    Custom { path: PathBuf },
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

/// Configuration of every registered generator.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum GeneratorSpec {
    /// Σ of n Rademacher signs, i.e. a centered symmetric binomial.
    Binomial { n: usize },
    /// Rademacher signs scaled by `sigmas`.
    HeteroSum { sigmas: Vec<f64> },
    /// Σ Bernoulli(λ_k).
    BernoulliSum { lambdas: Vec<f64> },
    Subgraph {
        n: usize,
        p: f64,
        #[serde(default = "default_motif")]
        motif: String,
    },
    Chain {
        n: usize,
        #[serde(default)]
        law: LawSpec,
    },
    Ustat {
        n: usize,
        kernel: Kernel,
        #[serde(default)]
        law: LawSpec,
    },
    Dpp {
        kernel: DppKernelConfig,
        a: f64,
        b: f64,
        points: usize,
        #[serde(default = "default_rule")]
        rule: QuadratureRule,
        #[serde(default = "default_goodness")]
        goodness_tol: f64,
    },
}

impl GeneratorSpec {
    pub fn id(&self) -> &'static str {
        match self {
            GeneratorSpec::Binomial { .. } => "binomial",
            GeneratorSpec::HeteroSum { .. } => "hetero-sum",
            GeneratorSpec::BernoulliSum { .. } => "bernoulli-sum",
            GeneratorSpec::Subgraph { .. } => "subgraph",
            GeneratorSpec::Chain { .. } => "chain",
            GeneratorSpec::Ustat { .. } => "ustat",
            GeneratorSpec::Dpp { .. } => "dpp",
        }
    }

    /// Validates and builds the generator. `aux_seed` drives any auxiliary
    /// Monte Carlo (the variance of non-triangle motif counts).
    pub fn build(&self, aux_seed: u64) -> Result<Box<dyn Generator>> {
        Ok(match self {
            GeneratorSpec::Binomial { n } => {
                if *n == 0 {
                    return Err(Error::Config("binomial generator needs n >= 1".into()));
                }
                Box::new(SumGenerator::new("binomial", HeteroSumConfig::iid(DiscreteLaw::rademacher(), *n)?)?)
            }
            GeneratorSpec::HeteroSum { sigmas } => {
                Box::new(SumGenerator::new("hetero-sum", HeteroSumConfig::scaled_rademacher(sigmas)?)?)
            }
            GeneratorSpec::BernoulliSum { lambdas } => {
                let s = SpectralData::from_lambdas(lambdas.clone(), 0.0)?;
                Box::new(CountGenerator::new("bernoulli-sum", s)?)
            }
            GeneratorSpec::Subgraph { n, p, motif } => {
                let cfg = GnpConfig::new(*n, *p, Motif::by_name(motif)?)?;
                Box::new(SubgraphGenerator::new(cfg, aux_seed)?)
            }
            GeneratorSpec::Chain { n, law } => {
                if *n == 0 {
                    return Err(Error::Config("chain generator needs n >= 1".into()));
                }
                Box::new(ChainGenerator::new(ChainConfig::iid(*n, law.build_discrete()?)?)?)
            }
            GeneratorSpec::Ustat { n, kernel, law } => {
                Box::new(UStatGenerator::new(UStatConfig::new(*n, *kernel, law.build()?)?)?)
            }
            GeneratorSpec::Dpp { kernel, a, b, points, rule, goodness_tol } => {
                let spec = match kernel {
                    DppKernelConfig::Sine => KernelSpec::Sine,
                    DppKernelConfig::Gue { n } => KernelSpec::Gue { n: *n },
                    DppKernelConfig::Custom { path } => KernelSpec::Custom(read_kernel_matrix(path)?),
                };
                let grid = GridSpec::new(*a, *b, *points, *rule)?;
                let s = spectral_data(&build_kernel_matrix(&spec, &grid)?, *goodness_tol)?;
                Box::new(CountGenerator::new("dpp", s)?)
            }
        })
    }
}

/// Bernstein K for a summand law: max|X| for bounded laws, σ for the normal
/// (whose absolute moments satisfy (j−1)!! ≤ j!).
fn bernstein_k(law: &InputLaw) -> f64 {
    match law {
        InputLaw::Discrete(d) => d.max_abs(),
        InputLaw::StandardNormal => 1.0,
    }
}

fn standardization_error(what: &str, var: f64) -> Error {
    Error::Degenerate(format!("{what} has variance {var}; cannot standardize"))
}

/// Independent-summand sums, standardized by the exact variance.
pub struct SumGenerator {
    id: &'static str,
    cfg: HeteroSumConfig,
    sd: f64,
    condition: CumulantCondition<f64>,
    exact: Option<LatticeLaw>,
}

impl SumGenerator {
    pub fn new(id: &'static str, cfg: HeteroSumConfig) -> Result<Self> {
        let sd = cfg.total_variance().sqrt();
        let k = cfg.laws().iter().map(bernstein_k).fold(0.0, f64::max);
        let condition = CumulantCondition::new(0.0, bernstein_delta(cfg.sigmas(), k)?)?;
        let exact = two_point_law(&cfg, sd)?;
        Ok(Self { id, cfg, sd, condition, exact })
    }

    pub fn config(&self) -> &HeteroSumConfig {
        &self.cfg
    }
}

/// Binomial law of an i.i.d. two-point sum over its lattice.
fn two_point_law(cfg: &HeteroSumConfig, sd: f64) -> Result<Option<LatticeLaw>> {
    let Some((_, _, p)) = cfg.iid_two_point() else {
        return Ok(None);
    };
    let n = cfg.len() as u64;
    let nf = n as f64;
    let ln_n_fact = log_gamma(nf + 1.0)?;
    let (lp, lq) = (p.ln(), (1.0 - p).ln());
    let mut values = Vec::with_capacity(n as usize + 1);
    let mut probs = Vec::with_capacity(n as usize + 1);
    for k in 0..=n {
        let kf = k as f64;
        let ln_pmf = ln_n_fact - log_gamma(kf + 1.0)? - log_gamma(nf - kf + 1.0)? + kf * lp + (nf - kf) * lq;
        values.push(cfg.raw_from_count(k).expect("two-point law") / sd);
        probs.push(ln_pmf.exp());
    }
    if values.windows(2).any(|w| w[0] > w[1]) {
        values.reverse();
        probs.reverse();
    }
    LatticeLaw::new(values, probs).map(Some)
}

impl Generator for SumGenerator {
    fn id(&self) -> &str {
        self.id
    }

    fn draw(&self, rng: &mut SimRng) -> f64 {
        self.cfg.sample_raw(rng) / self.sd
    }

    fn condition(&self) -> Option<CumulantCondition<f64>> {
        Some(self.condition)
    }

    fn exact_law(&self) -> Option<&LatticeLaw> {
        self.exact.as_ref()
    }
}

/// Counts Σ Bernoulli(λ_k), standardized by Σλ and Σλ(1−λ).
pub struct CountGenerator {
    id: &'static str,
    spectrum: SpectralData,
    mean: f64,
    sd: f64,
    condition: CumulantCondition<f64>,
    exact: Option<LatticeLaw>,
}

impl CountGenerator {
    pub fn new(id: &'static str, spectrum: SpectralData) -> Result<Self> {
        let (mean, var) = occupation_moments(&spectrum);
        if !(var > 0.0) {
            return Err(standardization_error("occupation count", var));
        }
        let sd = var.sqrt();
        let sigmas: Vec<f64> =
            spectrum.lambdas().iter().map(|l| (l * (1.0 - l)).sqrt()).filter(|&s| s > 0.0).collect();
        let condition = CumulantCondition::new(0.0, bernstein_delta(&sigmas, 1.0)?)?;
        let exact = if spectrum.lambdas().len() <= MAX_PMF_COUNT {
            let pmf = poisson_binomial_pmf(spectrum.lambdas())?.pmf;
            let values = (0..pmf.len()).map(|k| count_z(k as u64, mean, sd)).collect();
            Some(LatticeLaw::new(values, pmf)?)
        } else {
            None
        };
        Ok(Self { id, spectrum, mean, sd, condition, exact })
    }

    pub fn spectrum(&self) -> &SpectralData {
        &self.spectrum
    }
}

#[inline]
fn count_z(k: u64, mean: f64, sd: f64) -> f64 {
    (k as f64 - mean) / sd
}

impl Generator for CountGenerator {
    fn id(&self) -> &str {
        self.id
    }

    fn draw(&self, rng: &mut SimRng) -> f64 {
        count_z(sample_occupation(&self.spectrum, rng), self.mean, self.sd)
    }

    fn condition(&self) -> Option<CumulantCondition<f64>> {
        Some(self.condition)
    }

    fn exact_law(&self) -> Option<&LatticeLaw> {
        self.exact.as_ref()
    }
}

/// Motif counts in G(n, p), standardized by the exact mean and the
/// dependency-summary variance.
pub struct SubgraphGenerator {
    cfg: GnpConfig,
    mean: f64,
    sd: f64,
    condition: Option<CumulantCondition<f64>>,
}

impl SubgraphGenerator {
    pub fn new(cfg: GnpConfig, aux_seed: u64) -> Result<Self> {
        let spec = cfg.motif().spec();
        let mean = exact_subgraph_mean(cfg.n(), cfg.p(), &spec)?;
        let dep = dependency_summary_for_subgraphs(&cfg, aux_seed)?;
        let var = dep.summary.sigma2();
        if !(var > 0.0) {
            return Err(standardization_error("motif count", var));
        }
        let (n, p) = (cfg.n() as f64, cfg.p());
        let (k, l) = (spec.edges() as i32, spec.vertices() as i32);
        let c_var = var / (n.powi(2 * l - 2) * p.powi(2 * k - 1) * (1.0 - p));
        let condition = subgraph_delta(cfg.n(), p, &spec, c_var)?.condition().ok();
        Ok(Self { cfg, mean, sd: var.sqrt(), condition })
    }
}

impl Generator for SubgraphGenerator {
    fn id(&self) -> &str {
        "subgraph"
    }

    fn draw(&self, rng: &mut SimRng) -> f64 {
        (sample_subgraph_count(&self.cfg, rng) as f64 - self.mean) / self.sd
    }

    fn condition(&self) -> Option<CumulantCondition<f64>> {
        self.condition
    }
}

/// Σ X_i X_{i+1}, standardized by its exact variance.
pub struct ChainGenerator {
    cfg: ChainConfig,
    sd: f64,
    condition: CumulantCondition<f64>,
}

impl ChainGenerator {
    pub fn new(cfg: ChainConfig) -> Result<Self> {
        let condition = dependency_graph_condition(&cfg.dependency_summary()?)?;
        Ok(Self { sd: cfg.variance().sqrt(), cfg, condition })
    }
}

impl Generator for ChainGenerator {
    fn id(&self) -> &str {
        "chain"
    }

    fn draw(&self, rng: &mut SimRng) -> f64 {
        sample_chain(&self.cfg, rng) / self.sd
    }

    fn condition(&self) -> Option<CumulantCondition<f64>> {
        Some(self.condition)
    }
}

/// (U_n − θ)/√V U_n for a non-degenerate kernel.
pub struct UStatGenerator {
    cfg: UStatConfig,
    theta: f64,
    sd: f64,
    condition: Option<CumulantCondition<f64>>,
}

impl UStatGenerator {
    pub fn new(cfg: UStatConfig) -> Result<Self> {
        if cfg.is_degenerate() {
            return Err(Error::Degenerate(format!(
                "kernel {} is degenerate for this input law (sigma1^2 = {:e})",
                cfg.kernel().id(),
                cfg.moments().sigma1sq
            )));
        }
        let m = cfg.moments();
        let condition = if cfg.n() >= USTAT_MIN_N {
            let c = cfg.moment_constant(1.0, USTAT_MOMENT_ORDER)?;
            UStatSpec::new(c, 1.0, m.sigma1sq.sqrt())?.condition(cfg.n()).ok()
        } else {
            None
        };
        Ok(Self { theta: m.theta, sd: cfg.variance().sqrt(), cfg, condition })
    }
}

impl Generator for UStatGenerator {
    fn id(&self) -> &str {
        "ustat"
    }

    fn draw(&self, rng: &mut SimRng) -> f64 {
        (sample_ustatistic(&self.cfg, rng) - self.theta) / self.sd
    }

    fn condition(&self) -> Option<CumulantCondition<f64>> {
        self.condition
    }
}
