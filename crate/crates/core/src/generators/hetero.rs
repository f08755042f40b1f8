use rand::RngCore;
use rand_distr::{Binomial, Distribution};
use serde::{Deserialize, Serialize};

use super::laws::{DiscreteLaw, InputLaw};
use crate::error::{Error, Result};
use crate::rng::SimRng;

const LAW_TOL: f64 = 1e-12;
/// Largest i.i.d. fair two-point sum drawn bit by bit.
pub const POPCOUNT_MAX_N: usize = 1 << 16;

/// Independent centered summands with declared standard deviations.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HeteroSumConfig {
    sigmas: Vec<f64>,
    laws: Vec<InputLaw>,
    /// Set when all summands share one two-point law: (lo, hi, P(hi)).
    iid_two_point: Option<(f64, f64, f64)>,
}

impl HeteroSumConfig {
    pub fn new(sigmas: Vec<f64>, laws: Vec<InputLaw>) -> Result<Self> {
        if sigmas.is_empty() || sigmas.len() != laws.len() {
            return Err(Error::Config(format!(
                "need one law per sigma (got {} sigmas, {} laws)",
                sigmas.len(),
                laws.len()
            )));
        }
        for (i, (s, law)) in sigmas.iter().zip(&laws).enumerate() {
            if !(*s > 0.0) || !s.is_finite() {
                return Err(Error::Config(format!("sigma {i} must be positive, got {s}")));
            }
            if law.mean().abs() > LAW_TOL {
                return Err(Error::Config(format!("law {i} has mean {}, not 0", law.mean())));
            }
            let sd = law.variance().sqrt();
            if (sd - s).abs() > LAW_TOL * s.max(1.0) {
                return Err(Error::Config(format!("law {i} has standard deviation {sd}, declared {s}")));
            }
        }
        let iid_two_point = match laws.first() {
            Some(InputLaw::Discrete(d)) if laws.iter().all(|l| l == &laws[0]) => d.two_point(),
            _ => None,
        };
        Ok(Self { sigmas, laws, iid_two_point })
    }

    /// n i.i.d. copies of `law`.
    pub fn iid(law: DiscreteLaw, n: usize) -> Result<Self> {
        let s = law.sd();
        Self::new(vec![s; n], vec![InputLaw::Discrete(law); n])
    }

    /// Rademacher summands scaled by the given standard deviations.
    pub fn scaled_rademacher(sigmas: &[f64]) -> Result<Self> {
        let laws = sigmas
            .iter()
            .map(|&s| DiscreteLaw::rademacher().scaled(s).map(InputLaw::Discrete))
            .collect::<Result<_>>()?;
        Self::new(sigmas.to_vec(), laws)
    }

    /// Summands ξ_k − λ_k with ξ_k ~ Bernoulli(λ_k). Entries equal to 0 or 1
    /// are deterministic and dropped; returns the config and the number dropped.
    pub fn bernoulli_occupation(lambdas: &[f64]) -> Result<(Self, usize)> {
        let mut sigmas = Vec::new();
        let mut laws = Vec::new();
        let mut dropped = 0;
        for &l in lambdas {
            if !(0.0..=1.0).contains(&l) {
                return Err(Error::Config(format!("occupation probability {l} outside [0, 1]")));
            }
            if l == 0.0 || l == 1.0 {
                dropped += 1;
                continue;
            }
            sigmas.push((l * (1.0 - l)).sqrt());
            laws.push(InputLaw::Discrete(DiscreteLaw::centered_bernoulli(l)?));
        }
        if sigmas.is_empty() {
            return Err(Error::Degenerate("all occupation probabilities are 0 or 1".into()));
        }
        // Var of the law and λ(1−λ) may differ in the last bits.
        let sigmas: Vec<f64> = laws.iter().map(|l| l.variance().sqrt()).collect();
        Ok((Self::new(sigmas, laws)?, dropped))
    }

    pub fn sigmas(&self) -> &[f64] {
        &self.sigmas
    }

    pub fn laws(&self) -> &[InputLaw] {
        &self.laws
    }

    pub fn len(&self) -> usize {
        self.sigmas.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sigmas.is_empty()
    }

    pub fn total_variance(&self) -> f64 {
        self.sigmas.iter().map(|s| s * s).sum()
    }

    /// `(lo, hi, P(hi))` when every summand has the same two-point law.
    pub fn iid_two_point(&self) -> Option<(f64, f64, f64)> {
        self.iid_two_point
    }

    /// Σ X_i when `k` summands sit at the upper point (two-point case only).
    pub fn raw_from_count(&self, k: u64) -> Option<f64> {
        let (lo, hi, _) = self.iid_two_point?;
        let k = k as f64;
        Some(k * hi + (self.sigmas.len() as f64 - k) * lo)
    }

    /// Unstandardized Σ X_i.
    pub fn sample_raw(&self, rng: &mut SimRng) -> f64 {
        match self.iid_two_point {
            Some((_, _, p)) => {
                let n = self.sigmas.len();
                let k = if p == 0.5 && n <= POPCOUNT_MAX_N {
                    fair_count(n, rng)
                } else {
                    Binomial::new(n as u64, p).expect("p in (0,1)").sample(rng)
                };
                self.raw_from_count(k).expect("two-point law")
            }
            None => self.laws.iter().map(|l| l.sample(rng)).sum(),
        }
    }
}

/// Number of ones among n fair bits.
fn fair_count(n: usize, rng: &mut SimRng) -> u64 {
    let mut k = 0u64;
    for _ in 0..n / 64 {
        k += rng.next_u64().count_ones() as u64;
    }
    let rest = n % 64;
    if rest > 0 {
        k += (rng.next_u64() >> (64 - rest)).count_ones() as u64;
    }
    k
}

/// Standardized Z_n = Σ X_i / √(Σ σ_i²).
pub fn sample_hetero_sum(cfg: &HeteroSumConfig, rng: &mut SimRng) -> f64 {
    cfg.sample_raw(rng) / cfg.total_variance().sqrt()
}

pub fn sample_hetero_sum_seeded(cfg: &HeteroSumConfig, seed: u64) -> f64 {
    sample_hetero_sum(cfg, &mut SimRng::from_seed_u64(seed))
}
