use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{sym_eigen, SymMatrix};
use crate::rng::SimRng;

/// Default tolerance for eigenvalues outside [0, 1], per eigenvalue and in total.
pub const DEFAULT_GOODNESS_TOL: f64 = 1e-6;
/// Largest spectrum handled by the exact Poisson-binomial oracle.
pub const MAX_PMF_COUNT: usize = 4096;

/// Eigenvalues of a discretized good kernel, clamped to [0, 1].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectralData {
    lambdas: Vec<f64>,
    vectors: Vec<Vec<f64>>,
    goodness_tolerance: f64,
    clamp_magnitude: f64,
}

impl SpectralData {
    /// Validates and clamps a spectrum given directly (no eigenvectors).
    pub fn from_lambdas(lambdas: Vec<f64>, tol: f64) -> Result<Self> {
        Self::build(lambdas, Vec::new(), tol)
    }

    fn build(mut lambdas: Vec<f64>, vectors: Vec<Vec<f64>>, tol: f64) -> Result<Self> {
        if lambdas.is_empty() {
            return Err(Error::Precondition("empty spectrum".into()));
        }
        let mut clamp = 0.0;
        for (index, l) in lambdas.iter_mut().enumerate() {
            if !(*l >= -tol && *l <= 1.0 + tol) {
                return Err(Error::GoodnessViolation { index, value: *l, tol });
            }
            let c = l.clamp(0.0, 1.0);
            clamp += (c - *l).abs();
            *l = c;
        }
        if clamp > tol {
            return Err(Error::Numerical(format!(
                "total eigenvalue clamp {clamp:e} exceeds the goodness tolerance {tol:e}"
            )));
        }
        if clamp > 0.0 {
            log::info!("clamped spectrum into [0, 1], total magnitude {clamp:e}");
        }
        if lambdas.windows(2).any(|w| w[0] < w[1]) {
            let mut order: Vec<usize> = (0..lambdas.len()).collect();
            order.sort_by(|&a, &b| lambdas[b].total_cmp(&lambdas[a]));
            let vectors = if vectors.is_empty() { vectors } else { order.iter().map(|&i| vectors[i].clone()).collect() };
            let lambdas = order.iter().map(|&i| lambdas[i]).collect();
            return Ok(Self { lambdas, vectors, goodness_tolerance: tol, clamp_magnitude: clamp });
        }
        Ok(Self { lambdas, vectors, goodness_tolerance: tol, clamp_magnitude: clamp })
    }

    pub fn lambdas(&self) -> &[f64] {
        &self.lambdas
    }

    pub fn vectors(&self) -> &[Vec<f64>] {
        &self.vectors
    }

    pub fn goodness_tolerance(&self) -> f64 {
        self.goodness_tolerance
    }

    /// Σ |clamped λ − raw λ|.
    pub fn clamp_magnitude(&self) -> f64 {
        self.clamp_magnitude
    }
}

/// Eigendecomposition of a kernel matrix into validated spectral data.
pub fn spectral_data(m: &SymMatrix, tol: f64) -> Result<SpectralData> {
    let e = sym_eigen(m)?;
    SpectralData::build(e.lambdas, e.vectors, tol)
}

/// One draw of Σ_k ξ_k with independent ξ_k ~ Bernoulli(λ_k).
pub fn sample_occupation(s: &SpectralData, rng: &mut SimRng) -> u64 {
    s.lambdas.iter().map(|&l| rng.bernoulli(l) as u64).sum()
}

pub fn sample_occupation_seeded(s: &SpectralData, seed: u64) -> u64 {
    sample_occupation(s, &mut SimRng::from_seed_u64(seed))
}

/// (Σ λ_k, Σ λ_k (1 − λ_k)).
pub fn occupation_moments(s: &SpectralData) -> (f64, f64) {
    let mean = s.lambdas.iter().sum();
    let var = s.lambdas.iter().map(|l| l * (1.0 - l)).sum();
    (mean, var)
}

/// Exact law of the occupation count.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OccupationLaw {
    pub pmf: Vec<f64>,
}

impl OccupationLaw {
    pub fn mean(&self) -> f64 {
        self.pmf.iter().enumerate().map(|(k, p)| k as f64 * p).sum()
    }

    pub fn variance(&self) -> f64 {
        let m = self.mean();
        self.pmf.iter().enumerate().map(|(k, p)| (k as f64 - m).powi(2) * p).sum()
    }

    /// Total-variation distance to the empirical law of `counts`.
    pub fn total_variation(&self, counts: &[u64]) -> f64 {
        let total: u64 = counts.iter().sum();
        let len = self.pmf.len().max(counts.len());
        0.5 * (0..len)
            .map(|k| {
                let p = self.pmf.get(k).copied().unwrap_or(0.0);
                let q = counts.get(k).copied().unwrap_or(0) as f64 / total as f64;
                (p - q).abs()
            })
            .sum::<f64>()
    }
}

/// Poisson-binomial pmf by convolving one Bernoulli at a time.
pub fn poisson_binomial_pmf(lambdas: &[f64]) -> Result<OccupationLaw> {
    if lambdas.len() > MAX_PMF_COUNT {
        return Err(Error::SizeLimit { what: "Poisson-binomial count", value: lambdas.len(), limit: MAX_PMF_COUNT });
    }
    if let Some(&l) = lambdas.iter().find(|l| !(0.0..=1.0).contains(*l)) {
        return Err(Error::Domain { what: "lambda", value: l, domain: "[0, 1]" });
    }
    let mut pmf = Vec::with_capacity(lambdas.len() + 1);
    pmf.push(1.0);
    for &l in lambdas {
        pmf.push(0.0);
        for k in (1..pmf.len()).rev() {
            pmf[k] = pmf[k] * (1.0 - l) + pmf[k - 1] * l;
        }
        pmf[0] *= 1.0 - l;
    }
    Ok(OccupationLaw { pmf })
}

/// Upper end of the scaling window, √(Σ λ(1−λ)) / max √(λ(1−λ)).
pub fn dpp_mdp_window(s: &SpectralData) -> Result<f64> {
    let (_, var) = occupation_moments(s);
    let max = s.lambdas.iter().map(|l| l * (1.0 - l)).fold(0.0f64, f64::max);
    if max == 0.0 {
        return Err(Error::Degenerate("all eigenvalues are 0 or 1; the occupation count is deterministic".into()));
    }
    Ok((var / max).sqrt())
}
