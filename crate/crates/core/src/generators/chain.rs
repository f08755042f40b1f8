use serde::{Deserialize, Serialize};

use super::laws::DiscreteLaw;
use crate::bounds::DependencyGraphSummary;
use crate::error::{Error, Result};
use crate::rng::SimRng;

const CENTERING_TOL: f64 = 1e-12;

/// Z_n = Σ_{i=1}^n X_i X_{i+1} for independent centered bounded X_1..X_{n+1}.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ChainConfig {
    n: usize,
    laws: Vec<DiscreteLaw>,
}

impl ChainConfig {
    /// i.i.d. inputs.
    pub fn iid(n: usize, law: DiscreteLaw) -> Result<Self> {
        Self::with_laws(vec![law; n + 1], 0.0)
    }

    /// One law per index (n + 1 laws); every variance must exceed `variance_floor`.
    pub fn with_laws(laws: Vec<DiscreteLaw>, variance_floor: f64) -> Result<Self> {
        if laws.len() < 2 {
            return Err(Error::Config("chain statistic needs at least two inputs".into()));
        }
        for (i, law) in laws.iter().enumerate() {
            if !law.is_centered(CENTERING_TOL) {
                return Err(Error::Config(format!("input {i} has mean {}, not 0", law.mean())));
            }
            let v = law.variance();
            if !(v > variance_floor) {
                return Err(Error::Config(format!(
                    "input {i} has variance {v}, not above the floor {variance_floor}"
                )));
            }
        }
        Ok(Self { n: laws.len() - 1, laws })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn laws(&self) -> &[DiscreteLaw] {
        &self.laws
    }

    /// Var Z_n = Σ σ_i² σ_{i+1}².
    pub fn variance(&self) -> f64 {
        self.laws.windows(2).map(|w| w[0].variance() * w[1].variance()).sum()
    }

    /// N = n, M = 2 (neighbours i−1 and i+1), A = max_i max|X_i| · max|X_{i+1}|.
    pub fn dependency_summary(&self) -> Result<DependencyGraphSummary<f64>> {
        let a = self.laws.windows(2).map(|w| w[0].max_abs() * w[1].max_abs()).fold(0.0, f64::max);
        DependencyGraphSummary::new(self.n, 2.min(self.n - 1), a, self.variance())
    }
}

pub fn sample_chain(cfg: &ChainConfig, rng: &mut SimRng) -> f64 {
    let mut prev = cfg.laws[0].sample(rng);
    let mut total = 0.0;
    for law in &cfg.laws[1..] {
        let x = law.sample(rng);
        total += prev * x;
        prev = x;
    }
    total
}

pub fn sample_chain_seeded(cfg: &ChainConfig, seed: u64) -> f64 {
    sample_chain(cfg, &mut SimRng::from_seed_u64(seed))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rademacher_parity() {
        let cfg = ChainConfig::iid(9, DiscreteLaw::rademacher()).unwrap();
        assert_eq!(cfg.variance(), 9.0);
        let mut rng = SimRng::from_seed_u64(1);
        for _ in 0..1000 {
            let z = sample_chain(&cfg, &mut rng);
            assert!(z.abs() <= 9.0);
            assert_eq!((z as i64 + 9) % 2, 0);
        }
        let d = cfg.dependency_summary().unwrap();
        assert_eq!((d.n_summands(), d.max_degree(), d.a_bound()), (9, 2, 1.0));
    }

    #[test]
    fn rejects_uncentered_or_flat() {
        let b = DiscreteLaw::new(vec![0.0, 1.0], vec![0.5, 0.5]).unwrap();
        assert!(ChainConfig::iid(5, b).is_err());
        let r = DiscreteLaw::rademacher();
        assert!(ChainConfig::with_laws(vec![r.clone(), r], 1.0).is_err());
    }
}
