use rand_distr::{Distribution, StandardNormal};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rng::SimRng;
use crate::scalar::factorial;

/// Finite discrete law given by support points and probabilities.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawLaw", into = "RawLaw")]
pub struct DiscreteLaw {
    support: Vec<f64>,
    probs: Vec<f64>,
    cumulative: Vec<f64>,
}

#[derive(Serialize, Deserialize)]
struct RawLaw {
    support: Vec<f64>,
    probs: Vec<f64>,
}

impl TryFrom<RawLaw> for DiscreteLaw {
    type Error = Error;

    fn try_from(r: RawLaw) -> Result<Self> {
        Self::new(r.support, r.probs)
    }
}

impl From<DiscreteLaw> for RawLaw {
    fn from(d: DiscreteLaw) -> Self {
        RawLaw { support: d.support, probs: d.probs }
    }
}

impl DiscreteLaw {
    pub fn new(support: Vec<f64>, probs: Vec<f64>) -> Result<Self> {
        if support.is_empty() || support.len() != probs.len() {
            return Err(Error::Config(format!(
                "discrete law needs matching nonempty support and probabilities (got {} and {})",
                support.len(),
                probs.len()
            )));
        }
        if support.iter().any(|x| !x.is_finite()) {
            return Err(Error::Config("discrete law support must be finite".into()));
        }
        if probs.iter().any(|p| !(*p >= 0.0 && *p <= 1.0)) {
            return Err(Error::Config("probabilities must lie in [0, 1]".into()));
        }
        let total: f64 = probs.iter().sum();
        if (total - 1.0).abs() > 1e-12 {
            return Err(Error::Config(format!("probabilities sum to {total}, not 1")));
        }
        let cumulative = probs
            .iter()
            .scan(0.0, |acc, &p| {
                *acc += p;
                Some(*acc)
            })
            .collect();
        Ok(Self { support, probs, cumulative })
    }

    /// ±1 with probability 1/2 each.
    pub fn rademacher() -> Self {
        Self::new(vec![-1.0, 1.0], vec![0.5, 0.5]).expect("valid law")
    }

    /// ξ − p for ξ ~ Bernoulli(p).
    pub fn centered_bernoulli(p: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&p) {
            return Err(Error::Domain { what: "Bernoulli parameter p", value: p, domain: "[0, 1]" });
        }
        if p == 0.0 || p == 1.0 {
            return Err(Error::Degenerate(format!("Bernoulli parameter {p} makes the statistic constant")));
        }
        Self::new(vec![-p, 1.0 - p], vec![1.0 - p, p])
    }

    /// Law of c·X.
    pub fn scaled(&self, c: f64) -> Result<Self> {
        Self::new(self.support.iter().map(|x| c * x).collect(), self.probs.clone())
    }

    pub fn support(&self) -> &[f64] {
        &self.support
    }

    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    /// E X^j.
    pub fn moment(&self, j: usize) -> f64 {
        self.support.iter().zip(&self.probs).map(|(x, p)| p * x.powi(j as i32)).sum()
    }

    pub fn mean(&self) -> f64 {
        self.moment(1)
    }

    pub fn variance(&self) -> f64 {
        let m = self.mean();
        self.support.iter().zip(&self.probs).map(|(x, p)| p * (x - m).powi(2)).sum()
    }

    pub fn sd(&self) -> f64 {
        self.variance().sqrt()
    }

    /// max |x| over the support.
    pub fn max_abs(&self) -> f64 {
        self.support.iter().fold(0.0, |m, x| m.max(x.abs()))
    }

    pub fn is_centered(&self, tol: f64) -> bool {
        self.mean().abs() <= tol
    }

    /// Two-point law `{lo, hi}`, returning `(lo, hi, P(hi))`.
    pub fn two_point(&self) -> Option<(f64, f64, f64)> {
        match (self.support.as_slice(), self.probs.as_slice()) {
            ([a, b], [pa, pb]) if a < b => Some((*a, *b, *pb)),
            ([a, b], [pa, pb]) if a > b => Some((*b, *a, *pa)),
            _ => None,
        }
    }

    pub fn sample(&self, rng: &mut SimRng) -> f64 {
        let u = rng.uniform();
        let i = self.cumulative.partition_point(|&c| c <= u);
        self.support[i.min(self.support.len() - 1)]
    }
}

/// Input law of a generator: a finite discrete law or the standard normal.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum InputLaw {
    Discrete(DiscreteLaw),
    StandardNormal,
}

impl InputLaw {
    pub fn sample(&self, rng: &mut SimRng) -> f64 {
        match self {
            InputLaw::Discrete(d) => d.sample(rng),
            InputLaw::StandardNormal => StandardNormal.sample(rng),
        }
    }

    pub fn mean(&self) -> f64 {
        match self {
            InputLaw::Discrete(d) => d.mean(),
            InputLaw::StandardNormal => 0.0,
        }
    }

    pub fn variance(&self) -> f64 {
        match self {
            InputLaw::Discrete(d) => d.variance(),
            InputLaw::StandardNormal => 1.0,
        }
    }
}

/// Configuration-level description of an input law.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "kebab-case")]
pub enum LawSpec {
    #[default]
    Rademacher,
    /// ξ − p for ξ ~ Bernoulli(p).
    CenteredBernoulli { p: f64 },
    Discrete { support: Vec<f64>, probs: Vec<f64> },
    StandardNormal,
}

impl LawSpec {
    pub fn build(&self) -> Result<InputLaw> {
        Ok(match self {
            LawSpec::StandardNormal => InputLaw::StandardNormal,
            other => InputLaw::Discrete(other.build_discrete()?),
        })
    }

    /// The law as a finite discrete law; the standard normal is refused.
    pub fn build_discrete(&self) -> Result<DiscreteLaw> {
        match self {
            LawSpec::Rademacher => Ok(DiscreteLaw::rademacher()),
            LawSpec::CenteredBernoulli { p } => DiscreteLaw::centered_bernoulli(*p),
            LawSpec::Discrete { support, probs } => DiscreteLaw::new(support.clone(), probs.clone()),
            LawSpec::StandardNormal => {
                Err(Error::Config("this generator needs a finite discrete law, not the standard normal".into()))
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BernsteinOrder {
    pub j: usize,
    pub abs_moment: f64,
    /// Smallest K with |E X^j| ≤ j! K^{j−2} σ².
    pub k_required: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BernsteinReport {
    pub sigma2: f64,
    pub orders: Vec<BernsteinOrder>,
    /// Smallest K for which the moment condition holds at γ = 0 for all j ≤ j_max.
    pub k_min: f64,
}

impl BernsteinReport {
    pub fn satisfied_by(&self, k: f64) -> bool {
        k >= self.k_min
    }
}

/// Exact moments of a centered discrete law against |E X^j| ≤ j! K^{j−2} σ², 3 ≤ j ≤ j_max.
pub fn bernstein_condition_margin(law: &DiscreteLaw, j_max: usize) -> Result<BernsteinReport> {
    if j_max < 3 {
        return Err(Error::Range(format!("j_max must be at least 3, got {j_max}")));
    }
    if j_max > 170 {
        return Err(Error::Range(format!("j_max must be at most 170, got {j_max}")));
    }
    let sigma2 = law.variance();
    if sigma2 <= 0.0 {
        return Err(Error::Degenerate("law has zero variance".into()));
    }
    let scale = law.max_abs();
    let orders: Vec<_> = (3..=j_max)
        .map(|j| {
            // Work with X/scale so high powers stay representable.
            let r: f64 = law
                .support
                .iter()
                .zip(&law.probs)
                .map(|(x, p)| p * (x / scale).powi(j as i32))
                .sum();
            let abs_moment = r.abs() * scale.powi(j as i32);
            let ratio = r.abs() / (factorial::<f64>(j) * sigma2 / (scale * scale));
            let k_required = if r == 0.0 { 0.0 } else { scale * ratio.powf(1.0 / (j as f64 - 2.0)) };
            BernsteinOrder { j, abs_moment, k_required }
        })
        .collect();
    let k_min = orders.iter().fold(0.0f64, |m, o| m.max(o.k_required));
    Ok(BernsteinReport { sigma2, orders, k_min })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rademacher_moments() {
        let r = DiscreteLaw::rademacher();
        assert_eq!(r.mean(), 0.0);
        assert_eq!(r.variance(), 1.0);
        assert_eq!(r.two_point(), Some((-1.0, 1.0, 0.5)));
        let rep = bernstein_condition_margin(&r, 12).unwrap();
        for o in &rep.orders {
            let want = if o.j % 2 == 0 { 1.0 } else { 0.0 };
            assert_eq!(o.abs_moment, want);
        }
        assert!(rep.satisfied_by(1.0));
    }

    #[test]
    fn bernstein_k_scales() {
        let b = DiscreteLaw::centered_bernoulli(0.3).unwrap();
        let r1 = bernstein_condition_margin(&b, 10).unwrap();
        let r2 = bernstein_condition_margin(&b.scaled(3.0).unwrap(), 10).unwrap();
        assert!((r2.k_min / r1.k_min - 3.0).abs() < 1e-12);
        let o3 = r1.orders[0];
        assert!((o3.abs_moment - 0.3 * 0.7 * 0.4).abs() < 1e-15);
    }

    #[test]
    fn validation() {
        assert!(DiscreteLaw::new(vec![0.0, 1.0], vec![0.5, 0.4]).is_err());
        assert!(DiscreteLaw::new(vec![0.0], vec![1.0, 0.0]).is_err());
        assert!(DiscreteLaw::centered_bernoulli(1.0).is_err());
    }

    #[test]
    fn sampling_hits_support() {
        let law = DiscreteLaw::new(vec![2.0, 5.0, 7.0], vec![0.2, 0.0, 0.8]).unwrap();
        let mut rng = SimRng::from_seed_u64(4);
        let mut twos = 0;
        for _ in 0..10_000 {
            let v = law.sample(&mut rng);
            assert!(v == 2.0 || v == 7.0);
            twos += (v == 2.0) as usize;
        }
        assert!((1700..2300).contains(&twos));
    }
}
