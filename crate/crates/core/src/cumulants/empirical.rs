use serde::{Deserialize, Serialize};

use super::algebra::{moments_to_cumulants, CumulantSequence, MomentSequence};
use crate::error::{Error, Result};

/// Highest cumulant order estimated from samples.
pub const MAX_EMPIRICAL_ORDER: usize = 8;

/// Samples from one generator run, tagged so the batch can be regenerated.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SampleBatch {
    values: Vec<f64>,
    seed: u64,
    generator_id: String,
}

impl SampleBatch {
    pub fn new(values: Vec<f64>, seed: u64, generator_id: impl Into<String>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::InsufficientData { needed: 1, got: 0 });
        }
        Ok(Self { values, seed, generator_id: generator_id.into() })
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn generator_id(&self) -> &str {
        &self.generator_id
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EmpiricalCumulants {
    pub cumulants: CumulantSequence<f64>,
    pub sample_count: usize,
}

/// Plug-in cumulants of the empirical distribution.
///
/// Raw moments are taken about the sample mean and pushed through the
/// partition formula; the mean is then restored as `Γ̂_1`. This is the same
/// estimator as converting raw moments directly, without the cancellation.
pub fn empirical_cumulants(s: &SampleBatch, order: usize) -> Result<EmpiricalCumulants> {
    let c = plug_in(s.values(), order)?;
    Ok(EmpiricalCumulants { cumulants: c, sample_count: s.len() })
}

fn plug_in(values: &[f64], order: usize) -> Result<CumulantSequence<f64>> {
    if order == 0 || order > MAX_EMPIRICAL_ORDER {
        return Err(Error::SizeLimit { what: "empirical cumulant order", value: order, limit: MAX_EMPIRICAL_ORDER });
    }
    if values.len() < order {
        return Err(Error::InsufficientData { needed: order, got: values.len() });
    }
    let n = values.len() as f64;
    let mean = values.iter().sum::<f64>() / n;
    let mut sums = vec![0.0f64; order];
    for &v in values {
        let d = v - mean;
        let mut p = 1.0;
        for s in sums.iter_mut() {
            p *= d;
            *s += p;
        }
    }
    let mut central: Vec<f64> = sums.into_iter().map(|s| s / n).collect();
    central[0] = 0.0;
    let mut c = moments_to_cumulants(&MomentSequence::new(central)?)?.into_values();
    c[0] = mean;
    CumulantSequence::new(c)
}

/// Per-order standard errors of the plug-in cumulants by non-overlapping
/// batch means: the values are split into `batches` contiguous groups, each
/// group is estimated separately, and the spread of the group estimates is
/// scaled to the full sample.
pub fn batched_standard_errors(values: &[f64], order: usize, batches: usize) -> Result<Vec<f64>> {
    if batches < 2 {
        return Err(Error::Precondition("batched standard errors need at least 2 batches".into()));
    }
    let size = values.len() / batches;
    if size < order.max(2) {
        return Err(Error::InsufficientData { needed: batches * order.max(2), got: values.len() });
    }
    let estimates = (0..batches)
        .map(|b| plug_in(&values[b * size..(b + 1) * size], order))
        .collect::<Result<Vec<_>>>()?;
    let bf = batches as f64;
    Ok((0..order)
        .map(|j| {
            let mean = estimates.iter().map(|e| e.values()[j]).sum::<f64>() / bf;
            let var = estimates.iter().map(|e| (e.values()[j] - mean).powi(2)).sum::<f64>() / (bf - 1.0);
            // Std error of a single batch is sqrt(var); the full sample is `batches` times larger.
            (var / bf).sqrt()
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constant_samples() {
        let s = SampleBatch::new(vec![2.5; 100], 0, "const").unwrap();
        let e = empirical_cumulants(&s, 6).unwrap();
        assert_eq!(e.sample_count, 100);
        assert_eq!(e.cumulants.values()[0], 2.5);
        assert!(e.cumulants.values()[1..].iter().all(|&c| c == 0.0));
    }

    #[test]
    fn too_few_samples() {
        let s = SampleBatch::new(vec![1.0, 2.0], 0, "tiny").unwrap();
        assert!(matches!(empirical_cumulants(&s, 3), Err(Error::InsufficientData { .. })));
        assert!(matches!(empirical_cumulants(&s, 9), Err(Error::SizeLimit { .. })));
        assert!(SampleBatch::new(vec![], 0, "none").is_err());
    }

    #[test]
    fn shift_invariance() {
        let values: Vec<f64> = (0..1000).map(|i| ((i * 7919) % 1000) as f64 / 1000.0).map(|u| u * u).collect();
        let shifted: Vec<f64> = values.iter().map(|v| v + 3.25).collect();
        let a = plug_in(&values, 6).unwrap();
        let b = plug_in(&shifted, 6).unwrap();
        assert!((b.values()[0] - a.values()[0] - 3.25).abs() < 1e-9);
        for j in 1..6 {
            assert!((b.values()[j] - a.values()[j]).abs() < 1e-9, "order {}", j + 1);
        }
    }

    #[test]
    fn two_point_law_matches_exact() {
        // Empirical law with 30% ones is exactly Bernoulli(0.3).
        let values: Vec<f64> = (0..1000).map(|i| if i % 10 < 3 { 1.0 } else { 0.0 }).collect();
        let c = plug_in(&values, 4).unwrap();
        let expected = [0.3, 0.21, 0.084, -0.0546];
        for (got, want) in c.values().iter().zip(expected) {
            assert!((got - want).abs() < 1e-12, "{got} vs {want}");
        }
    }
}
