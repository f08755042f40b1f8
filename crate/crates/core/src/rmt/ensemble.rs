use std::f64::consts::{LN_2, PI};

use serde::{Deserialize, Serialize};

use crate::bounds::CumulantCondition;
use crate::error::{Error, Result};
use crate::scalar::factorial;
use crate::specfun::{log_gamma_shift, polygamma};

/// Highest cumulant order; needs ψ^{(15)}.
pub const MAX_CUMULANT_ORDER: usize = 16;
/// Base step of the finite-difference cross-check.
pub const FD_STEP: f64 = 1e-2;

/// COE (β = 1), CUE (β = 2) or CSE (β = 4) of size n.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CircularEnsembleSpec {
    beta: u32,
    n: usize,
}

impl CircularEnsembleSpec {
    pub fn new(beta: u32, n: usize) -> Result<Self> {
        if !matches!(beta, 1 | 2 | 4) {
            return Err(Error::Config(format!("beta must be 1, 2 or 4, got {beta}")));
        }
        if n == 0 {
            return Err(Error::Config("matrix size must be at least 1".into()));
        }
        Ok(Self { beta, n })
    }

    pub fn beta(&self) -> u32 {
        self.beta
    }

    pub fn n(&self) -> usize {
        self.n
    }

    fn half_beta(&self) -> f64 {
        self.beta as f64 / 2.0
    }
}

/// Index range of the Selberg product Π_k Γ(1+a_k)Γ(1+s+a_k)/Γ(1+s/2+a_k)², a_k = kβ/2.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum IndexRange {
    /// k = 0, ..., n − 1: n factors, consistent with the polygamma cumulant sum.
    #[default]
    ZeroToNMinusOne,
    /// k = 0, ..., n: n + 1 factors.
    ZeroToN,
}

impl IndexRange {
    fn count(&self, n: usize) -> usize {
        match self {
            IndexRange::ZeroToNMinusOne => n,
            IndexRange::ZeroToN => n + 1,
        }
    }
}

/// log E|Z|^s over the default index range.
pub fn selberg_log_moment(e: &CircularEnsembleSpec, s: f64) -> Result<f64> {
    selberg_log_moment_with(e, s, IndexRange::default())
}

pub fn selberg_log_moment_with(e: &CircularEnsembleSpec, s: f64, range: IndexRange) -> Result<f64> {
    if !(s > -1.0) || !s.is_finite() {
        return Err(Error::Domain { what: "Selberg exponent s", value: s, domain: "s > -1" });
    }
    let hb = e.half_beta();
    let mut total = 0.0;
    for k in 0..range.count(e.n) {
        let z = 1.0 + k as f64 * hb;
        total += log_gamma_shift(z, s)? - 2.0 * log_gamma_shift(z, 0.5 * s)?;
    }
    Ok(total)
}

/// Γ_j(Re log Z) = (2^{j−1} − 1)/2^{j−1} Σ_{k<n} ψ^{(j−1)}(1 + kβ/2).
pub fn exact_cumulant(e: &CircularEnsembleSpec, j: usize) -> Result<f64> {
    if j == 0 || j > MAX_CUMULANT_ORDER {
        return Err(Error::Range(format!("cumulant order must lie in 1..={MAX_CUMULANT_ORDER}, got {j}")));
    }
    if j == 1 {
        return Ok(0.0);
    }
    let p = 2f64.powi(j as i32 - 1);
    let hb = e.half_beta();
    let mut sum = 0.0;
    for k in 0..e.n {
        sum += polygamma(j - 1, 1.0 + k as f64 * hb)?;
    }
    Ok((p - 1.0) / p * sum)
}

/// j-th derivative of the Selberg log moment at s = 0 by central differences
/// with steps h and h/2, Richardson-combined. Supports 1 ≤ j ≤ 4.
pub fn finite_difference_cumulant(e: &CircularEnsembleSpec, j: usize, h: f64, range: IndexRange) -> Result<f64> {
    let f = |s: f64| selberg_log_moment_with(e, s, range);
    let diff = |h: f64| -> Result<f64> {
        Ok(match j {
            1 => (f(h)? - f(-h)?) / (2.0 * h),
            2 => (f(h)? - 2.0 * f(0.0)? + f(-h)?) / (h * h),
            3 => (f(2.0 * h)? - 2.0 * f(h)? + 2.0 * f(-h)? - f(-2.0 * h)?) / (2.0 * h.powi(3)),
            4 => (f(2.0 * h)? - 4.0 * f(h)? + 6.0 * f(0.0)? - 4.0 * f(-h)? + f(-2.0 * h)?) / h.powi(4),
            _ => return Err(Error::Range(format!("finite differences support orders 1..=4, got {j}"))),
        })
    };
    if !(h > 0.0 && 2.0 * h < 1.0) {
        return Err(Error::Precondition(format!("finite-difference step must lie in (0, 0.5), got {h}")));
    }
    let coarse = diff(h)?;
    let fine = diff(0.5 * h)?;
    Ok((4.0 * fine - coarse) / 3.0)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct VarianceFloor {
    pub sigma2: f64,
    pub floor: f64,
    pub pass: bool,
}

/// σ²_{n,β} against the lower bound (log 2)/β.
pub fn variance_floor_check(e: &CircularEnsembleSpec) -> Result<VarianceFloor> {
    let sigma2 = exact_cumulant(e, 2)?;
    let floor = LN_2 / e.beta as f64;
    Ok(VarianceFloor { sigma2, floor, pass: sigma2 >= floor })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CbeCondition {
    pub condition: CumulantCondition<f64>,
    pub sigma: f64,
    /// B_β with |Γ_j(Re log Z / σ)| ≤ j! σ^{−(j−2)} B_β^{j−2}.
    pub bracket_base: f64,
}

impl CbeCondition {
    pub fn bracket_bound(&self, j: usize) -> f64 {
        let e = j as i32 - 2;
        factorial::<f64>(j) * self.bracket_base.powi(e) / self.sigma.powi(e)
    }
}

/// γ = 0 and Δ = 3σ/(8π²).
pub fn cbe_condition(e: &CircularEnsembleSpec) -> Result<CbeCondition> {
    let sigma = exact_cumulant(e, 2)?.sqrt();
    let pi2 = PI * PI;
    let bracket_base = match e.beta {
        1 => 8.0 * pi2 / 3.0,
        2 => 2.0 * pi2 / 3.0,
        _ => 4.0 * pi2 / 3.0,
    };
    let condition = CumulantCondition::new(0.0, 3.0 * sigma / (8.0 * pi2))?;
    Ok(CbeCondition { condition, sigma, bracket_base })
}
