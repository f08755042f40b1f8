use serde::{Deserialize, Serialize};

use crate::cumulants::CumulantSequence;
use crate::error::{Error, Result};
use crate::scalar::{factorial, Real, Scalar};

/// The pair (γ, Δ) of the bound |Γ_j| ≤ (j!)^{1+γ} / Δ^{j−2}, j ≥ 3.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CumulantCondition<T> {
    gamma: T,
    delta: T,
}

impl<T: Real> CumulantCondition<T> {
    pub fn new(gamma: T, delta: T) -> Result<Self> {
        if !(gamma >= T::zero()) || !gamma.is_finite() {
            return Err(Error::Precondition(format!("cumulant condition needs gamma >= 0, got {gamma:?}")));
        }
        if !(delta > T::zero()) || !delta.is_finite() {
            return Err(Error::Precondition(format!("cumulant condition needs delta > 0, got {delta:?}")));
        }
        Ok(Self { gamma, delta })
    }

    pub fn gamma(&self) -> T {
        self.gamma
    }

    pub fn delta(&self) -> T {
        self.delta
    }

    /// 1 / (1 + 2γ).
    pub fn window_exponent(&self) -> T {
        T::one() / (T::one() + T::lit(2.0) * self.gamma)
    }
}

/// (j!)^{1+γ} / Δ^{j−2}.
pub fn condition_bound<T: Real>(j: usize, cond: &CumulantCondition<T>) -> T {
    let jf: T = factorial(j);
    jf.powf(T::one() + cond.gamma) / cond.delta.powi(j as i32 - 2)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OrderMargin<T> {
    pub j: usize,
    pub abs_cumulant: T,
    pub bound: T,
    pub ratio: T,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConditionReport<T> {
    pub orders: Vec<OrderMargin<T>>,
    pub pass: bool,
}

/// Compares |Γ_j| with the condition bound for every supplied order j ≥ 3.
///
/// The sequence must be standardized (Γ_1 ≈ 0, Γ_2 ≈ 1 within `tol`).
pub fn check_cumulant_condition<T: Real + Scalar>(
    c: &CumulantSequence<T>,
    cond: &CumulantCondition<T>,
    tol: T,
) -> Result<ConditionReport<T>> {
    let v = c.values();
    let c1 = v[0];
    let c2 = v.get(1).copied().unwrap_or_else(T::nan);
    if !((c1).abs() <= tol && (c2 - T::one()).abs() <= tol) {
        return Err(Error::Precondition(format!(
            "cumulants are not standardized: Γ_1 = {c1:?}, Γ_2 = {c2:?} (tolerance {tol:?})"
        )));
    }
    let orders: Vec<_> = v
        .iter()
        .enumerate()
        .skip(2)
        .map(|(i, &g)| {
            let j = i + 1;
            let bound = condition_bound(j, cond);
            let abs_cumulant = g.abs();
            let ratio = abs_cumulant / bound;
            OrderMargin { j, abs_cumulant, bound, ratio, pass: ratio <= T::one() }
        })
        .collect();
    let pass = orders.iter().all(|o| o.pass);
    Ok(ConditionReport { orders, pass })
}

/// Admissible scaling window (1, Δ^{1/(1+2γ)}).
pub fn mdp_window<T: Real>(cond: &CumulantCondition<T>) -> (T, T) {
    (T::one(), cond.delta.powf(cond.window_exponent()))
}

/// 108 ((√2/6) Δ)^{−1/(1+2γ)}.
pub fn kolmogorov_bound<T: Real>(cond: &CumulantCondition<T>) -> T {
    let inner = T::SQRT_2() / T::lit(6.0) * cond.delta;
    T::lit(108.0) * inner.powf(-cond.window_exponent())
}

/// Δ_n = sqrt(Σ σ_i²) / (2 max{K, max σ_i}) for sums under the generalized
/// Bernstein moment condition.
pub fn bernstein_delta<T: Real>(sigmas: &[T], k: T) -> Result<T> {
    if sigmas.is_empty() {
        return Err(Error::Precondition("bernstein_delta needs at least one summand".into()));
    }
    if !(k > T::zero()) {
        return Err(Error::Precondition(format!("Bernstein constant K must be positive, got {k:?}")));
    }
    if let Some(s) = sigmas.iter().find(|s| !(**s > T::zero())) {
        return Err(Error::Precondition(format!("standard deviations must be positive, got {s:?}")));
    }
    let total = sigmas.iter().fold(T::zero(), |acc, &s| acc + s * s);
    let max_sigma = sigmas.iter().fold(T::zero(), |m, &s| m.max(s));
    Ok(total.sqrt() / (T::lit(2.0) * k.max(max_sigma)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cond(gamma: f64, delta: f64) -> CumulantCondition<f64> {
        CumulantCondition::new(gamma, delta).unwrap()
    }

    #[test]
    fn gaussian_passes_with_zero_ratio() {
        let c = CumulantSequence::new(vec![0.0, 1.0, 0.0, 0.0, 0.0]).unwrap();
        let r = check_cumulant_condition(&c, &cond(0.0, 2.0), 1e-12).unwrap();
        assert!(r.pass);
        assert_eq!(r.orders.len(), 3);
        assert!(r.orders.iter().all(|o| o.ratio == 0.0));
    }

    #[test]
    fn boundary_case() {
        let c = CumulantSequence::new(vec![0.0, 1.0, 1.0]).unwrap();
        let r = check_cumulant_condition(&c, &cond(0.0, 6.0), 1e-12).unwrap();
        assert_eq!(r.orders[0].bound, 1.0);
        assert_eq!(r.orders[0].ratio, 1.0);
        assert!(r.pass);
    }

    #[test]
    fn rejects_unstandardized() {
        let c = CumulantSequence::new(vec![0.2, 1.0, 1.0]).unwrap();
        let err = check_cumulant_condition(&c, &cond(0.0, 6.0), 1e-6).unwrap_err();
        assert!(err.to_string().contains("Γ_1 = 0.2"));
    }

    #[test]
    fn window_and_kolmogorov() {
        assert_eq!(mdp_window(&cond(0.0, 7.5)).1, 7.5);
        assert!((mdp_window(&cond(2.0, 32.0)).1 - 2.0).abs() < 1e-15);
        assert!((mdp_window(&cond(1.0, 64.0)).1 - 4.0).abs() < 1e-14);
        let k = kolmogorov_bound(&cond(0.0, 36.0 / 2f64.sqrt()));
        assert!((k - 18.0).abs() < 1e-12);
        assert!(kolmogorov_bound(&cond(0.0, 1e12)) < 1e-8);
    }

    #[test]
    fn bernstein_examples() {
        assert_eq!(bernstein_delta(&[1.0], 1.0).unwrap(), 0.5);
        assert_eq!(bernstein_delta(&[3.0, 4.0], 2.0).unwrap(), 0.625);
        let n = 400;
        let d = bernstein_delta(&vec![0.5; n], 2.0).unwrap();
        assert!((d - (n as f64).sqrt() * 0.5 / 4.0).abs() < 1e-12);
        assert!(bernstein_delta::<f64>(&[], 1.0).is_err());
    }

    #[test]
    fn generic_over_f32() {
        let c = CumulantCondition::new(0.0f32, 36.0 / 2f32.sqrt()).unwrap();
        assert!((kolmogorov_bound(&c) - 18.0).abs() < 1e-4);
    }

    #[test]
    fn invalid_condition() {
        assert!(CumulantCondition::new(-0.1, 1.0).is_err());
        assert!(CumulantCondition::new(0.0, 0.0).is_err());
    }
}
