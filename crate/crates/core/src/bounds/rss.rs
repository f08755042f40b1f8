use serde::{Deserialize, Serialize};

use super::condition::CumulantCondition;
use crate::error::{Error, Result};
use crate::scalar::Real;

/// Δ_γ = (1/6) ((√2/6) Δ)^{1/(1+2γ)}.
pub fn rss_delta_gamma<T: Real>(cond: &CumulantCondition<T>) -> T {
    let inner = T::SQRT_2() / T::lit(6.0) * cond.delta();
    inner.powf(cond.window_exponent()) / T::lit(6.0)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RssQuantities<T> {
    delta_gamma: T,
    condition: CumulantCondition<T>,
}

impl<T: Real> RssQuantities<T> {
    pub fn new(condition: CumulantCondition<T>) -> Self {
        Self { delta_gamma: rss_delta_gamma(&condition), condition }
    }

    pub fn delta_gamma(&self) -> T {
        self.delta_gamma
    }

    pub fn condition(&self) -> &CumulantCondition<T> {
        &self.condition
    }

    /// Envelope x³/(3Δ_γ) for |L_γ(x)|.
    pub fn l_envelope(&self, x: T) -> T {
        x.abs().powi(3) / (T::lit(3.0) * self.delta_gamma)
    }
}

fn check_x<T: Real>(x: T, q: &RssQuantities<T>) -> Result<()> {
    let dg = q.delta_gamma;
    if !(x >= T::zero()) || !(x < dg) {
        return Err(Error::Domain {
            what: "x",
            value: x.to_f64().unwrap_or(f64::NAN),
            domain: "[0, Δ_γ)",
        });
    }
    Ok(())
}

/// ψ(x) = 60 (1 + 10 Δ_γ² exp(−(1 − x/Δ_γ) √Δ_γ)) / (1 − x/Δ_γ) on [0, Δ_γ).
pub fn rss_psi<T: Real>(x: T, q: &RssQuantities<T>) -> Result<T> {
    check_x(x, q)?;
    let dg = q.delta_gamma;
    let gap = T::one() - x / dg;
    let e = (-gap * dg.sqrt()).exp();
    Ok(T::lit(60.0) * (T::one() + T::lit(10.0) * dg * dg * e) / gap)
}

/// Interval for log(P(Z ≥ x) / (1 − Φ(x))), worst case over q ∈ [−1, 1].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Corridor<T> {
    pub lower: T,
    pub upper: T,
    /// Lower endpoint is −∞ because ψ(x)(x+1)/Δ_γ ≥ 1.
    pub vacuous_lower: bool,
}

impl<T: Real> Corridor<T> {
    pub fn contains(&self, v: T) -> bool {
        v >= self.lower && v <= self.upper
    }

    pub fn intersects(&self, lo: T, hi: T) -> bool {
        lo <= self.upper && hi >= self.lower
    }

    pub fn width(&self) -> T {
        self.upper - self.lower
    }
}

pub fn rss_corridor<T: Real>(x: T, q: &RssQuantities<T>) -> Result<Corridor<T>> {
    let psi = rss_psi(x, q)?;
    let dg = q.delta_gamma;
    let r = psi * (x + T::one()) / dg;
    let env = q.l_envelope(x);
    let upper = env + r.ln_1p();
    let (lower, vacuous_lower) = if r < T::one() {
        (-env + (-r).ln_1p(), false)
    } else {
        (T::neg_infinity(), true)
    };
    Ok(Corridor { lower, upper, vacuous_lower })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(gamma: f64, delta: f64) -> RssQuantities<f64> {
        RssQuantities::new(CumulantCondition::new(gamma, delta).unwrap())
    }

    #[test]
    fn delta_gamma_examples() {
        assert!((q(0.0, 36.0 / 2f64.sqrt()).delta_gamma() - 1.0).abs() < 1e-15);
        for g in [0.5, 2.0, 7.0] {
            assert!((q(g, 6.0 / 2f64.sqrt()).delta_gamma() - 1.0 / 6.0).abs() < 1e-15);
        }
        assert!(q(0.0, 10.0).delta_gamma() < q(0.0, 10.5).delta_gamma());
    }

    #[test]
    fn psi_at_zero() {
        let qq = q(0.0, 36.0 / 2f64.sqrt());
        let v = rss_psi(0.0, &qq).unwrap();
        assert!((v - 60.0 * (1.0 + 10.0 * (-1.0f64).exp())).abs() < 1e-12);
        assert!((v - 280.728).abs() < 1e-3);
    }

    #[test]
    fn psi_diverges_at_boundary() {
        let qq = q(0.0, 36.0 / 2f64.sqrt());
        let mut prev = 0.0;
        for k in 1..=6 {
            let v = rss_psi(1.0 - 10f64.powi(-k), &qq).unwrap();
            assert!(v > prev);
            prev = v;
        }
        assert!(prev > 1e7);
        assert!(rss_psi(qq.delta_gamma(), &qq).is_err());
        assert!(rss_psi(-0.1, &qq).is_err());
    }

    #[test]
    fn corridor_vacuous_and_contains_zero() {
        let qq = q(0.0, 36.0 / 2f64.sqrt());
        let c = rss_corridor(0.0, &qq).unwrap();
        assert!(c.vacuous_lower);
        assert_eq!(c.lower, f64::NEG_INFINITY);
        let big = q(0.0, 1e6);
        let c = rss_corridor(0.0, &big).unwrap();
        assert!(!c.vacuous_lower);
        assert!(c.contains(0.0));
        let psi0 = rss_psi(0.0, &big).unwrap();
        let dg = big.delta_gamma();
        assert!((c.lower - (1.0 - psi0 / dg).ln()).abs() < 1e-14);
        assert!((c.upper - (1.0 + psi0 / dg).ln()).abs() < 1e-14);
    }
}
