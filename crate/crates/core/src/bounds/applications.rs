use serde::{Deserialize, Serialize};

use super::condition::CumulantCondition;
use crate::error::{Error, Result};
use crate::scalar::{factorial, Real};

/// Inputs of the dependency-graph cumulant bound.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DependencyGraphSummary<T> {
    n_summands: usize,
    max_degree: usize,
    a_bound: T,
    sigma2: T,
}

impl<T: Real> DependencyGraphSummary<T> {
    pub fn new(n_summands: usize, max_degree: usize, a_bound: T, sigma2: T) -> Result<Self> {
        if n_summands == 0 {
            return Err(Error::Precondition("dependency graph needs at least one vertex".into()));
        }
        if max_degree >= n_summands {
            return Err(Error::Precondition(format!(
                "maximal degree {max_degree} must be below the vertex count {n_summands}"
            )));
        }
        if !(a_bound > T::zero()) || !a_bound.is_finite() {
            return Err(Error::Precondition(format!("a.s. bound A must be positive, got {a_bound:?}")));
        }
        if !(sigma2 > T::zero()) || !sigma2.is_finite() {
            return Err(Error::Precondition(format!("variance must be positive, got {sigma2:?}")));
        }
        let n = T::from_usize_lossy(n_summands);
        let crude = n * n * a_bound * a_bound;
        if sigma2 > crude * (T::one() + T::lit(1e-12)) {
            return Err(Error::Precondition(format!(
                "variance {sigma2:?} exceeds N²A² = {crude:?}"
            )));
        }
        Ok(Self { n_summands, max_degree, a_bound, sigma2 })
    }

    pub fn n_summands(&self) -> usize {
        self.n_summands
    }

    pub fn max_degree(&self) -> usize {
        self.max_degree
    }

    pub fn a_bound(&self) -> T {
        self.a_bound
    }

    pub fn sigma2(&self) -> T {
        self.sigma2
    }

    /// Same summary with a different variance, e.g. after measuring it.
    pub fn with_sigma2(&self, sigma2: T) -> Result<Self> {
        Self::new(self.n_summands, self.max_degree, self.a_bound, sigma2)
    }
}

/// (j!)³ N (M+1)^{j−1} (2eA)^j / σ^j.
pub fn dependency_graph_bound<T: Real>(j: usize, d: &DependencyGraphSummary<T>) -> Result<T> {
    if j == 0 {
        return Err(Error::Range("dependency_graph_bound needs j >= 1".into()));
    }
    let jf: T = factorial(j);
    let n = T::from_usize_lossy(d.n_summands);
    let m1 = T::from_usize_lossy(d.max_degree + 1);
    let two_e_a = T::lit(2.0) * T::E() * d.a_bound;
    let sigma = d.sigma2.sqrt();
    let ji = j as i32;
    Ok(jf.powi(3) * n * m1.powi(ji - 1) * (two_e_a / sigma).powi(ji))
}

/// Reads the dependency-graph bound as a cumulant condition with γ = 2.
///
/// With u = (M+1)(2eA)/σ and c = N u²/(M+1) the bound is c u^{j−2}(j!)³, and
/// c ≥ 1 because σ² ≤ N(M+1)A²; hence Δ = 1/(c u) = σ³/(N (M+1)² (2eA)³).
pub fn dependency_graph_condition<T: Real>(d: &DependencyGraphSummary<T>) -> Result<CumulantCondition<T>> {
    let n = T::from_usize_lossy(d.n_summands);
    let m1 = T::from_usize_lossy(d.max_degree + 1);
    let two_e_a = T::lit(2.0) * T::E() * d.a_bound;
    let sigma = d.sigma2.sqrt();
    CumulantCondition::new(T::lit(2.0), sigma.powi(3) / (n * m1 * m1 * two_e_a.powi(3)))
}

/// A fixed graph with `k` edges, `l` vertices and an automorphism group of order `aut`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MotifSpec {
    k: usize,
    l: usize,
    aut: u64,
}

impl MotifSpec {
    pub fn new(k: usize, l: usize, aut: u64) -> Result<Self> {
        if !(2..=20).contains(&l) {
            return Err(Error::Precondition(format!("motif vertex count must lie in 2..=20, got {l}")));
        }
        if k == 0 || k > l * (l - 1) / 2 {
            return Err(Error::Precondition(format!("motif with {l} vertices cannot have {k} edges")));
        }
        let lf: u64 = (1..=l as u64).product();
        if aut == 0 || !lf.is_multiple_of(aut) {
            return Err(Error::Precondition(format!("automorphism count {aut} does not divide {l}!")));
        }
        Ok(Self { k, l, aut })
    }

    pub fn edges(&self) -> usize {
        self.k
    }

    pub fn vertices(&self) -> usize {
        self.l
    }

    pub fn aut(&self) -> u64 {
        self.aut
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SubgraphDelta<T> {
    pub delta: T,
    pub gamma: T,
    pub a_n_max: T,
}

impl<T: Real> SubgraphDelta<T> {
    pub fn condition(&self) -> Result<CumulantCondition<T>> {
        CumulantCondition::new(self.gamma, self.delta)
    }
}

/// Δ_n = n (√c_var p^{k−1} √(p(1−p)))³ / (8 k² e³) with γ = 2.
///
/// `c_var` is the constant in V W ≍ c_var n^{2l−2} p^{2k−1} (1−p); see
/// `generators::exact_triangle_variance` for measuring it.
pub fn subgraph_delta<T: Real>(n: usize, p: T, motif: &MotifSpec, c_var: T) -> Result<SubgraphDelta<T>> {
    if !(p > T::zero() && p < T::one()) {
        return Err(Error::Degenerate(format!("edge probability must lie in (0,1), got {p:?}")));
    }
    if !(c_var > T::zero()) || !c_var.is_finite() {
        return Err(Error::Precondition(format!("variance constant must be positive, got {c_var:?}")));
    }
    if n < motif.l {
        return Err(Error::Precondition(format!("n = {n} is smaller than the motif ({} vertices)", motif.l)));
    }
    let k = T::from_usize_lossy(motif.k);
    let inner = c_var.sqrt() * p.powi(motif.k as i32 - 1) * (p * (T::one() - p)).sqrt();
    let e3 = T::E().powi(3);
    let delta = T::from_usize_lossy(n) * inner.powi(3) / (T::lit(8.0) * k * k * e3);
    let gamma = T::lit(2.0);
    Ok(SubgraphDelta { delta, gamma, a_n_max: delta.powf(T::lit(0.2)) })
}

/// Growth exponents in n for p = n^{−α} (with 1 − p treated as constant):
/// returns (exponent of Δ_n, exponent of n² p^{3(2k−1)} (1−p)³).
pub fn subgraph_growth_exponents(alpha: f64, motif: &MotifSpec) -> (f64, f64) {
    let k = motif.k as f64;
    let delta_exp = 1.0 - alpha * (3.0 * (k - 1.0) + 1.5);
    let cond_exp = 2.0 - 3.0 * alpha * (2.0 * k - 1.0);
    (delta_exp, cond_exp)
}

/// Smallest n for which the U-statistic cumulant bound is stated.
pub const USTAT_MIN_N: usize = 7;

/// Kernel moment-growth data of a non-degenerate degree-two U-statistic.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct UStatSpec<T> {
    c: T,
    gamma: T,
    sigma1: T,
}

impl<T: Real> UStatSpec<T> {
    pub fn new(c: T, gamma: T, sigma1: T) -> Result<Self> {
        if !(c > T::zero()) || !c.is_finite() {
            return Err(Error::Precondition(format!("C must be positive, got {c:?}")));
        }
        if !(gamma >= T::one()) || !gamma.is_finite() {
            return Err(Error::Precondition(format!("gamma must be at least 1, got {gamma:?}")));
        }
        if !(sigma1 > T::zero()) || !sigma1.is_finite() {
            return Err(Error::Precondition(format!("sigma1 must be positive, got {sigma1:?}")));
        }
        Ok(Self { c, gamma, sigma1 })
    }

    pub fn c(&self) -> T {
        self.c
    }

    pub fn gamma(&self) -> T {
        self.gamma
    }

    pub fn sigma1(&self) -> T {
        self.sigma1
    }

    /// The cumulant condition (γ, Δ_n) at sample size `n`.
    pub fn condition(&self, n: usize) -> Result<CumulantCondition<T>> {
        CumulantCondition::new(self.gamma, ustat_delta(n, self)?)
    }
}

/// C(σ₁) = C/σ₁ if C ≤ σ₁, else C³/σ₁³.
pub fn ustat_c_sigma<T: Real>(spec: &UStatSpec<T>) -> T {
    let r = spec.c / spec.sigma1;
    if spec.c <= spec.sigma1 {
        r
    } else {
        r.powi(3)
    }
}

fn check_ustat_n(n: usize) -> Result<()> {
    if n < USTAT_MIN_N {
        return Err(Error::Range(format!("U-statistic bounds require n >= {USTAT_MIN_N}, got n = {n}")));
    }
    Ok(())
}

/// Δ_n = √n / (2√2 e C(σ₁)).
pub fn ustat_delta<T: Real>(n: usize, spec: &UStatSpec<T>) -> Result<T> {
    check_ustat_n(n)?;
    let two_sqrt2_e = T::lit(2.0) * T::SQRT_2() * T::E();
    Ok(T::from_usize_lossy(n).sqrt() / (two_sqrt2_e * ustat_c_sigma(spec)))
}

/// 2 e^{2(j−2)} (2^j − 1)/j · C^j (j!)^{1+γ} / n^{j−1}, valid for 1 ≤ j ≤ n − 1.
pub fn ustat_cumulant_bound<T: Real>(j: usize, n: usize, c: T, gamma: T) -> Result<T> {
    check_ustat_n(n)?;
    if j == 0 || j > n - 1 {
        return Err(Error::Range(format!("U-statistic cumulant bound requires 1 <= j <= n-1, got j = {j}, n = {n}")));
    }
    if !(c > T::zero()) {
        return Err(Error::Precondition(format!("C must be positive, got {c:?}")));
    }
    let ji = j as i32;
    let jt = T::from_usize_lossy(j);
    let jf: T = factorial(j);
    let pre = T::lit(2.0) * (T::lit(2.0) * (jt - T::lit(2.0))).exp() * (T::lit(2.0).powi(ji) - T::one()) / jt;
    Ok(pre * c.powi(ji) * jf.powf(T::one() + gamma) / T::from_usize_lossy(n).powi(ji - 1))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dependency_bound_unit_case() {
        let d = DependencyGraphSummary::new(1, 0, 1.0, 1.0).unwrap();
        let v = dependency_graph_bound(1, &d).unwrap();
        assert!((v - 2.0 * std::f64::consts::E).abs() < 1e-14);
    }

    #[test]
    fn dependency_bound_homogeneity() {
        let d = DependencyGraphSummary::new(50, 2, 1.0, 50.0).unwrap();
        let h = d.with_sigma2(12.5).unwrap();
        for j in 1..=6 {
            let a = dependency_graph_bound(j, &d).unwrap();
            let b = dependency_graph_bound(j, &h).unwrap();
            assert!((b / a - 2f64.powi(j as i32)).abs() < 1e-12);
        }
    }

    #[test]
    fn dependency_condition_dominates_bound() {
        let d = DependencyGraphSummary::new(50, 2, 1.0, 50.0).unwrap();
        let c = dependency_graph_condition(&d).unwrap();
        for j in 3..=12 {
            let b = dependency_graph_bound(j, &d).unwrap();
            assert!(b <= super::super::condition_bound(j, &c) * (1.0 + 1e-12));
        }
    }

    #[test]
    fn dependency_summary_validation() {
        assert!(DependencyGraphSummary::new(3, 3, 1.0, 1.0).is_err());
        assert!(DependencyGraphSummary::new(2, 1, 1.0, 5.0).is_err());
        assert!(DependencyGraphSummary::new(2, 1, 0.0, 1.0).is_err());
    }

    #[test]
    fn motif_validation() {
        assert!(MotifSpec::new(3, 3, 6).is_ok());
        assert!(MotifSpec::new(4, 3, 6).is_err());
        assert!(MotifSpec::new(3, 3, 4).is_err());
        assert!(MotifSpec::new(1, 1, 1).is_err());
    }

    #[test]
    fn triangle_delta_specialization() {
        let tri = MotifSpec::new(3, 3, 6).unwrap();
        let (n, p, c) = (1000usize, 0.2f64, 2.5f64);
        let s = subgraph_delta(n, p, &tri, c).unwrap();
        let e3 = std::f64::consts::E.powi(3);
        let want = n as f64 * (c.sqrt() * p * p * (p * (1.0 - p)).sqrt()).powi(3) / (72.0 * e3);
        assert!((s.delta - want).abs() <= 1e-14 * want);
        assert_eq!(s.gamma, 2.0);
        assert!((s.a_n_max.powi(5) - s.delta).abs() <= 1e-12 * s.delta);
        assert!(subgraph_delta(10, 0.0, &tri, 1.0).is_err());
        assert!(subgraph_delta(10, 1.0, &tri, 1.0).is_err());
    }

    #[test]
    fn growth_exponent_signs_agree() {
        let tri = MotifSpec::new(3, 3, 6).unwrap();
        for i in 0..=40 {
            let alpha = i as f64 * 0.01;
            let (d, c) = subgraph_growth_exponents(alpha, &tri);
            assert!((c - 2.0 * d).abs() < 1e-12);
        }
    }

    #[test]
    fn c_sigma_branches() {
        let s = |c, s1| ustat_c_sigma(&UStatSpec::new(c, 1.0, s1).unwrap());
        assert_eq!(s(1.5, 1.5), 1.0);
        assert_eq!(s(1.0, 2.0), 0.5);
        assert_eq!(s(2.0, 1.0), 8.0);
    }

    #[test]
    fn ustat_delta_examples() {
        let spec = UStatSpec::new(1.0, 1.0, 1.0).unwrap();
        let d8 = ustat_delta(8, &spec).unwrap();
        assert!((d8 - (-1.0f64).exp()).abs() < 1e-15);
        let d16 = ustat_delta(16, &spec).unwrap();
        assert!((d16 / d8 - 2f64.sqrt()).abs() < 1e-14);
        assert!(ustat_delta(6, &spec).is_err());
        assert!(UStatSpec::new(1.0, 0.5, 1.0).is_err());
        assert!((spec.condition(8).unwrap().window_exponent() - 1.0 / 3.0).abs() < 1e-15);
    }

    #[test]
    fn ustat_cumulant_bound_values() {
        let e2 = std::f64::consts::E.powi(2);
        let want = 2.0 * e2 * (7.0 / 3.0) * 36.0 / 49.0;
        let v = ustat_cumulant_bound(3, 7, 1.0, 1.0).unwrap();
        assert!((v - want).abs() < 1e-12);
        assert!((v - 25.3339).abs() < 1e-4);
        assert!(ustat_cumulant_bound(3, 8, 1.0, 1.0).unwrap() < v);
        assert!(ustat_cumulant_bound(7, 7, 1.0, 1.0).is_err());
        assert!(ustat_cumulant_bound(0, 7, 1.0, 1.0).is_err());
        assert!(ustat_cumulant_bound(3, 6, 1.0, 1.0).is_err());
    }
}
