use serde::{Deserialize, Serialize};

use super::laws::InputLaw;
use crate::error::{Error, Result};
use crate::quadrature::{nodes, QuadratureRule};
use crate::rng::SimRng;
use crate::scalar::factorial;
use crate::specfun::std_normal_pdf;

/// Largest sample size accepted by the pairwise sampler.
pub const USTAT_MAX_N: usize = 5000;

const NORMAL_CUTOFF: f64 = 12.0;
const NORMAL_NODES: usize = 96;

/// Registered symmetric kernels of degree two.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Kernel {
    /// h(x, y) = x + y
    Sum,
    /// h(x, y) = x y
    Product,
    /// h(x, y) = x y + x + y
    ProductPlusSum,
    /// h(x, y) = min(x, y) − E min(X₁, X₂)
    MinCentered,
    /// h(x, y) = 1
    Constant,
}

impl Kernel {
    pub const ALL: [Kernel; 5] =
        [Kernel::Sum, Kernel::Product, Kernel::ProductPlusSum, Kernel::MinCentered, Kernel::Constant];

    pub fn id(&self) -> &'static str {
        match self {
            Kernel::Sum => "sum",
            Kernel::Product => "product",
            Kernel::ProductPlusSum => "product-plus-sum",
            Kernel::MinCentered => "min-centered",
            Kernel::Constant => "constant",
        }
    }

    pub fn by_id(id: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|k| k.id() == id)
            .ok_or_else(|| Error::Config(format!("unknown kernel '{id}'")))
    }

    /// Kernel value before any centering offset.
    #[inline]
    pub fn raw(&self, x: f64, y: f64) -> f64 {
        match self {
            Kernel::Sum => x + y,
            Kernel::Product => x * y,
            Kernel::ProductPlusSum => x * y + x + y,
            Kernel::MinCentered => x.min(y),
            Kernel::Constant => 1.0,
        }
    }
}

/// Expectations over independent X, Y from `law`: atoms (x, weight) for the
/// outer variable, and an inner rule for E f(x, Y). For the normal law the
/// inner integral is split at y = x so kinks along the diagonal do not spoil
/// the rule.
struct Expectation<'a> {
    law: &'a InputLaw,
    atoms: Vec<(f64, f64)>,
}

impl<'a> Expectation<'a> {
    fn new(law: &'a InputLaw) -> Result<Self> {
        let atoms = match law {
            InputLaw::Discrete(d) => d.support().iter().copied().zip(d.probs().iter().copied()).collect(),
            InputLaw::StandardNormal => {
                let q = nodes(QuadratureRule::GaussLegendre, -NORMAL_CUTOFF, NORMAL_CUTOFF, 4 * NORMAL_NODES)?;
                q.points.iter().zip(&q.weights).map(|(&x, &w)| (x, w * std_normal_pdf(x))).collect()
            }
        };
        Ok(Self { law, atoms })
    }

    fn inner(&self, x: f64, f: &impl Fn(f64, f64) -> f64) -> Result<f64> {
        match self.law {
            InputLaw::Discrete(_) => Ok(self.atoms.iter().map(|&(y, w)| w * f(x, y)).sum()),
            InputLaw::StandardNormal => {
                let g = |y: f64| f(x, y) * std_normal_pdf(y);
                let mut s = 0.0;
                let c = x.clamp(-NORMAL_CUTOFF, NORMAL_CUTOFF);
                if c > -NORMAL_CUTOFF {
                    s += nodes(QuadratureRule::GaussLegendre, -NORMAL_CUTOFF, c, NORMAL_NODES)?.integrate(g);
                }
                if c < NORMAL_CUTOFF {
                    s += nodes(QuadratureRule::GaussLegendre, c, NORMAL_CUTOFF, NORMAL_NODES)?.integrate(g);
                }
                Ok(s)
            }
        }
    }

    /// E f(X, Y) together with E[f(X, Y) | X] at every outer atom.
    fn both(&self, f: &impl Fn(f64, f64) -> f64) -> Result<(f64, Vec<f64>)> {
        let cond: Vec<f64> = self.atoms.iter().map(|&(x, _)| self.inner(x, f)).collect::<Result<_>>()?;
        let total = self.atoms.iter().zip(&cond).map(|(&(_, w), c)| w * c).sum();
        Ok((total, cond))
    }
}

/// θ = E h, σ₁² = Var E[h | X₁], σ₂² = Var h.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct KernelMoments {
    pub theta: f64,
    pub sigma1sq: f64,
    pub sigma2sq: f64,
}

fn kernel_moments_raw(kernel: Kernel, offset: f64, law: &InputLaw) -> Result<KernelMoments> {
    let ex = Expectation::new(law)?;
    let h = |x: f64, y: f64| kernel.raw(x, y) - offset;
    let (theta, g) = ex.both(&h)?;
    let (e_h2, _) = ex.both(&|x: f64, y: f64| h(x, y).powi(2))?;
    let e_g2: f64 = ex.atoms.iter().zip(&g).map(|(&(_, w), v)| w * v * v).sum();
    Ok(KernelMoments {
        theta,
        sigma1sq: (e_g2 - theta * theta).max(0.0),
        sigma2sq: (e_h2 - theta * theta).max(0.0),
    })
}

/// Kernel moments for `law`, with the centering offset of `MinCentered` applied.
pub fn kernel_moments(kernel: Kernel, law: &InputLaw) -> Result<KernelMoments> {
    kernel_moments_raw(kernel, kernel_offset(kernel, law)?, law)
}

fn kernel_offset(kernel: Kernel, law: &InputLaw) -> Result<f64> {
    match kernel {
        Kernel::MinCentered => Ok(kernel_moments_raw(kernel, 0.0, law)?.theta),
        _ => Ok(0.0),
    }
}

/// Non-degenerate degree-two U-statistic on i.i.d. inputs.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct UStatConfig {
    n: usize,
    kernel: Kernel,
    law: InputLaw,
    offset: f64,
    moments: KernelMoments,
}

impl UStatConfig {
    pub fn new(n: usize, kernel: Kernel, law: InputLaw) -> Result<Self> {
        if n < 2 {
            return Err(Error::Precondition(format!("U-statistic needs n >= 2, got {n}")));
        }
        if n > USTAT_MAX_N {
            return Err(Error::SizeLimit { what: "U-statistic sample size", value: n, limit: USTAT_MAX_N });
        }
        check_symmetry(kernel, &law)?;
        let offset = kernel_offset(kernel, &law)?;
        let moments = kernel_moments_raw(kernel, offset, &law)?;
        Ok(Self { n, kernel, law, offset, moments })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn kernel(&self) -> Kernel {
        self.kernel
    }

    pub fn law(&self) -> &InputLaw {
        &self.law
    }

    pub fn moments(&self) -> KernelMoments {
        self.moments
    }

    /// σ₁² > 0 up to quadrature noise.
    pub fn is_degenerate(&self) -> bool {
        self.moments.sigma1sq <= 1e-12 * self.moments.sigma2sq.max(1e-300)
    }

    #[inline]
    pub fn h(&self, x: f64, y: f64) -> f64 {
        self.kernel.raw(x, y) - self.offset
    }

    /// Lee's formula for V U_n.
    pub fn variance(&self) -> f64 {
        ustat_variance(self.moments.sigma1sq, self.moments.sigma2sq, self.n).expect("n >= 2")
    }

    /// Smallest C with E|h|^j ≤ C^j (j!)^γ for 3 ≤ j ≤ j_max.
    pub fn moment_constant(&self, gamma: f64, j_max: usize) -> Result<f64> {
        if j_max < 3 {
            return Err(Error::Range(format!("j_max must be at least 3, got {j_max}")));
        }
        let ex = Expectation::new(&self.law)?;
        let mut c: f64 = 0.0;
        for j in 3..=j_max {
            let (m, _) = ex.both(&|x: f64, y: f64| self.h(x, y).abs().powi(j as i32))?;
            c = c.max((m / factorial::<f64>(j).powf(gamma)).powf(1.0 / j as f64));
        }
        Ok(c)
    }
}

fn check_symmetry(kernel: Kernel, law: &InputLaw) -> Result<()> {
    let mut rng = SimRng::from_seed_u64(0x5EED);
    for _ in 0..64 {
        let (x, y) = (law.sample(&mut rng), law.sample(&mut rng));
        let (a, b) = (kernel.raw(x, y), kernel.raw(y, x));
        if (a - b).abs() > 1e-12 * a.abs().max(1.0) {
            return Err(Error::Config(format!("kernel {} is not symmetric at ({x}, {y})", kernel.id())));
        }
    }
    Ok(())
}

/// V U_n = 4σ₁²/n · (n−2)/(n−1) + 2σ₂²/(n(n−1)).
pub fn ustat_variance(sigma1sq: f64, sigma2sq: f64, n: usize) -> Result<f64> {
    if n < 2 {
        return Err(Error::Precondition(format!("U-statistic variance needs n >= 2, got {n}")));
    }
    let nf = n as f64;
    Ok(4.0 * sigma1sq / nf * (nf - 2.0) / (nf - 1.0) + 2.0 * sigma2sq / (nf * (nf - 1.0)))
}

/// One draw of U_n on the given inputs.
pub fn ustatistic_of(cfg: &UStatConfig, xs: &[f64]) -> f64 {
    let mut s = 0.0;
    for (i, &x) in xs.iter().enumerate() {
        for &y in &xs[i + 1..] {
            s += cfg.h(x, y);
        }
    }
    let n = xs.len() as f64;
    s / (n * (n - 1.0) / 2.0)
}

pub fn sample_ustatistic(cfg: &UStatConfig, rng: &mut SimRng) -> f64 {
    let xs: Vec<f64> = (0..cfg.n).map(|_| cfg.law.sample(rng)).collect();
    ustatistic_of(cfg, &xs)
}

pub fn sample_ustatistic_seeded(cfg: &UStatConfig, seed: u64) -> f64 {
    sample_ustatistic(cfg, &mut SimRng::from_seed_u64(seed))
}

#[cfg(test)]
mod tests {
    use super::super::laws::DiscreteLaw;
    use super::*;

    #[test]
    fn sum_kernel_normal() {
        let cfg = UStatConfig::new(3, Kernel::Sum, InputLaw::StandardNormal).unwrap();
        let m = cfg.moments();
        assert!(m.theta.abs() < 1e-14);
        assert!((m.sigma1sq - 1.0).abs() < 1e-12);
        assert!((m.sigma2sq - 2.0).abs() < 1e-12);
        assert!((cfg.variance() - 4.0 / 3.0).abs() < 1e-12);
        let mut rng = SimRng::from_seed_u64(9);
        let xs: Vec<f64> = (0..3).map(|_| InputLaw::StandardNormal.sample(&mut rng)).collect();
        let u = ustatistic_of(&cfg, &xs);
        assert!((u - 2.0 / 3.0 * xs.iter().sum::<f64>()).abs() < 1e-14);
    }

    #[test]
    fn min_kernel_normal() {
        let cfg = UStatConfig::new(10, Kernel::MinCentered, InputLaw::StandardNormal).unwrap();
        let m = cfg.moments();
        assert!(m.theta.abs() < 1e-12);
        // E min = −1/√π, E min² = 1, so Var min = 1 − 1/π.
        let pi = std::f64::consts::PI;
        assert!((cfg.offset + 1.0 / pi.sqrt()).abs() < 1e-10);
        assert!((m.sigma2sq - (1.0 - 1.0 / pi)).abs() < 1e-10);
        assert!(!cfg.is_degenerate());
    }

    #[test]
    fn product_kernel_is_degenerate() {
        let law = InputLaw::Discrete(DiscreteLaw::rademacher());
        let cfg = UStatConfig::new(10, Kernel::Product, law).unwrap();
        assert!(cfg.is_degenerate());
        assert_eq!(cfg.moments().sigma2sq, 1.0);
    }

    #[test]
    fn product_plus_sum_rademacher_constant() {
        let law = InputLaw::Discrete(DiscreteLaw::rademacher());
        let cfg = UStatConfig::new(20, Kernel::ProductPlusSum, law).unwrap();
        let c = cfg.moment_constant(1.0, 20).unwrap();
        assert!((c - (30.0f64 / 24.0).powf(1.0 / 3.0)).abs() < 1e-14);
        let m = cfg.moments();
        assert_eq!((m.sigma1sq, m.sigma2sq), (1.0, 3.0));
    }

    #[test]
    fn constant_kernel() {
        let cfg = UStatConfig::new(5, Kernel::Constant, InputLaw::StandardNormal).unwrap();
        assert_eq!(sample_ustatistic_seeded(&cfg, 3), 1.0);
    }

    #[test]
    fn lee_formula() {
        assert!((ustat_variance(1.0, 2.0, 3).unwrap() - 4.0 / 3.0).abs() < 1e-15);
        assert!((ustat_variance(0.0, 2.0, 5).unwrap() - 0.2).abs() < 1e-15);
        let n = 1_000_000;
        assert!((n as f64 * ustat_variance(0.7, 3.0, n).unwrap() - 2.8).abs() < 1e-4);
        assert!(ustat_variance(1.0, 1.0, 1).is_err());
        assert!(UStatConfig::new(5001, Kernel::Sum, InputLaw::StandardNormal).is_err());
    }
}
