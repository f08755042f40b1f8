//! Fixed quadrature rules on an interval.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum QuadratureRule {
    Midpoint,
    GaussLegendre,
}

/// Nodes and weights of a rule on `[a, b]`.
#[derive(Debug, Clone, PartialEq)]
pub struct Nodes {
    pub points: Vec<f64>,
    pub weights: Vec<f64>,
}

impl Nodes {
    pub fn integrate(&self, f: impl Fn(f64) -> f64) -> f64 {
        self.points.iter().zip(&self.weights).map(|(&x, &w)| w * f(x)).sum()
    }
}

pub fn nodes(rule: QuadratureRule, a: f64, b: f64, n: usize) -> Result<Nodes> {
    if !(a < b) || !a.is_finite() || !b.is_finite() {
        return Err(Error::Precondition(format!("quadrature interval [{a}, {b}] is empty or infinite")));
    }
    if n == 0 {
        return Err(Error::Precondition("quadrature needs at least one node".into()));
    }
    match rule {
        QuadratureRule::Midpoint => {
            let h = (b - a) / n as f64;
            Ok(Nodes {
                points: (0..n).map(|i| a + (i as f64 + 0.5) * h).collect(),
                weights: vec![h; n],
            })
        }
        QuadratureRule::GaussLegendre => {
            let (x, w) = gauss_legendre(n)?;
            let half = 0.5 * (b - a);
            let mid = 0.5 * (a + b);
            Ok(Nodes {
                points: x.iter().map(|t| mid + half * t).collect(),
                weights: w.iter().map(|v| half * v).collect(),
            })
        }
    }
}

/// Gauss–Legendre nodes (ascending) and weights on `[-1, 1]`, by Newton
/// iteration on `P_n` from Chebyshev-like initial guesses.
pub fn gauss_legendre(n: usize) -> Result<(Vec<f64>, Vec<f64>)> {
    let mut x = vec![0.0; n];
    let mut w = vec![0.0; n];
    let nf = n as f64;
    for i in 0..n.div_ceil(2) {
        let mut z = (std::f64::consts::PI * (i as f64 + 0.75) / (nf + 0.5)).cos();
        let mut converged = false;
        let mut dp = 0.0;
        for _ in 0..100 {
            let (p, d) = legendre_with_derivative(n, z);
            dp = d;
            let dz = p / d;
            z -= dz;
            if dz.abs() < 1e-15 {
                converged = true;
                break;
            }
        }
        if !converged {
            return Err(Error::Numerical(format!("Gauss-Legendre node {i} of {n} did not converge")));
        }
        let (_, d) = legendre_with_derivative(n, z);
        dp = if d != 0.0 { d } else { dp };
        let weight = 2.0 / ((1.0 - z * z) * dp * dp);
        x[i] = -z;
        x[n - 1 - i] = z;
        w[i] = weight;
        w[n - 1 - i] = weight;
    }
    if n % 2 == 1 {
        x[n / 2] = 0.0;
    }
    Ok((x, w))
}

fn legendre_with_derivative(n: usize, z: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = z;
    if n == 0 {
        return (1.0, 0.0);
    }
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * z * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let d = n as f64 * (z * p1 - p0) / (z * z - 1.0);
    (p1, d)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn integrates_polynomials_exactly() {
        let q = nodes(QuadratureRule::GaussLegendre, -1.0, 2.0, 6).unwrap();
        // Degree 11 is exact for 6 nodes: ∫_{-1}^{2} x^11 dx = (2^12 - 1)/12.
        let got = q.integrate(|x| x.powi(11));
        assert!((got - 4095.0 / 12.0).abs() < 1e-10, "{got}");
        assert!((q.weights.iter().sum::<f64>() - 3.0).abs() < 1e-14);
    }

    #[test]
    fn many_nodes_are_accurate() {
        let q = nodes(QuadratureRule::GaussLegendre, 0.0, std::f64::consts::PI, 64).unwrap();
        assert!((q.integrate(f64::sin) - 2.0).abs() < 1e-14);
        assert!(q.points.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn midpoint_weights() {
        let q = nodes(QuadratureRule::Midpoint, 0.0, 1.0, 4).unwrap();
        assert_eq!(q.points, vec![0.125, 0.375, 0.625, 0.875]);
        assert!(nodes(QuadratureRule::Midpoint, 1.0, 1.0, 4).is_err());
    }
}
