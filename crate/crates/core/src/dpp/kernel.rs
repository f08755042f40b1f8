use std::f64::consts::PI;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::SymMatrix;
use crate::quadrature::{nodes, Nodes, QuadratureRule};
use crate::specfun::{oscillator_wavefunctions, MAX_OSCILLATOR_ORDER, MAX_OSCILLATOR_X};

const SYMMETRY_TOL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum KernelSpec {
    /// K(x, y) = sin(x − y) / (π (x − y)).
    Sine,
    /// K(x, y) = Σ_{k<n} Ψ_k(x) Ψ_k(y).
    Gue { n: usize },
    /// An already discretized operator; the grid is ignored.
    Custom(SymMatrix),
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GridSpec {
    a: f64,
    b: f64,
    points: usize,
    rule: QuadratureRule,
}

impl GridSpec {
    pub fn new(a: f64, b: f64, points: usize, rule: QuadratureRule) -> Result<Self> {
        if !(a < b) || !a.is_finite() || !b.is_finite() {
            return Err(Error::Config(format!("grid interval [{a}, {b}] is empty or infinite")));
        }
        if points < 2 {
            return Err(Error::Config(format!("grid needs at least 2 points, got {points}")));
        }
        Ok(Self { a, b, points, rule })
    }

    /// Gauss–Legendre grid with `per_unit` points per unit length (at least 2).
    pub fn with_density(a: f64, b: f64, per_unit: f64) -> Result<Self> {
        let points = ((b - a) * per_unit).ceil().max(2.0) as usize;
        Self::new(a, b, points, QuadratureRule::GaussLegendre)
    }

    pub fn interval(&self) -> (f64, f64) {
        (self.a, self.b)
    }

    pub fn points(&self) -> usize {
        self.points
    }

    pub fn rule(&self) -> QuadratureRule {
        self.rule
    }

    pub fn nodes(&self) -> Result<Nodes> {
        nodes(self.rule, self.a, self.b, self.points)
    }
}

/// sin(d) / (π d), with the limit 1/π at d = 0.
pub fn sine_kernel(x: f64, y: f64) -> f64 {
    let d = x - y;
    if d.abs() < 1e-4 {
        let d2 = d * d;
        (1.0 - d2 / 6.0 + d2 * d2 / 120.0) / PI
    } else {
        d.sin() / (PI * d)
    }
}

/// W^{1/2} K W^{1/2} on the grid nodes.
pub fn build_kernel_matrix(k: &KernelSpec, g: &GridSpec) -> Result<SymMatrix> {
    let m = match k {
        KernelSpec::Custom(m) => {
            if m.asymmetry() > SYMMETRY_TOL * m.max_abs().max(1.0) {
                return Err(Error::Config("custom kernel matrix is not symmetric within 1e-12".into()));
            }
            return Ok(m.clone());
        }
        KernelSpec::Sine => {
            let q = g.nodes()?;
            let sw: Vec<f64> = q.weights.iter().map(|w| w.sqrt()).collect();
            symmetric_from_upper(q.points.len(), |i, j| sw[i] * sw[j] * sine_kernel(q.points[i], q.points[j]))
        }
        KernelSpec::Gue { n } => {
            if *n == 0 || *n > MAX_OSCILLATOR_ORDER + 1 {
                return Err(Error::Config(format!(
                    "GUE kernel dimension must lie in 1..={}, got {n}",
                    MAX_OSCILLATOR_ORDER + 1
                )));
            }
            let (a, b) = g.interval();
            if a < -MAX_OSCILLATOR_X || b > MAX_OSCILLATOR_X {
                return Err(Error::Config(format!(
                    "GUE kernel interval must lie within [-{MAX_OSCILLATOR_X}, {MAX_OSCILLATOR_X}]"
                )));
            }
            let q = g.nodes()?;
            let psi: Vec<Vec<f64>> = q
                .points
                .iter()
                .zip(&q.weights)
                .map(|(&x, &w)| {
                    let sw = w.sqrt();
                    oscillator_wavefunctions(*n, x).map(|v| v.into_iter().map(|p| p * sw).collect())
                })
                .collect::<Result<_>>()?;
            symmetric_from_upper(psi.len(), |i, j| psi[i].iter().zip(&psi[j]).map(|(a, b)| a * b).sum())
        }
    };
    if m.asymmetry() > 0.0 {
        return Err(Error::Numerical("assembled kernel matrix is not symmetric".into()));
    }
    Ok(m)
}

fn symmetric_from_upper(dim: usize, f: impl Fn(usize, usize) -> f64) -> SymMatrix {
    let mut m = SymMatrix::zeros(dim);
    for i in 0..dim {
        for j in i..dim {
            let v = f(i, j);
            m.set(i, j, v);
            m.set(j, i, v);
        }
    }
    m
}

/// Parses a whitespace-separated square matrix, one row per line. Blank
/// lines and lines starting with `#` are skipped.
pub fn parse_kernel_matrix(text: &str) -> Result<SymMatrix> {
    let rows: Vec<Vec<f64>> = text
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .enumerate()
        .map(|(i, l)| {
            l.split_whitespace()
                .map(|t| {
                    t.parse::<f64>()
                        .map_err(|_| Error::Config(format!("row {}: '{t}' is not a number", i + 1)))
                })
                .collect()
        })
        .collect::<Result<_>>()?;
    let m = SymMatrix::from_rows(&rows).map_err(|e| Error::Config(e.to_string()))?;
    if m.asymmetry() > SYMMETRY_TOL * m.max_abs().max(1.0) {
        return Err(Error::Config(format!("kernel matrix is not symmetric (defect {:e})", m.asymmetry())));
    }
    Ok(m)
}

pub fn read_kernel_matrix(path: &Path) -> Result<SymMatrix> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Config(format!("cannot read {}: {e}", path.display())))?;
    parse_kernel_matrix(&text)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sine_diagonal() {
        let g = GridSpec::new(-2.0, 2.0, 9, QuadratureRule::Midpoint).unwrap();
        let m = build_kernel_matrix(&KernelSpec::Sine, &g).unwrap();
        for i in 0..9 {
            assert!((m.get(i, i) - (4.0 / 9.0) / PI).abs() < 1e-15);
        }
        assert_eq!(m.asymmetry(), 0.0);
        assert!((sine_kernel(0.0, 5e-5) - sine_kernel(0.0, 1.1e-4)).abs() < 1e-8);
    }

    #[test]
    fn gue_trace_counts_points() {
        let g = GridSpec::new(-10.0, 10.0, 120, QuadratureRule::GaussLegendre).unwrap();
        let m = build_kernel_matrix(&KernelSpec::Gue { n: 10 }, &g).unwrap();
        assert!((m.trace() - 10.0).abs() < 1e-8);
        let bad = GridSpec::new(-60.0, 10.0, 12, QuadratureRule::GaussLegendre).unwrap();
        assert!(build_kernel_matrix(&KernelSpec::Gue { n: 10 }, &bad).is_err());
    }

    #[test]
    fn parse_matrix() {
        let m = parse_kernel_matrix("# k\n0.5 0.1\n0.1 0.25\n\n").unwrap();
        assert_eq!(m.get(0, 1), 0.1);
        assert!(parse_kernel_matrix("1 2\n3 4\n").is_err());
        assert!(parse_kernel_matrix("1 2\n3\n").is_err());
        assert!(parse_kernel_matrix("1 x\nx 1\n").is_err());
    }

    #[test]
    fn grid_validation() {
        assert!(GridSpec::new(1.0, 1.0, 4, QuadratureRule::Midpoint).is_err());
        assert!(GridSpec::new(0.0, 1.0, 1, QuadratureRule::Midpoint).is_err());
        assert_eq!(GridSpec::with_density(-5.0, 5.0, 4.0).unwrap().points(), 40);
    }
}
