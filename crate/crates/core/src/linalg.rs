//! Dense symmetric matrices and the cyclic Jacobi eigensolver.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest dimension accepted by [`sym_eigen`].
pub const MAX_EIGEN_DIM: usize = 1024;
/// Sweeps allowed before the solver reports non-convergence.
pub const MAX_JACOBI_SWEEPS: usize = 100;
/// The solver stops once the off-diagonal Frobenius norm is below this
/// fraction of the full Frobenius norm.
pub const JACOBI_RELATIVE_TOL: f64 = 1e-12;

/// Square matrix in row-major order. Symmetry is checked, not enforced.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SymMatrix {
    dim: usize,
    data: Vec<f64>,
}

impl SymMatrix {
    pub fn zeros(dim: usize) -> Self {
        Self { dim, data: vec![0.0; dim * dim] }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m.set(i, i, 1.0);
        }
        m
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let dim = rows.len();
        if dim == 0 {
            return Err(Error::Precondition("matrix has no rows".into()));
        }
        if let Some((i, r)) = rows.iter().enumerate().find(|(_, r)| r.len() != dim) {
            return Err(Error::Precondition(format!(
                "row {} has {} entries, expected {dim}",
                i + 1,
                r.len()
            )));
        }
        Ok(Self { dim, data: rows.concat() })
    }

    /// Builds `m[i][k] = f(i, k)`.
    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> f64) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            for k in 0..dim {
                m.data[i * dim + k] = f(i, k);
            }
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn get(&self, i: usize, k: usize) -> f64 {
        self.data[i * self.dim + k]
    }

    #[inline]
    pub fn set(&mut self, i: usize, k: usize, v: f64) {
        self.data[i * self.dim + k] = v;
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|v| v * v).sum::<f64>().sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    /// Largest `|m[i][k] - m[k][i]|`.
    pub fn asymmetry(&self) -> f64 {
        let mut worst = 0.0f64;
        for i in 0..self.dim {
            for k in i + 1..self.dim {
                worst = worst.max((self.get(i, k) - self.get(k, i)).abs());
            }
        }
        worst
    }

    pub fn trace(&self) -> f64 {
        (0..self.dim).map(|i| self.get(i, i)).sum()
    }

    fn off_diagonal_norm(&self) -> f64 {
        let mut s = 0.0;
        for i in 0..self.dim {
            for k in 0..self.dim {
                if i != k {
                    s += self.get(i, k).powi(2);
                }
            }
        }
        s.sqrt()
    }
}

/// Eigenvalues in descending order with orthonormal eigenvectors.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Eigen {
    pub lambdas: Vec<f64>,
    /// `vectors[k]` is the unit eigenvector for `lambdas[k]`.
    pub vectors: Vec<Vec<f64>>,
    pub sweeps: usize,
}

impl Eigen {
    /// `V Λ Vᵀ`.
    pub fn reconstruct(&self) -> SymMatrix {
        let n = self.lambdas.len();
        SymMatrix::from_fn(n, |i, k| {
            self.lambdas
                .iter()
                .zip(&self.vectors)
                .map(|(l, v)| l * v[i] * v[k])
                .sum()
        })
    }

    /// Largest `|<v_a, v_b> - δ_ab|`.
    pub fn orthonormality_defect(&self) -> f64 {
        let mut worst = 0.0f64;
        for (a, va) in self.vectors.iter().enumerate() {
            for (b, vb) in self.vectors.iter().enumerate().skip(a) {
                let dot: f64 = va.iter().zip(vb).map(|(x, y)| x * y).sum();
                let target = if a == b { 1.0 } else { 0.0 };
                worst = worst.max((dot - target).abs());
            }
        }
        worst
    }
}

/// Cyclic Jacobi eigendecomposition of a symmetric matrix.
pub fn sym_eigen(m: &SymMatrix) -> Result<Eigen> {
    let n = m.dim();
    if n == 0 {
        return Err(Error::Precondition("empty matrix".into()));
    }
    if n > MAX_EIGEN_DIM {
        return Err(Error::SizeLimit { what: "eigensolver dimension", value: n, limit: MAX_EIGEN_DIM });
    }
    let norm = m.frobenius_norm();
    let asym = m.asymmetry();
    if asym > 1e-12 * norm.max(1.0) {
        return Err(Error::Precondition(format!("matrix is not symmetric (max defect {asym:e})")));
    }

    let mut a = m.clone();
    let mut v = SymMatrix::identity(n);
    let target = JACOBI_RELATIVE_TOL * norm;
    let mut sweeps = 0;
    while a.off_diagonal_norm() > target {
        if sweeps == MAX_JACOBI_SWEEPS {
            return Err(Error::Numerical(format!(
                "Jacobi eigensolver did not converge in {MAX_JACOBI_SWEEPS} sweeps (off-diagonal norm {:e})",
                a.off_diagonal_norm()
            )));
        }
        sweeps += 1;
        for p in 0..n {
            for q in p + 1..n {
                let apq = a.get(p, q);
                if apq == 0.0 {
                    continue;
                }
                let tau = (a.get(q, q) - a.get(p, p)) / (2.0 * apq);
                let t = if tau >= 0.0 {
                    1.0 / (tau + (1.0 + tau * tau).sqrt())
                } else {
                    -1.0 / (-tau + (1.0 + tau * tau).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;
                rotate(&mut a, &mut v, p, q, c, s, t, apq);
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&x, &y| a.get(y, y).total_cmp(&a.get(x, x)));
    let lambdas = order.iter().map(|&k| a.get(k, k)).collect();
    let vectors = order.iter().map(|&k| (0..n).map(|i| v.get(i, k)).collect()).collect();
    Ok(Eigen { lambdas, vectors, sweeps })
}

#[allow(clippy::too_many_arguments)]
fn rotate(a: &mut SymMatrix, v: &mut SymMatrix, p: usize, q: usize, c: f64, s: f64, t: f64, apq: f64) {
    let n = a.dim();
    for k in 0..n {
        if k == p || k == q {
            continue;
        }
        let akp = a.get(k, p);
        let akq = a.get(k, q);
        let new_kp = c * akp - s * akq;
        let new_kq = s * akp + c * akq;
        a.set(k, p, new_kp);
        a.set(p, k, new_kp);
        a.set(k, q, new_kq);
        a.set(q, k, new_kq);
    }
    a.set(p, p, a.get(p, p) - t * apq);
    a.set(q, q, a.get(q, q) + t * apq);
    a.set(p, q, 0.0);
    a.set(q, p, 0.0);
    for k in 0..n {
        let vkp = v.get(k, p);
        let vkq = v.get(k, q);
        v.set(k, p, c * vkp - s * vkq);
        v.set(k, q, s * vkp + c * vkq);
    }
}
