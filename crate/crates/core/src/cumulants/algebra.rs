use serde::{Deserialize, Serialize};

use super::partitions::{block_profiles, MAX_PARTITION_ORDER};
use crate::error::{Error, Result};
use crate::linalg::{sym_eigen, SymMatrix};
use crate::scalar::Scalar;

/// Raw moments `m_1, ..., m_J` (with `m_0 = 1` implied).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MomentSequence<T> {
    values: Vec<T>,
}

/// Cumulants `Γ_1, ..., Γ_J`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CumulantSequence<T> {
    values: Vec<T>,
}

macro_rules! sequence_common {
    ($name:ident) => {
        impl<T: Scalar> $name<T> {
            /// Wraps the values `x_1..x_J`; `J` must be at least 1.
            pub fn new(values: Vec<T>) -> Result<Self> {
                if values.is_empty() {
                    return Err(Error::Precondition(concat!(stringify!($name), " needs order J >= 1").into()));
                }
                Ok(Self { values })
            }

            pub fn order(&self) -> usize {
                self.values.len()
            }

            pub fn values(&self) -> &[T] {
                &self.values
            }

            pub fn into_values(self) -> Vec<T> {
                self.values
            }

            /// The `j`-th entry, 1-based.
            pub fn get(&self, j: usize) -> Option<&T> {
                j.checked_sub(1).and_then(|i| self.values.get(i))
            }
        }
    };
}

sequence_common!(MomentSequence);
sequence_common!(CumulantSequence);

impl MomentSequence<f64> {
    /// Whether the Hankel matrix `[m_{i+k}]`, `0 <= i, k <= floor(J/2)`, is
    /// positive semidefinite up to `tol` (relative to its largest entry).
    pub fn hankel_psd(&self, tol: f64) -> Result<bool> {
        let half = self.order() / 2;
        let dim = half + 1;
        let m = |k: usize| if k == 0 { 1.0 } else { self.values[k - 1] };
        let mut h = SymMatrix::zeros(dim);
        for i in 0..dim {
            for k in 0..dim {
                h.set(i, k, m(i + k));
            }
        }
        let scale = h.max_abs().max(1.0);
        let eig = sym_eigen(&h)?;
        Ok(eig.lambdas.iter().all(|&l| l >= -tol * scale))
    }
}

impl CumulantSequence<f64> {
    /// `Γ_1 ≈ 0` and `Γ_2 ≈ 1` within `tol`.
    pub fn is_standardized(&self, tol: f64) -> bool {
        let c1 = self.values[0];
        let c2 = self.values.get(1).copied().unwrap_or(f64::NAN);
        c1.abs() <= tol && (c2 - 1.0).abs() <= tol
    }
}

fn check_order(j: usize) -> Result<()> {
    if j > MAX_PARTITION_ORDER {
        return Err(Error::SizeLimit { what: "sequence order J", value: j, limit: MAX_PARTITION_ORDER });
    }
    Ok(())
}

fn falling_sign_factorial<T: Scalar>(q: usize) -> T {
    // (-1)^(q-1) (q-1)!
    let f: i64 = (1..q as i64).product();
    let v = T::from_i64(f);
    if q.is_multiple_of(2) {
        -v
    } else {
        v
    }
}

/// Leonov–Shiryaev partition sum:
/// `Γ_j = Σ_{π} (-1)^{|π|-1} (|π|-1)! Π_{B ∈ π} m_{|B|}`.
///
/// Set partitions with the same block sizes contribute identical terms, so
/// the sum runs over block-size profiles weighted by their partition counts.
pub fn moments_to_cumulants<T: Scalar>(m: &MomentSequence<T>) -> Result<CumulantSequence<T>> {
    check_order(m.order())?;
    let values = (1..=m.order())
        .map(|j| {
            let mut acc = T::zero();
            for profile in block_profiles(j)? {
                let q = profile.sizes.len();
                let mut term = falling_sign_factorial::<T>(q) * T::from_i64(profile.count as i64);
                for &s in &profile.sizes {
                    term = term * m.values[s - 1].clone();
                }
                acc = acc + term;
            }
            Ok(acc)
        })
        .collect::<Result<Vec<_>>>()?;
    CumulantSequence::new(values)
}

/// Inverse map: `m_j = Σ_{π} Π_{B ∈ π} Γ_{|B|}`.
pub fn cumulants_to_moments<T: Scalar>(c: &CumulantSequence<T>) -> Result<MomentSequence<T>> {
    check_order(c.order())?;
    let values = (1..=c.order())
        .map(|j| {
            let mut acc = T::zero();
            for profile in block_profiles(j)? {
                let mut term = T::from_i64(profile.count as i64);
                for &s in &profile.sizes {
                    term = term * c.values[s - 1].clone();
                }
                acc = acc + term;
            }
            Ok(acc)
        })
        .collect::<Result<Vec<_>>>()?;
    MomentSequence::new(values)
}
