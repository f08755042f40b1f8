use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::specfun::hurwitz_zeta_with_error;

/// Terms of the single-index series summed explicitly (must be even).
pub const TRUNCATION_TERMS: usize = 10_000;
const TAIL_RELATIVE_TOL: f64 = 1e-10;

fn check(j: usize, beta: u32) -> Result<()> {
    if j < 3 {
        return Err(Error::Range(format!("zeta double sums need j >= 3, got {j}")));
    }
    if j > 64 {
        return Err(Error::Range(format!("zeta double sums support j <= 64, got {j}")));
    }
    if !matches!(beta, 1 | 2 | 4) {
        return Err(Error::Config(format!("beta must be 1, 2 or 4, got {beta}")));
    }
    Ok(())
}

/// Closed-form upper bound for Σ_{r≥0} Σ_{s≥1} (s + rβ/2)^{−j}.
pub fn zeta_sum_bound(j: usize, beta: u32) -> Result<f64> {
    check(j, beta)?;
    Ok(match beta {
        1 => 2f64.powi(j as i32 - 1) * PI * PI / 3.0,
        _ => PI * PI / 6.0,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DoubleSum {
    pub value: f64,
    pub partial: f64,
    pub tail: f64,
    /// Estimated error of the tail evaluation.
    pub tail_error: f64,
}

/// Multiplicity of the value k (or k/2 for β = 1) among the pairs (r, s),
/// written as α k + β_parity for even and odd k.
fn multiplicity(beta: u32) -> ((f64, f64), (f64, f64)) {
    match beta {
        // 2s + r = m: floor(m/2) ways
        1 => ((0.5, 0.0), (0.5, -0.5)),
        // s + r = k: k ways
        2 => ((1.0, 0.0), (1.0, 0.0)),
        // s + 2r = k: ceil(k/2) ways
        _ => ((0.5, 0.0), (0.5, 0.5)),
    }
}

/// Σ_{r≥0} Σ_{s≥1} (s + rβ/2)^{−j}.
///
/// Grouping pairs by the value of s + rβ/2 gives a single series Σ_k c(k) k^{−j}
/// with c affine on even and on odd k. The first [`TRUNCATION_TERMS`] terms are
/// summed directly and the rest is evaluated with Hurwitz zeta functions; the
/// evaluation fails if the tail's error estimate is not below 1e−10 of the
/// partial sum.
pub fn zeta_double_sum(j: usize, beta: u32) -> Result<DoubleSum> {
    check(j, beta)?;
    let ((ae, be), (ao, bo)) = multiplicity(beta);
    let jf = j as f64;
    let ji = j as i32;
    let k_max = TRUNCATION_TERMS;
    let mut partial = 0.0;
    for k in (1..=k_max).rev() {
        let kf = k as f64;
        let c = if k % 2 == 0 { ae * kf + be } else { ao * kf + bo };
        partial += c / kf.powi(ji);
    }
    // Even k = 2t and odd k = 2t − 1 with t ≥ T.
    let t0 = (k_max / 2 + 1) as f64;
    let (z1e, e1e) = hurwitz_zeta_with_error(jf - 1.0, t0)?;
    let (z0e, e0e) = hurwitz_zeta_with_error(jf, t0)?;
    let (z1o, e1o) = hurwitz_zeta_with_error(jf - 1.0, t0 - 0.5)?;
    let (z0o, e0o) = hurwitz_zeta_with_error(jf, t0 - 0.5)?;
    let p1 = 2f64.powi(1 - ji);
    let p0 = 2f64.powi(-ji);
    let tail = ae * p1 * z1e + be * p0 * z0e + ao * p1 * z1o + bo * p0 * z0o;
    let tail_error = ae.abs() * p1 * e1e + be.abs() * p0 * e0e + ao.abs() * p1 * e1o + bo.abs() * p0 * e0o;
    let scale = if beta == 1 { 2f64.powi(ji) } else { 1.0 };
    let (partial, tail, tail_error) = (scale * partial, scale * tail, scale * tail_error);
    if !(tail_error < TAIL_RELATIVE_TOL * partial) {
        return Err(Error::Numerical(format!(
            "zeta double sum tail error {tail_error:e} is not below {TAIL_RELATIVE_TOL:e} of the partial sum {partial}"
        )));
    }
    Ok(DoubleSum { value: partial + tail, partial, tail, tail_error })
}
