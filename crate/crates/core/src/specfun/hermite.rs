use std::f64::consts::PI;

use crate::error::{Error, Result};

pub const MAX_OSCILLATOR_ORDER: usize = 200;
pub const MAX_OSCILLATOR_X: f64 = 50.0;

/// Ψ_k(x) = e^{−x²/4} H_k(x) / sqrt(sqrt(2π) k!), with H_k the
/// *probabilists'* Hermite polynomial (H_k(x) = (−1)^k e^{x²/2} d^k/dx^k e^{−x²/2},
/// so H_2(x) = x² − 1, not the physicists' 4x² − 2).
pub fn oscillator_wavefunction(k: usize, x: f64) -> Result<f64> {
    Ok(oscillator_wavefunctions(k + 1, x)?[k])
}

/// Ψ_0(x), ..., Ψ_{count−1}(x).
///
/// Uses the normalized three-term recurrence
/// Ψ_{k+1} = (x Ψ_k − √k Ψ_{k−1}) / √(k+1), which follows from
/// H_{k+1} = x H_k − k H_{k−1} and never forms H_k or k! directly.
pub fn oscillator_wavefunctions(count: usize, x: f64) -> Result<Vec<f64>> {
    if count == 0 || count - 1 > MAX_OSCILLATOR_ORDER {
        return Err(Error::Range(format!(
            "oscillator order {} outside 0..={MAX_OSCILLATOR_ORDER}",
            count as isize - 1
        )));
    }
    if !x.is_finite() || x.abs() > MAX_OSCILLATOR_X {
        return Err(Error::Range(format!("oscillator argument {x} outside [-{MAX_OSCILLATOR_X}, {MAX_OSCILLATOR_X}]")));
    }
    let mut out = Vec::with_capacity(count);
    let psi0 = (-0.25 * x * x).exp() / (2.0 * PI).powf(0.25);
    out.push(psi0);
    if count > 1 {
        out.push(x * psi0);
    }
    for k in 1..count.saturating_sub(1) {
        let kf = k as f64;
        let next = (x * out[k] - kf.sqrt() * out[k - 1]) / (kf + 1.0).sqrt();
        out.push(next);
    }
    Ok(out)
}
