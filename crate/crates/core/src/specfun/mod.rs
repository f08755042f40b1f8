//! Special functions: normal distribution, log-gamma, polygamma, Hurwitz
//! zeta, and oscillator wavefunctions. All real-argument, `f64`.

mod gamma;
mod hermite;
mod normal;
mod polygamma;
mod zeta;

pub use gamma::{log_gamma, log_gamma_shift};
pub use hermite::{oscillator_wavefunction, oscillator_wavefunctions, MAX_OSCILLATOR_ORDER, MAX_OSCILLATOR_X};
pub use normal::{mills_ratio, std_normal_cdf, std_normal_pdf, std_normal_sf};
pub use polygamma::{polygamma, MAX_POLYGAMMA_ORDER};
pub use zeta::{hurwitz_zeta, hurwitz_zeta_with_error, riemann_zeta};

/// Even-index Bernoulli numbers B_2, B_4, ..., B_20.
pub(crate) const BERNOULLI_EVEN: [f64; 10] = [
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
    -3617.0 / 510.0,
    43867.0 / 798.0,
    -174611.0 / 330.0,
];

use crate::error::{Error, Result};

pub(crate) fn require_finite(what: &'static str, x: f64) -> Result<()> {
    if x.is_finite() {
        Ok(())
    } else {
        Err(Error::Domain { what, value: x, domain: "finite reals" })
    }
}
