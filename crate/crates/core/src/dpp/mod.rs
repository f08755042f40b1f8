//! Determinantal point processes through their Bernoulli spectral
//! representation: a discretized kernel's eigenvalues λ_k give the occupation
//! count as a sum of independent Bernoulli(λ_k).

mod kernel;
mod spectral;

pub use kernel::{build_kernel_matrix, parse_kernel_matrix, read_kernel_matrix, sine_kernel, GridSpec, KernelSpec};
pub use spectral::{
    dpp_mdp_window, occupation_moments, poisson_binomial_pmf, sample_occupation, sample_occupation_seeded,
    spectral_data, OccupationLaw, SpectralData, DEFAULT_GOODNESS_TOL, MAX_PMF_COUNT,
};
