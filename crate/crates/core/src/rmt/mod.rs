//! Exact cumulants of Re log Z for the circular ensembles, with Z the
//! characteristic polynomial at 1, via the Selberg moment product.

mod ensemble;
mod zeta_sums;

pub use ensemble::{
    cbe_condition, exact_cumulant, finite_difference_cumulant, selberg_log_moment, selberg_log_moment_with,
    variance_floor_check, CbeCondition, CircularEnsembleSpec, IndexRange, VarianceFloor, FD_STEP,
    MAX_CUMULANT_ORDER,
};
pub use zeta_sums::{zeta_double_sum, zeta_sum_bound, DoubleSum, TRUNCATION_TERMS};
