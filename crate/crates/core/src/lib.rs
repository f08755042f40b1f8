//! Cumulant bounds, exact cumulant formulas and moderate-deviation tooling.

#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::excessive_precision)]

pub mod bounds;
pub mod cumulants;
pub mod dpp;
pub mod error;
pub mod generators;
pub mod linalg;
pub mod mc;
pub mod mdp;
pub mod quadrature;
pub mod rmt;
pub mod rng;
pub mod scalar;
pub mod serde_ext;
pub mod specfun;

pub use error::{Error, Result};
pub use scalar::{Real, Scalar};

pub type MomentsF64 = cumulants::MomentSequence<f64>;
pub type CumulantsF64 = cumulants::CumulantSequence<f64>;
pub type MomentsExact = cumulants::MomentSequence<num_rational::BigRational>;
pub type CumulantsExact = cumulants::CumulantSequence<num_rational::BigRational>;
pub type ConditionF64 = bounds::CumulantCondition<f64>;
pub type RssF64 = bounds::RssQuantities<f64>;
pub type DependencySummaryF64 = bounds::DependencyGraphSummary<f64>;
pub type UStatSpecF64 = bounds::UStatSpec<f64>;
