//! Exact moment/cumulant conversion by set-partition sums, and plug-in
//! cumulant estimation from samples.

mod algebra;
mod empirical;
mod partitions;

pub use algebra::{cumulants_to_moments, moments_to_cumulants, CumulantSequence, MomentSequence};
pub use empirical::{
    batched_standard_errors, empirical_cumulants, EmpiricalCumulants, SampleBatch, MAX_EMPIRICAL_ORDER,
};
pub use partitions::{
    bell_number, block_profiles, enumerate_partitions, partitions, stirling2, BlockProfile,
    SetPartition, MAX_PARTITION_ORDER, MAX_STIRLING_ORDER,
};
