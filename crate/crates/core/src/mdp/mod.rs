//! Monte Carlo estimation of moderate-deviation rates, normal-zone ratios
//! and RSS corridor containment for any registered generator.

mod generator;
mod harness;

pub use generator::{
    ChainGenerator, CountGenerator, DppKernelConfig, Generator, GeneratorSpec, LatticeLaw, SubgraphGenerator,
    SumGenerator, UStatGenerator,
};
pub use harness::{
    corridor_check, corridor_check_with, estimate_tail_rate, estimate_tail_rate_with, normal_zone_ratio,
    normal_zone_ratio_with, wilson_interval, CorridorBounds, CorridorRecord, CorridorReport, LowerOpen,
    MdpExperiment, MdpReport, NormalZoneRecord, NormalZoneReport, StandardizationCheck, TailRecord, UpperOpen,
    MIN_TRIALS, STANDARDIZATION_SE, WILSON_Z,
};
