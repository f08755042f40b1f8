//! Seeded samplers and exact small-instance oracles: G(n,p) motif counts,
//! the chain statistic, degree-two U-statistics and heterogeneous sums.

mod chain;
mod gnp;
mod hetero;
mod laws;
mod motifs;
mod ustat;

pub use chain::{sample_chain, sample_chain_seeded, ChainConfig};
pub use gnp::{
    copies_in_complete, dependency_summary_for_subgraphs, enumerate_copies, exact_dependency_degree,
    exact_subgraph_mean, exact_triangle_variance, sample_subgraph_count, sample_subgraph_count_seeded,
    subgraph_degree_bound, subgraph_degree_count_bound, GnpConfig, Graph, SubgraphDependency, VarianceSource, COPY_ENUMERATION_MAX_N,
    GENERIC_MOTIF_MAX_N, SUBGRAPH_VARIANCE_TRIALS, TRIANGLE_MAX_N,
};
pub use hetero::{sample_hetero_sum, sample_hetero_sum_seeded, HeteroSumConfig, POPCOUNT_MAX_N};
pub use laws::{bernstein_condition_margin, BernsteinOrder, BernsteinReport, DiscreteLaw, InputLaw, LawSpec};
pub use motifs::{Motif, MAX_MOTIF_VERTICES};
pub use ustat::{
    kernel_moments, sample_ustatistic, sample_ustatistic_seeded, ustat_variance, ustatistic_of, Kernel,
    KernelMoments, UStatConfig, USTAT_MAX_N,
};
