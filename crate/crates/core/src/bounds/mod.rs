//! Closed-form calculators: the cumulant condition, the
//! Rudzkis–Saulis–Statulevičius corridor, Kolmogorov bounds, and the Δ_n
//! formulas of each application.

mod applications;
mod condition;
mod rss;

pub use applications::{
    dependency_graph_bound, dependency_graph_condition, subgraph_delta, subgraph_growth_exponents, ustat_c_sigma,
    ustat_cumulant_bound, ustat_delta, DependencyGraphSummary, MotifSpec, SubgraphDelta,
    UStatSpec, USTAT_MIN_N,
};
pub use condition::{
    bernstein_delta, check_cumulant_condition, condition_bound, kolmogorov_bound, mdp_window,
    ConditionReport, CumulantCondition, OrderMargin,
};
pub use rss::{rss_corridor, rss_delta_gamma, rss_psi, Corridor, RssQuantities};
