//! Execution of each experiment kind into a plot-ready table.

use cumdev_core::bounds::{condition_bound, dependency_graph_bound, kolmogorov_bound, mdp_window, DependencyGraphSummary};
use cumdev_core::cumulants::{batched_standard_errors, empirical_cumulants, SampleBatch, MAX_EMPIRICAL_ORDER};
use cumdev_core::dpp::{
    build_kernel_matrix, dpp_mdp_window, occupation_moments, poisson_binomial_pmf, read_kernel_matrix,
    sample_occupation, spectral_data, GridSpec, KernelSpec,
};
use cumdev_core::generators::{dependency_summary_for_subgraphs, ChainConfig, GnpConfig, Motif};
use cumdev_core::mdp::{
    corridor_check_with, estimate_tail_rate_with, normal_zone_ratio_with, DppKernelConfig, GeneratorSpec,
    MdpExperiment,
};
use cumdev_core::rmt::{cbe_condition, exact_cumulant, finite_difference_cumulant, variance_floor_check, CircularEnsembleSpec, FD_STEP};
use cumdev_core::rng::stream_seed;
use cumdev_core::{mc, Error};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::config::{DppParams, ExperimentConfig, MdpSweepParams, Params, RmtExactParams, SweepMode};
use crate::CliError;

/// Batches used for the standard errors of empirical cumulants.
pub const SE_BATCHES: usize = 50;

/// Kind-specific result: a JSON summary and a numeric table.
/// Non-finite cells are stored as `None`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Payload {
    pub kind: String,
    pub summary: Value,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Option<f64>>>,
}

fn cell(v: f64) -> Option<f64> {
    v.is_finite().then_some(v)
}

fn opt(v: Option<f64>) -> Option<f64> {
    v.and_then(cell)
}

fn flag(b: bool) -> Option<f64> {
    Some(if b { 1.0 } else { 0.0 })
}

fn columns(names: &[&str]) -> Vec<String> {
    names.iter().map(|s| s.to_string()).collect()
}

fn module_error(module: &str) -> impl Fn(Error) -> CliError + '_ {
    move |e| {
        let msg = format!("{module}: {e}");
        if e.is_numerical() {
            CliError::Numerical(msg)
        } else {
            CliError::Validation(msg)
        }
    }
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("report serializes")
}

pub fn run(cfg: &ExperimentConfig) -> Result<Payload, CliError> {
    let kind = cfg.kind.name().to_string();
    let (summary, columns, rows) = match cfg.params()? {
        Params::Cumulant { spec, order } => cumulant_table(&spec, order, cfg.trials, cfg.seed)?,
        Params::Dpp(p) => dpp_table(p, cfg.trials, cfg.seed)?,
        Params::RmtExact(p) => rmt_table(p)?,
        Params::MdpSweep(p) => mdp_table(p, cfg.trials, cfg.seed)?,
    };
    Ok(Payload { kind, summary, columns, rows })
}

type Table = (Value, Vec<String>, Vec<Vec<Option<f64>>>);

/// Dependency-graph summary for the kinds that have one.
fn dependency_summary(spec: &GeneratorSpec, aux: u64) -> Result<Option<DependencyGraphSummary<f64>>, Error> {
    Ok(match spec {
        GeneratorSpec::Subgraph { n, p, motif } => {
            let cfg = GnpConfig::new(*n, *p, Motif::by_name(motif)?)?;
            Some(dependency_summary_for_subgraphs(&cfg, aux)?.summary)
        }
        GeneratorSpec::Chain { n, law } => Some(ChainConfig::iid(*n, law.build_discrete()?)?.dependency_summary()?),
        _ => None,
    })
}

fn cumulant_table(spec: &GeneratorSpec, order: usize, trials: usize, seed: u64) -> Result<Table, CliError> {
    let err = module_error("generators");
    if order == 0 || order > MAX_EMPIRICAL_ORDER {
        return Err(CliError::Validation(format!("order must lie in 1..={MAX_EMPIRICAL_ORDER}, got {order}")));
    }
    if trials < SE_BATCHES * order.max(2) {
        return Err(CliError::Validation(format!(
            "trials must be at least {} for order {order}",
            SE_BATCHES * order.max(2)
        )));
    }
    let aux = stream_seed(seed, u64::MAX);
    let g = spec.build(aux).map_err(&err)?;
    let dep = dependency_summary(spec, aux).map_err(&err)?;

    let values = mc::draw_values(trials, seed, |rng| g.draw(rng));
    let est = empirical_cumulants(&SampleBatch::new(values.clone(), seed, g.id()).map_err(&err)?, order)
        .map_err(module_error("cumulants"))?;
    let se = batched_standard_errors(&values, order, SE_BATCHES).map_err(module_error("cumulants"))?;
    let cond = g.condition();
    let mut rows = Vec::with_capacity(order);
    for j in 1..=order {
        let bound = cond.filter(|_| j >= 3).map(|c| condition_bound(j, &c));
        let dep_bound = match &dep {
            Some(d) if j >= 3 => Some(dependency_graph_bound(j, d).map_err(module_error("bounds"))?),
            _ => None,
        };
        rows.push(vec![Some(j as f64), cell(est.cumulants.values()[j - 1]), cell(se[j - 1]), opt(bound), opt(dep_bound)]);
    }
    let summary = json!({
        "generator": g.id(),
        "trials": trials,
        "seed": seed,
        "condition": cond,
        "mdp_window": cond.map(|c| mdp_window(&c)),
        "kolmogorov_bound": cond.map(|c| kolmogorov_bound(&c)),
        "dependency_summary": dep,
    });
    Ok((summary, columns(&["j", "cumulant", "std_error", "condition_bound", "dependency_bound"]), rows))
}

fn dpp_table(p: &DppParams, trials: usize, seed: u64) -> Result<Table, CliError> {
    let err = module_error("dpp");
    let spec = match &p.kernel {
        DppKernelConfig::Sine => KernelSpec::Sine,
        DppKernelConfig::Gue { n } => KernelSpec::Gue { n: *n },
        DppKernelConfig::Custom { path } => KernelSpec::Custom(read_kernel_matrix(path).map_err(&err)?),
    };
    let grid = GridSpec::new(p.a, p.b, p.points, p.rule).map_err(&err)?;
    let s = spectral_data(&build_kernel_matrix(&spec, &grid).map_err(&err)?, p.goodness_tol).map_err(&err)?;
    let law = poisson_binomial_pmf(s.lambdas()).map_err(&err)?;
    let len = law.pmf.len();
    let counts = mc::run_chunks(trials, seed, |rng, n| {
        let mut h = vec![0u64; len];
        for _ in 0..n {
            h[sample_occupation(&s, rng) as usize] += 1;
        }
        h
    })
    .into_iter()
    .fold(vec![0u64; len], |mut a, h| {
        a.iter_mut().zip(h).for_each(|(x, y)| *x += y);
        a
    });
    let (mean, var) = occupation_moments(&s);
    let nf = trials as f64;
    let emp_mean = counts.iter().enumerate().map(|(k, &c)| k as f64 * c as f64).sum::<f64>() / nf;
    let emp_var =
        counts.iter().enumerate().map(|(k, &c)| (k as f64 - emp_mean).powi(2) * c as f64).sum::<f64>() / (nf - 1.0);
    let last = counts.iter().rposition(|&c| c > 0).unwrap_or(0).max(law.pmf.iter().rposition(|&q| q > 1e-15).unwrap_or(0));
    let rows = (0..=last)
        .map(|k| vec![Some(k as f64), cell(law.pmf[k]), cell(counts[k] as f64 / nf), Some(counts[k] as f64)])
        .collect();
    let summary = json!({
        "eigenvalues": s.lambdas().len(),
        "clamp_magnitude": s.clamp_magnitude(),
        "mean": mean,
        "variance": var,
        "empirical_mean": emp_mean,
        "empirical_variance": emp_var,
        "total_variation": law.total_variation(&counts),
        "mdp_window": dpp_mdp_window(&s).ok(),
        "trials": trials,
        "seed": seed,
    });
    Ok((summary, columns(&["count", "exact_pmf", "empirical_pmf", "hits"]), rows))
}

fn rmt_table(p: &RmtExactParams) -> Result<Table, CliError> {
    let err = module_error("rmt");
    if p.j_max < 2 {
        return Err(CliError::Validation(format!("j_max must be at least 2, got {}", p.j_max)));
    }
    let e = CircularEnsembleSpec::new(p.beta, p.n).map_err(&err)?;
    let cbe = cbe_condition(&e).map_err(&err)?;
    let floor = variance_floor_check(&e).map_err(&err)?;
    let mut rows = Vec::new();
    for j in 1..=p.j_max {
        let g = exact_cumulant(&e, j).map_err(&err)?;
        let fd = if j <= 4 { Some(finite_difference_cumulant(&e, j, FD_STEP, p.index_range).map_err(&err)?) } else { None };
        let bracket = (j >= 3).then(|| cbe.bracket_bound(j));
        rows.push(vec![Some(j as f64), cell(g), cell(g / cbe.sigma.powi(j as i32)), opt(bracket), opt(fd)]);
    }
    let summary = json!({
        "beta": p.beta,
        "n": p.n,
        "index_range": p.index_range,
        "variance_floor": floor,
        "condition": cbe,
    });
    Ok((summary, columns(&["j", "cumulant", "standardized", "bracket_bound", "finite_difference"]), rows))
}

fn mdp_table(p: &MdpSweepParams, trials: usize, seed: u64) -> Result<Table, CliError> {
    let err = module_error("mdp");
    let exp = MdpExperiment {
        generator: p.generator.clone(),
        a_n: p.a_n,
        x_grid: p.x_grid.clone(),
        trials,
        root_seed: seed,
        allow_rare: p.allow_rare,
    };
    exp.validate().map_err(&err)?;
    let g = exp.build_generator().map_err(&err)?;
    Ok(match p.mode {
        SweepMode::Rate => {
            let r = estimate_tail_rate_with(&exp, g.as_ref()).map_err(&err)?;
            let rows = r
                .records
                .iter()
                .map(|t| {
                    vec![
                        Some(t.x),
                        Some(t.threshold),
                        Some(t.hit_count as f64),
                        Some(t.p_hat),
                        Some(t.wilson_interval.0),
                        Some(t.wilson_interval.1),
                        opt(t.empirical_rate),
                        cell(t.rate_interval.lower),
                        cell(t.rate_interval.upper),
                        Some(t.theoretical_rate),
                        flag(t.censored),
                        opt(t.exact_p),
                        opt(t.exact_rate),
                        t.corridor.and_then(|c| cell(c.lower)),
                        t.corridor.and_then(|c| cell(c.upper)),
                    ]
                })
                .collect();
            let cols = columns(&[
                "x",
                "threshold",
                "hits",
                "p_hat",
                "wilson_lower",
                "wilson_upper",
                "empirical_rate",
                "rate_lower",
                "rate_upper",
                "theoretical_rate",
                "censored",
                "exact_p",
                "exact_rate",
                "corridor_lower",
                "corridor_upper",
            ]);
            (to_value(&r), cols, rows)
        }
        SweepMode::NormalZone => {
            let r = normal_zone_ratio_with(&exp, g.as_ref()).map_err(&err)?;
            let rows = r
                .records
                .iter()
                .map(|t| {
                    vec![
                        Some(t.x),
                        Some(t.hit_count as f64),
                        Some(t.p_hat),
                        Some(t.wilson_interval.0),
                        Some(t.wilson_interval.1),
                        cell(t.normal_tail),
                        cell(t.ratio),
                        cell(t.ratio_interval.0),
                        cell(t.ratio_interval.1),
                        opt(t.exact_p),
                        opt(t.exact_ratio),
                    ]
                })
                .collect();
            let cols = columns(&[
                "x",
                "hits",
                "p_hat",
                "wilson_lower",
                "wilson_upper",
                "normal_tail",
                "ratio",
                "ratio_lower",
                "ratio_upper",
                "exact_p",
                "exact_ratio",
            ]);
            (to_value(&r), cols, rows)
        }
        SweepMode::Corridor => {
            let cond = g.condition().ok_or_else(|| {
                CliError::Validation(format!("mdp: generator '{}' has no known cumulant condition", g.id()))
            })?;
            let r = corridor_check_with(&exp, g.as_ref(), &cond).map_err(&err)?;
            let rows = r
                .records
                .iter()
                .map(|t| {
                    vec![
                        Some(t.x),
                        Some(t.hit_count as f64),
                        cell(t.log_ratio_interval.lower),
                        cell(t.log_ratio_interval.upper),
                        cell(t.corridor.lower),
                        cell(t.corridor.upper),
                        flag(t.intersects),
                        opt(t.exact_log_ratio),
                        t.exact_inside.and_then(flag),
                    ]
                })
                .collect();
            let cols = columns(&[
                "x",
                "hits",
                "log_ratio_lower",
                "log_ratio_upper",
                "corridor_lower",
                "corridor_upper",
                "intersects",
                "exact_log_ratio",
                "exact_inside",
            ]);
            (to_value(&r), cols, rows)
        }
    })
}
