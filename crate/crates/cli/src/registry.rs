//! Registry of experiment kinds for `list-experiments`.

use serde::Serialize;

use crate::config::Kind;

#[derive(Debug, Clone, Serialize)]
pub struct Param {
    pub name: &'static str,
    #[serde(rename = "type")]
    pub ty: &'static str,
    pub default: Option<&'static str>,
    pub description: &'static str,
}

#[derive(Debug, Clone, Serialize)]
pub struct Entry {
    pub kind: &'static str,
    /// Part of the theory the experiment exercises.
    pub topic: &'static str,
    pub description: &'static str,
    pub params: Vec<Param>,
}

const fn param(name: &'static str, ty: &'static str, default: Option<&'static str>, description: &'static str) -> Param {
    Param { name, ty, default, description }
}

const ORDER: Param = param("order", "integer", Some("4"), "highest empirical cumulant order, at most 8");

fn common() -> Vec<Param> {
    vec![
        param("trials", "integer", Some("100000"), "Monte Carlo draws (top level)"),
        param("seed", "u64", Some("0"), "root seed (top level)"),
    ]
}

pub fn entries() -> Vec<Entry> {
    Kind::ALL
        .into_iter()
        .map(|kind| {
            let (topic, description, mut params) = match kind {
                Kind::Subgraph => (
                    "subgraph counts in G(n, p) via dependency graphs",
                    "standardized motif counts: empirical cumulants against the dependency-graph bound",
                    vec![
                        param("n", "integer", None, "vertices"),
                        param("p", "float", None, "edge probability in [0, 1]"),
                        param("motif", "string", Some("triangle"), "edge, triangle, path-L, cycle-L, star-L, complete-L"),
                        ORDER,
                    ],
                ),
                Kind::Chain => (
                    "sums of products of neighbours (dependency graph of degree two)",
                    "standardized sum of X_i X_(i+1): empirical cumulants against the dependency-graph bound",
                    vec![
                        param("n", "integer", None, "inputs"),
                        param("law", "table", Some("{ family = \"rademacher\" }"), "centered input law"),
                        ORDER,
                    ],
                ),
                Kind::Ustat => (
                    "non-degenerate U-statistics of degree two",
                    "standardized U-statistic: empirical cumulants against the moment-condition bound",
                    vec![
                        param("n", "integer", None, "sample size"),
                        param("kernel", "string", None, "sum, product, product-plus-sum, min-centered"),
                        param("law", "table", Some("{ family = \"rademacher\" }"), "input law"),
                        ORDER,
                    ],
                ),
                Kind::HeteroSum => (
                    "independent heterogeneous summands under Bernstein's condition",
                    "standardized sum of scaled Rademacher signs: empirical cumulants against the Bernstein bound",
                    vec![param("sigmas", "float list", None, "summand standard deviations"), ORDER],
                ),
                Kind::Dpp => (
                    "occupation counts of determinantal point processes",
                    "sampled occupation law against the exact Poisson-binomial law",
                    vec![
                        param("kernel", "table", None, "{ family = \"sine\" }, { family = \"gue\", n = N } or { family = \"custom\", path = P }"),
                        param("a", "float", None, "left end of the interval"),
                        param("b", "float", None, "right end of the interval"),
                        param("points", "integer", None, "quadrature points"),
                        param("rule", "string", Some("gauss-legendre"), "gauss-legendre or midpoint"),
                        param("goodness_tol", "float", Some("1e-6"), "eigenvalue slack outside [0, 1]"),
                    ],
                ),
                Kind::RmtExact => (
                    "log characteristic polynomial of circular beta ensembles",
                    "exact cumulants from polygamma sums, Selberg finite differences and per-beta brackets",
                    vec![
                        param("beta", "integer", None, "1, 2 or 4"),
                        param("n", "integer", None, "matrix size"),
                        param("j_max", "integer", Some("6"), "highest cumulant order, at most 16"),
                        param("index_range", "string", Some("zero-to-n-minus-one"), "Selberg product range"),
                    ],
                ),
                Kind::MdpSweep => (
                    "moderate deviations with Gaussian rate x^2/2",
                    "tail-rate, normal-zone or corridor sweep over an x grid",
                    vec![
                        param("generator", "table", None, "generator spec with its own kind field"),
                        param("a_n", "float", None, "scaling, strictly greater than 1"),
                        param("x_grid", "float list", None, "strictly increasing, non-negative"),
                        param("mode", "string", Some("rate"), "rate, normal-zone or corridor"),
                        param("allow_rare", "bool", Some("false"), "permit thresholds beyond the rare-event guard"),
                    ],
                ),
            };
            let mut all = common();
            if kind == Kind::RmtExact {
                all.clear();
            }
            all.append(&mut params);
            Entry { kind: kind.name(), topic, description, params: all }
        })
        .collect()
}

pub fn render_text(entries: &[Entry]) -> String {
    let mut out = String::new();
    for e in entries {
        out.push_str(&format!("{}  [{}]\n  {}\n", e.kind, e.topic, e.description));
        for p in &e.params {
            let d = p.default.map(|d| format!(" (default {d})")).unwrap_or_default();
            out.push_str(&format!("    {:<14} {:<10} {}{d}\n", p.name, p.ty, p.description));
        }
    }
    out
}
