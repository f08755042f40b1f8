use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use super::motifs::Motif;
use crate::bounds::{DependencyGraphSummary, MotifSpec};
use crate::error::{Error, Result};
use crate::mc;
use crate::rng::SimRng;

/// Largest n for the triangle counting path.
pub const TRIANGLE_MAX_N: usize = 2000;
/// Largest n for generic motif counting.
pub const GENERIC_MOTIF_MAX_N: usize = 200;
/// Largest n for enumerating all motif copies in K_n.
pub const COPY_ENUMERATION_MAX_N: usize = 11;
/// Draws used to estimate Var W when no closed form is available.
pub const SUBGRAPH_VARIANCE_TRIALS: usize = 1 << 16;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GnpConfig {
    n: usize,
    p: f64,
    motif: Motif,
}

impl GnpConfig {
    pub fn new(n: usize, p: f64, motif: Motif) -> Result<Self> {
        if !(0.0..=1.0).contains(&p) {
            return Err(Error::Domain { what: "edge probability p", value: p, domain: "[0, 1]" });
        }
        if p == 0.0 || p == 1.0 {
            return Err(Error::Degenerate(format!("edge probability {p} makes the statistic constant")));
        }
        if n < motif.vertices() {
            return Err(Error::Precondition(format!(
                "n = {n} is smaller than the motif ({} vertices)",
                motif.vertices()
            )));
        }
        let limit = if motif.is_triangle() { TRIANGLE_MAX_N } else { GENERIC_MOTIF_MAX_N };
        if n > limit {
            return Err(Error::SizeLimit { what: "G(n,p) vertex count", value: n, limit });
        }
        Ok(Self { n, p, motif })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn p(&self) -> f64 {
        self.p
    }

    pub fn motif(&self) -> &Motif {
        &self.motif
    }
}

/// Simple graph stored as adjacency bit rows.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    words: usize,
    rows: Vec<u64>,
}

impl Graph {
    pub fn empty(n: usize) -> Self {
        let words = n.div_ceil(64).max(1);
        Self { n, words, rows: vec![0; n * words] }
    }

    pub fn complete(n: usize) -> Self {
        let mut g = Self::empty(n);
        for a in 0..n {
            for b in a + 1..n {
                g.add_edge(a, b);
            }
        }
        g
    }

    /// G(n,p) draw: pairs (a, b), a < b, in lexicographic order, one uniform each.
    pub fn gnp(n: usize, p: f64, rng: &mut SimRng) -> Self {
        let mut g = Self::empty(n);
        for a in 0..n {
            for b in a + 1..n {
                if rng.bernoulli(p) {
                    g.add_edge(a, b);
                }
            }
        }
        g
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn add_edge(&mut self, a: usize, b: usize) {
        self.rows[a * self.words + b / 64] |= 1 << (b % 64);
        self.rows[b * self.words + a / 64] |= 1 << (a % 64);
    }

    #[inline]
    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.rows[a * self.words + b / 64] >> (b % 64) & 1 == 1
    }

    fn row(&self, a: usize) -> &[u64] {
        &self.rows[a * self.words..(a + 1) * self.words]
    }

    pub fn edge_count(&self) -> u64 {
        self.rows.iter().map(|w| w.count_ones() as u64).sum::<u64>() / 2
    }

    pub fn triangle_count(&self) -> u64 {
        let mut total = 0u64;
        for a in 0..self.n {
            let ra = self.row(a);
            for b in a + 1..self.n {
                if !self.has_edge(a, b) {
                    continue;
                }
                let rb = self.row(b);
                // Only third vertices c > b.
                let start = b + 1;
                for w in start / 64..self.words {
                    let mut m = ra[w] & rb[w];
                    if w == start / 64 {
                        m &= u64::MAX.checked_shl((start % 64) as u32).unwrap_or(0);
                    }
                    total += m.count_ones() as u64;
                }
            }
        }
        total
    }

    /// Injective edge-preserving maps from the motif into the graph.
    pub fn embedding_count(&self, motif: &Motif) -> u64 {
        let order = search_order(motif);
        let l = motif.vertices();
        let mut adj = vec![vec![false; l]; l];
        for &(a, b) in motif.edges() {
            adj[a][b] = true;
            adj[b][a] = true;
        }
        let mut image = vec![usize::MAX; l];
        let mut used = vec![false; self.n];
        let mut count = 0;
        self.extend(&order, 0, &adj, &mut image, &mut used, &mut count);
        count
    }

    fn extend(
        &self,
        order: &[usize],
        depth: usize,
        adj: &[Vec<bool>],
        image: &mut [usize],
        used: &mut [bool],
        count: &mut u64,
    ) {
        if depth == order.len() {
            *count += 1;
            return;
        }
        let v = order[depth];
        let anchor = order[..depth].iter().copied().find(|&u| adj[v][u]);
        let try_vertex = |x: usize, image: &mut [usize], used: &mut [bool], count: &mut u64| {
            if used[x] {
                return;
            }
            if order[..depth].iter().any(|&u| adj[v][u] && !self.has_edge(image[u], x)) {
                return;
            }
            image[v] = x;
            used[x] = true;
            self.extend(order, depth + 1, adj, image, used, count);
            used[x] = false;
        };
        match anchor {
            Some(u) => {
                let base = image[u];
                for (w, &word) in self.row(base).iter().enumerate() {
                    let mut m = word;
                    while m != 0 {
                        let x = w * 64 + m.trailing_zeros() as usize;
                        m &= m - 1;
                        try_vertex(x, image, used, count);
                    }
                }
            }
            None => {
                for x in 0..self.n {
                    try_vertex(x, image, used, count);
                }
            }
        }
    }

    /// Copies of the motif, counted up to automorphism.
    pub fn motif_count(&self, motif: &Motif) -> u64 {
        if motif.is_triangle() {
            self.triangle_count()
        } else if motif.vertices() == 2 {
            self.edge_count()
        } else {
            self.embedding_count(motif) / motif.automorphisms()
        }
    }
}

/// BFS order so each vertex after the first in its component has an earlier neighbour.
fn search_order(motif: &Motif) -> Vec<usize> {
    let l = motif.vertices();
    let mut order = Vec::with_capacity(l);
    let mut seen = vec![false; l];
    for root in 0..l {
        if seen[root] {
            continue;
        }
        seen[root] = true;
        let mut head = order.len();
        order.push(root);
        while head < order.len() {
            let v = order[head];
            head += 1;
            for &(a, b) in motif.edges() {
                let w = if a == v { b } else if b == v { a } else { continue };
                if !seen[w] {
                    seen[w] = true;
                    order.push(w);
                }
            }
        }
    }
    order
}

/// One draw of the motif count W on G(n,p).
pub fn sample_subgraph_count(cfg: &GnpConfig, rng: &mut SimRng) -> u64 {
    Graph::gnp(cfg.n, cfg.p, rng).motif_count(&cfg.motif)
}

pub fn sample_subgraph_count_seeded(cfg: &GnpConfig, seed: u64) -> u64 {
    sample_subgraph_count(cfg, &mut SimRng::from_seed_u64(seed))
}

fn falling(n: usize, k: usize) -> f64 {
    (0..k).map(|i| (n - i) as f64).product()
}

/// Number of motif copies in K_n: n!/((n−l)! aut).
pub fn copies_in_complete(n: usize, motif: &MotifSpec) -> f64 {
    if n < motif.vertices() {
        return 0.0;
    }
    falling(n, motif.vertices()) / motif.aut() as f64
}

/// E W = binom(n,l) l!/aut p^k.
pub fn exact_subgraph_mean(n: usize, p: f64, motif: &MotifSpec) -> Result<f64> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::Domain { what: "p", value: p, domain: "[0, 1]" });
    }
    if n < motif.vertices() {
        return Err(Error::Precondition(format!("n = {n} is smaller than the motif")));
    }
    Ok(copies_in_complete(n, motif) * p.powi(motif.edges() as i32))
}

/// Var W for triangles: binom(n,3) [p³(1−p³) + 3(n−3)(p⁵ − p⁶)].
///
/// Distinct triangles share at most one edge; each triangle shares an edge
/// with 3(n−3) others and is independent of the rest.
pub fn exact_triangle_variance(n: usize, p: f64) -> Result<f64> {
    if n < 3 {
        return Err(Error::Precondition(format!("triangle variance needs n >= 3, got {n}")));
    }
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::Domain { what: "p", value: p, domain: "[0, 1]" });
    }
    let nf = n as f64;
    let pairs = falling(n, 3) / 6.0;
    let p3 = p.powi(3);
    let p5 = p.powi(5);
    Ok(pairs * (p3 * (1.0 - p3) + 3.0 * (nf - 3.0) * (p5 - p5 * p)))
}

/// The vertex-choice bound k (n−2)_{l−2} − 1 on the dependency-graph degree.
///
/// It only counts which further vertices a neighbouring copy uses, so it can
/// undercount motifs with several placements per vertex set (paths, stars);
/// see [`subgraph_degree_count_bound`].
pub fn subgraph_degree_bound(n: usize, motif: &MotifSpec) -> usize {
    let ff: usize = (0..motif.vertices() - 2).map(|i| n - 2 - i).product();
    (motif.edges() * ff).saturating_sub(1)
}

/// k (c_e − 1) where c_e = 2k (n−2)_{l−2} / aut is the exact number of copies
/// through a fixed edge of K_n.
pub fn subgraph_degree_count_bound(n: usize, motif: &MotifSpec) -> usize {
    let ff: u128 = (0..motif.vertices() - 2).map(|i| (n - 2 - i) as u128).product();
    let k = motif.edges() as u128;
    let through_edge = 2 * k * ff / motif.aut() as u128;
    (k * through_edge.saturating_sub(1)) as usize
}

/// Edge sets of all motif copies in K_n, as bit masks over the pairs of K_n.
pub fn enumerate_copies(n: usize, motif: &Motif) -> Result<Vec<u64>> {
    if n > COPY_ENUMERATION_MAX_N {
        return Err(Error::SizeLimit { what: "copy enumeration n", value: n, limit: COPY_ENUMERATION_MAX_N });
    }
    let pair_index = |a: usize, b: usize| {
        let (a, b) = (a.min(b), a.max(b));
        a * n - a * (a + 1) / 2 + (b - a - 1)
    };
    let l = motif.vertices();
    let mut set = HashSet::new();
    let mut image = vec![0usize; l];
    let mut used = vec![false; n];
    fn rec(
        depth: usize,
        n: usize,
        image: &mut [usize],
        used: &mut [bool],
        f: &mut impl FnMut(&[usize]),
    ) {
        if depth == image.len() {
            f(image);
            return;
        }
        for x in 0..n {
            if !used[x] {
                used[x] = true;
                image[depth] = x;
                rec(depth + 1, n, image, used, f);
                used[x] = false;
            }
        }
    }
    rec(0, n, &mut image, &mut used, &mut |img| {
        let mask = motif.edges().iter().fold(0u64, |m, &(a, b)| m | 1 << pair_index(img[a], img[b]));
        set.insert(mask);
    });
    let mut v: Vec<u64> = set.into_iter().collect();
    v.sort_unstable();
    Ok(v)
}

/// Exact maximal degree of the dependency graph (copies adjacent iff they share an edge).
pub fn exact_dependency_degree(n: usize, motif: &Motif) -> Result<usize> {
    let copies = enumerate_copies(n, motif)?;
    Ok(copies
        .iter()
        .map(|&a| copies.iter().filter(|&&b| b != a && a & b != 0).count())
        .max()
        .unwrap_or(0))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum VarianceSource {
    Exact,
    MonteCarlo { trials: usize, seed: u64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SubgraphDependency {
    pub summary: DependencyGraphSummary<f64>,
    /// max of the vertex-choice and copy-count bounds, before clipping to N − 1.
    pub degree_bound: usize,
    pub variance_source: VarianceSource,
}

/// Dependency-graph summary of the centered indicators of motif copies.
///
/// A = 1; σ² is exact for triangles and a Monte Carlo estimate from `seed`
/// otherwise.
pub fn dependency_summary_for_subgraphs(cfg: &GnpConfig, seed: u64) -> Result<SubgraphDependency> {
    let spec = cfg.motif.spec();
    let copies = copies_in_complete(cfg.n, &spec).round() as usize;
    let degree_bound = subgraph_degree_bound(cfg.n, &spec).max(subgraph_degree_count_bound(cfg.n, &spec));
    let m = degree_bound.min(copies - 1);
    let (sigma2, variance_source) = if cfg.motif.is_triangle() {
        (exact_triangle_variance(cfg.n, cfg.p)?, VarianceSource::Exact)
    } else {
        let trials = SUBGRAPH_VARIANCE_TRIALS;
        let values = mc::draw_values(trials, seed, |rng| sample_subgraph_count(cfg, rng) as f64);
        let mean = values.iter().sum::<f64>() / trials as f64;
        let var = values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (trials - 1) as f64;
        (var, VarianceSource::MonteCarlo { trials, seed })
    };
    let summary = DependencyGraphSummary::new(copies, m, 1.0, sigma2)?;
    Ok(SubgraphDependency { summary, degree_bound, variance_source })
}
