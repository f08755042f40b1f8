use serde::{Deserialize, Serialize};

use crate::bounds::MotifSpec;
use crate::error::{Error, Result};

/// Largest motif handled by the brute-force automorphism count.
pub const MAX_MOTIF_VERTICES: usize = 8;

/// A small fixed graph on vertices `0..l`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Motif {
    name: String,
    l: usize,
    edges: Vec<(usize, usize)>,
}

impl Motif {
    pub fn new(name: impl Into<String>, l: usize, edges: &[(usize, usize)]) -> Result<Self> {
        if !(2..=MAX_MOTIF_VERTICES).contains(&l) {
            return Err(Error::SizeLimit { what: "motif vertices", value: l, limit: MAX_MOTIF_VERTICES });
        }
        let mut norm: Vec<(usize, usize)> = Vec::with_capacity(edges.len());
        for &(a, b) in edges {
            if a == b || a >= l || b >= l {
                return Err(Error::Config(format!("invalid motif edge ({a}, {b}) on {l} vertices")));
            }
            norm.push((a.min(b), a.max(b)));
        }
        norm.sort_unstable();
        norm.dedup();
        if norm.len() != edges.len() || norm.is_empty() {
            return Err(Error::Config("motif edges must be distinct and nonempty".into()));
        }
        let mut seen = vec![false; l];
        for &(a, b) in &norm {
            seen[a] = true;
            seen[b] = true;
        }
        if seen.iter().any(|s| !s) {
            return Err(Error::Config("every motif vertex must lie on an edge".into()));
        }
        Ok(Self { name: name.into(), l, edges: norm })
    }

    pub fn edge() -> Self {
        Self::new("edge", 2, &[(0, 1)]).expect("valid motif")
    }

    pub fn triangle() -> Self {
        Self::new("triangle", 3, &[(0, 1), (1, 2), (0, 2)]).expect("valid motif")
    }

    /// Path with `l` vertices.
    pub fn path(l: usize) -> Result<Self> {
        let e: Vec<_> = (1..l).map(|i| (i - 1, i)).collect();
        Self::new(format!("path{l}"), l, &e)
    }

    pub fn cycle(l: usize) -> Result<Self> {
        if l < 3 {
            return Err(Error::Config("a cycle needs at least 3 vertices".into()));
        }
        let e: Vec<_> = (0..l).map(|i| (i, (i + 1) % l)).collect();
        Self::new(format!("cycle{l}"), l, &e)
    }

    /// Star with one center and `l - 1` leaves.
    pub fn star(l: usize) -> Result<Self> {
        let e: Vec<_> = (1..l).map(|i| (0, i)).collect();
        Self::new(format!("star{l}"), l, &e)
    }

    pub fn complete(l: usize) -> Result<Self> {
        let e: Vec<_> = (0..l).flat_map(|a| (a + 1..l).map(move |b| (a, b))).collect();
        Self::new(format!("K{l}"), l, &e)
    }

    /// Looks up a named motif: `edge`, `triangle`, `pathL`, `cycleL`, `starL`, `KL`.
    pub fn by_name(name: &str) -> Result<Self> {
        let num = |prefix: &str| -> Option<usize> { name.strip_prefix(prefix)?.parse().ok() };
        match name {
            "edge" => Ok(Self::edge()),
            "triangle" => Ok(Self::triangle()),
            _ => {
                if let Some(l) = num("path") {
                    Self::path(l)
                } else if let Some(l) = num("cycle") {
                    Self::cycle(l)
                } else if let Some(l) = num("star") {
                    Self::star(l)
                } else if let Some(l) = num("K") {
                    Self::complete(l)
                } else {
                    Err(Error::Config(format!("unknown motif '{name}'")))
                }
            }
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn vertices(&self) -> usize {
        self.l
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn is_triangle(&self) -> bool {
        self.l == 3 && self.edges.len() == 3
    }

    fn adjacency(&self) -> Vec<Vec<bool>> {
        let mut adj = vec![vec![false; self.l]; self.l];
        for &(a, b) in &self.edges {
            adj[a][b] = true;
            adj[b][a] = true;
        }
        adj
    }

    /// Number of vertex permutations preserving the edge set.
    pub fn automorphisms(&self) -> u64 {
        let adj = self.adjacency();
        let mut perm: Vec<usize> = (0..self.l).collect();
        let mut count = 0;
        permute(&mut perm, 0, &mut |p| {
            if self.edges.iter().all(|&(a, b)| adj[p[a]][p[b]]) {
                count += 1;
            }
        });
        count
    }

    pub fn spec(&self) -> MotifSpec {
        MotifSpec::new(self.edges.len(), self.l, self.automorphisms()).expect("motif invariants hold")
    }
}

fn permute(p: &mut [usize], k: usize, f: &mut impl FnMut(&[usize])) {
    if k == p.len() {
        f(p);
        return;
    }
    for i in k..p.len() {
        p.swap(k, i);
        permute(p, k + 1, f);
        p.swap(k, i);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn automorphism_counts() {
        assert_eq!(Motif::edge().automorphisms(), 2);
        assert_eq!(Motif::triangle().automorphisms(), 6);
        assert_eq!(Motif::path(4).unwrap().automorphisms(), 2);
        assert_eq!(Motif::cycle(4).unwrap().automorphisms(), 8);
        assert_eq!(Motif::star(4).unwrap().automorphisms(), 6);
        assert_eq!(Motif::complete(4).unwrap().automorphisms(), 24);
    }

    #[test]
    fn names_round_trip() {
        for n in ["edge", "triangle", "path3", "cycle5", "star4", "K4"] {
            assert_eq!(Motif::by_name(n).unwrap().name(), n);
        }
        assert!(Motif::by_name("blob").is_err());
        assert!(Motif::new("x", 3, &[(0, 1)]).is_err());
    }
}
