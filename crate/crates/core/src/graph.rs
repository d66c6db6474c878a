//! Constructive extraction of disjoint disconnected vertex pairs from
//! a graph on 2k vertices whose largest complete subgraph has at most
//! k vertices, together with the sharpness family showing the count
//! floor((k+1)/2) cannot be improved, and a brute-force oracle.

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;

/// Simple undirected graph on an even number of vertices, stored as a
/// symmetric adjacency matrix with a false diagonal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimpleGraph {
    n: usize,
    adjacency: Vec<bool>, // row-major n x n
}

impl SimpleGraph {
    pub fn empty(n: usize) -> Result<Self> {
        if n == 0 || n % 2 != 0 {
            return Err(Error::Domain(format!("graph must have an even positive vertex count, got {n}")));
        }
        Ok(SimpleGraph { n, adjacency: vec![false; n * n] })
    }

    /// Vertices are 0-based here; the JSON interface is 1-based.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = SimpleGraph::empty(n)?;
        for &(i, j) in edges {
            g.add_edge(i, j)?;
        }
        Ok(g)
    }

    pub fn add_edge(&mut self, i: usize, j: usize) -> Result<()> {
        if i >= self.n || j >= self.n || i == j {
            return Err(Error::Domain(format!("bad edge ({i}, {j}) on {} vertices", self.n)));
        }
        self.adjacency[i * self.n + j] = true;
        self.adjacency[j * self.n + i] = true;
        Ok(())
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn connected(&self, i: usize, j: usize) -> bool {
        self.adjacency[i * self.n + j]
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = vec![];
        for i in 0..self.n {
            for j in (i + 1)..self.n {
                if self.connected(i, j) {
                    out.push((i, j));
                }
            }
        }
        out
    }

    /// Exact clique number by branch-and-bound; desk-scale graphs only.
    pub fn clique_number(&self) -> usize {
        let mut best = 0;
        let all: Vec<usize> = (0..self.n).collect();
        self.clique_rec(&all, 0, &mut best);
        best
    }

    fn clique_rec(&self, candidates: &[usize], size: usize, best: &mut usize) {
        if size + candidates.len() <= *best {
            return;
        }
        if candidates.is_empty() {
            *best = (*best).max(size);
            return;
        }
        for (idx, &v) in candidates.iter().enumerate() {
            let rest: Vec<usize> = candidates[idx + 1..]
                .iter()
                .copied()
                .filter(|&u| self.connected(v, u))
                .collect();
            self.clique_rec(&rest, size + 1, best);
        }
        *best = (*best).max(size);
    }
}

/// Vertex-disjoint pairs, each disconnected in the source graph
/// (0-based indices, i < j within each pair).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairSet {
    pub pairs: Vec<(usize, usize)>,
}

/// Graph on the given vectors with an edge exactly where the form
/// vanishes on the pair.
pub fn orthogonality_graph(f: &Matrix, vectors: &[Vec<crate::field::Scalar>]) -> Result<SimpleGraph> {
    if !f.is_alternating() {
        return Err(Error::NotAlternating("orthogonality graph needs an alternating form".into()));
    }
    let mut g = SimpleGraph::empty(vectors.len())?;
    for i in 0..vectors.len() {
        for j in (i + 1)..vectors.len() {
            if f.pair(&vectors[i], &vectors[j])?.is_zero() {
                g.add_edge(i, j)?;
            }
        }
    }
    Ok(g)
}

/// The working-set sweep: starting from {0, .., k}, extract the
/// lexicographically least disconnected pair, then replace the used
/// vertices by the next two fresh ones, floor((k+1)/2) times in all.
/// A working set without a disconnected pair certifies a (k+1)-clique.
pub fn disjoint_disconnected_pairs(g: &SimpleGraph, k: usize) -> Result<PairSet> {
    if g.vertex_count() != 2 * k || k == 0 {
        return Err(Error::Domain(format!(
            "sweep needs a graph on 2k = {} vertices, got {}",
            2 * k,
            g.vertex_count()
        )));
    }
    let m = (k + 1) / 2;
    let mut working: BTreeSet<usize> = (0..=k).collect();
    let mut pairs = vec![];
    let mut next_fresh = k + 1;
    for _ in 0..m {
        let members: Vec<usize> = working.iter().copied().collect();
        let mut found = None;
        'outer: for (a, &i) in members.iter().enumerate() {
            for &j in &members[a + 1..] {
                if !g.connected(i, j) {
                    found = Some((i, j));
                    break 'outer;
                }
            }
        }
        let Some((i, j)) = found else {
            return Err(Error::CliqueViolation {
                working_set: members.iter().map(|v| v + 1).collect(),
            });
        };
        pairs.push((i, j));
        working.remove(&i);
        working.remove(&j);
        for _ in 0..2 {
            if next_fresh < 2 * k {
                working.insert(next_fresh);
                next_fresh += 1;
            }
        }
    }
    Ok(PairSet { pairs })
}

/// The extremal family: the first k-1 vertices are connected to every
/// other vertex; no edge among the rest.
pub fn sharpness_graph(k: usize) -> Result<SimpleGraph> {
    if k == 0 {
        return Err(Error::Domain("sharpness family needs k >= 1".into()));
    }
    let n = 2 * k;
    let mut g = SimpleGraph::empty(n)?;
    for i in 0..k.saturating_sub(1) {
        for j in 0..n {
            if i != j {
                g.add_edge(i, j)?;
            }
        }
    }
    Ok(g)
}

/// Exact maximum number of vertex-disjoint disconnected pairs: a
/// maximum matching of the complement graph, by bitmask dynamic
/// programming. Independent of the sweep.
pub fn oracle_max_disjoint_pairs(g: &SimpleGraph) -> Result<usize> {
    let n = g.vertex_count();
    if n > 12 {
        return Err(Error::Scale(format!("oracle limited to 12 vertices, got {n}")));
    }
    let full: u32 = (1 << n) - 1;
    let mut dp = vec![u8::MAX; 1 << n];
    fn rec(mask: u32, g: &SimpleGraph, dp: &mut [u8]) -> u8 {
        if mask == 0 {
            return 0;
        }
        if dp[mask as usize] != u8::MAX {
            return dp[mask as usize];
        }
        let v = mask.trailing_zeros() as usize;
        let without = mask & !(1 << v);
        // leave v unmatched
        let mut best = rec(without, g, dp);
        // or pair v with a disconnected partner
        let mut rest = without;
        while rest != 0 {
            let u = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            if !g.connected(v, u) {
                let next = without & !(1 << u);
                best = best.max(1 + rec(next, g, dp));
            }
        }
        dp[mask as usize] = best;
        best
    }
    Ok(rec(full, g, &mut dp) as usize)
}

/// JSON form: {"n": 2k, "edges": [[i, j], ...]} with 1-based vertices.
#[derive(Serialize, Deserialize)]
pub struct GraphRepr {
    pub n: usize,
    pub edges: Vec<(usize, usize)>,
}

impl SimpleGraph {
    pub fn to_repr(&self) -> GraphRepr {
        GraphRepr {
            n: self.n,
            edges: self.edges().iter().map(|&(i, j)| (i + 1, j + 1)).collect(),
        }
    }

    pub fn from_repr(repr: &GraphRepr) -> Result<Self> {
        let mut g = SimpleGraph::empty(repr.n)?;
        for &(i, j) in &repr.edges {
            if i == 0 || j == 0 {
                return Err(Error::Parse("graph JSON uses 1-based vertices".into()));
            }
            g.add_edge(i - 1, j - 1)?;
        }
        Ok(g)
    }
}

impl PairSet {
    pub fn to_one_based(&self) -> Vec<(usize, usize)> {
        self.pairs.iter().map(|&(i, j)| (i + 1, j + 1)).collect()
    }
}
