//! Simple graphs, local complementation and cut-rank.

mod canon;
mod families;
mod graph6;

use std::fmt;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf2::{BitMatrix, BitVec};

pub use canon::{canonical_form, lc_orbit, Canonical, LcOrbit};
pub use families::{complete, cycle, kneser, path, star};

/// Vertex subsets are plain bit vectors of length `n`.
pub type VertexSet = BitVec;

/// Simple undirected graph on vertices `0..n`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    adj: BitMatrix,
}

impl Graph {
    pub fn empty(n: usize) -> Graph {
        Graph {
            n,
            adj: BitMatrix::zeros(n, n),
        }
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Graph> {
        let mut g = Graph::empty(n);
        for &(u, v) in edges {
            g.check_vertex(u)?;
            g.check_vertex(v)?;
            if u == v {
                return Err(Error::InvalidGraph(format!(
                    "self-loop at vertex {}",
                    u + 1
                )));
            }
            g.set_edge(u, v, true);
        }
        Ok(g)
    }

    /// Adopts a symmetric, zero-diagonal adjacency matrix.
    pub fn from_adjacency(adj: BitMatrix) -> Result<Graph> {
        if adj.rows() != adj.cols() {
            return Err(Error::InvalidGraph("adjacency matrix is not square".into()));
        }
        if !adj.is_symmetric() {
            return Err(Error::InvalidGraph(
                "adjacency matrix is not symmetric".into(),
            ));
        }
        if (0..adj.rows()).any(|i| adj.get(i, i)) {
            return Err(Error::InvalidGraph("adjacency matrix has a loop".into()));
        }
        Ok(Graph { n: adj.rows(), adj })
    }

    /// Erdős–Rényi sample.
    pub fn random<R: Rng + ?Sized>(n: usize, p: f64, rng: &mut R) -> Graph {
        let mut g = Graph::empty(n);
        for u in 0..n {
            for v in u + 1..n {
                if rng.gen_bool(p) {
                    g.set_edge(u, v, true);
                }
            }
        }
        g
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn adjacency(&self) -> &BitMatrix {
        &self.adj
    }

    pub fn check_vertex(&self, v: usize) -> Result<()> {
        if v < self.n {
            Ok(())
        } else {
            Err(Error::VertexOutOfRange {
                vertex: v,
                n: self.n,
            })
        }
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj.get(u, v)
    }

    pub fn set_edge(&mut self, u: usize, v: usize, present: bool) {
        assert_ne!(u, v, "graphs have no self-loops");
        self.adj.set(u, v, present);
        self.adj.set(v, u, present);
    }

    pub fn toggle_edge(&mut self, u: usize, v: usize) {
        let present = self.has_edge(u, v);
        self.set_edge(u, v, !present);
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        (0..self.n)
            .flat_map(|u| {
                self.neighborhood(u)
                    .iter_ones()
                    .filter(move |&v| v > u)
                    .map(move |v| (u, v))
                    .collect::<Vec<_>>()
            })
            .collect()
    }

    pub fn num_edges(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).sum::<usize>() / 2
    }

    /// `N_v`.
    pub fn neighborhood(&self, v: usize) -> VertexSet {
        self.adj.row(v)
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj
            .row_words(v)
            .iter()
            .map(|w| w.count_ones() as usize)
            .sum()
    }

    /// Rows of the adjacency matrix as single words; requires `n ≤ 64`.
    pub fn adjacency_words(&self) -> Vec<u64> {
        assert!(self.n <= 64, "word view needs n <= 64");
        (0..self.n)
            .map(|v| self.adj.row_words(v).first().copied().unwrap_or(0))
            .collect()
    }

    pub fn from_adjacency_words(n: usize, rows: &[u64]) -> Graph {
        let mut g = Graph::empty(n);
        for (u, &row) in rows.iter().enumerate() {
            for v in (u + 1)..n {
                if row >> v & 1 == 1 {
                    g.set_edge(u, v, true);
                }
            }
        }
        g
    }

    /// Local complementation `τ_a`: complements the subgraph induced on `N_a`.
    pub fn local_complement(&self, a: usize) -> Result<Graph> {
        self.check_vertex(a)?;
        let mut g = self.clone();
        g.local_complement_in_place(a);
        Ok(g)
    }

    pub fn local_complement_in_place(&mut self, a: usize) {
        let na = self.neighborhood(a);
        for u in na.iter_ones() {
            let mut flip = na.clone();
            flip.set(u, false);
            let mut row = self.adj.row(u);
            row.xor_assign(&flip);
            self.adj.set_row(u, &row);
        }
    }

    /// `rk Γ_{M|M⊥}`.
    pub fn cut_rank(&self, m: &VertexSet) -> usize {
        assert_eq!(m.len(), self.n);
        if self.n <= 64 {
            let mw = m.as_u64();
            let outside = !mw & low_bits(self.n);
            let rows = m
                .iter_ones()
                .map(|v| self.adj.row_words(v)[0] & outside)
                .collect();
            return rank_u64(rows);
        }
        let outside = m.complement();
        let rows: Vec<BitVec> = m
            .iter_ones()
            .map(|v| self.adj.row(v).and(&outside))
            .collect();
        BitMatrix::from_rows(self.n, &rows).rank()
    }

    /// Partition of `scope` into classes of vertices with equal neighborhoods,
    /// ordered by smallest member.
    pub fn twins(&self, scope: &VertexSet) -> Vec<Vec<usize>> {
        let mut classes: Vec<(BitVec, Vec<usize>)> = Vec::new();
        for v in scope.iter_ones() {
            let nv = self.neighborhood(v);
            match classes.iter_mut().find(|(n, _)| *n == nv) {
                Some((_, members)) => members.push(v),
                None => classes.push((nv, vec![v])),
            }
        }
        classes.into_iter().map(|(_, m)| m).collect()
    }

    /// Relabels vertex `v` as `perm[v]`.
    pub fn permuted(&self, perm: &[usize]) -> Graph {
        assert_eq!(perm.len(), self.n);
        let mut g = Graph::empty(self.n);
        for (u, v) in self.edges() {
            g.set_edge(perm[u], perm[v], true);
        }
        g
    }

    pub fn induced(&self, vertices: &[usize]) -> Graph {
        let sub = self.adj.select(vertices, vertices);
        Graph {
            n: vertices.len(),
            adj: sub,
        }
    }

    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n];
        let mut out = Vec::new();
        for s in 0..self.n {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut i = 0;
            while i < comp.len() {
                for w in self.neighborhood(comp[i]).iter_ones() {
                    if !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                    }
                }
                i += 1;
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.n <= 1 || self.components().len() == 1
    }

    pub fn to_edge_list(&self) -> EdgeList {
        EdgeList {
            n: self.n,
            edges: self
                .edges()
                .into_iter()
                .map(|(u, v)| [u + 1, v + 1])
                .collect(),
        }
    }

    pub fn from_edge_list(e: &EdgeList) -> Result<Graph> {
        let mut edges = Vec::with_capacity(e.edges.len());
        for &[u, v] in &e.edges {
            if u == 0 || v == 0 {
                return Err(Error::InvalidGraph("edge lists are 1-indexed".into()));
            }
            edges.push((u - 1, v - 1));
        }
        Graph::from_edges(e.n, &edges)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_edge_list()).expect("edge list serializes")
    }

    pub fn from_json(s: &str) -> Result<Graph> {
        Graph::from_edge_list(&serde_json::from_str(s)?)
    }

    pub fn to_graph6(&self) -> String {
        graph6::encode(self)
    }

    pub fn from_graph6(s: &str) -> Result<Graph> {
        graph6::decode(s)
    }

    /// Accepts either a JSON edge list or graph6 text.
    pub fn parse_any(text: &str) -> Result<Graph> {
        let t = text.trim_start();
        if t.starts_with('{') {
            Graph::from_json(t)
        } else {
            let line = t
                .lines()
                .map(str::trim)
                .find(|l| !l.is_empty())
                .ok_or_else(|| Error::Parse("empty graph input".into()))?;
            Graph::from_graph6(line)
        }
    }
}

/// JSON edge-list form with 1-indexed vertices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeList {
    pub n: usize,
    pub edges: Vec<[usize; 2]>,
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let edges: Vec<_> = self.edges().iter().map(|&(u, v)| (u + 1, v + 1)).collect();
        write!(f, "Graph(n={}, edges={:?})", self.n, edges)
    }
}

#[inline]
pub(crate) fn low_bits(n: usize) -> u64 {
    if n >= 64 {
        !0
    } else {
        (1u64 << n) - 1
    }
}

/// F₂ rank of a list of words.
pub(crate) fn rank_u64(rows: Vec<u64>) -> usize {
    let mut basis = [0u64; 64];
    let mut rank = 0;
    for mut r in rows {
        while r != 0 {
            let top = 63 - r.leading_zeros() as usize;
            if basis[top] == 0 {
                basis[top] = r;
                rank += 1;
                break;
            }
            r ^= basis[top];
        }
    }
    rank
}

/// Builds a vertex set from 0-indexed members.
pub fn vset(n: usize, members: &[usize]) -> VertexSet {
    BitVec::from_indices(n, members.iter().copied())
}
