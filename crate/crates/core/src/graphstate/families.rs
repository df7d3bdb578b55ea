use itertools::Itertools;

use super::Graph;
use crate::error::{Error, Result};

/// The bipartite family on `V₁ = [k]` and `V₂` = all `t`-subsets of `[k]` for
/// each `t` in `sizes`, with `i ~ A` iff `i ∈ A`. `hat` adds a clique on `V₁`.
/// Subsets are listed size by size in the given order, lexicographically.
pub fn kneser(k: usize, sizes: &[usize], hat: bool) -> Result<Graph> {
    if let Some(&t) = sizes.iter().find(|&&t| t == 0 || t > k) {
        return Err(Error::InvalidGraph(format!(
            "subset size {t} must lie in 1..={k}"
        )));
    }
    let subsets: Vec<Vec<usize>> = sizes.iter().flat_map(|&t| (0..k).combinations(t)).collect();
    let n = k + subsets.len();
    let mut g = Graph::empty(n);
    for (idx, a) in subsets.iter().enumerate() {
        for &i in a {
            g.set_edge(i, k + idx, true);
        }
    }
    if hat {
        for i in 0..k {
            for j in i + 1..k {
                g.set_edge(i, j, true);
            }
        }
    }
    Ok(g)
}

/// `K_{1,n-1}` centred at vertex 0.
pub fn star(n: usize) -> Graph {
    let mut g = Graph::empty(n);
    for v in 1..n {
        g.set_edge(0, v, true);
    }
    g
}

pub fn complete(n: usize) -> Graph {
    let mut g = Graph::empty(n);
    for u in 0..n {
        for v in u + 1..n {
            g.set_edge(u, v, true);
        }
    }
    g
}

pub fn path(n: usize) -> Graph {
    let mut g = Graph::empty(n);
    for v in 1..n {
        g.set_edge(v - 1, v, true);
    }
    g
}

pub fn cycle(n: usize) -> Graph {
    let mut g = path(n);
    if n >= 3 {
        g.set_edge(0, n - 1, true);
    }
    g
}
