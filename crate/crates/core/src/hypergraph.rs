//! Weighted hypergraph states and the exact action of `Z^α` and `X^α`.
//!
//! `|H⟩ = ∏_e C_{e, w(e)} |+⟩^⊗n` where `C_{e,α}` multiplies a basis state by
//! `exp(iπα ∏_{j∈e} x_j)`. All weights are dyadic and kept in `[0, 2)`.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::dyadic::Dyadic;
use crate::error::{Error, Result};
use crate::graphstate::Graph;
use crate::pipeline::ReducedPair;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WeightedHypergraph {
    n: usize,
    weights: BTreeMap<Vec<usize>, Dyadic>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightEntry {
    pub e: Vec<usize>,
    pub w: Dyadic,
}

impl WeightedHypergraph {
    pub fn empty(n: usize) -> Self {
        WeightedHypergraph {
            n,
            weights: BTreeMap::new(),
        }
    }

    pub fn from_graph(g: &Graph) -> Self {
        let mut h = WeightedHypergraph::empty(g.n());
        for (u, v) in g.edges() {
            h.weights.insert(vec![u, v], Dyadic::ONE);
        }
        h
    }

    /// The underlying graph when every weight is 1 on a pair.
    pub fn to_graph(&self) -> Option<Graph> {
        let mut g = Graph::empty(self.n);
        for (e, &w) in &self.weights {
            if e.len() != 2 || w != Dyadic::ONE {
                return None;
            }
            g.set_edge(e[0], e[1], true);
        }
        Some(g)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn weight(&self, e: &[usize]) -> Dyadic {
        let mut key = e.to_vec();
        key.sort_unstable();
        key.dedup();
        self.weights.get(&key).copied().unwrap_or(Dyadic::ZERO)
    }

    /// Nonzero weights in increasing order of hyperedge.
    pub fn iter(&self) -> impl Iterator<Item = (&[usize], Dyadic)> + '_ {
        self.weights.iter().map(|(e, &w)| (e.as_slice(), w))
    }

    pub fn num_hyperedges(&self) -> usize {
        self.weights.len()
    }

    /// `weight(e) += α`.
    pub fn add_weight(&mut self, e: &[usize], alpha: Dyadic) -> Result<()> {
        let mut key = e.to_vec();
        key.sort_unstable();
        key.dedup();
        if key.is_empty() {
            return Err(Error::Precondition("hyperedges are nonempty".into()));
        }
        if let Some(&v) = key.iter().find(|&&v| v >= self.n) {
            return Err(Error::VertexOutOfRange {
                vertex: v,
                n: self.n,
            });
        }
        let w = self.weights.get(&key).copied().unwrap_or(Dyadic::ZERO) + alpha;
        if w.is_zero() {
            self.weights.remove(&key);
        } else {
            self.weights.insert(key, w);
        }
        Ok(())
    }

    /// Action of `Z_i^α`.
    pub fn apply_z(&self, i: usize, alpha: Dyadic) -> Result<Self> {
        let mut h = self.clone();
        h.add_weight(&[i], alpha)?;
        Ok(h)
    }

    fn graph_neighborhood(&self, i: usize) -> Result<Vec<usize>> {
        let mut delta = Vec::new();
        for (e, &w) in &self.weights {
            if !e.contains(&i) {
                continue;
            }
            if e.len() != 2 || w != Dyadic::ONE {
                return Err(Error::Precondition(format!(
                    "vertex {} lies in a hyperedge that is not a plain edge",
                    i + 1
                )));
            }
            delta.push(if e[0] == i { e[1] } else { e[0] });
        }
        Ok(delta)
    }

    /// Action of `X_i^α` when every hyperedge through `i` is a weight-1 edge:
    /// `weight(e) += (-2)^{|e|-1} α` for every nonempty `e ⊆ δ_i`.
    pub fn apply_x_graphlike(&self, i: usize, alpha: Dyadic) -> Result<Self> {
        if i >= self.n {
            return Err(Error::VertexOutOfRange {
                vertex: i,
                n: self.n,
            });
        }
        let delta = self.graph_neighborhood(i)?;
        let mut h = self.clone();
        if alpha.is_zero() {
            return Ok(h);
        }
        let d = delta.len();
        if d >= 64 {
            return Err(Error::Guard {
                what: "neighbourhood size for X action",
                limit: 63,
                got: d,
            });
        }
        for mask in 1u64..1 << d {
            let e: Vec<usize> = (0..d)
                .filter(|&b| mask >> b & 1 == 1)
                .map(|b| delta[b])
                .collect();
            let term = alpha.times_neg2_pow(e.len() as u32 - 1);
            if !term.is_zero() {
                h.add_weight(&e, term)?;
            }
        }
        Ok(h)
    }

    /// Sequential [`apply_x_graphlike`](Self::apply_x_graphlike) on pairwise
    /// non-adjacent targets.
    pub fn apply_x_layer(&self, targets: &[(usize, Dyadic)]) -> Result<Self> {
        for (a, &(i, _)) in targets.iter().enumerate() {
            for &(j, _) in &targets[a + 1..] {
                if i == j || !self.weight(&[i, j]).is_zero() {
                    return Err(Error::Precondition(format!(
                        "X targets {} and {} are not distinct and non-adjacent",
                        i + 1,
                        j + 1
                    )));
                }
            }
        }
        let mut h = self.clone();
        for &(i, alpha) in targets {
            h = h.apply_x_graphlike(i, alpha)?;
        }
        Ok(h)
    }

    /// Nonzero weights with 1-indexed vertices.
    pub fn to_entries(&self) -> Vec<WeightEntry> {
        self.weights
            .iter()
            .map(|(e, &w)| WeightEntry {
                e: e.iter().map(|v| v + 1).collect(),
                w,
            })
            .collect()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_entries()).expect("weights serialise")
    }
}

/// Applies `X^α` on the tail and `Z^α` on the pivots of `from_graph(Ĝ)`;
/// `alpha` is indexed by vertex.
pub fn transport(rp: &ReducedPair, alpha: &[Dyadic]) -> Result<WeightedHypergraph> {
    let n = rp.g_hat.n();
    if alpha.len() != n {
        return Err(Error::Dimension(format!(
            "{} angles for {n} qubits",
            alpha.len()
        )));
    }
    let xs: Vec<(usize, Dyadic)> = rp.tail.iter().map(|&t| (t, alpha[t])).collect();
    let mut h = WeightedHypergraph::from_graph(&rp.g_hat).apply_x_layer(&xs)?;
    for &p in &rp.pivots {
        h.add_weight(&[p], alpha[p])?;
    }
    Ok(h)
}

/// True iff the layers carry `|Ĝ⟩` exactly to `|Ĝ′⟩`.
pub fn verify_certificate(rp: &ReducedPair, alpha: &[Dyadic]) -> bool {
    transport(rp, alpha).is_ok_and(|h| h == WeightedHypergraph::from_graph(&rp.gp_hat))
}
