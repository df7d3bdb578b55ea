//! Local sets, minimal local sets (MLS) and MLS covers.
//!
//! A local set is `D ∪ Odd(D)` for a nonempty `D`. It is exactly the support
//! of the stabilizer element `∏_{d∈D} s_d`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf2::{solve_f2, BitMatrix, BitVec};
use crate::graphstate::{Graph, VertexSet};
use crate::pauli::{multiply, PauliString};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum MlsType {
    #[serde(rename = "I")]
    TypeI,
    #[serde(rename = "II")]
    TypeII,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalSet {
    pub d: VertexSet,
    pub m: VertexSet,
    pub mls_type: MlsType,
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct MlsCover {
    pub sets: Vec<LocalSet>,
}

/// Vertices with an odd number of neighbours in `d`.
pub fn odd_set(g: &Graph, d: &VertexSet) -> VertexSet {
    let mut out = VertexSet::zeros(g.n());
    for v in d.iter_ones() {
        out.xor_assign(&g.neighborhood(v));
    }
    out
}

pub fn local_set(g: &Graph, d: &VertexSet) -> VertexSet {
    d.or(&odd_set(g, d))
}

/// `∏_{d∈D} s_d` with its exact phase.
pub fn stabilizer_element(g: &Graph, d: &VertexSet) -> PauliString {
    let n = g.n();
    let mut acc = PauliString::identity(n);
    for v in d.iter_ones() {
        let s = PauliString::from_parts(VertexSet::from_indices(n, [v]), g.neighborhood(v), 0)
            .expect("lengths agree");
        acc = multiply(&acc, &s).expect("lengths agree");
    }
    acc
}

/// Basis of `{D ⊆ M : Odd(D) ⊆ M}`, the generator words of `St^M`.
pub fn reduced_generators(g: &Graph, m: &VertexSet) -> Vec<VertexSet> {
    let n = g.n();
    let inside = m.to_indices();
    let outside: Vec<usize> = (0..n).filter(|&v| !m.get(v)).collect();
    if inside.is_empty() {
        return Vec::new();
    }
    let cut = g.adjacency().select(&outside, &inside);
    let sol = solve_f2(&cut, &BitVec::zeros(outside.len()))
        .expect("dimensions agree")
        .expect("homogeneous system");
    sol.kernel
        .iter()
        .map(|k| VertexSet::from_indices(n, k.iter_ones().map(|j| inside[j])))
        .collect()
}

/// All elements of the stabilizer group supported inside `m`, identity first.
pub fn reduced_stabilizer_group(g: &Graph, m: &VertexSet) -> Result<Vec<PauliString>> {
    let basis = reduced_generators(g, m);
    if basis.len() > 20 {
        return Err(Error::Guard {
            what: "reduced stabilizer group dimension",
            limit: 20,
            got: basis.len(),
        });
    }
    Ok(span(g.n(), &basis)
        .iter()
        .map(|d| stabilizer_element(g, d))
        .collect())
}

fn span(n: usize, basis: &[VertexSet]) -> Vec<VertexSet> {
    let mut out = vec![VertexSet::zeros(n)];
    for b in basis {
        let more: Vec<VertexSet> = out.iter().map(|d| d.xor(b)).collect();
        out.extend(more);
    }
    out
}

/// `CutRank(M) < |M|` and every `M ∖ {v}` has full cut rank.
pub fn is_mls(g: &Graph, m: &VertexSet) -> bool {
    let size = m.count_ones();
    if size == 0 || g.cut_rank(m) >= size {
        return false;
    }
    m.iter_ones().all(|v| {
        let mut s = m.clone();
        s.set(v, false);
        g.cut_rank(&s) == size - 1
    })
}

pub fn classify(g: &Graph, m: &VertexSet) -> Result<MlsType> {
    if !is_mls(g, m) {
        return Err(Error::Precondition(format!(
            "{:?} is not a minimal local set",
            one_indexed(m)
        )));
    }
    let t = match m.count_ones() - g.cut_rank(m) {
        1 => MlsType::TypeI,
        2 => MlsType::TypeII,
        k => unreachable!("minimal local set with deficiency {k}"),
    };
    debug_assert_eq!(
        reduced_generators(g, m).len(),
        if t == MlsType::TypeI { 1 } else { 2 }
    );
    Ok(t)
}

/// Builds the [`LocalSet`] record of an MLS, choosing the smallest generator word.
pub fn local_set_record(g: &Graph, m: &VertexSet) -> Result<LocalSet> {
    let mls_type = classify(g, m)?;
    let d = span(g.n(), &reduced_generators(g, m))
        .into_iter()
        .filter(|d| !d.is_zero())
        .min()
        .expect("an MLS has a nontrivial element");
    Ok(LocalSet {
        d,
        m: m.clone(),
        mls_type,
    })
}

impl LocalSet {
    /// The nontrivial elements of `St^M` (one for Type I, three for Type II)
    /// with their generator words, ordered by word.
    pub fn elements(&self, g: &Graph) -> Vec<(VertexSet, PauliString)> {
        let mut ds: Vec<VertexSet> = span(g.n(), &reduced_generators(g, &self.m))
            .into_iter()
            .filter(|d| !d.is_zero())
            .collect();
        ds.sort();
        ds.into_iter()
            .map(|d| {
                let p = stabilizer_element(g, &d);
                (d, p)
            })
            .collect()
    }
}

/// Some element of `St^S` acts nontrivially on `v`.
fn covers_vertex(g: &Graph, s: &VertexSet, v: usize) -> bool {
    reduced_generators(g, s)
        .iter()
        .any(|d| d.get(v) || odd_set(g, d).get(v))
}

fn shrink(g: &Graph, start: VertexSet, v: usize, order: &[usize]) -> VertexSet {
    let mut m = start;
    loop {
        let mut changed = false;
        for &u in order {
            if u == v || !m.get(u) {
                continue;
            }
            m.set(u, false);
            if covers_vertex(g, &m, v) {
                changed = true;
            } else {
                m.set(u, true);
            }
        }
        if !changed {
            return m;
        }
    }
}

const EXHAUSTIVE_LIMIT: usize = 16;

fn exhaustive_mls(g: &Graph, v: usize) -> Result<Option<VertexSet>> {
    let comp = g
        .components()
        .into_iter()
        .find(|c| c.contains(&v))
        .expect("every vertex lies in a component");
    let others: Vec<usize> = comp.iter().copied().filter(|&u| u != v).collect();
    if others.len() >= EXHAUSTIVE_LIMIT {
        return Err(Error::Guard {
            what: "exhaustive MLS search component size",
            limit: EXHAUSTIVE_LIMIT,
            got: others.len() + 1,
        });
    }
    let mut masks: Vec<u32> = (0..1u32 << others.len()).collect();
    masks.sort_by_key(|m| (m.count_ones(), *m));
    for mask in masks {
        let mut m = VertexSet::from_indices(g.n(), [v]);
        for (b, &u) in others.iter().enumerate() {
            if mask >> b & 1 == 1 {
                m.set(u, true);
            }
        }
        if is_mls(g, &m) {
            return Ok(Some(m));
        }
    }
    Ok(None)
}

/// A minimal local set containing `v`.
pub fn mls_containing(g: &Graph, v: usize) -> Result<VertexSet> {
    g.check_vertex(v)?;
    let n = g.n();
    let ascending: Vec<usize> = (0..n).collect();
    let descending: Vec<usize> = (0..n).rev().collect();
    let mut starts = vec![VertexSet::from_indices(n, [v])];
    starts.extend(
        g.neighborhood(v)
            .iter_ones()
            .map(|u| VertexSet::from_indices(n, [u])),
    );
    for d in &starts {
        for order in [&ascending, &descending] {
            let m = shrink(g, local_set(g, d), v, order);
            if is_mls(g, &m) {
                return Ok(m);
            }
        }
    }
    exhaustive_mls(g, v)?.ok_or_else(|| {
        Error::Precondition(format!("no minimal local set contains vertex {}", v + 1))
    })
}

/// Covers every vertex, scanning uncovered vertices in increasing order.
pub fn mls_cover(g: &Graph) -> Result<MlsCover> {
    let n = g.n();
    let mut covered = VertexSet::zeros(n);
    let mut sets = Vec::new();
    for v in 0..n {
        if covered.get(v) {
            continue;
        }
        let m = mls_containing(g, v)?;
        covered.or_assign(&m);
        sets.push(local_set_record(g, &m)?);
    }
    Ok(MlsCover { sets })
}

impl MlsCover {
    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }

    /// Every set is an MLS generated by its word and the union is `[n]`.
    pub fn is_valid_for(&self, g: &Graph) -> bool {
        let mut union = VertexSet::zeros(g.n());
        for s in &self.sets {
            if s.m.len() != g.n()
                || !is_mls(g, &s.m)
                || local_set(g, &s.d) != s.m
                || classify(g, &s.m).ok() != Some(s.mls_type)
            {
                return false;
            }
            union.or_assign(&s.m);
        }
        union.count_ones() == g.n()
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::Value::Array(
            self.sets
                .iter()
                .map(|s| {
                    serde_json::json!({
                        "D": one_indexed(&s.d),
                        "M": one_indexed(&s.m),
                        "type": s.mls_type,
                    })
                })
                .collect(),
        )
    }
}

pub(crate) fn one_indexed(s: &VertexSet) -> Vec<usize> {
    s.iter_ones().map(|v| v + 1).collect()
}

/// Components of the intersection graph of the cover and the number of
/// components made only of Type II sets.
pub fn intersection_components(c: &MlsCover) -> (Vec<Vec<usize>>, usize) {
    let k = c.sets.len();
    let adj = BitMatrix::from_fn(k, k, |a, b| a != b && c.sets[a].m.intersects(&c.sets[b].m));
    let mut seen = vec![false; k];
    let mut comps = Vec::new();
    for s in 0..k {
        if seen[s] {
            continue;
        }
        let mut comp = vec![s];
        seen[s] = true;
        let mut i = 0;
        while i < comp.len() {
            let a = comp[i];
            for b in adj.row(a).iter_ones() {
                if !seen[b] {
                    seen[b] = true;
                    comp.push(b);
                }
            }
            i += 1;
        }
        comp.sort_unstable();
        comps.push(comp);
    }
    let t = comps
        .iter()
        .filter(|comp| comp.iter().all(|&s| c.sets[s].mls_type == MlsType::TypeII))
        .count();
    (comps, t)
}
