//! Orbit census of small unlabeled graphs.
//!
//! Graphs are enumerated up to isomorphism, grouped into LC orbits, and every
//! pair of orbits is tested for a relabeling under which the cut-rank
//! functions agree. Such pairs are the only candidates for LU equivalence
//! across LC orbits; each candidate is decided with [`check_lu`].

use std::collections::{BTreeMap, BTreeSet};
use std::fs;
use std::path::Path;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graphstate::{canonical_form, Graph};
use crate::mls::mls_cover;
use crate::pipeline::{check_lu, enumerate_function_pairs, screen};

pub const NATIVE_LIMIT: usize = 9;

/// All graphs on `n` vertices up to isomorphism, in canonical form, sorted by
/// graph6 text.
pub fn enumerate_graphs(n: usize) -> Result<Vec<Graph>> {
    if n > NATIVE_LIMIT {
        return Err(Error::Guard {
            what: "native census vertex count",
            limit: NATIVE_LIMIT,
            got: n,
        });
    }
    let mut level: Vec<Graph> = vec![Graph::empty(0)];
    for m in 1..=n {
        let keys: BTreeMap<Vec<u8>, Graph> = level
            .par_iter()
            .flat_map_iter(|h| {
                (0..1u64 << (m - 1)).map(move |mask| {
                    let mut g = Graph::empty(m);
                    for (u, v) in h.edges() {
                        g.set_edge(u, v, true);
                    }
                    for u in 0..m - 1 {
                        if mask >> u & 1 == 1 {
                            g.set_edge(u, m - 1, true);
                        }
                    }
                    let c = canonical_form(&g).expect("within guard");
                    let graph = c.graph();
                    (c.bytes, graph)
                })
            })
            .collect();
        level = keys.into_values().collect();
    }
    Ok(level)
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

/// Partitions canonical graphs into LC orbits; orbits and members are listed
/// in the input order.
pub fn lc_orbits(graphs: &[Graph]) -> Result<Vec<Vec<usize>>> {
    let index: BTreeMap<Vec<u8>, usize> = graphs
        .iter()
        .enumerate()
        .map(|(i, g)| Ok((canonical_form(g)?.bytes, i)))
        .collect::<Result<_>>()?;
    let links: Vec<(usize, usize)> = graphs
        .par_iter()
        .enumerate()
        .flat_map_iter(|(i, g)| {
            let index = &index;
            (0..g.n()).filter_map(move |a| {
                let t = g.local_complement(a).expect("vertex in range");
                let key = canonical_form(&t).expect("within guard").bytes;
                index.get(&key).map(|&j| (i, j))
            })
        })
        .collect();
    let mut parent: Vec<usize> = (0..graphs.len()).collect();
    for (i, j) in links {
        let (a, b) = (find(&mut parent, i), find(&mut parent, j));
        if a != b {
            parent[a.max(b)] = a.min(b);
        }
    }
    let mut orbits: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for i in 0..graphs.len() {
        let root = find(&mut parent, i);
        orbits.entry(root).or_default().push(i);
    }
    Ok(orbits.into_values().collect())
}

/// Cut rank of every vertex subset, indexed by bit mask.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CutRankTable {
    n: usize,
    values: Vec<u8>,
}

impl CutRankTable {
    pub fn new(g: &Graph) -> Result<Self> {
        let n = g.n();
        if n > 20 {
            return Err(Error::Guard {
                what: "cut-rank table vertex count",
                limit: 20,
                got: n,
            });
        }
        let rows = g.adjacency_words();
        let values = (0..1u64 << n)
            .map(|mask| {
                let cut: Vec<u64> = (0..n)
                    .filter(|&v| mask >> v & 1 == 1)
                    .map(|v| rows[v] & !mask)
                    .collect();
                crate::graphstate::rank_u64(cut) as u8
            })
            .collect();
        Ok(CutRankTable { n, values })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, mask: u64) -> u8 {
        self.values[mask as usize]
    }

    /// Counts of each cut-rank value per subset size.
    pub fn histogram(&self) -> Vec<Vec<u32>> {
        let mut h = vec![vec![0u32; self.n + 1]; self.n + 1];
        for (mask, &v) in self.values.iter().enumerate() {
            h[mask.count_ones() as usize][v as usize] += 1;
        }
        h
    }

    /// Per-vertex histogram over the subsets that contain it.
    fn vertex_signature(&self, v: usize) -> Vec<u32> {
        let mut h = vec![0u32; (self.n + 1) * (self.n + 1)];
        for (mask, &r) in self.values.iter().enumerate() {
            if mask >> v & 1 == 1 {
                h[mask.count_ones() as usize * (self.n + 1) + r as usize] += 1;
            }
        }
        h
    }
}

fn apply_perm(mask: u64, perm: &[usize]) -> u64 {
    let mut out = 0;
    let mut bits = mask;
    while bits != 0 {
        let v = bits.trailing_zeros() as usize;
        bits &= bits - 1;
        out |= 1 << perm[v];
    }
    out
}

/// A permutation `σ` with `cr_b(σ(S)) = cr_a(S)` for every `S`, if any.
pub fn matching_permutation(a: &CutRankTable, b: &CutRankTable) -> Option<Vec<usize>> {
    let n = a.n;
    if b.n != n || a.histogram() != b.histogram() {
        return None;
    }
    let sa: Vec<Vec<u32>> = (0..n).map(|v| a.vertex_signature(v)).collect();
    let sb: Vec<Vec<u32>> = (0..n).map(|v| b.vertex_signature(v)).collect();
    let candidates: Vec<Vec<usize>> = (0..n)
        .map(|v| (0..n).filter(|&w| sa[v] == sb[w]).collect())
        .collect();
    let mut perm = vec![usize::MAX; n];
    let mut used = vec![false; n];
    fn extend(
        j: usize,
        a: &CutRankTable,
        b: &CutRankTable,
        cands: &[Vec<usize>],
        perm: &mut Vec<usize>,
        used: &mut Vec<bool>,
    ) -> bool {
        let n = a.n;
        if j == n {
            return true;
        }
        for &w in &cands[j] {
            if used[w] {
                continue;
            }
            perm[j] = w;
            // every subset whose highest vertex is j
            let ok = (0..1u64 << j).all(|low| {
                let s = low | 1 << j;
                a.get(s) == b.get(apply_perm(s, perm))
            });
            if ok {
                used[w] = true;
                if extend(j + 1, a, b, cands, perm, used) {
                    return true;
                }
                used[w] = false;
            }
        }
        perm[j] = usize::MAX;
        false
    }
    extend(0, a, b, &candidates, &mut perm, &mut used).then_some(perm)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CandidatePair {
    /// Indices into the list of orbit representatives.
    pub orbits: (usize, usize),
    pub graph6: (String, String),
    /// `perm[v]` is the vertex of the second graph matched with `v`.
    pub permutation: Vec<usize>,
    pub compatible_functions: bool,
    pub lu_equivalent: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CensusRow {
    pub n: usize,
    pub graphs: Option<usize>,
    pub connected: Option<usize>,
    pub lc_orbits: usize,
    pub cut_rank_pairs: usize,
    pub compatible_pairs: usize,
    pub lu_equivalent_pairs: usize,
    pub candidates: Vec<CandidatePair>,
}

/// Tests every pair of representatives, bucketed by cut-rank histogram.
pub fn analyse_representatives(n: usize, reps: &[Graph]) -> Result<Vec<CandidatePair>> {
    let tables: Vec<CutRankTable> = reps
        .par_iter()
        .map(CutRankTable::new)
        .collect::<Result<_>>()?;
    let mut buckets: BTreeMap<Vec<Vec<u32>>, Vec<usize>> = BTreeMap::new();
    for (i, t) in tables.iter().enumerate() {
        buckets.entry(t.histogram()).or_default().push(i);
    }
    let pairs: Vec<(usize, usize)> = buckets
        .values()
        .flat_map(|b| {
            b.iter()
                .enumerate()
                .flat_map(move |(x, &i)| b[x + 1..].iter().map(move |&j| (i, j)))
        })
        .collect();
    let mut out: Vec<CandidatePair> = pairs
        .par_iter()
        .filter_map(|&(i, j)| {
            let perm = matching_permutation(&tables[i], &tables[j])?;
            Some((i, j, perm))
        })
        .map(|(i, j, perm)| {
            let g = &reps[i];
            let mut inv = vec![0; n];
            for (v, &w) in perm.iter().enumerate() {
                inv[w] = v;
            }
            let gp = reps[j].permuted(&inv);
            let cover = mls_cover(g)?;
            let compatible = screen(g, &gp, &cover).is_none()
                && !enumerate_function_pairs(g, &gp, &cover).is_empty();
            let lu = check_lu(g, &gp, None)?.is_equivalent();
            Ok(CandidatePair {
                orbits: (i, j),
                graph6: (g.to_graph6(), reps[j].to_graph6()),
                permutation: perm,
                compatible_functions: compatible,
                lu_equivalent: lu,
            })
        })
        .collect::<Result<_>>()?;
    out.sort_by_key(|c| c.orbits);
    Ok(out)
}

fn summarise(
    n: usize,
    graphs: Option<usize>,
    connected: Option<usize>,
    reps: &[Graph],
) -> Result<CensusRow> {
    let candidates = analyse_representatives(n, reps)?;
    Ok(CensusRow {
        n,
        graphs,
        connected,
        lc_orbits: reps.len(),
        cut_rank_pairs: candidates.len(),
        compatible_pairs: candidates.iter().filter(|c| c.compatible_functions).count(),
        lu_equivalent_pairs: candidates.iter().filter(|c| c.lu_equivalent).count(),
        candidates,
    })
}

/// Native census of connected graphs on `n` vertices.
pub fn census(n: usize) -> Result<CensusRow> {
    let all = enumerate_graphs(n)?;
    let connected: Vec<Graph> = all.iter().filter(|g| g.is_connected()).cloned().collect();
    let orbits = lc_orbits(&connected)?;
    let reps: Vec<Graph> = orbits.iter().map(|o| connected[o[0]].clone()).collect();
    summarise(n, Some(all.len()), Some(connected.len()), &reps)
}

/// Census over orbit representatives read from graph6 files, one per line.
pub fn census_from_db(dir: &Path) -> Result<Vec<CensusRow>> {
    let mut files: Vec<_> = fs::read_dir(dir)?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.is_file())
        .collect();
    files.sort();
    let mut by_n: BTreeMap<usize, Vec<Graph>> = BTreeMap::new();
    let mut seen = BTreeSet::new();
    for f in files {
        for line in fs::read_to_string(&f)?.lines() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let g = Graph::from_graph6(line)?;
            if seen.insert(line.to_string()) {
                by_n.entry(g.n()).or_default().push(g);
            }
        }
    }
    by_n.into_iter()
        .map(|(n, reps)| summarise(n, None, None, &reps))
        .collect()
}
