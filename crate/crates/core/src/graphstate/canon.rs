use std::collections::{BTreeMap, VecDeque};

use super::Graph;
use crate::error::{Error, Result};

/// Canonical labeling: `labeling[p]` is the original vertex placed at
/// position `p`; `bytes` is the graph6 text of the relabeled graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Canonical {
    pub labeling: Vec<usize>,
    pub bytes: Vec<u8>,
}

impl Canonical {
    pub fn graph(&self) -> Graph {
        Graph::from_graph6(std::str::from_utf8(&self.bytes).expect("ascii"))
            .expect("canonical bytes are valid graph6")
    }
}

struct Search {
    n: usize,
    adj: Vec<u64>,
    best: Option<(Vec<u64>, Vec<usize>)>,
}

impl Search {
    fn mask(cell: &[usize]) -> u64 {
        cell.iter().fold(0, |m, &v| m | 1 << v)
    }

    /// Equitable refinement; splits are ordered by neighbor count.
    fn refine(&self, cells: &mut Vec<Vec<usize>>) {
        'restart: loop {
            for s in 0..cells.len() {
                let splitter = Self::mask(&cells[s]);
                for c in 0..cells.len() {
                    if cells[c].len() == 1 {
                        continue;
                    }
                    let count = |v: usize| (self.adj[v] & splitter).count_ones();
                    let first = count(cells[c][0]);
                    if cells[c].iter().all(|&v| count(v) == first) {
                        continue;
                    }
                    let mut keyed: Vec<(u32, usize)> =
                        cells[c].iter().map(|&v| (count(v), v)).collect();
                    keyed.sort_unstable();
                    let mut groups: Vec<Vec<usize>> = Vec::new();
                    let mut last = None;
                    for (k, v) in keyed {
                        if last != Some(k) {
                            groups.push(Vec::new());
                            last = Some(k);
                        }
                        groups.last_mut().unwrap().push(v);
                    }
                    cells.splice(c..=c, groups);
                    continue 'restart;
                }
            }
            return;
        }
    }

    fn twins(&self, a: usize, b: usize) -> bool {
        self.adj[a] & !(1 << b) == self.adj[b] & !(1 << a)
    }

    fn leaf(&mut self, order: Vec<usize>) {
        let mut pos = vec![0; self.n];
        for (p, &v) in order.iter().enumerate() {
            pos[v] = p;
        }
        let cert: Vec<u64> = order
            .iter()
            .map(|&v| {
                let mut row = 0u64;
                let mut bits = self.adj[v];
                while bits != 0 {
                    let u = bits.trailing_zeros() as usize;
                    bits &= bits - 1;
                    row |= 1 << pos[u];
                }
                row
            })
            .collect();
        if self.best.as_ref().is_none_or(|(b, _)| cert < *b) {
            self.best = Some((cert, order));
        }
    }

    fn search(&mut self, mut cells: Vec<Vec<usize>>) {
        self.refine(&mut cells);
        let Some(idx) = cells.iter().position(|c| c.len() > 1) else {
            let order = cells.into_iter().map(|c| c[0]).collect();
            self.leaf(order);
            return;
        };
        let cell = cells[idx].clone();
        let mut tried: Vec<usize> = Vec::new();
        for &v in &cell {
            if tried.iter().any(|&w| self.twins(v, w)) {
                continue;
            }
            tried.push(v);
            let rest: Vec<usize> = cell.iter().copied().filter(|&u| u != v).collect();
            let mut next = cells.clone();
            next.splice(idx..=idx, [vec![v], rest]);
            self.search(next);
        }
    }
}

/// Canonical form by refinement and individualization. Transpositions of
/// twin vertices are automorphisms, so only one twin per cell is branched on.
pub fn canonical_form(g: &Graph) -> Result<Canonical> {
    let n = g.n();
    if n > 64 {
        return Err(Error::Guard {
            what: "canonical form vertex count",
            limit: 64,
            got: n,
        });
    }
    if n == 0 {
        return Ok(Canonical {
            labeling: vec![],
            bytes: g.to_graph6().into_bytes(),
        });
    }
    let mut s = Search {
        n,
        adj: g.adjacency_words(),
        best: None,
    };
    s.search(vec![(0..n).collect()]);
    let (_, order) = s.best.expect("search reaches at least one leaf");
    let mut perm = vec![0; n];
    for (p, &v) in order.iter().enumerate() {
        perm[v] = p;
    }
    Ok(Canonical {
        bytes: g.permuted(&perm).to_graph6().into_bytes(),
        labeling: order,
    })
}

/// LC orbit up to isomorphism, keyed by canonical bytes, keeping one
/// labeled member per class.
#[derive(Clone, Debug)]
pub struct LcOrbit {
    pub members: BTreeMap<Vec<u8>, Graph>,
}

impl LcOrbit {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, g: &Graph) -> bool {
        canonical_form(g).is_ok_and(|c| self.members.contains_key(&c.bytes))
    }
}

/// Closure of `g` under local complementation, modulo isomorphism.
pub fn lc_orbit(g: &Graph, max_size: usize) -> Result<LcOrbit> {
    let mut members = BTreeMap::new();
    let mut queue = VecDeque::new();
    members.insert(canonical_form(g)?.bytes, g.clone());
    queue.push_back(g.clone());
    while let Some(h) = queue.pop_front() {
        for a in 0..h.n() {
            let t = h.local_complement(a)?;
            let key = canonical_form(&t)?.bytes;
            if !members.contains_key(&key) {
                if members.len() >= max_size {
                    return Err(Error::Guard {
                        what: "LC orbit size",
                        limit: max_size,
                        got: members.len() + 1,
                    });
                }
                members.insert(key, t.clone());
                queue.push_back(t);
            }
        }
    }
    Ok(LcOrbit { members })
}

#[cfg(test)]
mod tests {
    use super::super::{complete, cycle, kneser, path, star};
    use super::*;
    use rand::seq::SliceRandom;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn shuffled(g: &Graph, rng: &mut ChaCha8Rng) -> Graph {
        let mut perm: Vec<usize> = (0..g.n()).collect();
        perm.shuffle(rng);
        g.permuted(&perm)
    }

    #[test]
    fn relabeling_invariance() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..200 {
            let n = rng.gen_range(1..11);
            let g = Graph::random(n, rng.gen_range(0.1..0.9), &mut rng);
            let c = canonical_form(&g).unwrap();
            assert_eq!(
                canonical_form(&shuffled(&g, &mut rng)).unwrap().bytes,
                c.bytes
            );
            let mut perm = vec![0; n];
            for (p, &v) in c.labeling.iter().enumerate() {
                perm[v] = p;
            }
            assert_eq!(g.permuted(&perm), c.graph());
        }
    }

    #[test]
    fn symmetric_graphs() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let petersen = {
            let mut g = Graph::empty(10);
            for i in 0..5 {
                g.set_edge(i, (i + 1) % 5, true);
                g.set_edge(5 + i, 5 + (i + 2) % 5, true);
                g.set_edge(i, 5 + i, true);
            }
            g
        };
        for g in [
            Graph::empty(12),
            complete(12),
            cycle(12),
            petersen,
            kneser(5, &[2], false).unwrap(),
        ] {
            let c = canonical_form(&g).unwrap().bytes;
            assert_eq!(canonical_form(&shuffled(&g, &mut rng)).unwrap().bytes, c);
        }
    }

    #[test]
    fn isomorphism_examples() {
        let key = |g: &Graph| canonical_form(g).unwrap().bytes;
        assert_eq!(key(&star(3)), key(&path(3)));
        let triangle_plus_isolated = Graph::from_edges(4, &[(0, 1), (1, 2), (0, 2)]).unwrap();
        assert_ne!(key(&star(4)), key(&triangle_plus_isolated));
        let two_triangles =
            Graph::from_edges(6, &[(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)]).unwrap();
        assert_ne!(key(&cycle(6)), key(&two_triangles));
    }

    #[test]
    fn orbit_examples() {
        assert_eq!(lc_orbit(&Graph::empty(1), 10).unwrap().len(), 1);
        let o = lc_orbit(&star(3), 10).unwrap();
        assert!(o.contains(&complete(3)));
        assert_eq!(o.len(), 2);
        assert!(lc_orbit(&cycle(8), 2).is_err());
    }

    #[test]
    fn orbit_is_closed() {
        let o = lc_orbit(&cycle(6), 1000).unwrap();
        for g in o.members.values() {
            for a in 0..g.n() {
                assert!(o.contains(&g.local_complement(a).unwrap()));
            }
        }
    }
}
