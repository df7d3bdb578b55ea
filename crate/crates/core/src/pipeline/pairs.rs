use crate::graphstate::{Graph, VertexSet};
use crate::mls::{classify, is_mls, one_indexed, LocalSet, MlsCover, MlsType};
use crate::pauli::{multiply, Axis, PauliString};

use super::{Rejection, Stage};

/// Per-vertex Pauli letters `F_G` and `F_{G'}` that a local unitary must
/// carry onto each other.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FunctionPair {
    pub f_g: Vec<Axis>,
    pub f_gp: Vec<Axis>,
}

impl FunctionPair {
    pub fn identity(n: usize) -> Self {
        FunctionPair {
            f_g: vec![Axis::Z; n],
            f_gp: vec![Axis::Z; n],
        }
    }

    pub fn n(&self) -> usize {
        self.f_g.len()
    }

    pub fn to_strings(&self) -> (String, String) {
        let s = |f: &[Axis]| f.iter().map(|a| a.letter()).collect();
        (s(&self.f_g), s(&self.f_gp))
    }
}

/// The nontrivial elements of `St^M` in `g`, ordered by generator word.
fn elements(g: &Graph, set: &LocalSet) -> Vec<PauliString> {
    set.elements(g).into_iter().map(|(_, p)| p).collect()
}

/// Necessary conditions on `gp` derived from a cover of `g`.
pub fn screen(g: &Graph, gp: &Graph, cover: &MlsCover) -> Option<Rejection> {
    for s in &cover.sets {
        if !is_mls(gp, &s.m) {
            return Some(Rejection::new(
                Stage::MlsCover,
                format!(
                    "{:?} is not a minimal local set of the second graph",
                    one_indexed(&s.m)
                ),
            ));
        }
        if classify(gp, &s.m).ok() != Some(s.mls_type) {
            return Some(Rejection::new(
                Stage::MlsCover,
                format!("{:?} changes type", one_indexed(&s.m)),
            ));
        }
    }
    let type_i: Vec<&LocalSet> = cover
        .sets
        .iter()
        .filter(|s| s.mls_type == MlsType::TypeI)
        .collect();
    let unique = |h: &Graph, s: &LocalSet| elements(h, s).pop().expect("Type I has one element");
    for (a, s1) in type_i.iter().enumerate() {
        for s2 in &type_i[a + 1..] {
            if !s1.m.intersects(&s2.m) {
                continue;
            }
            let pg = multiply(&unique(g, s1), &unique(g, s2)).expect("same length");
            let pgp = multiply(&unique(gp, s1), &unique(gp, s2)).expect("same length");
            if pg.support() != pgp.support() {
                return Some(Rejection::new(
                    Stage::SupportScreen,
                    format!(
                        "product supports differ on {:?} and {:?}",
                        one_indexed(&s1.m),
                        one_indexed(&s2.m)
                    ),
                ));
            }
        }
    }
    None
}

#[derive(Clone)]
struct Partial {
    f: Vec<Option<Axis>>,
    fp: Vec<Option<Axis>>,
    used: Vec<bool>,
}

impl Partial {
    fn domain(&self) -> VertexSet {
        VertexSet::from_bools(&self.f.iter().map(Option::is_some).collect::<Vec<_>>())
    }

    /// Adds the letters of `s`, `sp` on `m`; fails on a conflict at a vertex
    /// already in the domain.
    fn extend(&mut self, m: &VertexSet, s: &PauliString, sp: &PauliString) -> bool {
        for v in m.iter_ones() {
            let a = s
                .get(v)
                .expect("support of an MLS element is the whole set");
            let b = sp
                .get(v)
                .expect("support of an MLS element is the whole set");
            match (self.f[v], self.fp[v]) {
                (Some(x), Some(y)) => {
                    if (a == x) != (b == y) {
                        return false;
                    }
                }
                _ => {
                    self.f[v] = Some(a);
                    self.fp[v] = Some(b);
                }
            }
        }
        true
    }
}

/// All function pairs compatible with the cover, in lexicographic order of
/// branch choices. At most `3^t` pairs.
pub fn enumerate_function_pairs(g: &Graph, gp: &Graph, cover: &MlsCover) -> Vec<FunctionPair> {
    let n = g.n();
    let els: Vec<(Vec<PauliString>, Vec<PauliString>)> = cover
        .sets
        .iter()
        .map(|s| (elements(g, s), elements(gp, s)))
        .collect();
    let mut out = Vec::new();
    let start = Partial {
        f: vec![None; n],
        fp: vec![None; n],
        used: vec![false; cover.sets.len()],
    };
    search(cover, &els, start, &mut out);
    out
}

fn search(
    cover: &MlsCover,
    els: &[(Vec<PauliString>, Vec<PauliString>)],
    mut p: Partial,
    out: &mut Vec<FunctionPair>,
) {
    loop {
        let domain = p.domain();
        let open = |i: &usize| !p.used[*i];
        let idx = (0..cover.sets.len())
            .filter(open)
            .find(|&i| cover.sets[i].m.intersects(&domain))
            .or_else(|| {
                (0..cover.sets.len())
                    .filter(open)
                    .find(|&i| cover.sets[i].mls_type == MlsType::TypeI)
            });
        let Some(i) = idx else { break };
        p.used[i] = true;
        let set = &cover.sets[i];
        let (eg, egp) = &els[i];
        let ok = match set.mls_type {
            MlsType::TypeI => p.extend(&set.m, &eg[0], &egp[0]),
            MlsType::TypeII => {
                let j = set
                    .m
                    .and(&domain)
                    .first_one()
                    .expect("intersects the domain");
                let (fj, fpj) = (p.f[j], p.fp[j]);
                let a = eg
                    .iter()
                    .find(|s| s.get(j) == fj)
                    .expect("letters at j are distinct");
                let b = egp
                    .iter()
                    .find(|s| s.get(j) == fpj)
                    .expect("letters at j are distinct");
                p.extend(&set.m, a, b)
            }
        };
        if !ok {
            return;
        }
    }
    let Some(i) = (0..cover.sets.len()).find(|&i| !p.used[i]) else {
        out.push(FunctionPair {
            f_g: p
                .f
                .iter()
                .map(|a| a.expect("cover spans every vertex"))
                .collect(),
            f_gp: p
                .fp
                .iter()
                .map(|a| a.expect("cover spans every vertex"))
                .collect(),
        });
        return;
    };
    let (eg, egp) = &els[i];
    for b in egp {
        let mut q = p.clone();
        q.used[i] = true;
        if q.extend(&cover.sets[i].m, &eg[0], b) {
            search(cover, els, q, out);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphstate::{complete, star};
    use crate::mls::{intersection_components, mls_cover};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn identical_graphs_pass_and_pair_with_themselves() {
        let mut rng = ChaCha8Rng::seed_from_u64(41);
        for _ in 0..50 {
            let g = Graph::random(rng.gen_range(1..9), 0.5, &mut rng);
            let c = mls_cover(&g).unwrap();
            assert!(screen(&g, &g, &c).is_none());
            let pairs = enumerate_function_pairs(&g, &g, &c);
            let (_, t) = intersection_components(&c);
            assert!(!pairs.is_empty());
            assert!(pairs.len() <= 3usize.pow(t as u32));
            if t == 0 {
                assert_eq!(pairs.len(), 1);
                assert_eq!(pairs[0].f_g, pairs[0].f_gp);
            }
        }
    }

    #[test]
    fn ghz_pair() {
        let g = star(3);
        let gp = complete(3);
        let c = mls_cover(&g).unwrap();
        assert!(screen(&g, &gp, &c).is_none());
        let pairs = enumerate_function_pairs(&g, &gp, &c);
        assert!(!pairs.is_empty());
    }

    #[test]
    fn screen_rejects_type_change() {
        let g = Graph::empty(2);
        let gp = complete(2);
        let c = mls_cover(&g).unwrap();
        assert_eq!(screen(&g, &gp, &c).unwrap().stage, Stage::MlsCover);
    }
}
