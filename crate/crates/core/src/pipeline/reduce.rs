use crate::graphstate::Graph;
use crate::pauli::{
    hadamard_tail_labeled, normal_form_labeled, strong_normal_form_labeled, Axis, CheckMatrix,
    LocalFactor, LocalOpChain,
};

use super::FunctionPair;

/// A pair of graphs in block form together with the Clifford chains that
/// produced them. Labels are those of the input graphs.
#[derive(Clone, Debug, PartialEq)]
pub struct ReducedPair {
    pub g_hat: Graph,
    pub gp_hat: Graph,
    pub k: usize,
    pub pivots: Vec<usize>,
    pub tail: Vec<usize>,
    /// Maps `|G⟩` to `|Ĝ⟩` up to a global phase.
    pub chain_g: LocalOpChain,
    /// Maps `|G'⟩` to `|Ĝ'⟩` up to a global phase.
    pub chain_gp: LocalOpChain,
    /// Pivots first, then the tail.
    pub qubit_perm: Vec<usize>,
}

impl ReducedPair {
    /// Largest tail degree.
    pub fn delta(&self) -> usize {
        self.tail
            .iter()
            .map(|&t| self.g_hat.degree(t))
            .max()
            .unwrap_or(0)
    }
}

/// `C(F(i), Z)` on every qubit with `F(i) ≠ Z`.
fn rotate_to_z(f: &[Axis]) -> LocalOpChain {
    let mut c = LocalOpChain::identity(f.len());
    for (q, &a) in f.iter().enumerate() {
        if a != Axis::Z {
            c.push(q, LocalFactor::Transition(a, Axis::Z));
        }
    }
    c
}

/// Brings both graphs to the common block form selected by `pair`, or
/// `None` when the pair cannot witness an equivalence.
pub fn reduce_to_hat(g: &Graph, gp: &Graph, pair: &FunctionPair) -> Option<ReducedPair> {
    let n = g.n();
    if gp.n() != n || pair.n() != n {
        return None;
    }
    let v = rotate_to_z(&pair.f_g);
    let vp = rotate_to_z(&pair.f_gp);
    let s = CheckMatrix::from_graph(g).conjugated(&v).ok()?;
    let sp = CheckMatrix::from_graph(gp).conjugated(&vp).ok()?;
    let nf = normal_form_labeled(&s).ok()?;
    let nfp = normal_form_labeled(&sp).ok()?;
    if nf.pivots != nfp.pivots || nf.check.xblock() != nfp.check.xblock() {
        return None;
    }
    let (snf, w) = strong_normal_form_labeled(&nf).ok()?;
    let (snfp, wp) = strong_normal_form_labeled(&nfp).ok()?;
    let (g_hat, h) = hadamard_tail_labeled(&snf).ok()?;
    let (gp_hat, hp) = hadamard_tail_labeled(&snfp).ok()?;
    for &t in &snf.tail {
        if g_hat.neighborhood(t) != gp_hat.neighborhood(t) {
            return None;
        }
    }
    let k = snf.pivots.len();
    let qubit_perm = snf.pivots.iter().chain(&snf.tail).copied().collect();
    Some(ReducedPair {
        g_hat,
        gp_hat,
        k,
        pivots: snf.pivots,
        tail: snf.tail,
        chain_g: v.then(&w).then(&h),
        chain_gp: vp.then(&wp).then(&hp),
        qubit_perm,
    })
}

/// `chain` carries every stabilizer of `from` into the stabilizer group of `to`.
pub fn chain_maps_graph(chain: &LocalOpChain, from: &Graph, to: &Graph) -> bool {
    chain.n() == from.n()
        && from.n() == to.n()
        && CheckMatrix::from_graph(from)
            .rows()
            .iter()
            .all(|s| chain.conjugate(s).is_ok_and(|img| to.stabilizes(&img)))
}
