//! The decision procedure: screening, function pairs, reduction to block
//! form and the level-by-level angle search.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::dyadic::Dyadic;
use crate::error::{Error, Result};
use crate::gf2::DyadicVector;
use crate::graphstate::{EdgeList, Graph, VertexSet};
use crate::hypergraph::verify_certificate;
use crate::mls::mls_cover;
use crate::oracle;
use crate::pauli::{LocalFactor, LocalOpChain};

mod pairs;
mod reduce;
mod system;

pub use pairs::{enumerate_function_pairs, screen, FunctionPair};
pub use reduce::{chain_maps_graph, reduce_to_hat, ReducedPair};
pub use system::{
    build_system, complete_level, full_angles, modulus_for_level, solve_hierarchy, twin_classes,
    HierarchyOutcome, TwinClasses,
};

/// Dense checks run inside [`check_lu`] up to this many qubits.
pub const DENSE_CHECK_LIMIT: usize = 12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Stage {
    CutRank,
    MlsCover,
    SupportScreen,
    FunctionPairs,
    Reduction,
    System,
}

impl fmt::Display for Stage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rejection {
    pub stage: Stage,
    pub detail: String,
}

impl Rejection {
    pub fn new(stage: Stage, detail: impl Into<String>) -> Self {
        Rejection {
            stage,
            detail: detail.into(),
        }
    }
}

/// `|G'⟩ ∝ composed |G⟩`.
#[derive(Clone, Debug, PartialEq)]
pub struct Certificate {
    pub reduced: ReducedPair,
    /// One angle per qubit: `Z^α` on pivots, `X^α` on the tail.
    pub alpha: DyadicVector,
    pub r: u32,
    pub composed: LocalOpChain,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Verdict {
    Equivalent(Box<Certificate>),
    NotEquivalent { stage: Stage, detail: String },
    NotEquivalentUpTo { r_max: u32 },
}

impl Verdict {
    pub fn is_equivalent(&self) -> bool {
        matches!(self, Verdict::Equivalent(_))
    }

    pub fn certificate(&self) -> Option<&Certificate> {
        match self {
            Verdict::Equivalent(c) => Some(c),
            _ => None,
        }
    }

    /// 0 equivalent, 1 not equivalent, 2 not equivalent up to the cap.
    pub fn exit_code(&self) -> i32 {
        match self {
            Verdict::Equivalent(_) => 0,
            Verdict::NotEquivalent { .. } => 1,
            Verdict::NotEquivalentUpTo { .. } => 2,
        }
    }

    fn rejected(r: Rejection) -> Verdict {
        Verdict::NotEquivalent {
            stage: r.stage,
            detail: r.detail,
        }
    }
}

/// `Û = ∏_{p} Z_p^{α_p} ∏_{t} X_t^{α_t}`.
pub fn angle_layer(rp: &ReducedPair, alpha: &[Dyadic]) -> LocalOpChain {
    let mut u = LocalOpChain::identity(rp.g_hat.n());
    for &p in &rp.pivots {
        if !alpha[p].is_zero() {
            u.push(p, LocalFactor::ZPow(alpha[p]));
        }
    }
    for &t in &rp.tail {
        if !alpha[t].is_zero() {
            u.push(t, LocalFactor::XPow(alpha[t]));
        }
    }
    u
}

impl Certificate {
    pub fn new(reduced: ReducedPair, alpha: DyadicVector, r: u32) -> Self {
        let composed = reduced
            .chain_g
            .then(&angle_layer(&reduced, &alpha))
            .then(&reduced.chain_gp.inverse());
        Certificate {
            reduced,
            alpha,
            r,
            composed,
        }
    }

    pub fn n(&self) -> usize {
        self.reduced.g_hat.n()
    }

    /// Exact checks, plus a statevector check when `n ≤ dense_limit`.
    pub fn verify(&self, g: &Graph, gp: &Graph, dense_limit: usize) -> Result<()> {
        let fail = |what: &str| Err(Error::Certificate(what.to_string()));
        let rp = &self.reduced;
        let n = g.n();
        if gp.n() != n || self.n() != n || self.alpha.len() != n || self.composed.n() != n {
            return fail("qubit counts disagree");
        }
        let mut sides = rp
            .pivots
            .iter()
            .chain(&rp.tail)
            .copied()
            .collect::<Vec<_>>();
        sides.sort_unstable();
        if sides != (0..n).collect::<Vec<_>>() || rp.k != rp.pivots.len() {
            return fail("pivots and tail do not partition the qubits");
        }
        if !self.alpha.iter().all(|a| a.in_level(self.r)) {
            return fail("an angle lies outside the stated level");
        }
        if !chain_maps_graph(&rp.chain_g, g, &rp.g_hat) {
            return fail("first chain does not map the first graph to its block form");
        }
        if !chain_maps_graph(&rp.chain_gp, gp, &rp.gp_hat) {
            return fail("second chain does not map the second graph to its block form");
        }
        if !verify_certificate(rp, &self.alpha) {
            return fail("angle layer does not carry one block form to the other");
        }
        let expect = rp
            .chain_g
            .then(&angle_layer(rp, &self.alpha))
            .then(&rp.chain_gp.inverse());
        if expect != self.composed {
            return fail("composed chain does not match its layers");
        }
        if n <= dense_limit && !oracle::verify_certificate_dense(g, gp, self)? {
            return fail("statevector check failed");
        }
        Ok(())
    }
}

/// Compares cut ranks on every bipartition for small `n`, otherwise on all
/// sets of at most two vertices.
pub fn cut_rank_screen(g: &Graph, gp: &Graph) -> Option<Rejection> {
    let n = g.n();
    let mismatch = |m: &VertexSet| {
        let (a, b) = (g.cut_rank(m), gp.cut_rank(m));
        (a != b).then(|| {
            Rejection::new(
                Stage::CutRank,
                format!(
                    "cut rank of {:?} is {a} versus {b}",
                    m.iter_ones().map(|v| v + 1).collect::<Vec<_>>()
                ),
            )
        })
    };
    if (1..=16).contains(&n) {
        (1..1u64 << (n - 1)).find_map(|mask| mismatch(&VertexSet::from_u64(n, mask)))
    } else {
        (0..n)
            .flat_map(|u| (u..n).map(move |v| (u, v)))
            .find_map(|(u, v)| mismatch(&VertexSet::from_indices(n, [u, v])))
    }
}

/// Decides LU equivalence of `|G⟩` and `|G'⟩`, searching angle levels up to
/// `r_max` (default: the level at which the search is complete).
pub fn check_lu(g: &Graph, gp: &Graph, r_max: Option<u32>) -> Result<Verdict> {
    if g.n() != gp.n() {
        return Err(Error::Dimension(format!(
            "graphs have {} and {} vertices",
            g.n(),
            gp.n()
        )));
    }
    if r_max == Some(0) {
        return Err(Error::Precondition("r_max must be at least 1".into()));
    }
    if let Some(r) = cut_rank_screen(g, gp) {
        return Ok(Verdict::rejected(r));
    }
    let cover = mls_cover(g)?;
    if let Some(r) = screen(g, gp, &cover) {
        return Ok(Verdict::rejected(r));
    }
    let pairs = enumerate_function_pairs(g, gp, &cover);
    if pairs.is_empty() {
        return Ok(Verdict::rejected(Rejection::new(
            Stage::FunctionPairs,
            "every branch of letter assignments conflicts",
        )));
    }
    let mut reduced_any = false;
    let mut capped = None;
    for pair in &pairs {
        let Some(rp) = reduce_to_hat(g, gp, pair) else {
            continue;
        };
        reduced_any = true;
        let cap = r_max.unwrap_or_else(|| complete_level(&rp));
        match solve_hierarchy(&rp, cap)? {
            HierarchyOutcome::Solved { r, alpha } => {
                let cert = Certificate::new(rp, alpha, r);
                cert.verify(g, gp, DENSE_CHECK_LIMIT)?;
                return Ok(Verdict::Equivalent(Box::new(cert)));
            }
            HierarchyOutcome::Capped { r_max } => capped = Some(r_max),
            HierarchyOutcome::Unsolvable => {}
        }
    }
    Ok(match (reduced_any, capped) {
        (false, _) => Verdict::rejected(Rejection::new(
            Stage::Reduction,
            format!(
                "none of {} letter assignments reaches a common block form",
                pairs.len()
            ),
        )),
        (true, Some(r_max)) => Verdict::NotEquivalentUpTo { r_max },
        (true, None) => Verdict::rejected(Rejection::new(
            Stage::System,
            "the angle equations have no solution",
        )),
    })
}

/// LC equivalence: the search restricted to Clifford angles.
pub fn check_lc(g: &Graph, gp: &Graph) -> Result<Verdict> {
    Ok(match check_lu(g, gp, Some(1))? {
        Verdict::NotEquivalentUpTo { .. } => Verdict::NotEquivalent {
            stage: Stage::System,
            detail: "no Clifford solution".into(),
        },
        v => v,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CertificateJson {
    pub n: usize,
    pub r: u32,
    pub k: usize,
    pub pivots: Vec<usize>,
    pub tail: Vec<usize>,
    pub g_hat: EdgeList,
    pub gp_hat: EdgeList,
    pub chain_g: LocalOpChain,
    pub chain_gp: LocalOpChain,
    pub alpha: Vec<Dyadic>,
    pub composed: LocalOpChain,
}

impl From<&Certificate> for CertificateJson {
    fn from(c: &Certificate) -> Self {
        let rp = &c.reduced;
        let one = |v: &[usize]| v.iter().map(|x| x + 1).collect();
        CertificateJson {
            n: c.n(),
            r: c.r,
            k: rp.k,
            pivots: one(&rp.pivots),
            tail: one(&rp.tail),
            g_hat: rp.g_hat.to_edge_list(),
            gp_hat: rp.gp_hat.to_edge_list(),
            chain_g: rp.chain_g.clone(),
            chain_gp: rp.chain_gp.clone(),
            alpha: c.alpha.clone(),
            composed: c.composed.clone(),
        }
    }
}

impl TryFrom<CertificateJson> for Certificate {
    type Error = Error;

    fn try_from(j: CertificateJson) -> Result<Self> {
        let zero = |v: &[usize]| -> Result<Vec<usize>> {
            v.iter()
                .map(|&x| {
                    if x == 0 || x > j.n {
                        Err(Error::Parse(format!("qubit {x} out of range 1..={}", j.n)))
                    } else {
                        Ok(x - 1)
                    }
                })
                .collect()
        };
        let pivots = zero(&j.pivots)?;
        let tail = zero(&j.tail)?;
        let reduced = ReducedPair {
            g_hat: Graph::from_edge_list(&j.g_hat)?,
            gp_hat: Graph::from_edge_list(&j.gp_hat)?,
            k: j.k,
            qubit_perm: pivots.iter().chain(&tail).copied().collect(),
            pivots,
            tail,
            chain_g: j.chain_g,
            chain_gp: j.chain_gp,
        };
        Ok(Certificate {
            reduced,
            alpha: j.alpha,
            r: j.r,
            composed: j.composed,
        })
    }
}

impl Certificate {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(CertificateJson::from(self)).expect("certificate serialises")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let v: serde_json::Value = serde_json::from_str(text)?;
        let inner = v.get("certificate").cloned().unwrap_or(v);
        Certificate::try_from(serde_json::from_value::<CertificateJson>(inner)?)
    }
}

impl Verdict {
    pub fn to_json(&self) -> serde_json::Value {
        use serde_json::json;
        match self {
            Verdict::Equivalent(c) => json!({
                "verdict": "equivalent",
                "r": c.r,
                "certificate": c.to_json(),
            }),
            Verdict::NotEquivalent { stage, detail } => json!({
                "verdict": "not_equivalent",
                "stage": stage,
                "detail": detail,
            }),
            Verdict::NotEquivalentUpTo { r_max } => json!({
                "verdict": "not_equivalent_up_to",
                "r": r_max,
            }),
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Equivalent(c) => write!(f, "equivalent (r = {})", c.r),
            Verdict::NotEquivalent { stage, detail } => {
                write!(f, "not equivalent [{stage}]: {detail}")
            }
            Verdict::NotEquivalentUpTo { r_max } => {
                write!(f, "not equivalent up to r = {r_max}")
            }
        }
    }
}
