use super::factor::{LocalFactor, LocalOpChain};
use super::string::{commutes, multiply, PauliString};
use super::Axis;
use crate::error::{Error, Result};
use crate::gf2::{solve_f2, BitMatrix, BitVec};
use crate::graphstate::Graph;

/// Stabilizer generators as `[X | Z]` blocks plus phase exponents.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CheckMatrix {
    rows: Vec<PauliString>,
}

/// Normal form kept in the original qubit labels.
///
/// Rows `0..k` have an identity X-block on `pivots`; rows `k..n` are
/// Z-only with an identity on `tail`, in the order of `tail`.
#[derive(Clone, Debug)]
pub struct LabeledNormalForm {
    pub check: CheckMatrix,
    pub pivots: Vec<usize>,
    pub tail: Vec<usize>,
}

impl CheckMatrix {
    pub fn from_rows(rows: Vec<PauliString>) -> Result<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.n() != n) {
            return Err(Error::InvalidStabilizer(format!(
                "{n} generators must act on {n} qubits"
            )));
        }
        Ok(CheckMatrix { rows })
    }

    /// Builds the matrix and checks commutation and independence.
    pub fn new(rows: Vec<PauliString>) -> Result<Self> {
        let c = CheckMatrix::from_rows(rows)?;
        c.validate()?;
        Ok(c)
    }

    pub fn from_blocks(x: &BitMatrix, z: &BitMatrix, phases: &[u8]) -> Result<Self> {
        let n = x.rows();
        if x.cols() != n || z.rows() != n || z.cols() != n || phases.len() != n {
            return Err(Error::Dimension("check matrix blocks must be n x n".into()));
        }
        let rows = (0..n)
            .map(|i| PauliString::from_parts(x.row(i), z.row(i), phases[i]))
            .collect::<Result<Vec<_>>>()?;
        CheckMatrix::from_rows(rows)
    }

    /// `[I | Γ]` with trivial phases.
    pub fn from_graph(g: &Graph) -> Self {
        let n = g.n();
        let rows = (0..n)
            .map(|v| {
                PauliString::from_parts(BitVec::from_indices(n, [v]), g.neighborhood(v), 0)
                    .expect("lengths agree")
            })
            .collect();
        CheckMatrix { rows }
    }

    pub fn n(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[PauliString] {
        &self.rows
    }

    pub fn row(&self, i: usize) -> &PauliString {
        &self.rows[i]
    }

    pub fn xblock(&self) -> BitMatrix {
        BitMatrix::from_rows(
            self.n(),
            &self
                .rows
                .iter()
                .map(|r| r.xbits().clone())
                .collect::<Vec<_>>(),
        )
    }

    pub fn zblock(&self) -> BitMatrix {
        BitMatrix::from_rows(
            self.n(),
            &self
                .rows
                .iter()
                .map(|r| r.zbits().clone())
                .collect::<Vec<_>>(),
        )
    }

    pub fn phases(&self) -> Vec<u8> {
        self.rows.iter().map(|r| r.phase_exp()).collect()
    }

    pub fn validate(&self) -> Result<()> {
        let n = self.n();
        for i in 0..n {
            for j in i + 1..n {
                if !commutes(&self.rows[i], &self.rows[j]) {
                    return Err(Error::InvalidStabilizer(format!(
                        "generators {} and {} anticommute",
                        i + 1,
                        j + 1
                    )));
                }
            }
        }
        if self.xblock().hstack(&self.zblock()).rank() != n {
            return Err(Error::InvalidStabilizer("generators are dependent".into()));
        }
        Ok(())
    }

    /// Conjugates every generator by `chain`.
    pub fn conjugated(&self, chain: &LocalOpChain) -> Result<CheckMatrix> {
        let rows = self
            .rows
            .iter()
            .map(|r| chain.conjugate(r))
            .collect::<Result<Vec<_>>>()?;
        Ok(CheckMatrix { rows })
    }

    /// Moves qubit `perm[p]` to position `p`.
    pub fn permute_qubits(&self, perm: &[usize]) -> CheckMatrix {
        let n = self.n();
        assert_eq!(perm.len(), n);
        let rows = self
            .rows
            .iter()
            .map(|r| {
                let mut out = PauliString::identity(n).with_phase(r.phase_exp());
                for (p, &q) in perm.iter().enumerate() {
                    out.set(p, r.get(q));
                }
                out
            })
            .collect();
        CheckMatrix { rows }
    }

    /// Expresses `p` as a product of generators; `None` if `p` is outside the
    /// group (including a sign mismatch).
    pub fn contains(&self, p: &PauliString) -> bool {
        let n = self.n();
        if p.n() != n {
            return false;
        }
        let cols: Vec<BitVec> = self
            .rows
            .iter()
            .map(|r| {
                let mut v = r.xbits().clone().resized(2 * n);
                for j in r.zbits().iter_ones() {
                    v.set(n + j, true);
                }
                v
            })
            .collect();
        let a = BitMatrix::from_rows(2 * n, &cols).transpose();
        let mut target = p.xbits().clone().resized(2 * n);
        for j in p.zbits().iter_ones() {
            target.set(n + j, true);
        }
        let Ok(Some(sol)) = solve_f2(&a, &target) else {
            return false;
        };
        let mut acc = PauliString::identity(n);
        for i in sol.particular.iter_ones() {
            acc = multiply(&acc, &self.rows[i]).expect("lengths agree");
        }
        acc == *p
    }

    /// Same stabilizer group, phases included.
    pub fn same_group(&self, other: &CheckMatrix) -> bool {
        self.n() == other.n() && other.rows.iter().all(|r| self.contains(r))
    }
}

fn mul_into(rows: &mut [PauliString], dst: usize, src: usize) {
    rows[dst] = multiply(&rows[dst], &rows[src]).expect("generators share a length");
}

/// Brings `c` to normal form without moving qubits.
pub fn normal_form_labeled(c: &CheckMatrix) -> Result<LabeledNormalForm> {
    c.validate()?;
    let n = c.n();
    let mut rows = c.rows.clone();

    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..n {
        let Some(p) = (r..n).find(|&i| rows[i].xbits().get(col)) else {
            continue;
        };
        rows.swap(p, r);
        for i in 0..n {
            if i != r && rows[i].xbits().get(col) {
                mul_into(&mut rows, i, r);
            }
        }
        pivots.push(col);
        r += 1;
    }
    let k = r;
    let is_pivot = {
        let mut v = vec![false; n];
        for &p in &pivots {
            v[p] = true;
        }
        v
    };
    let tail: Vec<usize> = (0..n).filter(|&q| !is_pivot[q]).collect();

    for (j, &t) in tail.iter().enumerate() {
        let lead = k + j;
        let Some(p) = (lead..n).find(|&i| rows[i].zbits().get(t)) else {
            return Err(Error::InvalidStabilizer(
                "Z-only generators do not span the tail".into(),
            ));
        };
        rows.swap(p, lead);
        for i in 0..n {
            if i != lead && rows[i].zbits().get(t) {
                mul_into(&mut rows, i, lead);
            }
        }
    }

    for (i, &pi) in pivots.iter().enumerate() {
        for (j, &pj) in pivots.iter().enumerate() {
            if rows[i].zbits().get(pj) != rows[j].zbits().get(pi) {
                return Err(Error::InvalidStabilizer("Γ_kk is not symmetric".into()));
            }
        }
        for (j, &t) in tail.iter().enumerate() {
            if rows[i].xbits().get(t) != rows[k + j].zbits().get(pi) {
                return Err(Error::InvalidStabilizer("lower block is not Γᵀ".into()));
            }
        }
    }
    Ok(LabeledNormalForm {
        check: CheckMatrix { rows },
        pivots,
        tail,
    })
}

/// Normal form with pivot qubits moved to the front. Returns the
/// permutation (`perm[p]` is the original qubit at position `p`) and `k`.
pub fn normal_form(c: &CheckMatrix) -> Result<(CheckMatrix, Vec<usize>, usize)> {
    let nf = normal_form_labeled(c)?;
    let perm: Vec<usize> = nf.pivots.iter().chain(&nf.tail).copied().collect();
    Ok((nf.check.permute_qubits(&perm), perm, nf.pivots.len()))
}

/// Clears the diagonal of `Γ_kk` with `C(X,Y)` and fixes signs with `Z`
/// on pivots and `X` on the tail.
pub fn strong_normal_form_labeled(
    nf: &LabeledNormalForm,
) -> Result<(LabeledNormalForm, LocalOpChain)> {
    let n = nf.check.n();
    let k = nf.pivots.len();
    if nf.check.rows.iter().any(|r| !r.is_hermitian()) {
        return Err(Error::InvalidStabilizer("phase ±i in a generator".into()));
    }
    let mut chain = LocalOpChain::identity(n);
    for (i, &p) in nf.pivots.iter().enumerate() {
        if nf.check.rows[i].zbits().get(p) {
            chain.push(p, LocalFactor::Transition(Axis::X, Axis::Y));
        }
    }
    let mid = nf.check.conjugated(&chain)?;
    let mut fix = LocalOpChain::identity(n);
    for (i, &p) in nf.pivots.iter().enumerate() {
        if mid.rows[i].phase_exp() == 2 {
            fix.push(p, LocalFactor::ZPow(crate::dyadic::Dyadic::ONE));
        }
    }
    for (j, &t) in nf.tail.iter().enumerate() {
        if mid.rows[k + j].phase_exp() == 2 {
            fix.push(t, LocalFactor::PauliX);
        }
    }
    let out = mid.conjugated(&fix)?;
    debug_assert!(out.rows.iter().all(|r| r.phase_exp() == 0));
    Ok((
        LabeledNormalForm {
            check: out,
            pivots: nf.pivots.clone(),
            tail: nf.tail.clone(),
        },
        chain.then(&fix),
    ))
}

/// Strong normal form of a check matrix already in normal form with its
/// pivots first.
pub fn strong_normal_form(c: &CheckMatrix) -> Result<(CheckMatrix, LocalOpChain)> {
    let nf = as_labeled(c)?;
    let (s, w) = strong_normal_form_labeled(&nf)?;
    Ok((s.check, w))
}

fn as_labeled(c: &CheckMatrix) -> Result<LabeledNormalForm> {
    let n = c.n();
    let k = c.rows.iter().take_while(|r| !r.xbits().is_zero()).count();
    let pivots: Vec<usize> = (0..k).collect();
    let tail: Vec<usize> = (k..n).collect();
    for (i, r) in c.rows.iter().enumerate() {
        let ok = if i < k {
            (0..k).all(|q| r.xbits().get(q) == (q == i))
        } else {
            r.xbits().is_zero() && (k..n).all(|q| r.zbits().get(q) == (q == i))
        };
        if !ok {
            return Err(Error::Precondition(
                "check matrix is not in normal form".into(),
            ));
        }
    }
    Ok(LabeledNormalForm {
        check: c.clone(),
        pivots,
        tail,
    })
}

/// Hadamards on the tail turn a strong normal form into a graph state.
pub fn hadamard_tail_labeled(nf: &LabeledNormalForm) -> Result<(Graph, LocalOpChain)> {
    let n = nf.check.n();
    let mut chain = LocalOpChain::identity(n);
    for &t in &nf.tail {
        chain.push(t, LocalFactor::H);
    }
    let rows = nf.check.conjugated(&chain)?.rows;
    let mut adj = BitMatrix::zeros(n, n);
    for r in &rows {
        if r.phase_exp() != 0 {
            return Err(Error::Precondition(
                "strong normal form needs trivial phases".into(),
            ));
        }
        let xs = r.xbits().to_indices();
        let [v] = xs[..] else {
            return Err(Error::Precondition("generator without a single X".into()));
        };
        if r.zbits().get(v) {
            return Err(Error::Precondition("diagonal of Γ_kk is not zero".into()));
        }
        adj.set_row(v, r.zbits());
    }
    let g = Graph::from_adjacency(adj)
        .map_err(|e| Error::Precondition(format!("not a graph state: {e}")))?;
    Ok((g, chain))
}

/// [`hadamard_tail_labeled`] for a strong normal form with pivots `0..k`.
pub fn hadamard_tail(c: &CheckMatrix, k: usize) -> Result<Graph> {
    let nf = LabeledNormalForm {
        check: c.clone(),
        pivots: (0..k).collect(),
        tail: (k..c.n()).collect(),
    };
    Ok(hadamard_tail_labeled(&nf)?.0)
}

/// Regenerates the group of `c` so that its X-block equals `target_x`.
pub fn match_x_part(target_x: &BitMatrix, c: &CheckMatrix) -> Option<CheckMatrix> {
    let n = c.n();
    if target_x.rows() != n || target_x.cols() != n {
        return None;
    }
    let own = c.xblock();
    let k = own.rank();
    let nonzero: Vec<usize> = (0..n).filter(|&i| !target_x.row_is_zero(i)).collect();
    if nonzero.len() != k || target_x.rank() != k {
        return None;
    }
    let stacked = BitMatrix::from_rows(
        n,
        &(0..n)
            .map(|i| own.row(i))
            .chain((0..n).map(|i| target_x.row(i)))
            .collect::<Vec<_>>(),
    );
    if stacked.rank() != k {
        return None;
    }
    let nf = normal_form_labeled(c).ok()?;
    let top = &nf.check.rows[..k];
    let lower = &nf.check.rows[k..];
    let top_x = BitMatrix::from_rows(
        n,
        &top.iter().map(|r| r.xbits().clone()).collect::<Vec<_>>(),
    )
    .transpose();
    let mut lower_iter = lower.iter();
    let mut rows = Vec::with_capacity(n);
    for i in 0..n {
        if target_x.row_is_zero(i) {
            rows.push(lower_iter.next()?.clone());
        } else {
            let sol = solve_f2(&top_x, &target_x.row(i)).ok()??;
            let mut acc = PauliString::identity(n);
            for j in sol.particular.iter_ones() {
                acc = multiply(&acc, &top[j]).ok()?;
            }
            rows.push(acc);
        }
    }
    Some(CheckMatrix { rows })
}

impl Graph {
    /// `s_v = X_v ∏_{u ∈ N_v} Z_u`.
    pub fn standard_generators(&self) -> CheckMatrix {
        CheckMatrix::from_graph(self)
    }

    /// Membership in the stabilizer group of this graph state, sign included.
    pub fn stabilizes(&self, p: &PauliString) -> bool {
        if p.n() != self.n() {
            return false;
        }
        let mut acc = PauliString::identity(self.n());
        for d in p.xbits().iter_ones() {
            let s = PauliString::from_parts(
                BitVec::from_indices(self.n(), [d]),
                self.neighborhood(d),
                0,
            )
            .expect("lengths agree");
            acc = multiply(&acc, &s).expect("lengths agree");
        }
        acc == *p
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphstate::{complete, star};
    use rand::seq::SliceRandom;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn cm(rows: &[&str]) -> CheckMatrix {
        CheckMatrix::new(rows.iter().map(|s| s.parse().unwrap()).collect()).unwrap()
    }

    fn scramble(c: &CheckMatrix, rng: &mut ChaCha8Rng) -> CheckMatrix {
        let mut rows = c.rows.clone();
        for _ in 0..3 * rows.len() {
            let i = rng.gen_range(0..rows.len());
            let j = rng.gen_range(0..rows.len());
            if i != j {
                mul_into(&mut rows, i, j);
            }
        }
        rows.shuffle(rng);
        CheckMatrix { rows }
    }

    #[test]
    fn standard_generators_examples() {
        let s = star(3).standard_generators();
        let text: Vec<String> = s.rows().iter().map(|r| r.to_string()).collect();
        assert_eq!(text, ["+XZZ", "+ZXI", "+ZIX"]);
        let t = complete(3).standard_generators();
        let text: Vec<String> = t.rows().iter().map(|r| r.to_string()).collect();
        assert_eq!(text, ["+XZZ", "+ZXZ", "+ZZX"]);
        let e = Graph::empty(3).standard_generators();
        assert_eq!(e.xblock(), BitMatrix::identity(3));
        assert_eq!(e.zblock(), BitMatrix::zeros(3, 3));
    }

    #[test]
    fn validation_rejects_bad_input() {
        assert!(CheckMatrix::new(vec!["X".parse().unwrap()]).is_ok());
        assert!(CheckMatrix::new(vec!["XI".parse().unwrap(), "ZI".parse().unwrap()]).is_err());
        assert!(CheckMatrix::new(vec!["XI".parse().unwrap(), "XI".parse().unwrap()]).is_err());
    }

    #[test]
    fn ghz_is_already_normal() {
        let ghz = cm(&["XXX", "ZZI", "IZZ"]);
        let (nf, perm, k) = normal_form(&ghz).unwrap();
        assert_eq!(k, 1);
        assert_eq!(perm, vec![0, 1, 2]);
        assert_eq!(nf.xblock(), BitMatrix::from_strs(&["111", "000", "000"]));
        assert!(!nf.zblock().get(0, 0));
        assert!(nf.same_group(&ghz));
        let (snf, w) = strong_normal_form(&nf).unwrap();
        assert!(w.is_identity());
        assert_eq!(hadamard_tail(&snf, 1).unwrap(), star(3));
    }

    #[test]
    fn graph_state_is_fixed_point() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..30 {
            let g = Graph::random(rng.gen_range(1..9), 0.5, &mut rng);
            let c = g.standard_generators();
            let (nf, perm, k) = normal_form(&c).unwrap();
            assert_eq!(k, g.n());
            assert_eq!(perm, (0..g.n()).collect::<Vec<_>>());
            assert_eq!(nf, c);
            assert_eq!(hadamard_tail(&nf, k).unwrap(), g);
        }
    }

    #[test]
    fn scrambled_rows_give_same_normal_form() {
        let mut rng = ChaCha8Rng::seed_from_u64(10);
        for _ in 0..50 {
            let n = rng.gen_range(2..9);
            let g = Graph::random(n, 0.5, &mut rng);
            let mut chain = LocalOpChain::identity(n);
            for q in 0..n {
                if rng.gen_bool(0.5) {
                    chain.push(q, LocalFactor::H);
                }
            }
            let c = g.standard_generators().conjugated(&chain).unwrap();
            let (a, pa, ka) = normal_form(&c).unwrap();
            let (b, pb, kb) = normal_form(&scramble(&c, &mut rng)).unwrap();
            assert_eq!((ka, &pa), (kb, &pb));
            assert_eq!(a, b);
            assert!(a.permute_qubits(&invert(&pa)).same_group(&c));
        }
    }

    fn invert(perm: &[usize]) -> Vec<usize> {
        let mut inv = vec![0; perm.len()];
        for (p, &q) in perm.iter().enumerate() {
            inv[q] = p;
        }
        inv
    }

    #[test]
    fn strong_form_clears_diagonal_and_signs() {
        // Y on the pivot: Γ_11 = 1
        let c = cm(&["YZ", "ZX"]);
        let (nf, _, k) = normal_form(&c).unwrap();
        assert_eq!(k, 2);
        assert!(nf.zblock().get(0, 0));
        let (snf, w) = strong_normal_form(&nf).unwrap();
        assert_eq!(w.factors(0), &[LocalFactor::Transition(Axis::X, Axis::Y)]);
        assert!(!snf.zblock().get(0, 0));
        assert_eq!(nf.conjugated(&w).unwrap(), snf);

        let c = cm(&["-XZ", "ZX"]);
        let (nf, _, _) = normal_form(&c).unwrap();
        let (snf, w) = strong_normal_form(&nf).unwrap();
        assert_eq!(
            w.factors(0),
            &[LocalFactor::ZPow(crate::dyadic::Dyadic::ONE)]
        );
        assert!(snf.phases().iter().all(|&p| p == 0));

        let c = cm(&["XX", "-ZZ"]);
        let (nf, _, k) = normal_form(&c).unwrap();
        assert_eq!(k, 1);
        let (snf, w) = strong_normal_form(&nf).unwrap();
        assert_eq!(w.factors(1), &[LocalFactor::PauliX]);
        assert!(snf.phases().iter().all(|&p| p == 0));
    }

    #[test]
    fn strong_form_rejects_imaginary_phase() {
        let nf = as_labeled(&CheckMatrix {
            rows: vec!["+iX".parse().unwrap()],
        })
        .unwrap();
        assert!(strong_normal_form_labeled(&nf).is_err());
    }

    #[test]
    fn hadamard_tail_round_trips() {
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        for _ in 0..40 {
            let n = rng.gen_range(2..9);
            let g = Graph::random(n, 0.5, &mut rng);
            let mut chain = LocalOpChain::identity(n);
            for q in 0..n {
                match rng.gen_range(0..4) {
                    0 => chain.push(q, LocalFactor::H),
                    1 => chain.push(q, LocalFactor::Transition(Axis::X, Axis::Y)),
                    2 => chain.push(q, LocalFactor::ZPow(crate::dyadic::Dyadic::HALF)),
                    _ => {}
                }
            }
            let c = g.standard_generators().conjugated(&chain).unwrap();
            let nf = normal_form_labeled(&c).unwrap();
            let (snf, w) = strong_normal_form_labeled(&nf).unwrap();
            let (h, hc) = hadamard_tail_labeled(&snf).unwrap();
            let total = chain.then(&w).then(&hc);
            let image = g.standard_generators().conjugated(&total).unwrap();
            assert!(image.same_group(&h.standard_generators()));
            for t in &snf.tail {
                for u in &snf.tail {
                    assert!(!h.has_edge(*t, *u));
                }
            }
            let (again, _, k) = normal_form(&h.standard_generators()).unwrap();
            assert_eq!(k, n);
            assert_eq!(hadamard_tail(&again, k).unwrap(), h);
        }
    }

    #[test]
    fn match_x_part_examples() {
        let mut rng = ChaCha8Rng::seed_from_u64(14);
        let ghz = cm(&["XXX", "ZZI", "IZZ"]);
        let own = ghz.xblock();
        let m = match_x_part(&own, &ghz).unwrap();
        assert_eq!(m.xblock(), own);
        assert!(m.same_group(&ghz));
        let wrong_rank = BitMatrix::from_strs(&["110", "011", "000"]);
        assert!(match_x_part(&wrong_rank, &ghz).is_none());

        for _ in 0..30 {
            let n = rng.gen_range(2..8);
            let g = Graph::random(n, 0.5, &mut rng);
            let mut chain = LocalOpChain::identity(n);
            for q in 0..n {
                if rng.gen_bool(0.4) {
                    chain.push(q, LocalFactor::H);
                }
            }
            let c = g.standard_generators().conjugated(&chain).unwrap();
            let target = normal_form_labeled(&c).unwrap().check.xblock();
            let m = match_x_part(&target, &scramble(&c, &mut rng)).unwrap();
            assert_eq!(m.xblock(), target);
            assert!(m.same_group(&c));
        }
    }

    #[test]
    fn graph_membership() {
        let g = complete(3);
        assert!(g.stabilizes(&"+XZZ".parse().unwrap()));
        assert!(!g.stabilizes(&"-XZZ".parse().unwrap()));
        // s1 s2 = (XZZ)(ZXZ) = -YYI... sign checked by multiplication
        let prod = multiply(&"XZZ".parse().unwrap(), &"ZXZ".parse().unwrap()).unwrap();
        assert!(g.stabilizes(&prod));
        assert_eq!(prod.to_string(), "+YYI");
    }
}
