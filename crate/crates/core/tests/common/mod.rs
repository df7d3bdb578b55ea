//! Checks shared by the acceptance target and the property suites. Each
//! check returns a one-line summary on success and the first
//! counterexample on failure.

#![allow(dead_code)]

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use stab_lu::census::enumerate_graphs;
use stab_lu::graphstate::Graph;
use stab_lu::hypergraph::{verify_certificate, WeightedHypergraph};
use stab_lu::mls::{local_set, mls_cover, reduced_stabilizer_group};
use stab_lu::oracle::{factor_matrix, graph_state_vector, hypergraph_state_vector, StateVector};
use stab_lu::pauli::{Axis, LocalFactor, LocalOpChain, PauliString};
use stab_lu::pipeline::ReducedPair;
use stab_lu::{Dyadic, VertexSet};

pub type Check = Result<String, String>;

pub const AMP_TOL: f64 = 1e-9;
pub const ENTROPY_TOL: f64 = 1e-6;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_graph(rng: &mut ChaCha8Rng, n: usize) -> Graph {
    let p = rng.gen_range(0.15..0.85);
    Graph::random(n, p, rng)
}

/// Applies between 1 and `4n` random local complementations.
pub fn random_lc(rng: &mut ChaCha8Rng, g: &Graph) -> Graph {
    let mut h = g.clone();
    if h.n() == 0 {
        return h;
    }
    for _ in 0..rng.gen_range(1..=4 * h.n()) {
        h.local_complement_in_place(rng.gen_range(0..h.n()));
    }
    h
}

pub fn random_dyadic(rng: &mut ChaCha8Rng, max_log_den: u32) -> Dyadic {
    let j = rng.gen_range(0..=max_log_den);
    Dyadic::new(rng.gen_range(0..2i64 << j), j)
}

pub fn set_from_mask(n: usize, mask: u64) -> VertexSet {
    VertexSet::from_indices(n, (0..n).filter(|&v| mask >> v & 1 == 1))
}

fn neighbour_masks(g: &Graph) -> Vec<u64> {
    (0..g.n())
        .map(|v| {
            (0..g.n())
                .filter(|&u| g.has_edge(u, v))
                .fold(0, |m, u| m | 1 << u)
        })
        .collect()
}

/// `D ∪ Odd(D)` computed from scratch.
fn local_mask(nb: &[u64], d: u64) -> u64 {
    let odd = nb
        .iter()
        .enumerate()
        .filter(|(_, &m)| (m & d).count_ones() % 2 == 1)
        .fold(0u64, |acc, (v, _)| acc | 1 << v);
    d | odd
}

/// GF(2) rank of the `M × M^c` block, by plain elimination on bitmasks.
fn cut_rank_oracle(nb: &[u64], m: u64) -> usize {
    let n = nb.len();
    let comp = !m & ((1u64 << n) - 1);
    let mut rows: Vec<u64> = (0..n)
        .filter(|&v| m >> v & 1 == 1)
        .map(|v| nb[v] & comp)
        .collect();
    let mut rank = 0;
    for bit in 0..n {
        if let Some(p) = (rank..rows.len()).find(|&i| rows[i] >> bit & 1 == 1) {
            rows.swap(rank, p);
            let pivot = rows[rank];
            for (i, r) in rows.iter_mut().enumerate() {
                if i != rank && *r >> bit & 1 == 1 {
                    *r ^= pivot;
                }
            }
            rank += 1;
        }
    }
    rank
}

fn all_labeled(n: usize) -> impl Iterator<Item = Graph> {
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .collect();
    (0u64..1 << pairs.len()).map(move |mask| {
        let mut g = Graph::empty(n);
        for (b, &(u, v)) in pairs.iter().enumerate() {
            if mask >> b & 1 == 1 {
                g.set_edge(u, v, true);
            }
        }
        g
    })
}

fn check_cut_rank_graph(g: &Graph) -> std::result::Result<(), String> {
    let n = g.n();
    let nb = neighbour_masks(g);
    let full = (1u64 << n) - 1;
    let lcs: Vec<Graph> = (0..n).map(|a| g.local_complement(a).unwrap()).collect();
    for mask in 0..=full {
        let m = set_from_mask(n, mask);
        let r = g.cut_rank(&m);
        if r != cut_rank_oracle(&nb, mask) {
            return Err(format!(
                "{} M={mask:#b}: rank {r} disagrees with elimination",
                g.to_graph6()
            ));
        }
        if r != g.cut_rank(&set_from_mask(n, full & !mask)) {
            return Err(format!("{} M={mask:#b}: not symmetric", g.to_graph6()));
        }
        if let Some(a) = lcs.iter().position(|h| h.cut_rank(&m) != r) {
            return Err(format!(
                "{} M={mask:#b}: changes under τ_{}",
                g.to_graph6(),
                a + 1
            ));
        }
    }
    Ok(())
}

/// Every labeled graph up to `labeled_max` vertices and every unlabeled graph
/// up to `unlabeled_max`, every cut.
pub fn cut_rank_symmetry_and_lc_invariance(labeled_max: usize, unlabeled_max: usize) -> Check {
    let mut graphs = 0usize;
    for n in 1..=labeled_max {
        for g in all_labeled(n) {
            check_cut_rank_graph(&g)?;
            graphs += 1;
        }
    }
    for n in labeled_max + 1..=unlabeled_max {
        for g in enumerate_graphs(n).map_err(|e| e.to_string())? {
            check_cut_rank_graph(&g)?;
            graphs += 1;
        }
    }
    Ok(format!("{graphs} graphs, all cuts, all τ_a"))
}

/// Validity and minimality of the cover, minimality checked against every
/// `D ⊆ M` from scratch.
pub fn mls_cover_validity(samples: usize, n_max: usize, seed: u64) -> Check {
    let mut rng = rng(seed);
    let mut sets = 0usize;
    for _ in 0..samples {
        let n = rng.gen_range(1..=n_max);
        let g = random_graph(&mut rng, n);
        let cover = mls_cover(&g).map_err(|e| format!("{}: {e}", g.to_graph6()))?;
        if !cover.is_valid_for(&g) {
            return Err(format!("{}: invalid cover", g.to_graph6()));
        }
        let nb = neighbour_masks(&g);
        let mut union = 0u64;
        for s in &cover.sets {
            let m = s.m.to_indices().iter().fold(0u64, |acc, &v| acc | 1 << v);
            let d = s.d.to_indices().iter().fold(0u64, |acc, &v| acc | 1 << v);
            if local_mask(&nb, d) != m {
                return Err(format!("{}: D does not generate M", g.to_graph6()));
            }
            // Proper nonempty local sets inside M come from some D ⊆ M.
            let mut sub = (m - 1) & m;
            loop {
                if sub != 0 {
                    let l = local_mask(&nb, sub);
                    if l != 0 && l & !m == 0 && l != m {
                        return Err(format!("{}: M={m:#b} is not minimal", g.to_graph6()));
                    }
                }
                if sub == 0 {
                    break;
                }
                sub = (sub - 1) & m;
            }
            union |= m;
            sets += 1;
        }
        if union != (1u64 << n) - 1 {
            return Err(format!("{}: cover misses vertices", g.to_graph6()));
        }
    }
    Ok(format!("{samples} graphs, {sets} sets"))
}

/// `|St^M| = 2^{|M|−CutRank(M)}`, with the left side counted over all
/// generator words and compared with the library's group.
pub fn reduced_group_size_law(samples: usize, n_max: usize, seed: u64) -> Check {
    let mut rng = rng(seed);
    let mut cuts = 0usize;
    for _ in 0..samples {
        let n = rng.gen_range(1..=n_max);
        let g = random_graph(&mut rng, n);
        let nb = neighbour_masks(&g);
        let full = (1u64 << n) - 1;
        let supports: Vec<u64> = (0..=full).map(|d| local_mask(&nb, d)).collect();
        for m in 0..=full {
            let counted = supports.iter().filter(|&&s| s & !m == 0).count();
            let ms = set_from_mask(n, m);
            let law = 1usize << (m.count_ones() as usize - g.cut_rank(&ms));
            let lib = reduced_stabilizer_group(&g, &ms)
                .map_err(|e| e.to_string())?
                .len();
            if counted != law || lib != law {
                return Err(format!(
                    "{} M={m:#b}: words {counted}, library {lib}, law {law}",
                    g.to_graph6()
                ));
            }
            cuts += 1;
        }
    }
    Ok(format!("{samples} graphs, {cuts} subsets"))
}

fn max_diff(a: &StateVector, b: &StateVector) -> f64 {
    a.amplitudes()
        .iter()
        .zip(b.amplitudes())
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
}

fn independent_set(rng: &mut ChaCha8Rng, g: &Graph) -> Vec<usize> {
    let mut order: Vec<usize> = (0..g.n()).collect();
    order.shuffle(rng);
    let mut out: Vec<usize> = Vec::new();
    for v in order {
        if rng.gen_bool(0.7) && out.iter().all(|&u| !g.has_edge(u, v)) {
            out.push(v);
        }
    }
    out
}

/// The `Z^α` and `X^α` rewrite rules agree amplitude by amplitude with dense
/// application of the matrices.
pub fn hypergraph_rewrite_vs_dense(samples: usize, n_max: usize, seed: u64) -> Check {
    // X on a vertex with δ = {a, b}: weights α on a and b, −2α on ab.
    let g = Graph::from_edges(3, &[(0, 1), (1, 2)]).unwrap();
    let beta = Dyadic::new(1, 3);
    let h = WeightedHypergraph::from_graph(&g)
        .apply_x_graphlike(1, beta)
        .map_err(|e| e.to_string())?;
    if h.weight(&[0]) != beta
        || h.weight(&[2]) != beta
        || h.weight(&[0, 2]) != beta.times_neg2_pow(1)
    {
        return Err(format!("path P3, X^{beta} on the middle: {}", h.to_json()));
    }
    let mut worst = 0.0f64;
    let mut rng = rng(seed);
    for _ in 0..samples {
        let n = rng.gen_range(1..=n_max);
        let g = random_graph(&mut rng, n);
        let xs: Vec<(usize, Dyadic)> = independent_set(&mut rng, &g)
            .into_iter()
            .map(|v| (v, random_dyadic(&mut rng, 4)))
            .collect();
        let mut zs: Vec<(usize, Dyadic)> = Vec::new();
        for v in 0..n {
            if !xs.iter().any(|&(x, _)| x == v) && rng.gen_bool(0.5) {
                zs.push((v, random_dyadic(&mut rng, 4)));
            }
        }
        let mut h = WeightedHypergraph::from_graph(&g)
            .apply_x_layer(&xs)
            .map_err(|e| e.to_string())?;
        for &(v, a) in &zs {
            h = h.apply_z(v, a).map_err(|e| e.to_string())?;
        }
        let symbolic = hypergraph_state_vector(&h).map_err(|e| e.to_string())?;
        let mut dense = graph_state_vector(&g).map_err(|e| e.to_string())?;
        for &(v, a) in &xs {
            dense.apply_single(v, &factor_matrix(LocalFactor::XPow(a)));
        }
        for &(v, a) in &zs {
            dense.apply_single(v, &factor_matrix(LocalFactor::ZPow(a)));
        }
        let d = max_diff(&symbolic, &dense);
        worst = worst.max(d);
        if d > AMP_TOL {
            return Err(format!(
                "{} X{xs:?} Z{zs:?}: amplitude gap {d:e}",
                g.to_graph6()
            ));
        }
    }
    Ok(format!(
        "{samples} layers, worst amplitude gap {worst:.1e} ≤ {AMP_TOL:e}"
    ))
}

/// A graph in block form with `k` pivots and at least one pair of twin tail
/// vertices.
fn random_block_graph_with_twins(rng: &mut ChaCha8Rng, n: usize) -> (Graph, usize) {
    let k = rng.gen_range(1..=n - 2);
    loop {
        let mut g = Graph::empty(n);
        for u in 0..k {
            for v in u + 1..k {
                g.set_edge(u, v, rng.gen_bool(0.5));
            }
        }
        let mut rows: Vec<Vec<bool>> = (k..n)
            .map(|_| (0..k).map(|_| rng.gen_bool(0.5)).collect())
            .collect();
        let src = rng.gen_range(0..rows.len());
        let dst = (src + 1 + rng.gen_range(0..rows.len() - 1)) % rows.len();
        rows[dst] = rows[src].clone();
        for (t, row) in rows.iter().enumerate() {
            for (p, &b) in row.iter().enumerate() {
                g.set_edge(k + t, p, b);
            }
        }
        if g.twins(&set_from_mask(n, ((1u64 << n) - 1) & !((1u64 << k) - 1)))
            .iter()
            .any(|c| c.len() > 1)
        {
            return (g, k);
        }
    }
}

/// `X_i^β X_j^{−β}` fixes `|Ĝ⟩` for twin tail vertices, symbolically and
/// densely.
pub fn twin_automorphism(samples: usize, n_max: usize, seed: u64) -> Check {
    let mut rng = rng(seed);
    let mut worst = 0.0f64;
    for _ in 0..samples {
        let n = rng.gen_range(3..=n_max);
        let (g, k) = random_block_graph_with_twins(&mut rng, n);
        let tail: Vec<usize> = (k..n).collect();
        let rp = ReducedPair {
            g_hat: g.clone(),
            gp_hat: g.clone(),
            k,
            pivots: (0..k).collect(),
            tail: tail.clone(),
            chain_g: LocalOpChain::identity(n),
            chain_gp: LocalOpChain::identity(n),
            qubit_perm: (0..n).collect(),
        };
        let classes = g.twins(&VertexSet::from_indices(n, tail));
        let class = classes.iter().find(|c| c.len() > 1).unwrap();
        let (i, j) = (class[0], class[1]);
        let beta = random_dyadic(&mut rng, 6);
        let mut alpha = vec![Dyadic::ZERO; n];
        alpha[i] = beta;
        alpha[j] = -beta;
        if !verify_certificate(&rp, &alpha) {
            return Err(format!(
                "{} twins {},{} β={beta}: symbolic check fails",
                g.to_graph6(),
                i + 1,
                j + 1
            ));
        }
        let s = graph_state_vector(&g).map_err(|e| e.to_string())?;
        let mut t = s.clone();
        t.apply_single(i, &factor_matrix(LocalFactor::XPow(beta)));
        t.apply_single(j, &factor_matrix(LocalFactor::XPow(-beta)));
        let d = max_diff(&s, &t);
        worst = worst.max(d);
        if d > AMP_TOL {
            return Err(format!(
                "{} twins {},{} β={beta}: amplitude gap {d:e}",
                g.to_graph6(),
                i + 1,
                j + 1
            ));
        }
    }
    Ok(format!(
        "{samples} twin pairs, worst amplitude gap {worst:.1e} ≤ {AMP_TOL:e}"
    ))
}

fn pauli_2x2(a: Option<Axis>) -> DMatrix<Complex64> {
    let (o, l, i) = (
        Complex64::new(0.0, 0.0),
        Complex64::new(1.0, 0.0),
        Complex64::new(0.0, 1.0),
    );
    let v = match a {
        None => [l, o, o, l],
        Some(Axis::X) => [o, l, l, o],
        Some(Axis::Y) => [o, -i, i, o],
        Some(Axis::Z) => [l, o, o, -l],
    };
    DMatrix::from_row_slice(2, 2, &v)
}

/// `p` restricted to the qubits of `m`, first qubit most significant.
fn restricted_matrix(p: &PauliString, m: &[usize]) -> DMatrix<Complex64> {
    let mut out = DMatrix::from_element(1, 1, Complex64::i().powu(p.phase_exp() as u32));
    for &q in m {
        out = out.kronecker(&pauli_2x2(p.get(q)));
    }
    out
}

/// `ρ_M = 2^{−|M|} Σ_{s∈St^M} s`, and `S(ρ_M) = CutRank(M)`, for every `M`.
pub fn marginals_from_stabilizers(samples: usize, n_max: usize, seed: u64) -> Check {
    let mut rng = rng(seed);
    let (mut worst_rho, mut worst_s) = (0.0f64, 0.0f64);
    for _ in 0..samples {
        let n = rng.gen_range(1..=n_max);
        let g = random_graph(&mut rng, n);
        let state = graph_state_vector(&g).map_err(|e| e.to_string())?;
        for mask in 1..1u64 << n {
            let m = set_from_mask(n, mask);
            let idx = m.to_indices();
            let dim = 1usize << idx.len();
            let mut rho = DMatrix::<Complex64>::zeros(dim, dim);
            for s in reduced_stabilizer_group(&g, &m).map_err(|e| e.to_string())? {
                rho += restricted_matrix(&s, &idx);
            }
            rho /= Complex64::new(dim as f64, 0.0);
            let d = (rho - state.reduced_density_matrix(&m)).norm();
            worst_rho = worst_rho.max(d);
            if d > AMP_TOL {
                return Err(format!("{} M={mask:#b}: ρ gap {d:e}", g.to_graph6()));
            }
            let e = (state.entanglement_entropy(&m) - g.cut_rank(&m) as f64).abs();
            worst_s = worst_s.max(e);
            if e > ENTROPY_TOL {
                return Err(format!("{} M={mask:#b}: entropy gap {e:e}", g.to_graph6()));
            }
        }
    }
    Ok(format!(
        "{samples} graphs, worst ρ gap {worst_rho:.1e} ≤ {AMP_TOL:e}, worst entropy gap {worst_s:.1e} ≤ {ENTROPY_TOL:e}"
    ))
}

/// `local_set` agrees with the bitmask definition on every `D`.
pub fn local_set_matches_definition(samples: usize, n_max: usize, seed: u64) -> Check {
    let mut rng = rng(seed);
    for _ in 0..samples {
        let n = rng.gen_range(1..=n_max);
        let g = random_graph(&mut rng, n);
        let nb = neighbour_masks(&g);
        for d in 0..1u64 << n {
            let want = set_from_mask(n, local_mask(&nb, d));
            if local_set(&g, &set_from_mask(n, d)) != want {
                return Err(format!("{} D={d:#b}", g.to_graph6()));
            }
        }
    }
    Ok(format!("{samples} graphs, all D"))
}
