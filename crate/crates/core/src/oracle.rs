//! Dense statevector simulation for small inputs.
//!
//! Qubit 0 is the most significant bit of a basis index.

use std::collections::{HashSet, VecDeque};
use std::f64::consts::{FRAC_1_SQRT_2, PI};

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::dyadic::Dyadic;
use crate::error::{Error, Result};
use crate::graphstate::{Graph, VertexSet};
use crate::hypergraph::WeightedHypergraph;
use crate::pauli::{Axis, LocalFactor, LocalOpChain, PauliString};
use crate::pipeline::Certificate;

pub const DEFAULT_GUARD: usize = 14;
pub const STATE_TOL: f64 = 1e-9;
pub const EIGEN_TOL: f64 = 1e-12;

pub type Matrix2 = [[Complex64; 2]; 2];

#[derive(Clone, Debug, PartialEq)]
pub struct StateVector {
    n: usize,
    amps: Vec<Complex64>,
}

fn guard(n: usize) -> Result<()> {
    if n > DEFAULT_GUARD {
        return Err(Error::Guard {
            what: "dense simulation qubits",
            limit: DEFAULT_GUARD,
            got: n,
        });
    }
    Ok(())
}

#[inline]
fn bit(x: usize, n: usize, q: usize) -> bool {
    x >> (n - 1 - q) & 1 == 1
}

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// `e^{iπα}`.
pub fn phase(alpha: Dyadic) -> Complex64 {
    Complex64::from_polar(1.0, PI * alpha.to_f64())
}

impl StateVector {
    pub fn from_amplitudes(n: usize, amps: Vec<Complex64>) -> Result<Self> {
        guard(n)?;
        if amps.len() != 1 << n {
            return Err(Error::Dimension(format!(
                "{} amplitudes for {n} qubits",
                amps.len()
            )));
        }
        let s = StateVector { n, amps };
        if (s.norm() - 1.0).abs() > STATE_TOL {
            return Err(Error::Precondition("state is not normalised".into()));
        }
        Ok(s)
    }

    /// `|+⟩^⊗n`.
    pub fn plus(n: usize) -> Result<Self> {
        guard(n)?;
        let a = (1.0 / (1u64 << n) as f64).sqrt();
        Ok(StateVector {
            n,
            amps: vec![c(a, 0.0); 1 << n],
        })
    }

    pub fn ghz(n: usize) -> Result<Self> {
        guard(n)?;
        let mut amps = vec![c(0.0, 0.0); 1 << n];
        amps[0] = c(FRAC_1_SQRT_2, 0.0);
        amps[(1 << n) - 1] = c(FRAC_1_SQRT_2, 0.0);
        Ok(StateVector { n, amps })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn norm(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn inner(&self, other: &StateVector) -> Complex64 {
        assert_eq!(self.n, other.n);
        self.amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| a.conj() * b)
            .sum()
    }

    pub fn apply_single(&mut self, q: usize, m: &Matrix2) {
        let stride = 1 << (self.n - 1 - q);
        for base in 0..self.amps.len() {
            if base & stride != 0 {
                continue;
            }
            let a0 = self.amps[base];
            let a1 = self.amps[base | stride];
            self.amps[base] = m[0][0] * a0 + m[0][1] * a1;
            self.amps[base | stride] = m[1][0] * a0 + m[1][1] * a1;
        }
    }

    pub fn apply_pauli(&self, p: &PauliString) -> StateVector {
        assert_eq!(p.n(), self.n);
        let n = self.n;
        let global = Complex64::i().powu(p.phase_exp() as u32);
        let mut out = vec![c(0.0, 0.0); self.amps.len()];
        let mut flip = 0usize;
        for q in p.xbits().iter_ones() {
            flip |= 1 << (n - 1 - q);
        }
        for (x, &a) in self.amps.iter().enumerate() {
            let mut amp = a * global;
            for q in 0..n {
                match p.get(q) {
                    Some(Axis::Z) if bit(x, n, q) => amp = -amp,
                    Some(Axis::Y) => {
                        amp *= if bit(x, n, q) {
                            c(0.0, -1.0)
                        } else {
                            c(0.0, 1.0)
                        };
                    }
                    _ => {}
                }
            }
            out[x ^ flip] = amp;
        }
        StateVector { n, amps: out }
    }

    /// `‖p|ψ⟩ − |ψ⟩‖`.
    pub fn stabilizer_residual(&self, p: &PauliString) -> f64 {
        let img = self.apply_pauli(p);
        img.amps
            .iter()
            .zip(&self.amps)
            .map(|(a, b)| (a - b).norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    /// `ρ_M = Tr_{M⊥} |ψ⟩⟨ψ|`, rows indexed by the qubits of `m` in
    /// increasing order, the first one most significant.
    pub fn reduced_density_matrix(&self, m: &VertexSet) -> DMatrix<Complex64> {
        let n = self.n;
        let keep = m.to_indices();
        let rest: Vec<usize> = (0..n).filter(|q| !m.get(*q)).collect();
        let dk = 1 << keep.len();
        let dr = 1 << rest.len();
        let index = |a: usize, b: usize| -> usize {
            let mut x = 0;
            for (j, &q) in keep.iter().enumerate() {
                if a >> (keep.len() - 1 - j) & 1 == 1 {
                    x |= 1 << (n - 1 - q);
                }
            }
            for (j, &q) in rest.iter().enumerate() {
                if b >> (rest.len() - 1 - j) & 1 == 1 {
                    x |= 1 << (n - 1 - q);
                }
            }
            x
        };
        let mut rho = DMatrix::zeros(dk, dk);
        for i in 0..dk {
            for j in 0..dk {
                let mut acc = c(0.0, 0.0);
                for b in 0..dr {
                    acc += self.amps[index(i, b)] * self.amps[index(j, b)].conj();
                }
                rho[(i, j)] = acc;
            }
        }
        rho
    }

    /// Von Neumann entropy of `ρ_M` in bits.
    pub fn entanglement_entropy(&self, m: &VertexSet) -> f64 {
        if m.is_zero() || m.count_ones() == self.n {
            return 0.0;
        }
        let rho = self.reduced_density_matrix(m);
        let eig = rho.symmetric_eigenvalues();
        eig.iter()
            .filter(|&&l| l > 1e-12)
            .map(|&l| -l * l.log2())
            .sum()
    }
}

/// `|G⟩ = ∏ CZ |+⟩^⊗n`.
pub fn graph_state_vector(g: &Graph) -> Result<StateVector> {
    hypergraph_state_vector(&WeightedHypergraph::from_graph(g))
}

pub fn hypergraph_state_vector(h: &WeightedHypergraph) -> Result<StateVector> {
    let n = h.n();
    let mut s = StateVector::plus(n)?;
    let masks: Vec<(usize, Dyadic)> = h
        .iter()
        .map(|(e, w)| (e.iter().fold(0, |m, &q| m | 1 << (n - 1 - q)), w))
        .collect();
    for (x, a) in s.amps.iter_mut().enumerate() {
        let total = masks
            .iter()
            .filter(|(m, _)| x & m == *m)
            .fold(Dyadic::ZERO, |acc, &(_, w)| acc + w);
        *a *= phase(total);
    }
    Ok(s)
}

fn pauli_matrix(a: Axis) -> Matrix2 {
    let (o, l, i) = (c(0.0, 0.0), c(1.0, 0.0), c(0.0, 1.0));
    match a {
        Axis::X => [[o, l], [l, o]],
        Axis::Y => [[o, -i], [i, o]],
        Axis::Z => [[l, o], [o, -l]],
    }
}

fn mat_mul(a: &Matrix2, b: &Matrix2) -> Matrix2 {
    let mut out = [[c(0.0, 0.0); 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            out[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
        }
    }
    out
}

/// `H`, `C(A,B) = (A+B)/√2` with `C(A,A) = I`, `X`,
/// `Z^α = diag(1, e^{iπα})`, `X^α = H Z^α H`.
pub fn factor_matrix(f: LocalFactor) -> Matrix2 {
    let s = c(FRAC_1_SQRT_2, 0.0);
    let (o, l) = (c(0.0, 0.0), c(1.0, 0.0));
    match f {
        LocalFactor::H => [[s, s], [s, -s]],
        LocalFactor::Transition(a, b) if a == b => [[l, o], [o, l]],
        LocalFactor::Transition(a, b) => {
            let (pa, pb) = (pauli_matrix(a), pauli_matrix(b));
            let mut m = [[o; 2]; 2];
            for i in 0..2 {
                for j in 0..2 {
                    m[i][j] = (pa[i][j] + pb[i][j]) * s;
                }
            }
            m
        }
        LocalFactor::PauliX => pauli_matrix(Axis::X),
        LocalFactor::ZPow(a) => [[l, o], [o, phase(a)]],
        LocalFactor::XPow(a) => {
            let h = factor_matrix(LocalFactor::H);
            mat_mul(&mat_mul(&h, &[[l, o], [o, phase(a)]]), &h)
        }
    }
}

/// Per-qubit product of the chain, first factor applied first.
pub fn chain_matrices(chain: &LocalOpChain) -> Vec<Matrix2> {
    let (o, l) = (c(0.0, 0.0), c(1.0, 0.0));
    (0..chain.n())
        .map(|q| {
            chain
                .factors(q)
                .iter()
                .fold([[l, o], [o, l]], |acc, &f| mat_mul(&factor_matrix(f), &acc))
        })
        .collect()
}

pub fn apply_chain(s: &StateVector, chain: &LocalOpChain) -> StateVector {
    assert_eq!(s.n, chain.n());
    let mut out = s.clone();
    for (q, m) in chain_matrices(chain).iter().enumerate() {
        if !chain.factors(q).is_empty() {
            out.apply_single(q, m);
        }
    }
    out
}

/// `|⟨a|b⟩| ≥ 1 − tol`.
pub fn equal_up_to_phase(a: &StateVector, b: &StateVector, tol: f64) -> bool {
    a.n == b.n && a.inner(b).norm() >= 1.0 - tol
}

/// Applies the composed chain to `|G⟩` and compares with `|G′⟩`.
pub fn verify_certificate_dense(g: &Graph, gp: &Graph, cert: &Certificate) -> Result<bool> {
    if g.n() != gp.n() || cert.composed.n() != g.n() {
        return Ok(false);
    }
    let s = graph_state_vector(g)?;
    let t = graph_state_vector(gp)?;
    Ok(equal_up_to_phase(
        &apply_chain(&s, &cert.composed),
        &t,
        STATE_TOL,
    ))
}

/// Labeled LC orbit by breadth-first search, keyed by adjacency words.
pub fn labeled_lc_orbit(g: &Graph, max_size: usize) -> Result<Vec<Graph>> {
    if g.n() > 64 {
        return Err(Error::Guard {
            what: "labeled orbit vertex count",
            limit: 64,
            got: g.n(),
        });
    }
    let mut seen: HashSet<Vec<u64>> = HashSet::new();
    let mut out = Vec::new();
    let mut queue = VecDeque::new();
    seen.insert(g.adjacency_words());
    queue.push_back(g.clone());
    while let Some(h) = queue.pop_front() {
        for a in 0..h.n() {
            let t = h.local_complement(a)?;
            if seen.insert(t.adjacency_words()) {
                if seen.len() > max_size {
                    return Err(Error::Guard {
                        what: "labeled LC orbit size",
                        limit: max_size,
                        got: seen.len(),
                    });
                }
                queue.push_back(t);
            }
        }
        out.push(h);
    }
    Ok(out)
}

/// LC equivalence of labeled graphs by orbit enumeration.
pub fn brute_lc_equivalent(g: &Graph, gp: &Graph, max_size: usize) -> Result<bool> {
    if g.n() != gp.n() {
        return Ok(false);
    }
    let target = gp.adjacency_words();
    Ok(labeled_lc_orbit(g, max_size)?
        .iter()
        .any(|h| h.adjacency_words() == target))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphstate::{complete, star};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn close(a: Complex64, b: Complex64) -> bool {
        (a - b).norm() < 1e-12
    }

    #[test]
    fn single_plus_state() {
        let s = graph_state_vector(&Graph::empty(1)).unwrap();
        assert!(close(s.amps[0], c(FRAC_1_SQRT_2, 0.0)));
        assert!(close(s.amps[1], c(FRAC_1_SQRT_2, 0.0)));
        assert!(graph_state_vector(&Graph::empty(15)).is_err());
    }

    #[test]
    fn star_is_local_hadamards_on_ghz() {
        let mut ch = LocalOpChain::identity(3);
        ch.push(1, LocalFactor::H);
        ch.push(2, LocalFactor::H);
        let ghz = apply_chain(&StateVector::ghz(3).unwrap(), &ch);
        let g = graph_state_vector(&star(3)).unwrap();
        assert!(equal_up_to_phase(&g, &ghz, STATE_TOL));
        assert!((g.inner(&ghz).re - 1.0).abs() < 1e-12);

        let mut all_h = LocalOpChain::identity(3);
        for q in 0..3 {
            all_h.push(q, LocalFactor::H);
        }
        let mut first = LocalOpChain::identity(3);
        first.push(0, LocalFactor::H);
        let out = apply_chain(&apply_chain(&g, &all_h), &first);
        assert!(equal_up_to_phase(
            &out,
            &StateVector::ghz(3).unwrap(),
            STATE_TOL
        ));
    }

    #[test]
    fn graph_states_are_stabilized() {
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        for _ in 0..20 {
            let g = Graph::random(rng.gen_range(1..9), 0.5, &mut rng);
            let s = graph_state_vector(&g).unwrap();
            for r in g.standard_generators().rows() {
                assert!(s.stabilizer_residual(r) < EIGEN_TOL);
                assert!(s.stabilizer_residual(&r.clone().negated()) > 1.0);
            }
        }
    }

    #[test]
    fn hypergraph_vectors() {
        let z = hypergraph_state_vector(&WeightedHypergraph::empty(3)).unwrap();
        assert_eq!(z, StateVector::plus(3).unwrap());
        let g = complete(4);
        let h = WeightedHypergraph::from_graph(&g);
        assert_eq!(
            hypergraph_state_vector(&h).unwrap(),
            graph_state_vector(&g).unwrap()
        );
        let a: Dyadic = "3/8".parse().unwrap();
        let s =
            hypergraph_state_vector(&WeightedHypergraph::empty(2).apply_z(1, a).unwrap()).unwrap();
        let mut expect = StateVector::plus(2).unwrap();
        expect.apply_single(1, &factor_matrix(LocalFactor::ZPow(a)));
        assert!(close(s.inner(&expect), c(1.0, 0.0)));
    }

    #[test]
    fn z_half_on_plus() {
        let mut s = StateVector::plus(1).unwrap();
        s.apply_single(0, &factor_matrix(LocalFactor::ZPow(Dyadic::HALF)));
        assert!(close(s.amps[0], c(FRAC_1_SQRT_2, 0.0)));
        assert!(close(s.amps[1], c(0.0, FRAC_1_SQRT_2)));
    }

    #[test]
    fn phase_comparison() {
        let mut rng = ChaCha8Rng::seed_from_u64(22);
        let g = Graph::random(4, 0.5, &mut rng);
        let s = graph_state_vector(&g).unwrap();
        let rot = StateVector {
            n: 4,
            amps: s
                .amps
                .iter()
                .map(|a| a * Complex64::from_polar(1.0, 0.7))
                .collect(),
        };
        assert!(equal_up_to_phase(&s, &rot, STATE_TOL));
        let zero = StateVector::from_amplitudes(1, vec![c(1.0, 0.0), c(0.0, 0.0)]).unwrap();
        assert!(!equal_up_to_phase(
            &StateVector::plus(1).unwrap(),
            &zero,
            STATE_TOL
        ));
    }

    /// The symbolic conjugation table agrees with `U P U†` numerically.
    #[test]
    fn factor_matrices_match_conjugation_table() {
        let mut factors = vec![LocalFactor::H, LocalFactor::PauliX];
        for a in Axis::ALL {
            for b in Axis::ALL {
                factors.push(LocalFactor::Transition(a, b));
            }
        }
        for k in 0..4 {
            factors.push(LocalFactor::ZPow(Dyadic::new(k, 1)));
            factors.push(LocalFactor::XPow(Dyadic::new(k, 1)));
        }
        for f in factors {
            let u = factor_matrix(f);
            let udag = [
                [u[0][0].conj(), u[1][0].conj()],
                [u[0][1].conj(), u[1][1].conj()],
            ];
            let uu = mat_mul(&u, &udag);
            assert!(
                close(uu[0][0], c(1.0, 0.0)) && close(uu[0][1], c(0.0, 0.0)),
                "{f}"
            );
            for a in Axis::ALL {
                let mut ch = LocalOpChain::identity(1);
                ch.push(0, f);
                let img = ch.conjugate(&PauliString::single(1, 0, a)).unwrap();
                let lhs = mat_mul(&mat_mul(&u, &pauli_matrix(a)), &udag);
                let mut rhs = pauli_matrix(img.get(0).unwrap());
                let ph = Complex64::i().powu(img.phase_exp() as u32);
                for row in rhs.iter_mut() {
                    for v in row.iter_mut() {
                        *v *= ph;
                    }
                }
                for i in 0..2 {
                    for j in 0..2 {
                        assert!(close(lhs[i][j], rhs[i][j]), "{f} on {a}");
                    }
                }
            }
        }
        let t = factor_matrix(LocalFactor::ZPow("1/4".parse().unwrap()));
        assert!(close(t[1][1], Complex64::from_polar(1.0, PI / 4.0)));
    }

    #[test]
    fn chain_inverse_is_identity() {
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        let g = Graph::random(5, 0.5, &mut rng);
        let s = graph_state_vector(&g).unwrap();
        let mut ch = LocalOpChain::identity(5);
        for q in 0..5 {
            ch.push(q, LocalFactor::XPow(Dyadic::new(rng.gen_range(0..16), 3)));
            ch.push(q, LocalFactor::Transition(Axis::Y, Axis::Z));
            ch.push(q, LocalFactor::ZPow(Dyadic::new(rng.gen_range(0..16), 3)));
        }
        let back = apply_chain(&apply_chain(&s, &ch), &ch.inverse());
        assert!((back.inner(&s).re - 1.0).abs() < 1e-12);
        assert!(!equal_up_to_phase(&apply_chain(&s, &ch), &s, STATE_TOL) || ch.is_identity());
    }

    #[test]
    fn entropy_of_ghz_and_product() {
        let g = graph_state_vector(&star(3)).unwrap();
        let m = VertexSet::from_indices(3, [0]);
        assert!((g.entanglement_entropy(&m) - 1.0).abs() < 1e-9);
        let e = graph_state_vector(&Graph::empty(3)).unwrap();
        assert!(e.entanglement_entropy(&m).abs() < 1e-9);
        let rho = g.reduced_density_matrix(&VertexSet::from_indices(3, [1, 2]));
        assert_eq!(rho.nrows(), 4);
        let trace: Complex64 = (0..4).map(|i| rho[(i, i)]).sum();
        assert!(close(trace, c(1.0, 0.0)));
    }

    #[test]
    fn brute_lc_examples() {
        assert!(brute_lc_equivalent(&star(3), &complete(3), 1000).unwrap());
        let disconnected = Graph::from_edges(3, &[(0, 1)]).unwrap();
        assert!(!brute_lc_equivalent(&star(3), &disconnected, 1000).unwrap());
        assert!(labeled_lc_orbit(&complete(6), 3).is_err());
    }
}
