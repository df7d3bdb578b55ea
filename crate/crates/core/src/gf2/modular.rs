use serde::{Deserialize, Serialize};

use super::bitvec::BitVec;
use super::matrix::{solve_f2, BitMatrix};
use crate::dyadic::Dyadic;

pub type DyadicVector = Vec<Dyadic>;

/// One equation `2^{coeff_log2} · Σ_{i ∈ vars} α_i ≡ rhs (mod 2)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModRow {
    /// Vertex subset `e` this row is indexed by.
    pub edge: Vec<usize>,
    pub vars: Vec<usize>,
    pub coeff_log2: u32,
    pub rhs: bool,
}

/// Linear system over dyadic angles, solved with every `α_i` restricted to
/// multiples of `1/2^{m-1}` where `m = modulus_exponent`. In the scaled
/// unknowns `α̂_i = 2^{m-1} α_i` each row reads
/// `2^{coeff_log2} Σ α̂_i ≡ rhs · 2^{m-1} (mod 2^m)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModSystem {
    pub rows: Vec<ModRow>,
    pub num_vars: usize,
    pub modulus_exponent: u32,
}

/// Which unknown and which bit an F₂ variable stands for.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BitVar {
    pub var: usize,
    pub bit: u32,
}

/// The F₂ image of a [`ModSystem`].
///
/// The integer matrix is first diagonalised over `Z/2^m` by unimodular row
/// and column operations, so every remaining equation has the form
/// `2^v y_t ≡ c_t`. Binary expansion of such an equation has no carries.
/// The unknowns of the F₂ system are the bits of `y`; `α̂ = Q·y`.
#[derive(Clone, Debug)]
pub struct BinaryExpansion {
    pub a: BitMatrix,
    pub b: BitVec,
    pub var_map: Vec<BitVar>,
    transform: Vec<Vec<u64>>,
    modulus_exponent: u32,
}

impl ModSystem {
    pub fn new(num_vars: usize, modulus_exponent: u32) -> Self {
        ModSystem {
            rows: Vec::new(),
            num_vars,
            modulus_exponent,
        }
    }

    fn mask(&self) -> u64 {
        low_mask(self.modulus_exponent)
    }

    /// Coefficient of `α̂_var` in `row`, reduced mod `2^m`.
    pub fn coeff(&self, row: usize, var: usize) -> u64 {
        let r = &self.rows[row];
        let hits = r.vars.iter().filter(|&&v| v == var).count() as u64;
        if r.coeff_log2 >= 64 {
            return 0;
        }
        hits.wrapping_mul(1u64 << r.coeff_log2) & self.mask()
    }

    fn rhs_hat(&self, row: usize) -> u64 {
        if self.rows[row].rhs {
            1u64 << (self.modulus_exponent - 1)
        } else {
            0
        }
    }

    /// True when every row has zero coefficients and zero right-hand side mod `2^m`.
    pub fn row_is_trivial(&self, row: usize) -> bool {
        self.rhs_hat(row) == 0 && (0..self.num_vars).all(|v| self.coeff(row, v) == 0)
    }

    /// Checks the scaled unknowns `α̂` against every row.
    pub fn satisfied_by_scaled(&self, hat: &[u64]) -> bool {
        assert_eq!(hat.len(), self.num_vars);
        (0..self.rows.len()).all(|i| {
            let lhs = (0..self.num_vars).fold(0u64, |acc, v| {
                acc.wrapping_add(self.coeff(i, v).wrapping_mul(hat[v]))
            });
            lhs & self.mask() == self.rhs_hat(i)
        })
    }

    /// Checks dyadic angles directly: `2^{c} Σ α ≡ rhs (mod 2)`.
    pub fn satisfied_by(&self, alpha: &[Dyadic]) -> bool {
        assert_eq!(alpha.len(), self.num_vars);
        self.rows.iter().all(|r| {
            let sum = r
                .vars
                .iter()
                .fold(Dyadic::ZERO, |acc, &v| acc + alpha[v])
                .times_pow2(r.coeff_log2);
            sum == if r.rhs { Dyadic::ONE } else { Dyadic::ZERO }
        })
    }
}

fn low_mask(m: u32) -> u64 {
    assert!((1..=63).contains(&m), "modulus exponent {m} out of range");
    (1u64 << m) - 1
}

fn inverse_odd(u: u64) -> u64 {
    debug_assert!(u & 1 == 1);
    let mut x = u;
    for _ in 0..6 {
        x = x.wrapping_mul(2u64.wrapping_sub(u.wrapping_mul(x)));
    }
    x
}

/// Rewrites `s` as an F₂ system whose solutions are in bijection with the
/// solutions of `s` in `[0, 2^m)^{num_vars}`. Trivial rows are dropped.
pub fn expand_to_f2(s: &ModSystem) -> BinaryExpansion {
    let m = s.modulus_exponent;
    let mask = low_mask(m);
    let nv = s.num_vars;
    let nr = s.rows.len();

    let mut a: Vec<Vec<u64>> = (0..nr)
        .map(|i| (0..nv).map(|v| s.coeff(i, v)).collect())
        .collect();
    let mut rhs: Vec<u64> = (0..nr).map(|i| s.rhs_hat(i)).collect();
    let mut q: Vec<Vec<u64>> = (0..nv)
        .map(|i| (0..nv).map(|j| u64::from(i == j)).collect())
        .collect();
    let mut val = Vec::new();

    for t in 0..nr.min(nv) {
        let mut best: Option<(u32, usize, usize)> = None;
        for (i, row) in a.iter().enumerate().skip(t) {
            for (j, &x) in row.iter().enumerate().skip(t) {
                if x != 0 {
                    let tz = x.trailing_zeros();
                    if best.is_none_or(|(b, _, _)| tz < b) {
                        best = Some((tz, i, j));
                    }
                }
            }
        }
        let Some((v, pi, pj)) = best else { break };
        a.swap(t, pi);
        rhs.swap(t, pi);
        for row in a.iter_mut() {
            row.swap(t, pj);
        }
        for row in q.iter_mut() {
            row.swap(t, pj);
        }

        let uinv = inverse_odd(a[t][t] >> v);
        for x in a[t].iter_mut() {
            *x = x.wrapping_mul(uinv) & mask;
        }
        rhs[t] = rhs[t].wrapping_mul(uinv) & mask;

        let pivot_row = a[t].clone();
        for i in t + 1..nr {
            let c = a[i][t] >> v;
            if c != 0 {
                for (x, &p) in a[i][t..nv].iter_mut().zip(&pivot_row[t..nv]) {
                    *x = x.wrapping_sub(c.wrapping_mul(p)) & mask;
                }
                rhs[i] = rhs[i].wrapping_sub(c.wrapping_mul(rhs[t])) & mask;
            }
        }
        for j in t + 1..nv {
            let c = a[t][j] >> v;
            if c != 0 {
                a[t][j] = 0;
                for row in q.iter_mut() {
                    row[j] = row[j].wrapping_sub(c.wrapping_mul(row[t])) & mask;
                }
            }
        }
        val.push(v);
    }

    let rank = val.len();
    let var_map: Vec<BitVar> = (0..nv)
        .flat_map(|var| (0..m).map(move |bit| BitVar { var, bit }))
        .collect();
    let bit = |x: u64, b: u32| (x >> b) & 1 == 1;

    let mut eqs: Vec<(Option<usize>, bool)> = Vec::new();
    for (t, &v) in val.iter().enumerate() {
        for b in 0..v {
            eqs.push((None, bit(rhs[t], b)));
        }
        for b in 0..m - v {
            eqs.push((Some(t * m as usize + b as usize), bit(rhs[t], b + v)));
        }
    }
    for &r in &rhs[rank..] {
        for b in 0..m {
            eqs.push((None, bit(r, b)));
        }
    }
    eqs.retain(|&(var, rhs)| var.is_some() || rhs);

    let cols = var_map.len();
    let mut am = BitMatrix::zeros(eqs.len(), cols);
    let mut bv = BitVec::zeros(eqs.len());
    for (i, &(var, r)) in eqs.iter().enumerate() {
        if let Some(c) = var {
            am.set(i, c, true);
        }
        bv.set(i, r);
    }
    BinaryExpansion {
        a: am,
        b: bv,
        var_map,
        transform: q,
        modulus_exponent: m,
    }
}

impl BinaryExpansion {
    /// Maps an F₂ solution back to the scaled unknowns `α̂ ∈ [0, 2^m)`.
    pub fn recover(&self, x: &BitVec) -> Vec<u64> {
        let m = self.modulus_exponent;
        let mask = low_mask(m);
        let nv = self.transform.len();
        let mut y = vec![0u64; nv];
        for (idx, bv) in self.var_map.iter().enumerate() {
            if x.get(idx) {
                y[bv.var] |= 1 << bv.bit;
            }
        }
        (0..nv)
            .map(|i| {
                (0..nv).fold(0u64, |acc, j| {
                    acc.wrapping_add(self.transform[i][j].wrapping_mul(y[j]))
                }) & mask
            })
            .collect()
    }
}

/// Solves `s` at its modulus, returning `α_i = α̂_i / 2^{m-1}`.
pub fn solve_mod_pow2(s: &ModSystem) -> Option<DyadicVector> {
    let e = expand_to_f2(s);
    let sol = solve_f2(&e.a, &e.b).expect("expansion is dimensionally consistent")?;
    let hat = e.recover(&sol.particular);
    debug_assert!(s.satisfied_by_scaled(&hat));
    let m = s.modulus_exponent;
    Some(
        hat.into_iter()
            .map(|h| Dyadic::new(h as i64, m - 1))
            .collect(),
    )
}
