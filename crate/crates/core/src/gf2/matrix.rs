use std::fmt;

use super::bitvec::{words_for, BitVec};
use crate::error::{Error, Result};

/// Dense matrix over F₂, row-major, each row padded to whole 64-bit words.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitMatrix {
    rows: usize,
    cols: usize,
    stride: usize,
    data: Vec<u64>,
}

/// Output of [`BitMatrix::rref`]: `rowops · original = reduced`.
#[derive(Clone, Debug)]
pub struct Rref {
    pub reduced: BitMatrix,
    pub pivots: Vec<usize>,
    pub rowops: BitMatrix,
}

/// A solution set of `a·x = b`: `particular ⊕ span(kernel)`.
#[derive(Clone, Debug)]
pub struct F2Solution {
    pub particular: BitVec,
    pub kernel: Vec<BitVec>,
}

impl BitMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        let stride = words_for(cols);
        BitMatrix {
            rows,
            cols,
            stride,
            data: vec![0; rows * stride],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = BitMatrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, f: impl Fn(usize, usize) -> bool) -> Self {
        let mut m = BitMatrix::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                if f(i, j) {
                    m.set(i, j, true);
                }
            }
        }
        m
    }

    /// Rows must share one length; `cols` is needed when `rows` is empty.
    pub fn from_rows(cols: usize, rows: &[BitVec]) -> Self {
        let mut m = BitMatrix::zeros(rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            assert_eq!(r.len(), cols, "row {i} has wrong length");
            m.row_words_mut(i).copy_from_slice(r.words());
        }
        m
    }

    /// Parses rows written as strings of `0`/`1`.
    pub fn from_strs(rows: &[&str]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        BitMatrix::from_fn(rows.len(), cols, |i, j| rows[i].as_bytes()[j] == b'1')
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> bool {
        assert!(i < self.rows && j < self.cols);
        (self.data[i * self.stride + j / 64] >> (j % 64)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, value: bool) {
        assert!(i < self.rows && j < self.cols);
        let w = &mut self.data[i * self.stride + j / 64];
        let mask = 1u64 << (j % 64);
        if value {
            *w |= mask;
        } else {
            *w &= !mask;
        }
    }

    #[inline]
    pub fn row_words(&self, i: usize) -> &[u64] {
        &self.data[i * self.stride..(i + 1) * self.stride]
    }

    #[inline]
    fn row_words_mut(&mut self, i: usize) -> &mut [u64] {
        &mut self.data[i * self.stride..(i + 1) * self.stride]
    }

    pub fn row(&self, i: usize) -> BitVec {
        BitVec::from_words(self.cols, self.row_words(i).to_vec())
    }

    pub fn set_row(&mut self, i: usize, v: &BitVec) {
        assert_eq!(v.len(), self.cols);
        self.row_words_mut(i).copy_from_slice(v.words());
    }

    pub fn column(&self, j: usize) -> BitVec {
        BitVec::from_bools(&(0..self.rows).map(|i| self.get(i, j)).collect::<Vec<_>>())
    }

    pub fn row_is_zero(&self, i: usize) -> bool {
        self.row_words(i).iter().all(|&w| w == 0)
    }

    /// `row[dst] ^= row[src]`.
    pub fn xor_row_into(&mut self, src: usize, dst: usize) {
        assert_ne!(src, dst);
        let s = self.stride;
        let (a, b) = if src < dst {
            let (lo, hi) = self.data.split_at_mut(dst * s);
            (&lo[src * s..(src + 1) * s], &mut hi[..s])
        } else {
            let (lo, hi) = self.data.split_at_mut(src * s);
            (&hi[..s], &mut lo[dst * s..(dst + 1) * s])
        };
        for (d, x) in b.iter_mut().zip(a) {
            *d ^= x;
        }
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for w in 0..self.stride {
            self.data.swap(a * self.stride + w, b * self.stride + w);
        }
    }

    pub fn transpose(&self) -> BitMatrix {
        let mut t = BitMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in self.row(i).iter_ones() {
                t.set(j, i, true);
            }
        }
        t
    }

    pub fn is_symmetric(&self) -> bool {
        self.rows == self.cols && *self == self.transpose()
    }

    pub fn mul(&self, other: &BitMatrix) -> Result<BitMatrix> {
        if self.cols != other.rows {
            return Err(Error::Dimension(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = BitMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in self.row(i).iter_ones() {
                for w in 0..out.stride {
                    out.data[i * out.stride + w] ^= other.data[k * other.stride + w];
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, x: &BitVec) -> Result<BitVec> {
        if x.len() != self.cols {
            return Err(Error::Dimension(format!(
                "{}x{} times vector of length {}",
                self.rows,
                self.cols,
                x.len()
            )));
        }
        let mut out = BitVec::zeros(self.rows);
        for i in 0..self.rows {
            let parity: u32 = self
                .row_words(i)
                .iter()
                .zip(x.words())
                .map(|(a, b)| (a & b).count_ones())
                .sum();
            if parity & 1 == 1 {
                out.set(i, true);
            }
        }
        Ok(out)
    }

    /// Submatrix on the given rows and columns, in the given order.
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> BitMatrix {
        BitMatrix::from_fn(rows.len(), cols.len(), |i, j| self.get(rows[i], cols[j]))
    }

    /// Horizontal concatenation `[self | other]`.
    pub fn hstack(&self, other: &BitMatrix) -> BitMatrix {
        assert_eq!(self.rows, other.rows);
        let mut m = BitMatrix::zeros(self.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in self.row(i).iter_ones() {
                m.set(i, j, true);
            }
            for j in other.row(i).iter_ones() {
                m.set(i, self.cols + j, true);
            }
        }
        m
    }

    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        m.eliminate(None).len()
    }

    pub fn rref(&self) -> Rref {
        let mut reduced = self.clone();
        let mut rowops = BitMatrix::identity(self.rows);
        let pivots = reduced.eliminate(Some(&mut rowops));
        Rref {
            reduced,
            pivots,
            rowops,
        }
    }

    /// In-place Gauss–Jordan elimination; mirrors every row operation on `ops`.
    fn eliminate(&mut self, mut ops: Option<&mut BitMatrix>) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| self.get(i, c)) else {
                continue;
            };
            self.swap_rows(p, r);
            if let Some(o) = ops.as_deref_mut() {
                o.swap_rows(p, r);
            }
            for i in 0..self.rows {
                if i != r && self.get(i, c) {
                    self.xor_row_into(r, i);
                    if let Some(o) = ops.as_deref_mut() {
                        o.xor_row_into(r, i);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }
}

/// Solves `a·x = b` over F₂, returning a particular solution (free variables
/// zero) and a basis of the null space, or `None` when inconsistent.
pub fn solve_f2(a: &BitMatrix, b: &BitVec) -> Result<Option<F2Solution>> {
    if a.rows() != b.len() {
        return Err(Error::Dimension(format!(
            "{} rows but right-hand side of length {}",
            a.rows(),
            b.len()
        )));
    }
    let n = a.cols();
    let mut aug = BitMatrix::zeros(a.rows(), n + 1);
    for i in 0..a.rows() {
        for j in a.row(i).iter_ones() {
            aug.set(i, j, true);
        }
        if b.get(i) {
            aug.set(i, n, true);
        }
    }
    let pivots = aug.eliminate(None);
    if pivots.last() == Some(&n) {
        return Ok(None);
    }
    let mut particular = BitVec::zeros(n);
    for (r, &c) in pivots.iter().enumerate() {
        if aug.get(r, n) {
            particular.set(c, true);
        }
    }
    let mut is_pivot = vec![false; n];
    for &c in &pivots {
        is_pivot[c] = true;
    }
    let mut kernel = Vec::new();
    for f in (0..n).filter(|&j| !is_pivot[j]) {
        let mut v = BitVec::zeros(n);
        v.set(f, true);
        for (r, &c) in pivots.iter().enumerate() {
            if aug.get(r, f) {
                v.set(c, true);
            }
        }
        kernel.push(v);
    }
    Ok(Some(F2Solution { particular, kernel }))
}

impl fmt::Debug for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "BitMatrix {}x{}", self.rows, self.cols)?;
        for i in 0..self.rows {
            writeln!(f, "  {}", self.row(i))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn arb_matrix(max: usize) -> impl Strategy<Value = BitMatrix> {
        (1..=max, 1..=max).prop_flat_map(|(r, c)| {
            proptest::collection::vec(any::<bool>(), r * c)
                .prop_map(move |bits| BitMatrix::from_fn(r, c, |i, j| bits[i * c + j]))
        })
    }

    #[test]
    fn rank_examples() {
        assert_eq!(BitMatrix::zeros(3, 3).rank(), 0);
        assert_eq!(BitMatrix::identity(4).rank(), 4);
        assert_eq!(BitMatrix::from_strs(&["1", "1"]).rank(), 1);
    }

    #[test]
    fn rref_examples() {
        let id = BitMatrix::identity(5);
        let r = id.rref();
        assert_eq!(r.reduced, id);
        assert_eq!(r.pivots, (0..5).collect::<Vec<_>>());
        assert_eq!(r.rowops, id);

        let r = BitMatrix::from_strs(&["11", "11"]).rref();
        assert_eq!(r.pivots, vec![0]);
        assert_eq!(r.reduced, BitMatrix::from_strs(&["11", "00"]));

        let ghz_x = BitMatrix::from_strs(&["111", "000", "000"]);
        assert_eq!(ghz_x.rref().pivots, vec![0]);
    }

    #[test]
    fn solve_examples() {
        let b = BitVec::from_bools(&[true, false, true]);
        let s = solve_f2(&BitMatrix::identity(3), &b).unwrap().unwrap();
        assert_eq!(s.particular, b);
        assert!(s.kernel.is_empty());

        let s = solve_f2(&BitMatrix::zeros(2, 3), &BitVec::zeros(2))
            .unwrap()
            .unwrap();
        assert!(s.particular.is_zero());
        assert_eq!(s.kernel.len(), 3);

        let s = solve_f2(&BitMatrix::from_strs(&["11"]), &BitVec::ones(1))
            .unwrap()
            .unwrap();
        assert_eq!(s.particular.to_string(), "10");
        assert_eq!(s.kernel.len(), 1);
        assert_eq!(s.kernel[0].to_string(), "11");

        assert!(solve_f2(&BitMatrix::zeros(1, 2), &BitVec::ones(1))
            .unwrap()
            .is_none());
        assert!(solve_f2(&BitMatrix::zeros(1, 2), &BitVec::ones(2)).is_err());
    }

    #[test]
    fn rows_of_different_words() {
        let mut m = BitMatrix::zeros(3, 130);
        m.set(0, 129, true);
        m.set(1, 129, true);
        m.set(1, 0, true);
        m.set(2, 64, true);
        assert_eq!(m.rank(), 3);
        m.xor_row_into(0, 1);
        assert_eq!(m.row(1).to_indices(), vec![0]);
        m.xor_row_into(2, 0);
        assert_eq!(m.row(0).to_indices(), vec![64, 129]);
    }

    proptest! {
        #[test]
        fn rank_of_transpose(m in arb_matrix(12)) {
            prop_assert_eq!(m.rank(), m.transpose().rank());
        }

        #[test]
        fn rowops_reproduce_reduced(m in arb_matrix(10)) {
            let r = m.rref();
            prop_assert_eq!(r.rowops.mul(&m).unwrap(), r.reduced.clone());
            prop_assert_eq!(r.pivots.len(), m.rank());
        }

        #[test]
        fn solutions_match_enumeration(m in arb_matrix(12), bseed in any::<u64>()) {
            let b = BitVec::from_u64(m.rows(), bseed);
            let sol = solve_f2(&m, &b).unwrap();
            let n = m.cols();
            let mut count = 0usize;
            for x in 0u64..(1 << n) {
                if m.mul_vec(&BitVec::from_u64(n, x)).unwrap() == b {
                    count += 1;
                }
            }
            match sol {
                None => prop_assert_eq!(count, 0),
                Some(s) => {
                    prop_assert_eq!(count, 1 << s.kernel.len());
                    for mask in 0u64..(1 << s.kernel.len()) {
                        let mut x = s.particular.clone();
                        for (i, k) in s.kernel.iter().enumerate() {
                            if mask >> i & 1 == 1 {
                                x.xor_assign(k);
                            }
                        }
                        prop_assert_eq!(m.mul_vec(&x).unwrap(), b.clone());
                    }
                }
            }
        }
    }
}
