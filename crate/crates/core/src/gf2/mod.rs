//! Linear algebra over F₂ and over `Z/2^m`.

mod bitvec;
mod matrix;
mod modular;

pub use bitvec::{BitVec, Ones};
pub use matrix::{solve_f2, BitMatrix, F2Solution, Rref};
pub use modular::{
    expand_to_f2, solve_mod_pow2, BinaryExpansion, BitVar, DyadicVector, ModRow, ModSystem,
};

/// F₂ row rank.
pub fn rank(m: &BitMatrix) -> usize {
    m.rank()
}

pub fn rref(m: &BitMatrix) -> Rref {
    m.rref()
}
