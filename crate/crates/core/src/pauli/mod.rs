//! Pauli strings, local operator chains and stabilizer check matrices.

use std::fmt;

mod check;
mod factor;
mod string;

pub use check::{
    hadamard_tail, hadamard_tail_labeled, match_x_part, normal_form, normal_form_labeled,
    strong_normal_form, strong_normal_form_labeled, CheckMatrix, LabeledNormalForm,
};
pub use factor::{conjugate_single, LocalFactor, LocalOpChain};
pub use string::{commutes, multiply, PauliString};

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum Axis {
    X,
    Y,
    Z,
}

impl Axis {
    pub const ALL: [Axis; 3] = [Axis::X, Axis::Y, Axis::Z];

    pub fn letter(self) -> char {
        match self {
            Axis::X => 'X',
            Axis::Y => 'Y',
            Axis::Z => 'Z',
        }
    }

    pub fn from_letter(s: &str) -> Option<Axis> {
        match s {
            "X" => Some(Axis::X),
            "Y" => Some(Axis::Y),
            "Z" => Some(Axis::Z),
            _ => None,
        }
    }
}

impl fmt::Display for Axis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.letter())
    }
}
