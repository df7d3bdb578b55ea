use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::Axis;
use crate::error::{Error, Result};
use crate::gf2::BitVec;
use crate::graphstate::VertexSet;

/// `i^phase · P₁ ⊗ … ⊗ Pₙ` with `Pⱼ ∈ {I, X, Y, Z}`.
///
/// The phase is the one written in front of the letters, so `-YIY` has
/// `phase = 2` even though `Y = iXZ`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PauliString {
    x: BitVec,
    z: BitVec,
    phase: u8,
}

impl PauliString {
    pub fn identity(n: usize) -> Self {
        PauliString {
            x: BitVec::zeros(n),
            z: BitVec::zeros(n),
            phase: 0,
        }
    }

    pub fn single(n: usize, qubit: usize, axis: Axis) -> Self {
        let mut p = PauliString::identity(n);
        p.set(qubit, Some(axis));
        p
    }

    pub fn from_parts(x: BitVec, z: BitVec, phase: u8) -> Result<Self> {
        if x.len() != z.len() {
            return Err(Error::Dimension(format!(
                "x part has {} qubits, z part {}",
                x.len(),
                z.len()
            )));
        }
        Ok(PauliString {
            x,
            z,
            phase: phase % 4,
        })
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.x.len()
    }

    pub fn xbits(&self) -> &BitVec {
        &self.x
    }

    pub fn zbits(&self) -> &BitVec {
        &self.z
    }

    /// Exponent `e` of the visible phase `i^e`.
    pub fn phase_exp(&self) -> u8 {
        self.phase
    }

    pub fn with_phase(mut self, phase: u8) -> Self {
        self.phase = phase % 4;
        self
    }

    pub fn negated(mut self) -> Self {
        self.phase = (self.phase + 2) % 4;
        self
    }

    pub fn get(&self, q: usize) -> Option<Axis> {
        match (self.x.get(q), self.z.get(q)) {
            (false, false) => None,
            (true, false) => Some(Axis::X),
            (true, true) => Some(Axis::Y),
            (false, true) => Some(Axis::Z),
        }
    }

    pub fn set(&mut self, q: usize, letter: Option<Axis>) {
        let (x, z) = match letter {
            None => (false, false),
            Some(Axis::X) => (true, false),
            Some(Axis::Y) => (true, true),
            Some(Axis::Z) => (false, true),
        };
        self.x.set(q, x);
        self.z.set(q, z);
    }

    pub fn support(&self) -> VertexSet {
        self.x.or(&self.z)
    }

    pub fn weight(&self) -> usize {
        self.support().count_ones()
    }

    pub fn is_identity(&self) -> bool {
        self.x.is_zero() && self.z.is_zero() && self.phase == 0
    }

    /// True for `±I`.
    pub fn is_trivial(&self) -> bool {
        self.x.is_zero() && self.z.is_zero()
    }

    /// True when the phase is ±1.
    pub fn is_hermitian(&self) -> bool {
        self.phase.is_multiple_of(2)
    }

    fn y_count(&self) -> u32 {
        self.x.and(&self.z).count_ones() as u32
    }

    /// Exponent `r` with `self = i^r X^x Z^z`.
    fn raw_phase(&self) -> u32 {
        self.phase as u32 + self.y_count()
    }

    /// Replaces qubit `q` by a single-qubit factor `i^phase · letter`.
    pub(crate) fn replace(&mut self, q: usize, phase: u8, letter: Option<Axis>) {
        self.set(q, letter);
        self.phase = (self.phase + phase) % 4;
    }
}

/// Exact product `a·b`.
pub fn multiply(a: &PauliString, b: &PauliString) -> Result<PauliString> {
    if a.n() != b.n() {
        return Err(Error::Dimension(format!(
            "multiplying Pauli strings on {} and {} qubits",
            a.n(),
            b.n()
        )));
    }
    let swaps = a.z.and(&b.x).count_ones() as u32;
    let raw = a.raw_phase() + b.raw_phase() + 2 * swaps;
    let x = a.x.xor(&b.x);
    let z = a.z.xor(&b.z);
    let ys = x.and(&z).count_ones() as u32;
    let phase = ((raw + 4 * ys - ys) % 4) as u8;
    Ok(PauliString { x, z, phase })
}

/// True iff the symplectic product vanishes.
pub fn commutes(a: &PauliString, b: &PauliString) -> bool {
    assert_eq!(a.n(), b.n(), "commutation of strings of different lengths");
    let s = a.x.and(&b.z).count_ones() + a.z.and(&b.x).count_ones();
    s.is_multiple_of(2)
}

impl fmt::Display for PauliString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(["+", "+i", "-", "-i"][self.phase as usize])?;
        for q in 0..self.n() {
            let c = match self.get(q) {
                None => 'I',
                Some(a) => a.letter(),
            };
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for PauliString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl FromStr for PauliString {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let (phase, body) = if let Some(r) = s.strip_prefix("+i") {
            (1, r)
        } else if let Some(r) = s.strip_prefix("-i") {
            (3, r)
        } else if let Some(r) = s.strip_prefix('+') {
            (0, r)
        } else if let Some(r) = s.strip_prefix('-') {
            (2, r)
        } else {
            (0, s)
        };
        let mut p = PauliString::identity(body.chars().count());
        for (q, c) in body.chars().enumerate() {
            let letter = match c {
                'I' => None,
                'X' => Some(Axis::X),
                'Y' => Some(Axis::Y),
                'Z' => Some(Axis::Z),
                _ => return Err(Error::Parse(format!("bad Pauli letter {c:?} in {s:?}"))),
            };
            p.set(q, letter);
        }
        Ok(p.with_phase(phase))
    }
}

impl Serialize for PauliString {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for PauliString {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        String::deserialize(d)?
            .parse()
            .map_err(serde::de::Error::custom)
    }
}
