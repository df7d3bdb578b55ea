use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::string::PauliString;
use super::Axis;
use crate::dyadic::Dyadic;
use crate::error::{Error, Result};

/// One single-qubit gate of a [`LocalOpChain`].
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub enum LocalFactor {
    H,
    /// `C(A,B)`: swaps the `A` and `B` axes and negates the third.
    Transition(Axis, Axis),
    PauliX,
    ZPow(Dyadic),
    XPow(Dyadic),
}

/// Image `i^phase · letter` of a single-qubit Pauli.
type Image = (u8, Axis);

impl LocalFactor {
    pub fn inverse(self) -> LocalFactor {
        match self {
            LocalFactor::ZPow(a) => LocalFactor::ZPow(-a),
            LocalFactor::XPow(a) => LocalFactor::XPow(-a),
            f => f,
        }
    }

    pub fn is_clifford(self) -> bool {
        match self {
            LocalFactor::ZPow(a) | LocalFactor::XPow(a) => a.half_units().is_some(),
            _ => true,
        }
    }

    /// Images of `X` and `Z` under `P ↦ U P U†`.
    fn table(self) -> Result<[Image; 2]> {
        use Axis::{X, Y, Z};
        let swap = |a: Axis, b: Axis, p: Axis| -> Image {
            if a == b {
                (0, p)
            } else if p == a {
                (0, b)
            } else if p == b {
                (0, a)
            } else {
                (2, p)
            }
        };
        Ok(match self {
            LocalFactor::H => [(0, Z), (0, X)],
            LocalFactor::Transition(a, b) => [swap(a, b, X), swap(a, b, Z)],
            LocalFactor::PauliX => [(0, X), (2, Z)],
            LocalFactor::ZPow(a) => {
                let k = a
                    .half_units()
                    .ok_or_else(|| Error::NonClifford(self.to_string()))?;
                [[(0, X), (0, Y), (2, X), (2, Y)][k as usize], (0, Z)]
            }
            LocalFactor::XPow(a) => {
                let k = a
                    .half_units()
                    .ok_or_else(|| Error::NonClifford(self.to_string()))?;
                [(0, X), [(0, Z), (2, Y), (2, Z), (0, Y)][k as usize]]
            }
        })
    }

    /// `U P U†` for a single-qubit Pauli letter `P`.
    pub fn conjugate_letter(self, p: Axis) -> Result<Image> {
        let [ix, iz] = self.table()?;
        Ok(match p {
            Axis::X => ix,
            Axis::Z => iz,
            Axis::Y => {
                // Y = iXZ
                let (pm, letter) = letter_product(ix.1, iz.1);
                let phase = (1 + ix.0 + iz.0 + pm) % 4;
                debug_assert!(phase % 2 == 0);
                (phase, letter.expect("images of X and Z anticommute"))
            }
        })
    }
}

/// `a·b = i^phase · letter` for single-qubit Paulis.
fn letter_product(a: Axis, b: Axis) -> (u8, Option<Axis>) {
    use Axis::{X, Y, Z};
    match (a, b) {
        _ if a == b => (0, None),
        (X, Y) => (1, Some(Z)),
        (Y, Z) => (1, Some(X)),
        (Z, X) => (1, Some(Y)),
        (Y, X) => (3, Some(Z)),
        (Z, Y) => (3, Some(X)),
        (X, Z) => (3, Some(Y)),
        _ => unreachable!(),
    }
}

/// Conjugates `p` on `qubit` by a single Clifford factor.
pub fn conjugate_single(p: &PauliString, qubit: usize, f: LocalFactor) -> Result<PauliString> {
    if qubit >= p.n() {
        return Err(Error::VertexOutOfRange {
            vertex: qubit,
            n: p.n(),
        });
    }
    if !f.is_clifford() {
        return Err(Error::NonClifford(f.to_string()));
    }
    let Some(letter) = p.get(qubit) else {
        return Ok(p.clone());
    };
    let (phase, image) = f.conjugate_letter(letter)?;
    let mut out = p.clone();
    out.replace(qubit, phase, Some(image));
    Ok(out)
}

/// Per-qubit gate sequences, each listed in application order.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct LocalOpChain {
    factors: Vec<Vec<LocalFactor>>,
}

impl LocalOpChain {
    pub fn identity(n: usize) -> Self {
        LocalOpChain {
            factors: vec![Vec::new(); n],
        }
    }

    pub fn n(&self) -> usize {
        self.factors.len()
    }

    pub fn push(&mut self, qubit: usize, f: LocalFactor) {
        self.factors[qubit].push(f);
    }

    pub fn factors(&self, qubit: usize) -> &[LocalFactor] {
        &self.factors[qubit]
    }

    pub fn is_identity(&self) -> bool {
        self.factors.iter().all(Vec::is_empty)
    }

    /// `other ∘ self`: apply `self` first.
    pub fn then(&self, other: &LocalOpChain) -> LocalOpChain {
        assert_eq!(self.n(), other.n());
        LocalOpChain {
            factors: self
                .factors
                .iter()
                .zip(&other.factors)
                .map(|(a, b)| a.iter().chain(b).copied().collect())
                .collect(),
        }
    }

    pub fn inverse(&self) -> LocalOpChain {
        LocalOpChain {
            factors: self
                .factors
                .iter()
                .map(|fs| fs.iter().rev().map(|f| f.inverse()).collect())
                .collect(),
        }
    }

    pub fn is_clifford(&self) -> bool {
        self.factors.iter().flatten().all(|f| f.is_clifford())
    }

    /// `U p U†`; fails on any non-Clifford factor.
    pub fn conjugate(&self, p: &PauliString) -> Result<PauliString> {
        if p.n() != self.n() {
            return Err(Error::Dimension(format!(
                "chain on {} qubits applied to a {}-qubit string",
                self.n(),
                p.n()
            )));
        }
        let mut out = p.clone();
        for (q, fs) in self.factors.iter().enumerate() {
            for &f in fs {
                out = conjugate_single(&out, q, f)?;
            }
        }
        Ok(out)
    }

    pub fn to_strings(&self) -> Vec<Vec<String>> {
        self.factors
            .iter()
            .map(|fs| fs.iter().map(|f| f.to_string()).collect())
            .collect()
    }

    pub fn from_strings(rows: &[Vec<String>]) -> Result<Self> {
        let factors = rows
            .iter()
            .map(|fs| fs.iter().map(|s| s.parse()).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        Ok(LocalOpChain { factors })
    }
}

impl fmt::Display for LocalFactor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LocalFactor::H => f.write_str("H"),
            LocalFactor::Transition(a, b) => write!(f, "C({},{})", a.letter(), b.letter()),
            LocalFactor::PauliX => f.write_str("X"),
            LocalFactor::ZPow(a) => write!(f, "Z^{a}"),
            LocalFactor::XPow(a) => write!(f, "X^{a}"),
        }
    }
}

impl fmt::Debug for LocalFactor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl FromStr for LocalFactor {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::Parse(format!("unknown local factor {s:?}"));
        if s == "H" {
            return Ok(LocalFactor::H);
        }
        if s == "X" {
            return Ok(LocalFactor::PauliX);
        }
        if let Some(a) = s.strip_prefix("Z^") {
            return Ok(LocalFactor::ZPow(a.parse()?));
        }
        if let Some(a) = s.strip_prefix("X^") {
            return Ok(LocalFactor::XPow(a.parse()?));
        }
        let inner = s
            .strip_prefix("C(")
            .and_then(|r| r.strip_suffix(')'))
            .ok_or_else(bad)?;
        let (a, b) = inner.split_once(',').ok_or_else(bad)?;
        Ok(LocalFactor::Transition(
            Axis::from_letter(a.trim()).ok_or_else(bad)?,
            Axis::from_letter(b.trim()).ok_or_else(bad)?,
        ))
    }
}

impl fmt::Debug for LocalOpChain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(&self.factors).finish()
    }
}

impl Serialize for LocalOpChain {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_strings().serialize(s)
    }
}

impl<'de> Deserialize<'de> for LocalOpChain {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let rows = Vec::<Vec<String>>::deserialize(d)?;
        LocalOpChain::from_strings(&rows).map_err(serde::de::Error::custom)
    }
}
