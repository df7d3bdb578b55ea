//! Exact dyadic rationals reduced modulo 2, the angle ring of `Z^α` and `X^α`.

use std::fmt;
use std::ops::{Add, AddAssign, Neg, Sub};
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::Error;

const MAX_LOG_DEN: u32 = 62;

/// `num / 2^log_den` in `[0, 2)`, stored in lowest terms.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Dyadic {
    num: u64,
    log_den: u32,
}

impl Dyadic {
    pub const ZERO: Dyadic = Dyadic { num: 0, log_den: 0 };
    pub const ONE: Dyadic = Dyadic { num: 1, log_den: 0 };
    pub const HALF: Dyadic = Dyadic { num: 1, log_den: 1 };

    /// `num / 2^log_den` reduced mod 2.
    pub fn new(num: i64, log_den: u32) -> Dyadic {
        assert!(log_den <= MAX_LOG_DEN, "denominator 2^{log_den} too large");
        let modulus = 1i128 << (log_den + 1);
        let r = (num as i128).rem_euclid(modulus) as u64;
        Dyadic { num: r, log_den }.normalized()
    }

    pub fn from_int(v: i64) -> Dyadic {
        Dyadic::new(v, 0)
    }

    fn normalized(mut self) -> Dyadic {
        if self.num == 0 {
            return Dyadic::ZERO;
        }
        let tz = self.num.trailing_zeros().min(self.log_den);
        self.num >>= tz;
        self.log_den -= tz;
        self
    }

    pub fn numerator(self) -> u64 {
        self.num
    }

    /// Exponent `j` of the reduced denominator `2^j`.
    pub fn log_den(self) -> u32 {
        self.log_den
    }

    pub fn is_zero(self) -> bool {
        self.num == 0
    }

    /// True when the value is a multiple of `1/2^r`.
    pub fn in_level(self, r: u32) -> bool {
        self.log_den <= r
    }

    /// `2α mod 4` when α is a multiple of 1/2.
    pub fn half_units(self) -> Option<u8> {
        match self.log_den {
            0 => Some((2 * self.num) as u8),
            1 => Some(self.num as u8),
            _ => None,
        }
    }

    /// Multiplies by `2^s`.
    pub fn times_pow2(self, s: u32) -> Dyadic {
        if self.num == 0 {
            return self;
        }
        if s > self.log_den {
            return Dyadic::ZERO;
        }
        Dyadic::new(self.num as i64, self.log_den - s)
    }

    /// Multiplies by `(-2)^s`.
    pub fn times_neg2_pow(self, s: u32) -> Dyadic {
        let v = self.times_pow2(s);
        if s % 2 == 1 {
            -v
        } else {
            v
        }
    }

    pub fn mul_int(self, c: i64) -> Dyadic {
        let modulus = 1i128 << (self.log_den + 1);
        let r = (self.num as i128 * c as i128).rem_euclid(modulus) as u64;
        Dyadic {
            num: r,
            log_den: self.log_den,
        }
        .normalized()
    }

    pub fn to_f64(self) -> f64 {
        self.num as f64 / (1u64 << self.log_den) as f64
    }

    fn aligned(a: Dyadic, b: Dyadic) -> (i128, i128, u32) {
        let d = a.log_den.max(b.log_den);
        (
            (a.num as i128) << (d - a.log_den),
            (b.num as i128) << (d - b.log_den),
            d,
        )
    }
}

impl Add for Dyadic {
    type Output = Dyadic;
    fn add(self, rhs: Dyadic) -> Dyadic {
        let (a, b, d) = Dyadic::aligned(self, rhs);
        let r = (a + b).rem_euclid(1i128 << (d + 1)) as u64;
        Dyadic { num: r, log_den: d }.normalized()
    }
}

impl AddAssign for Dyadic {
    fn add_assign(&mut self, rhs: Dyadic) {
        *self = *self + rhs;
    }
}

impl Neg for Dyadic {
    type Output = Dyadic;
    fn neg(self) -> Dyadic {
        Dyadic::new(-(self.num as i64), self.log_den)
    }
}

impl Sub for Dyadic {
    type Output = Dyadic;
    fn sub(self, rhs: Dyadic) -> Dyadic {
        self + (-rhs)
    }
}

impl fmt::Display for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/2^{}", self.num, self.log_den)
    }
}

impl fmt::Debug for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl FromStr for Dyadic {
    type Err = Error;

    /// Accepts `m/2^j`, `m/d` with `d` a power of two, or an integer `m`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || Error::Parse(format!("not a dyadic rational: {s:?}"));
        let s = s.trim();
        let (num, den) = match s.split_once('/') {
            None => (s, None),
            Some((n, d)) => (n.trim(), Some(d.trim())),
        };
        let num: i64 = num.parse().map_err(|_| bad())?;
        let log_den = match den {
            None => 0,
            Some(d) => {
                if let Some(exp) = d.strip_prefix("2^") {
                    exp.parse::<u32>().map_err(|_| bad())?
                } else {
                    let d: u64 = d.parse().map_err(|_| bad())?;
                    if !d.is_power_of_two() {
                        return Err(bad());
                    }
                    d.trailing_zeros()
                }
            }
        };
        if log_den > MAX_LOG_DEN {
            return Err(bad());
        }
        Ok(Dyadic::new(num, log_den))
    }
}

impl Serialize for Dyadic {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Dyadic {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
