//! Exact spider phases.
//!
//! A [`Phase`] is an angle of the form `π·(p/q) + Σ cᵢ·symᵢ`, kept modulo
//! 2π. The rational part is stored in units of π and normalised into
//! `[0, 2)`. Symbols are formal angles with integer coefficients; they are
//! never reduced modulo anything.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Neg, Sub};
use std::str::FromStr;

use num_rational::Rational64;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Phase {
    rational: Rational64,
    symbols: BTreeMap<String, i64>,
}

fn reduce_mod2(r: Rational64) -> Rational64 {
    let two = Rational64::from_integer(2);
    let q = (r / two).floor();
    r - q * two
}

impl Phase {
    pub fn zero() -> Self {
        Phase {
            rational: Rational64::zero(),
            symbols: BTreeMap::new(),
        }
    }

    pub fn pi() -> Self {
        Phase::new(1, 1)
    }

    /// The angle `π·num/den`.
    ///
    /// Panics if `den == 0`.
    pub fn new(num: i64, den: i64) -> Self {
        Phase::from_rational(Rational64::new(num, den))
    }

    pub fn from_rational(r: Rational64) -> Self {
        Phase {
            rational: reduce_mod2(r),
            symbols: BTreeMap::new(),
        }
    }

    /// A formal angle named `name` with coefficient 1.
    pub fn symbol(name: &str) -> Self {
        let mut symbols = BTreeMap::new();
        symbols.insert(name.to_string(), 1);
        Phase {
            rational: Rational64::zero(),
            symbols,
        }
    }

    pub fn rational(&self) -> Rational64 {
        self.rational
    }

    pub fn symbols(&self) -> &BTreeMap<String, i64> {
        &self.symbols
    }

    pub fn is_concrete(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.is_concrete() && self.rational.is_zero()
    }

    pub fn is_pi(&self) -> bool {
        self.is_concrete() && self.rational.is_one()
    }

    /// True for the two classical qubit phases, 0 and π.
    pub fn is_pauli(&self) -> bool {
        self.is_zero() || self.is_pi()
    }

    /// The angle in radians, in `[0, 2π)`, or `None` if symbolic.
    pub fn to_radians(&self) -> Option<f64> {
        if !self.is_concrete() {
            return None;
        }
        Some(self.rational.to_f64()? * std::f64::consts::PI)
    }

    pub fn try_radians(&self) -> Result<f64> {
        self.to_radians()
            .ok_or_else(|| Error::SymbolicScalar(self.to_string()))
    }

    /// Multiplies by an integer, e.g. `k·α` for a classical bit `k`.
    pub fn scale(&self, k: i64) -> Self {
        let mut symbols = BTreeMap::new();
        for (s, c) in &self.symbols {
            if c * k != 0 {
                symbols.insert(s.clone(), c * k);
            }
        }
        Phase {
            rational: reduce_mod2(self.rational * Rational64::from_integer(k)),
            symbols,
        }
    }

    /// Some `β` with `2β = α`, or `None` if a symbol has an odd coefficient.
    pub fn half(&self) -> Option<Phase> {
        let mut symbols = BTreeMap::new();
        for (s, c) in &self.symbols {
            if c % 2 != 0 {
                return None;
            }
            symbols.insert(s.clone(), c / 2);
        }
        Some(Phase {
            rational: self.rational / Rational64::from_integer(2),
            symbols,
        })
    }

    /// Re-establishes the invariants. Values built through the public API
    /// are always normalised already.
    pub fn normalized(mut self) -> Self {
        self.rational = reduce_mod2(self.rational);
        self.symbols.retain(|_, c| *c != 0);
        self
    }
}

impl Default for Phase {
    fn default() -> Self {
        Phase::zero()
    }
}

impl From<Rational64> for Phase {
    fn from(r: Rational64) -> Self {
        Phase::from_rational(r)
    }
}

impl Add for &Phase {
    type Output = Phase;
    fn add(self, rhs: &Phase) -> Phase {
        let mut symbols = self.symbols.clone();
        for (s, c) in &rhs.symbols {
            let e = symbols.entry(s.clone()).or_insert(0);
            *e += c;
            if *e == 0 {
                symbols.remove(s);
            }
        }
        Phase {
            rational: reduce_mod2(self.rational + rhs.rational),
            symbols,
        }
    }
}

impl Add for Phase {
    type Output = Phase;
    fn add(self, rhs: Phase) -> Phase {
        &self + &rhs
    }
}

impl AddAssign<&Phase> for Phase {
    fn add_assign(&mut self, rhs: &Phase) {
        *self = &*self + rhs;
    }
}

impl Neg for &Phase {
    type Output = Phase;
    fn neg(self) -> Phase {
        Phase {
            rational: reduce_mod2(-self.rational),
            symbols: self.symbols.iter().map(|(s, c)| (s.clone(), -c)).collect(),
        }
    }
}

impl Neg for Phase {
    type Output = Phase;
    fn neg(self) -> Phase {
        -&self
    }
}

impl Sub for &Phase {
    type Output = Phase;
    fn sub(self, rhs: &Phase) -> Phase {
        self + &(-rhs)
    }
}

impl Sub for Phase {
    type Output = Phase;
    fn sub(self, rhs: Phase) -> Phase {
        &self - &rhs
    }
}

impl fmt::Display for Phase {
    /// Units of π: `0`, `1`, `1/2`, `3/4+a-2b`, `-a`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut out = String::new();
        if !self.rational.is_zero() || self.symbols.is_empty() {
            if self.rational.is_integer() {
                out.push_str(&self.rational.numer().to_string());
            } else {
                out.push_str(&format!("{}/{}", self.rational.numer(), self.rational.denom()));
            }
        }
        for (s, c) in &self.symbols {
            let sign = if *c < 0 { '-' } else { '+' };
            if !(out.is_empty() && sign == '+') {
                out.push(sign);
            }
            if c.abs() != 1 {
                out.push_str(&c.abs().to_string());
            }
            out.push_str(s);
        }
        f.write_str(&out)
    }
}

impl FromStr for Phase {
    type Err = Error;

    /// Parses the textual phase syntax. Whitespace is ignored; `pi` is not a
    /// keyword, so `1` means π and `1/4` means π/4.
    fn from_str(s: &str) -> Result<Phase> {
        let chars: Vec<char> = s.chars().filter(|c| !c.is_whitespace()).collect();
        let err = |col: usize, msg: &str| Error::Syntax {
            line: 1,
            col: col + 1,
            msg: format!("{msg} in phase `{s}`"),
        };
        if chars.is_empty() {
            return Err(err(0, "empty phase"));
        }
        let mut phase = Phase::zero();
        let mut i = 0;
        let mut first = true;
        while i < chars.len() {
            let mut sign = 1i64;
            if chars[i] == '+' || chars[i] == '-' {
                if chars[i] == '-' {
                    sign = -1;
                }
                i += 1;
            } else if !first {
                return Err(err(i, "expected `+` or `-`"));
            }
            first = false;
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let digits: String = chars[start..i].iter().collect();
            if i < chars.len() && (chars[i].is_ascii_alphabetic() || chars[i] == '_') {
                let coeff: i64 = if digits.is_empty() {
                    1
                } else {
                    digits.parse().map_err(|_| err(start, "bad coefficient"))?
                };
                let nstart = i;
                while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                    i += 1;
                }
                let name: String = chars[nstart..i].iter().collect();
                phase += &Phase::symbol(&name).scale(sign * coeff);
            } else {
                if digits.is_empty() {
                    return Err(err(i, "expected number or symbol"));
                }
                let num: i64 = digits.parse().map_err(|_| err(start, "bad numerator"))?;
                let mut den = 1i64;
                if i < chars.len() && chars[i] == '/' {
                    i += 1;
                    let dstart = i;
                    while i < chars.len() && chars[i].is_ascii_digit() {
                        i += 1;
                    }
                    let d: String = chars[dstart..i].iter().collect();
                    den = d.parse().map_err(|_| err(dstart, "bad denominator"))?;
                    if den == 0 {
                        return Err(err(dstart, "zero denominator"));
                    }
                }
                phase += &Phase::new(sign * num, den);
            }
        }
        Ok(phase)
    }
}

impl Serialize for Phase {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Phase {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
