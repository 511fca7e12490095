//! Tracked global factors of the form `2^{k/2} · e^{iα} · ∏ (1 + e^{iβⱼ})`.

use std::fmt;
use std::ops::{Mul, MulAssign};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::phase::Phase;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Scalar {
    #[serde(rename = "zero")]
    is_zero: bool,
    #[serde(rename = "pow2")]
    sqrt2_power: i32,
    phase: Phase,
    /// Sorted, so that equal multisets compare equal.
    #[serde(rename = "terms")]
    one_plus_terms: Vec<Phase>,
}

impl Default for Scalar {
    fn default() -> Self {
        Scalar::one()
    }
}

impl Scalar {
    pub fn one() -> Self {
        Scalar {
            is_zero: false,
            sqrt2_power: 0,
            phase: Phase::zero(),
            one_plus_terms: Vec::new(),
        }
    }

    pub fn zero() -> Self {
        Scalar {
            is_zero: true,
            ..Scalar::one()
        }
    }

    /// `√2^k`.
    pub fn sqrt2_pow(k: i32) -> Self {
        Scalar {
            sqrt2_power: k,
            ..Scalar::one()
        }
    }

    /// `e^{iα}`.
    pub fn from_phase(phase: Phase) -> Self {
        Scalar {
            phase,
            ..Scalar::one()
        }
    }

    /// `1 + e^{iα}`.
    pub fn one_plus(phase: Phase) -> Self {
        Scalar {
            one_plus_terms: vec![phase],
            ..Scalar::one()
        }
        .normalized()
    }

    pub fn new(sqrt2_power: i32, phase: Phase, terms: Vec<Phase>) -> Self {
        Scalar {
            is_zero: false,
            sqrt2_power,
            phase,
            one_plus_terms: terms,
        }
        .normalized()
    }

    pub fn is_zero(&self) -> bool {
        self.is_zero
    }

    pub fn sqrt2_power(&self) -> i32 {
        self.sqrt2_power
    }

    pub fn phase(&self) -> &Phase {
        &self.phase
    }

    pub fn one_plus_terms(&self) -> &[Phase] {
        &self.one_plus_terms
    }

    pub fn is_one(&self) -> bool {
        *self == Scalar::one()
    }

    pub fn is_concrete(&self) -> bool {
        self.phase.is_concrete() && self.one_plus_terms.iter().all(Phase::is_concrete)
    }

    pub fn normalized(mut self) -> Self {
        if !self.is_zero {
            self.phase = self.phase.normalized();
            let mut kept = Vec::with_capacity(self.one_plus_terms.len());
            for t in self.one_plus_terms.drain(..) {
                let t = t.normalized();
                if t.is_pi() {
                    self.is_zero = true;
                    break;
                } else if t.is_zero() {
                    self.sqrt2_power += 2;
                } else {
                    kept.push(t);
                }
            }
            kept.sort();
            self.one_plus_terms = kept;
        }
        if self.is_zero {
            self.sqrt2_power = 0;
            self.phase = Phase::zero();
            self.one_plus_terms.clear();
        }
        self
    }

    pub fn mul_sqrt2_pow(&mut self, k: i32) {
        if !self.is_zero {
            self.sqrt2_power += k;
        }
    }

    pub fn mul_phase(&mut self, phase: &Phase) {
        if !self.is_zero {
            self.phase += phase;
        }
    }

    pub fn mul_one_plus(&mut self, phase: Phase) {
        *self *= &Scalar::one_plus(phase);
    }

    /// Complex conjugate: phases and `1+e^{iα}` terms negated.
    pub fn conjugate(&self) -> Self {
        Scalar {
            is_zero: self.is_zero,
            sqrt2_power: self.sqrt2_power,
            phase: -&self.phase,
            one_plus_terms: self.one_plus_terms.iter().map(|t| -t).collect(),
        }
        .normalized()
    }

    pub fn to_complex(&self) -> Result<Complex64> {
        if self.is_zero {
            return Ok(Complex64::new(0.0, 0.0));
        }
        let mut z = Complex64::from_polar(2f64.powf(self.sqrt2_power as f64 / 2.0), self.phase.try_radians()?);
        for t in &self.one_plus_terms {
            z *= Complex64::new(1.0, 0.0) + Complex64::from_polar(1.0, t.try_radians()?);
        }
        Ok(z)
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        if self.is_zero || rhs.is_zero {
            return Scalar::zero();
        }
        let mut terms = self.one_plus_terms.clone();
        terms.extend(rhs.one_plus_terms.iter().cloned());
        Scalar {
            is_zero: false,
            sqrt2_power: self.sqrt2_power + rhs.sqrt2_power,
            phase: &self.phase + &rhs.phase,
            one_plus_terms: terms,
        }
        .normalized()
    }
}

impl Mul for Scalar {
    type Output = Scalar;
    fn mul(self, rhs: Scalar) -> Scalar {
        &self * &rhs
    }
}

impl MulAssign<&Scalar> for Scalar {
    fn mul_assign(&mut self, rhs: &Scalar) {
        *self = &*self * rhs;
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero {
            return f.write_str("0");
        }
        write!(f, "√2^{} · e^(iπ·{})", self.sqrt2_power, self.phase)?;
        for t in &self.one_plus_terms {
            write!(f, " · (1+e^(iπ·{t}))")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn examples() {
        assert_eq!(Scalar::sqrt2_pow(1) * Scalar::sqrt2_pow(1), Scalar::sqrt2_pow(2));
        assert!((Scalar::sqrt2_pow(2).to_complex().unwrap() - 2.0).norm() < 1e-12);
        assert_eq!(Scalar::sqrt2_pow(5) * Scalar::zero(), Scalar::zero());
        assert!(Scalar::one_plus(Phase::pi()).is_zero());
        assert_eq!(Scalar::one_plus(Phase::zero()), Scalar::sqrt2_pow(2));
        let s = Scalar::one_plus(Phase::new(1, 2));
        assert!((s.to_complex().unwrap() - Complex64::new(1.0, 1.0)).norm() < 1e-12);
        assert_eq!(Scalar::zero().to_complex().unwrap(), Complex64::new(0.0, 0.0));
    }

    #[test]
    fn zero_fields_are_defaults() {
        let z = Scalar::new(3, Phase::new(1, 3), vec![Phase::new(1, 4), Phase::pi()]);
        assert!(z.is_zero());
        assert_eq!(z.sqrt2_power(), 0);
        assert!(z.phase().is_zero());
        assert!(z.one_plus_terms().is_empty());
    }

    #[test]
    fn symbolic_scalar_is_not_evaluable() {
        let s = Scalar::from_phase(Phase::symbol("a"));
        assert!(s.to_complex().is_err());
        let t = Scalar::one_plus(Phase::symbol("b"));
        assert!(t.to_complex().is_err());
    }

    fn arb_scalar() -> impl Strategy<Value = Scalar> {
        (
            prop::bool::weighted(0.1),
            -6i32..6,
            0i64..8,
            prop::collection::vec(0i64..8, 0..3),
        )
            .prop_map(|(z, k, ph, terms)| {
                if z {
                    Scalar::zero()
                } else {
                    Scalar::new(k, Phase::new(ph, 4), terms.into_iter().map(|t| Phase::new(t, 4)).collect())
                }
            })
    }

    proptest! {
        #[test]
        fn mul_is_homomorphic(s in arb_scalar(), t in arb_scalar()) {
            let lhs = (&s * &t).to_complex().unwrap();
            let rhs = s.to_complex().unwrap() * t.to_complex().unwrap();
            prop_assert!((lhs - rhs).norm() <= 1e-12 * (1.0 + rhs.norm()));
        }

        #[test]
        fn normalization_idempotent(s in arb_scalar()) {
            prop_assert_eq!(s.clone().normalized(), s);
        }

        #[test]
        fn conjugate_matches_complex(s in arb_scalar()) {
            let c = s.conjugate().to_complex().unwrap();
            prop_assert!((c - s.to_complex().unwrap().conj()).norm() < 1e-12 * (1.0 + c.norm()));
        }
    }
}
