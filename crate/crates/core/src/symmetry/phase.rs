use std::fmt;
use std::ops::{Mul, MulAssign};

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{One, Zero};

/// A complex number of modulus one, `exp(2 pi i * turns)`, with `turns`
/// an exact rational kept in `[0, 1)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct UnitPhase {
    turns: Ratio<i64>,
}

impl UnitPhase {
    pub const ONE: UnitPhase = UnitPhase { turns: Ratio::new_raw(0, 1) };
    pub const MINUS_ONE: UnitPhase = UnitPhase { turns: Ratio::new_raw(1, 2) };
    pub const I: UnitPhase = UnitPhase { turns: Ratio::new_raw(1, 4) };
    pub const MINUS_I: UnitPhase = UnitPhase { turns: Ratio::new_raw(3, 4) };

    /// Panics if `den == 0`.
    pub fn from_turns(num: i64, den: i64) -> Self {
        Self::normalized(Ratio::new(num, den))
    }

    pub fn from_ratio(turns: Ratio<i64>) -> Self {
        Self::normalized(turns)
    }

    fn normalized(t: Ratio<i64>) -> Self {
        let num = t.numer().mod_floor(t.denom());
        Self { turns: Ratio::new(num, *t.denom()) }
    }

    pub fn sign(s: super::Sign) -> Self {
        match s {
            super::Sign::Plus => Self::ONE,
            super::Sign::Minus => Self::MINUS_ONE,
        }
    }

    pub fn turns(&self) -> Ratio<i64> {
        self.turns
    }

    pub fn is_one(&self) -> bool {
        self.turns.is_zero()
    }

    pub fn inv(self) -> Self {
        Self::normalized(-self.turns)
    }

    /// Complex conjugate; for a unit phase this is the inverse.
    pub fn conj(self) -> Self {
        self.inv()
    }

    /// `self` if `phi` is `+1`, its conjugate otherwise.
    pub fn act(self, phi: super::Sign) -> Self {
        match phi {
            super::Sign::Plus => self,
            super::Sign::Minus => self.conj(),
        }
    }

    /// Principal square root: half the turns, landing in `[0, 1/2)`.
    pub fn sqrt(self) -> Self {
        Self { turns: self.turns / 2 }
    }

    pub fn pow(self, k: i64) -> Self {
        Self::normalized(self.turns * k)
    }

    /// `Some(sign)` if the phase is real.
    pub fn as_sign(&self) -> Option<super::Sign> {
        if self.turns.is_zero() {
            Some(super::Sign::Plus)
        } else if self.turns == Ratio::new(1, 2) {
            Some(super::Sign::Minus)
        } else {
            None
        }
    }

    /// Exponent `k` with `self = i^k`, if the phase is a fourth root of unity.
    pub fn quarter_turns(&self) -> Option<u8> {
        let q = self.turns * 4;
        q.is_integer().then(|| q.to_integer() as u8)
    }

    pub fn to_complex(self) -> (f64, f64) {
        let a = std::f64::consts::TAU * (*self.turns.numer() as f64) / (*self.turns.denom() as f64);
        (a.cos(), a.sin())
    }
}

impl Default for UnitPhase {
    fn default() -> Self {
        Self::ONE
    }
}

impl Mul for UnitPhase {
    type Output = UnitPhase;
    fn mul(self, rhs: UnitPhase) -> UnitPhase {
        let mut t = self.turns + rhs.turns;
        if t >= Ratio::one() {
            t -= Ratio::one();
        }
        UnitPhase { turns: t }
    }
}

impl MulAssign for UnitPhase {
    fn mul_assign(&mut self, rhs: UnitPhase) {
        *self = *self * rhs;
    }
}

impl fmt::Display for UnitPhase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.quarter_turns() {
            Some(0) => f.write_str("1"),
            Some(1) => f.write_str("i"),
            Some(2) => f.write_str("-1"),
            Some(3) => f.write_str("-i"),
            _ => write!(f, "e(2pi*{})", self.turns),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic_wraps() {
        let a = UnitPhase::from_turns(3, 4);
        assert_eq!(a * a, UnitPhase::MINUS_ONE);
        assert_eq!(a * a.inv(), UnitPhase::ONE);
        assert_eq!(UnitPhase::from_turns(-1, 3), UnitPhase::from_turns(2, 3));
        assert_eq!(UnitPhase::from_turns(7, 4), UnitPhase::MINUS_I);
    }

    #[test]
    fn principal_sqrt() {
        assert_eq!(UnitPhase::MINUS_ONE.sqrt(), UnitPhase::I);
        assert_eq!(UnitPhase::MINUS_I.sqrt(), UnitPhase::from_turns(3, 8));
        for k in 0..16 {
            let p = UnitPhase::from_turns(k, 16);
            assert_eq!(p.sqrt() * p.sqrt(), p);
            assert!(p.sqrt().turns() < Ratio::new(1, 2));
        }
    }

    #[test]
    fn signs() {
        assert_eq!(UnitPhase::MINUS_ONE.as_sign(), Some(super::super::Sign::Minus));
        assert_eq!(UnitPhase::I.as_sign(), None);
        assert_eq!(UnitPhase::from_turns(1, 8).quarter_turns(), None);
    }
}
