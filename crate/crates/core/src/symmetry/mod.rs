//! Symmetry data `(G, c, phi, sigma)` for `G = {+-1}^n`, and the CT-type
//! specification consumed by the classifier.

mod cocycle;
mod phase;
mod spec;

use std::fmt;
use std::ops::Mul;

pub use cocycle::{
    exterior_transform, pm1_reduce, random_valid_cocycle, reduce_antiunitaries, standardize,
    validate_cocycle, BasisChange, ParityGroupData, StandardForm, MAX_GENERATORS,
};
pub use phase::UnitPhase;
pub use spec::{Series, SpecError, SymmetrySpec, TenfoldClass};

use thiserror::Error;

/// A square or homomorphism value in `{+1, -1}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn from_i8(v: i8) -> Option<Sign> {
        match v {
            1 => Some(Sign::Plus),
            -1 => Some(Sign::Minus),
            _ => None,
        }
    }

    pub fn to_i8(self) -> i8 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn is_minus(self) -> bool {
        self == Sign::Minus
    }
}

impl Mul for Sign {
    type Output = Sign;
    fn mul(self, rhs: Sign) -> Sign {
        if self == rhs {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Plus => "+1",
            Sign::Minus => "-1",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SymmetryError {
    #[error("at most {MAX_GENERATORS} generators are supported, got {0}")]
    TooManyGenerators(usize),
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("lambda(e) must be 1")]
    LambdaNotNormalized,
    #[error("data is not in reduced form: {0}")]
    NotReduced(String),
    #[error("the element {0:#b} is unitary; a +-1 reduction needs an antiunitary element")]
    NotAntiunitary(u32),
    #[error("cocycle fails the twisted 2-cocycle identity")]
    InvalidCocycle,
}
