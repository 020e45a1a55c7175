use std::fmt;

use thiserror::Error;

use super::Sign;
use crate::kcalc::KSequence;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Series {
    Real,
    Complex,
}

impl Series {
    pub fn period(self) -> usize {
        match self {
            Series::Real => 8,
            Series::Complex => 2,
        }
    }
}

impl fmt::Display for Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Series::Real => "real",
            Series::Complex => "complex",
        })
    }
}

/// The ten CT-type symmetry classes, listed by their degree in `K_n(R)`
/// followed by the two complex classes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TenfoldClass {
    AI,
    BDI,
    D,
    DIII,
    AII,
    CII,
    C,
    CI,
    A,
    AIII,
}

impl TenfoldClass {
    pub const ALL: [TenfoldClass; 10] = [
        TenfoldClass::AI,
        TenfoldClass::BDI,
        TenfoldClass::D,
        TenfoldClass::DIII,
        TenfoldClass::AII,
        TenfoldClass::CII,
        TenfoldClass::C,
        TenfoldClass::CI,
        TenfoldClass::A,
        TenfoldClass::AIII,
    ];

    pub fn name(self) -> &'static str {
        match self {
            TenfoldClass::AI => "AI",
            TenfoldClass::BDI => "BDI",
            TenfoldClass::D => "D",
            TenfoldClass::DIII => "DIII",
            TenfoldClass::AII => "AII",
            TenfoldClass::CII => "CII",
            TenfoldClass::C => "C",
            TenfoldClass::CI => "CI",
            TenfoldClass::A => "A",
            TenfoldClass::AIII => "AIII",
        }
    }

    pub fn series(self) -> Series {
        match self {
            TenfoldClass::A | TenfoldClass::AIII => Series::Complex,
            _ => Series::Real,
        }
    }

    /// The point degree `n`: the class is classified by `K_n` of a point.
    pub fn degree(self) -> usize {
        match self {
            TenfoldClass::A => 0,
            TenfoldClass::AIII => 1,
            other => Self::ALL.iter().position(|&c| c == other).expect("listed"),
        }
    }

    /// `(T^2, C^2, S present)`.
    pub fn symmetries(self) -> (Option<Sign>, Option<Sign>, bool) {
        use Sign::{Minus as M, Plus as P};
        match self {
            TenfoldClass::AI => (Some(P), None, false),
            TenfoldClass::BDI => (Some(P), Some(P), false),
            TenfoldClass::D => (None, Some(P), false),
            TenfoldClass::DIII => (Some(M), Some(P), false),
            TenfoldClass::AII => (Some(M), None, false),
            TenfoldClass::CII => (Some(M), Some(M), false),
            TenfoldClass::C => (None, Some(M), false),
            TenfoldClass::CI => (Some(P), Some(M), false),
            TenfoldClass::A => (None, None, false),
            TenfoldClass::AIII => (None, None, true),
        }
    }

    /// A zero-dimensional spec for this class.
    pub fn spec(self) -> SymmetrySpec {
        let (t_square, c_square, s_present) = self.symmetries();
        SymmetrySpec { t_square, c_square, s_present, ..SymmetrySpec::default() }
    }
}

impl fmt::Display for TenfoldClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// CT-type symmetry content plus spatial data. `S = CT` is implied when
/// both `T` and `C` are present and must then not be given separately.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SymmetrySpec {
    pub t_square: Option<Sign>,
    pub c_square: Option<Sign>,
    pub s_present: bool,
    pub continuous_dims: usize,
    pub lattice_dims: usize,
    pub base_k: Option<KSequence>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SpecError {
    #[error("S must not be specified alongside both T and C: it is implied as S = CT")]
    ChiralWithBoth,
    #[error("S with only one of T and C leaves the square of the missing one undetermined; specify both T and C instead")]
    ChiralWithOne,
    #[error("base_k is a {got} K-sequence but the symmetry class needs the {expected} series")]
    BaseSeriesMismatch { expected: Series, got: Series },
}

impl SymmetrySpec {
    pub fn from_class(class: TenfoldClass) -> Self {
        class.spec()
    }

    /// Checks consistency and returns the tenfold class of the CT content.
    pub fn validate(&self) -> Result<TenfoldClass, SpecError> {
        let class = match (self.t_square, self.c_square, self.s_present) {
            (Some(_), Some(_), true) => return Err(SpecError::ChiralWithBoth),
            (Some(_), None, true) | (None, Some(_), true) => return Err(SpecError::ChiralWithOne),
            (t, c, s) => TenfoldClass::ALL
                .into_iter()
                .find(|k| k.symmetries() == (t, c, s))
                .expect("all remaining combinations are listed"),
        };
        if let Some(base) = &self.base_k {
            if base.series() != class.series() {
                return Err(SpecError::BaseSeriesMismatch { expected: class.series(), got: base.series() });
            }
        }
        Ok(class)
    }

    pub fn with_dims(mut self, continuous: usize, lattice: usize) -> Self {
        self.continuous_dims = continuous;
        self.lattice_dims = lattice;
        self
    }
}
