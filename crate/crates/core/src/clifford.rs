//! Symbolic Clifford algebras: the CT-to-Clifford assignment, graded Morita
//! reduction and the Wedderburn structure of `Cl_{r,s}` and `CCl_n`.
//!
//! Convention: `r` counts generators squaring to `-1`, `s` those squaring
//! to `+1`, so `Cl_{1,2} = M2(R) + M2(R)`.

use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use thiserror::Error;

use crate::symmetry::{Sign, SpecError, SymmetrySpec};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum DivisionType {
    R,
    C,
    H,
}

impl DivisionType {
    pub fn real_dim(self) -> usize {
        match self {
            DivisionType::R => 1,
            DivisionType::C => 2,
            DivisionType::H => 4,
        }
    }

    fn letter(self) -> &'static str {
        match self {
            DivisionType::R => "R",
            DivisionType::C => "C",
            DivisionType::H => "H",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CliffordClass {
    Real { r: usize, s: usize },
    Complex { n: usize },
}

impl CliffordClass {
    pub fn real(r: usize, s: usize) -> Self {
        CliffordClass::Real { r, s }
    }

    pub fn complex(n: usize) -> Self {
        CliffordClass::Complex { n }
    }

    /// Counts generator squares: `r` for `-1`, `s` for `+1`.
    fn from_squares(squares: &[Sign]) -> Self {
        let r = squares.iter().filter(|s| s.is_minus()).count();
        CliffordClass::Real { r, s: squares.len() - r }
    }

    /// The graded Morita representative written as `Cl_{k,0}` (or `CCl_k`).
    pub fn negative_form(self) -> Self {
        match self {
            CliffordClass::Real { r, s } => {
                let k = (r as i64 - s as i64).rem_euclid(8) as usize;
                CliffordClass::Real { r: k, s: 0 }
            }
            CliffordClass::Complex { n } => CliffordClass::Complex { n: n % 2 },
        }
    }

    /// The degree `s - r` (real, mod 8) or `n` (complex, mod 2).
    pub fn degree(self) -> usize {
        match self {
            CliffordClass::Real { r, s } => (s as i64 - r as i64).rem_euclid(8) as usize,
            CliffordClass::Complex { n } => n % 2,
        }
    }
}

impl fmt::Display for CliffordClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliffordClass::Real { r, s } => write!(f, "Cl({r},{s})"),
            CliffordClass::Complex { n } => write!(f, "CCl({n})"),
        }
    }
}

/// A finite-dimensional real semisimple algebra as a sum of matrix blocks
/// `M_k(D)`, kept sorted by size and then division type.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AlgebraStructure {
    blocks: Vec<(DivisionType, usize)>,
}

impl AlgebraStructure {
    pub fn new(mut blocks: Vec<(DivisionType, usize)>) -> Self {
        blocks.sort_by_key(|&(d, k)| (k, d));
        Self { blocks }
    }

    pub fn blocks(&self) -> &[(DivisionType, usize)] {
        &self.blocks
    }

    pub fn real_dim(&self) -> usize {
        self.blocks.iter().map(|&(d, k)| d.real_dim() * k * k).sum()
    }

    fn scaled(&self, factor: usize) -> Self {
        Self::new(self.blocks.iter().map(|&(d, k)| (d, k * factor)).collect())
    }
}

impl fmt::Display for AlgebraStructure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .blocks
            .iter()
            .map(|&(d, k)| if k == 1 { d.letter().to_string() } else { format!("M{k}({})", d.letter()) })
            .collect();
        if parts.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&parts.join(" + "))
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("cannot parse algebra structure `{0}`")]
pub struct ParseStructureError(pub String);

impl FromStr for AlgebraStructure {
    type Err = ParseStructureError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || ParseStructureError(s.to_string());
        let div = |t: &str| match t {
            "R" => Some(DivisionType::R),
            "C" => Some(DivisionType::C),
            "H" => Some(DivisionType::H),
            _ => None,
        };
        let mut blocks = Vec::new();
        for part in s.split('+').map(str::trim) {
            if let Some(d) = div(part) {
                blocks.push((d, 1));
                continue;
            }
            let inner = part.strip_prefix('M').and_then(|p| p.strip_suffix(')')).ok_or_else(err)?;
            let (k, d) = inner.split_once('(').ok_or_else(err)?;
            let k: usize = k.parse().map_err(|_| err())?;
            blocks.push((div(d).ok_or_else(err)?, k));
        }
        Ok(Self::new(blocks))
    }
}

/// The Clifford algebras attached to a CT-type symmetry class.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CliffordAssignment {
    /// Generated by the symmetry operators together with the grading.
    pub ungraded: CliffordClass,
    /// Odd generators whose graded modules are the compatible gradings; for
    /// `T` alone this is the doubled algebra with two extra generators.
    pub graded_generators: CliffordClass,
    /// Graded Morita class in `Cl_{k,0}` / `CCl_k` form.
    pub graded_morita: CliffordClass,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CliffordError {
    #[error(transparent)]
    Spec(#[from] SpecError),
}

/// Only the CT content of `spec` is used; spatial dimensions are ignored.
pub fn ct_to_clifford(spec: &SymmetrySpec) -> Result<CliffordAssignment, CliffordError> {
    use Sign::{Minus as M, Plus as P};
    spec.validate()?;
    let (ungraded, graded_generators) = match (spec.t_square, spec.c_square, spec.s_present) {
        (Some(t), Some(c), _) => {
            // {Gamma, C, iC, iCT}; (iCT)^2 = -C^2 T^2 since C and T commute
            let ict = if (c * t).is_minus() { P } else { M };
            (CliffordClass::from_squares(&[P, c, c, ict]), CliffordClass::from_squares(&[c, c, ict]))
        }
        (None, Some(c), _) => (CliffordClass::from_squares(&[P, c, c]), CliffordClass::from_squares(&[c, c])),
        // {i, T, iT Gamma}; graded: {e, ie, eT, ifT} after doubling by e, f
        (Some(t), None, _) => (CliffordClass::from_squares(&[M, t, t]), CliffordClass::from_squares(&[M, M, t, t])),
        (None, None, true) => (CliffordClass::complex(2), CliffordClass::complex(1)),
        (None, None, false) => (CliffordClass::complex(1), CliffordClass::complex(0)),
    };
    Ok(CliffordAssignment { ungraded, graded_generators, graded_morita: graded_generators.negative_form() })
}

/// Canonical representative with `min(r, s) = 0` and the remaining index
/// reduced mod 8 (complex: `n` mod 2).
pub fn morita_reduce(c: CliffordClass) -> CliffordClass {
    match c {
        CliffordClass::Real { r, s } => {
            let m = r.min(s);
            CliffordClass::Real { r: (r - m) % 8, s: (s - m) % 8 }
        }
        CliffordClass::Complex { n } => CliffordClass::Complex { n: n % 2 },
    }
}

const BASE_TABLE: &str = include_str!("../data/clifford_base.txt");

struct BaseTable {
    neg: Vec<AlgebraStructure>,
    pos: Vec<AlgebraStructure>,
    complex: Vec<AlgebraStructure>,
}

/// Classes listed in the embedded base table, in file order.
pub fn base_table_classes() -> Vec<CliffordClass> {
    let mut v: Vec<CliffordClass> = (0..8).map(|r| CliffordClass::real(r, 0)).collect();
    v.extend((1..8).map(|s| CliffordClass::real(0, s)));
    v.extend((0..2).map(CliffordClass::complex));
    v
}

/// The embedded base table as shipped.
pub fn base_table_text() -> &'static str {
    BASE_TABLE
}

fn base_table() -> &'static BaseTable {
    static TABLE: OnceLock<BaseTable> = OnceLock::new();
    TABLE.get_or_init(|| {
        let mut t = BaseTable { neg: vec![], pos: vec![], complex: vec![] };
        for line in BASE_TABLE.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#')) {
            let (class, structure) = line.split_once('=').expect("`class = structure` lines");
            let structure: AlgebraStructure = structure.trim().parse().expect("valid structure");
            match parse_class(class.trim()).expect("valid class") {
                CliffordClass::Real { r: 0, s: 0 } => {
                    t.neg.push(structure.clone());
                    t.pos.push(structure);
                }
                CliffordClass::Real { r, s: 0 } => {
                    assert_eq!(t.neg.len(), r, "base table out of order");
                    t.neg.push(structure);
                }
                CliffordClass::Real { r: 0, s } => {
                    assert_eq!(t.pos.len(), s, "base table out of order");
                    t.pos.push(structure);
                }
                CliffordClass::Complex { n } => {
                    assert_eq!(t.complex.len(), n, "base table out of order");
                    t.complex.push(structure);
                }
                other => panic!("base table entry {other} is not reduced"),
            }
        }
        assert!(t.neg.len() == 8 && t.pos.len() == 8 && t.complex.len() == 2, "base table incomplete");
        t
    })
}

/// Parses `Cl(r,s)` or `CCl(n)`.
pub fn parse_class(s: &str) -> Option<CliffordClass> {
    if let Some(n) = s.strip_prefix("CCl(").and_then(|x| x.strip_suffix(')')) {
        return n.trim().parse().ok().map(CliffordClass::complex);
    }
    let inner = s.strip_prefix("Cl(")?.strip_suffix(')')?;
    let (r, s) = inner.split_once(',')?;
    Some(CliffordClass::real(r.trim().parse().ok()?, s.trim().parse().ok()?))
}

/// Wedderburn structure of the ungraded algebra, via `Cl_{r+1,s+1} =
/// Cl_{r,s} (x) M2(R)`, eightfold (twofold) periodicity and the frozen base
/// table.
pub fn clifford_structure(c: CliffordClass) -> AlgebraStructure {
    let t = base_table();
    match c {
        CliffordClass::Real { r, s } => {
            let m = r.min(s);
            let (r, s) = (r - m, s - m);
            let k = r.max(s);
            let base = if r > 0 { &t.neg[k % 8] } else { &t.pos[k % 8] };
            base.scaled((1 << m) * 16usize.pow((k / 8) as u32))
        }
        CliffordClass::Complex { n } => t.complex[n % 2].scaled(1 << (n / 2)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symmetry::TenfoldClass;

    fn st(s: &str) -> AlgebraStructure {
        s.parse().unwrap()
    }

    #[test]
    fn morita_examples() {
        assert_eq!(morita_reduce(CliffordClass::real(2, 2)), CliffordClass::real(0, 0));
        assert_eq!(morita_reduce(CliffordClass::real(0, 9)), CliffordClass::real(0, 1));
        assert_eq!(morita_reduce(CliffordClass::complex(5)), CliffordClass::complex(1));
        for r in 0..12 {
            for s in 0..12 {
                let c = morita_reduce(CliffordClass::real(r, s));
                assert_eq!(morita_reduce(c), c);
            }
        }
    }

    #[test]
    fn structure_examples() {
        assert_eq!(clifford_structure(CliffordClass::real(3, 0)), st("H + H"));
        assert_eq!(clifford_structure(CliffordClass::real(1, 3)), st("M4(R)"));
        assert_eq!(clifford_structure(CliffordClass::real(1, 1)), st("M2(R)"));
        assert_eq!(clifford_structure(CliffordClass::real(0, 9)).blocks(), &[(DivisionType::R, 16), (DivisionType::R, 16)]);
    }

    #[test]
    fn structure_dimension_is_two_to_the_generators() {
        for r in 0..10 {
            for s in 0..10 {
                assert_eq!(clifford_structure(CliffordClass::real(r, s)).real_dim(), 1 << (r + s));
            }
        }
        for n in 0..10 {
            assert_eq!(clifford_structure(CliffordClass::complex(n)).real_dim(), 2 << n);
        }
    }

    #[test]
    fn ct_examples() {
        let a = ct_to_clifford(&TenfoldClass::AI.spec()).unwrap();
        assert_eq!((a.ungraded, a.graded_morita), (CliffordClass::real(1, 2), CliffordClass::real(0, 0)));
        assert_eq!(a.graded_generators, CliffordClass::real(2, 2));
        let c = ct_to_clifford(&TenfoldClass::C.spec()).unwrap();
        assert_eq!((c.ungraded, c.graded_morita), (CliffordClass::real(2, 1), CliffordClass::real(2, 0)));
        let aii = ct_to_clifford(&TenfoldClass::AII.spec()).unwrap();
        assert_eq!(aii.graded_generators, CliffordClass::real(4, 0));
        let a = ct_to_clifford(&TenfoldClass::A.spec()).unwrap();
        assert_eq!((a.ungraded, a.graded_morita), (CliffordClass::complex(1), CliffordClass::complex(0)));
    }

    #[test]
    fn graded_degree_matches_class_degree() {
        for class in TenfoldClass::ALL {
            let a = ct_to_clifford(&class.spec()).unwrap();
            assert_eq!(a.graded_morita.degree(), class.degree(), "{class}");
        }
    }

    #[test]
    fn structure_render_parse() {
        for s in ["R", "C + C", "M2(R) + M2(R)", "M2(H)", "M8(C)"] {
            assert_eq!(st(s).to_string(), s);
        }
        assert_eq!(st("M2(R) + H").to_string(), "H + M2(R)");
        assert!("M2(Q)".parse::<AlgebraStructure>().is_err());
    }
}
