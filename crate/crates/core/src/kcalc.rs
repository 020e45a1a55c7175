//! Degree bookkeeping for the classifier: K-groups of a point, Clifford and
//! translation shifts, the lattice binomial formula and the periodic table.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::clifford::ct_to_clifford;
use crate::groups::AbelianGroup;
use crate::symmetry::{Series, SpecError, SymmetrySpec, TenfoldClass};

/// `K_n` for all `n` modulo the Bott period (8 real, 2 complex).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct KSequence {
    series: Series,
    groups: Vec<AbelianGroup>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum KError {
    #[error(transparent)]
    Spec(#[from] SpecError),
    #[error("a K-sequence needs exactly 8 (real) or 2 (complex) groups, got {0}")]
    BadLength(usize),
    #[error("cannot parse K-sequence `{0}`")]
    Parse(String),
    #[error("lattice dimensions are handled by lattice_classify")]
    LatticeDims,
}

impl KSequence {
    pub fn new(series: Series, groups: Vec<AbelianGroup>) -> Result<Self, KError> {
        if groups.len() != series.period() {
            return Err(KError::BadLength(groups.len()));
        }
        Ok(Self { series, groups })
    }

    /// `K_n` of a point: `(Z, Z_2, Z_2, 0, Z, 0, 0, 0)` or `(Z, 0)`.
    pub fn point(series: Series) -> Self {
        let z = AbelianGroup::integers;
        let z2 = || AbelianGroup::cyclic(2);
        let o = AbelianGroup::trivial;
        let groups = match series {
            Series::Real => vec![z(), z2(), z2(), o(), z(), o(), o(), o()],
            Series::Complex => vec![z(), o()],
        };
        Self { series, groups }
    }

    pub fn series(&self) -> Series {
        self.series
    }

    pub fn groups(&self) -> &[AbelianGroup] {
        &self.groups
    }

    pub fn period(&self) -> usize {
        self.groups.len()
    }

    /// Degree `n`, reduced modulo the period.
    pub fn get(&self, n: i64) -> &AbelianGroup {
        &self.groups[n.rem_euclid(self.period() as i64) as usize]
    }

    /// `out[n] = self[n - d]`.
    pub fn shift(&self, d: i64) -> Self {
        let groups = (0..self.period() as i64).map(|n| self.get(n - d).clone()).collect();
        Self { series: self.series, groups }
    }

    /// `out[n] = self[n] + self[n - 1]`, the effect of a crossed product by `Z`.
    pub fn crossed_with_z(&self) -> Self {
        let groups = (0..self.period() as i64).map(|n| self.get(n).direct_sum(self.get(n - 1))).collect();
        Self { series: self.series, groups }
    }
}

impl fmt::Display for KSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.groups.iter().map(|g| g.to_string()).collect();
        write!(f, "[{}]", parts.join(", "))
    }
}

impl FromStr for KSequence {
    type Err = KError;

    /// `[G0, ..., G7]` (real) or `[G0, G1]` (complex).
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let inner = s
            .trim()
            .strip_prefix('[')
            .and_then(|t| t.strip_suffix(']'))
            .ok_or_else(|| KError::Parse(s.to_string()))?;
        let groups = inner
            .split(',')
            .map(|g| g.parse::<AbelianGroup>().map_err(|e| KError::Parse(e.to_string())))
            .collect::<Result<Vec<_>, _>>()?;
        let series = match groups.len() {
            8 => Series::Real,
            2 => Series::Complex,
            n => return Err(KError::BadLength(n)),
        };
        Self::new(series, groups)
    }
}

pub fn k_point(series: Series) -> KSequence {
    KSequence::point(series)
}

pub fn shift(seq: &KSequence, d: i64) -> KSequence {
    seq.shift(d)
}

pub fn crossed_with_z(seq: &KSequence) -> KSequence {
    seq.crossed_with_z()
}

/// Degree of the CT content after subtracting the continuous dimensions,
/// together with the base sequence to read it from.
fn shifted_degree(spec: &SymmetrySpec) -> Result<(i64, KSequence), KError> {
    let class = spec.validate()?;
    let assignment = ct_to_clifford(spec).map_err(|e| match e {
        crate::clifford::CliffordError::Spec(s) => KError::Spec(s),
    })?;
    let base = spec.base_k.clone().unwrap_or_else(|| KSequence::point(class.series()));
    let n = assignment.graded_morita.degree() as i64 - spec.continuous_dims as i64;
    Ok((n, base))
}

/// `base[s - r - d]` for the graded Morita class `Cl_{r,s}` (complex:
/// `base[n - d]`), with `d` the number of continuous dimensions.
pub fn classify(spec: &SymmetrySpec) -> Result<AbelianGroup, KError> {
    if spec.lattice_dims != 0 {
        return Err(KError::LatticeDims);
    }
    let (n, base) = shifted_degree(spec)?;
    Ok(base.get(n).clone())
}

/// `sum_k binom(d', k) base[n0 - k]` where `n0` already includes the
/// continuous shift and `d'` is the number of lattice dimensions.
pub fn lattice_classify(spec: &SymmetrySpec) -> Result<AbelianGroup, KError> {
    let (n0, base) = shifted_degree(spec)?;
    let dl = spec.lattice_dims;
    let mut binom = 1usize;
    let mut out = AbelianGroup::trivial();
    for k in 0..=dl {
        out = out.direct_sum(&base.get(n0 - k as i64).multiple(binom));
        binom = binom * (dl - k) / (k + 1);
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PeriodicTable {
    pub d_max: usize,
    pub rows: Vec<(TenfoldClass, Vec<AbelianGroup>)>,
}

impl PeriodicTable {
    pub fn get(&self, class: TenfoldClass, d: usize) -> &AbelianGroup {
        let row = self.rows.iter().find(|(c, _)| *c == class).expect("every class has a row");
        &row.1[d]
    }
}

/// `K_{n-d}` of a point for the ten classes and `0 <= d <= d_max`.
pub fn periodic_table(d_max: usize) -> PeriodicTable {
    let rows = TenfoldClass::ALL
        .into_iter()
        .map(|class| {
            let seq = KSequence::point(class.series());
            let row = (0..=d_max).map(|d| seq.get(class.degree() as i64 - d as i64).clone()).collect();
            (class, row)
        })
        .collect();
    PeriodicTable { d_max, rows }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(s: &str) -> AbelianGroup {
        s.parse().unwrap()
    }

    #[test]
    fn point_values() {
        let real = k_point(Series::Real);
        assert_eq!(real.get(0), &g("Z"));
        assert_eq!(real.get(3), &g("0"));
        assert_eq!(k_point(Series::Complex).get(1), &g("0"));
    }

    #[test]
    fn shifts() {
        let real = k_point(Series::Real);
        assert_eq!(shift(&real, 0), real);
        assert_eq!(shift(&real, 8), real);
        assert_eq!(shift(&real, -16), real);
        assert_eq!(shift(&k_point(Series::Complex), 1).get(0), &g("0"));
        assert_eq!(shift(&real, 3).get(4), real.get(1));
    }

    #[test]
    fn crossed_examples() {
        let c = crossed_with_z(&k_point(Series::Complex));
        assert!(c.groups().iter().all(|x| *x == g("Z")));
        assert_eq!(crossed_with_z(&k_point(Series::Real)).get(0), &g("Z"));
    }

    #[test]
    fn classify_examples() {
        assert_eq!(classify(&TenfoldClass::AII.spec()).unwrap(), g("Z"));
        assert_eq!(classify(&TenfoldClass::D.spec().with_dims(2, 0)).unwrap(), g("Z"));
        assert_eq!(classify(&TenfoldClass::A.spec().with_dims(3, 0)).unwrap(), g("0"));
        assert_eq!(classify(&TenfoldClass::AIII.spec().with_dims(1, 0)).unwrap(), g("Z"));
    }

    #[test]
    fn lattice_examples() {
        assert_eq!(lattice_classify(&TenfoldClass::AII.spec().with_dims(0, 3)).unwrap(), g("Z + Z_2^4"));
        assert_eq!(lattice_classify(&TenfoldClass::BDI.spec().with_dims(0, 2)).unwrap(), g("Z^2 + Z_2"));
        for class in TenfoldClass::ALL {
            let s = class.spec().with_dims(2, 0);
            assert_eq!(lattice_classify(&s).unwrap(), classify(&s).unwrap());
        }
    }

    #[test]
    fn table_spot_checks() {
        let t = periodic_table(3);
        assert_eq!(t.get(TenfoldClass::DIII, 3), &g("Z"));
        assert_eq!(t.get(TenfoldClass::CII, 1), &g("Z"));
        assert_eq!(t.get(TenfoldClass::AIII, 2), &g("0"));
    }

    #[test]
    fn sequence_parse() {
        let s: KSequence = "[Z, Z_2, Z_2, 0, Z, 0, 0, 0]".parse().unwrap();
        assert_eq!(s, k_point(Series::Real));
        assert_eq!(s.to_string().parse::<KSequence>().unwrap(), s);
        assert!(matches!("[Z, 0, 0]".parse::<KSequence>(), Err(KError::BadLength(3))));
    }
}
