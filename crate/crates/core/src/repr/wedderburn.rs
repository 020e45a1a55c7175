use nalgebra::{DMatrix, DVector, SymmetricEigen};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{cluster, numerical_rank, twisted_group_algebra, Base, ReprError, StructureAlgebra};
use crate::clifford::{AlgebraStructure, CliffordClass, DivisionType};
use crate::symmetry::ParityGroupData;

/// Seeds tried before giving up on separating the central spectrum.
pub const WEDDERBURN_ATTEMPTS: usize = 8;
const SEED: u64 = 0x5745_4444;

fn check_orthonormal(a: &StructureAlgebra) -> Result<(), ReprError> {
    let n = a.dim();
    let mut worst = 0i64;
    for i in 0..n {
        let mut ei = vec![0; n];
        ei[i] = 1;
        let si = a.star_int(&ei);
        for j in 0..n {
            let mut ej = vec![0; n];
            ej[j] = 1;
            let tau = a.mul_int(&si, &ej)[a.unit_index()];
            worst = worst.max((tau - i64::from(i == j)).abs());
        }
    }
    if worst == 0 {
        Ok(())
    } else {
        Err(ReprError::NotOrthonormal(worst as f64))
    }
}

/// Orthonormal basis (columns) of the center.
fn center_basis(a: &StructureAlgebra) -> DMatrix<f64> {
    let n = a.dim();
    let mut m = DMatrix::<f64>::zeros(n, n);
    for i in 0..n {
        let mut ei = vec![0.0; n];
        ei[i] = 1.0;
        let d = a.left_matrix(&ei) - a.right_matrix(&ei);
        m += d.transpose() * d;
    }
    let eig = SymmetricEigen::new(m);
    let scale = eig.eigenvalues.amax().max(1.0);
    let cols: Vec<usize> = (0..n).filter(|&k| eig.eigenvalues[k].abs() < 1e-9 * scale).collect();
    DMatrix::from_fn(n, cols.len(), |i, j| eig.eigenvectors[(i, cols[j])])
}

pub fn center_dim(a: &StructureAlgebra) -> usize {
    center_basis(a).ncols()
}

fn random_vec(rng: &mut ChaCha8Rng, n: usize) -> DVector<f64> {
    DVector::from_fn(n, |_, _| rng.gen_range(-1.0..1.0))
}

fn self_adjoint(a: &StructureAlgebra, w: &DVector<f64>) -> DVector<f64> {
    w + DVector::from_vec(a.star(w.as_slice()))
}

enum Outcome {
    Done(AlgebraStructure),
    Retry,
}

/// Simple-block decomposition `sum M_n(D)` of a semisimple *-algebra whose
/// basis is orthonormal for the trace form.
///
/// Blocks are the eigenspaces of left multiplication by a random
/// self-adjoint central element. A block with a two-dimensional center is
/// complex; otherwise `n` (number of distinct eigenvalues of a random
/// self-adjoint element of the block) fixes `dim D = dim / n^2`, which is
/// cross-checked against `dim pAp` for a minimal projection `p`.
pub fn wedderburn(a: &StructureAlgebra) -> Result<AlgebraStructure, ReprError> {
    check_orthonormal(a)?;
    let z = center_basis(a);
    for attempt in 0..WEDDERBURN_ATTEMPTS {
        let mut rng = ChaCha8Rng::seed_from_u64(SEED + attempt as u64);
        if let Outcome::Done(s) = try_decompose(a, &z, &mut rng) {
            return Ok(s);
        }
    }
    Err(ReprError::Degenerate(WEDDERBURN_ATTEMPTS))
}

/// Structure of a Clifford algebra, computed from its twisted group algebra.
pub fn wedderburn_clifford(c: CliffordClass) -> Result<AlgebraStructure, ReprError> {
    let shape = |e: crate::symmetry::SymmetryError| ReprError::Shape(e.to_string());
    let a = match c {
        CliffordClass::Real { r, s } => {
            twisted_group_algebra(&ParityGroupData::clifford_real(r, s).map_err(shape)?, Base::Real)?
        }
        CliffordClass::Complex { n } => {
            twisted_group_algebra(&ParityGroupData::clifford_complex(n).map_err(shape)?, Base::Complex)?
        }
    };
    wedderburn(&a)
}

fn try_decompose(a: &StructureAlgebra, z: &DMatrix<f64>, rng: &mut ChaCha8Rng) -> Outcome {
    let n = a.dim();
    let w = z * random_vec(rng, z.ncols());
    let central = self_adjoint(a, &w);
    let lz = a.left_matrix(central.as_slice());
    let eig = SymmetricEigen::new((&lz + lz.transpose()) * 0.5);
    let scale = eig.eigenvalues.amax().max(1e-300);
    let Some(groups) = cluster(eig.eigenvalues.as_slice(), 1e-9 * scale, 1e-6 * scale) else {
        return Outcome::Retry;
    };
    let unit = DVector::from_fn(n, |i, _| if i == a.unit_index() { 1.0 } else { 0.0 });
    let mut blocks = Vec::new();
    for idx in groups {
        let v = DMatrix::from_fn(n, idx.len(), |i, j| eig.eigenvectors[(i, idx[j])]);
        let proj = &v * v.transpose();
        let m = idx.len();
        let zk = &proj * z;
        let ck = numerical_rank(&zk, 1e-8);
        let ek = &proj * &unit;
        let complex = match ck {
            1 => false,
            2 => {
                let wk = &zk * random_vec(rng, zk.ncols());
                let s = &wk - DVector::from_vec(a.star(wk.as_slice()));
                if s.norm() < 1e-8 * wk.norm() {
                    return Outcome::Retry;
                }
                let s2 = DVector::from_vec(a.mul(s.as_slice(), s.as_slice()));
                let lambda = -s2.dot(&ek) / ek.dot(&ek);
                if lambda <= 0.0 || (&s2 + &ek * lambda).norm() > 1e-8 * s2.norm() {
                    return Outcome::Retry;
                }
                true
            }
            _ => return Outcome::Retry,
        };
        // matrix size from the spectrum of a random self-adjoint block element
        let h = &proj * self_adjoint(a, &random_vec(rng, n));
        let lh = v.transpose() * a.left_matrix(h.as_slice()) * &v;
        let heig = SymmetricEigen::new((&lh + lh.transpose()) * 0.5);
        let hscale = heig.eigenvalues.amax().max(1e-300);
        let Some(levels) = cluster(heig.eigenvalues.as_slice(), 1e-9 * hscale, 1e-6 * hscale) else {
            return Outcome::Retry;
        };
        let size = levels.len();
        if m % (size * size) != 0 {
            return Outcome::Retry;
        }
        let ddim = m / (size * size);
        let division = match (ddim, complex) {
            (1, false) => DivisionType::R,
            (2, true) => DivisionType::C,
            (4, false) => DivisionType::H,
            _ => return Outcome::Retry,
        };
        let means: Vec<f64> = levels
            .iter()
            .map(|l| l.iter().map(|&i| heig.eigenvalues[i]).sum::<f64>() / l.len() as f64)
            .collect();
        let mut p = ek.clone();
        for &mu in &means[1..] {
            let shifted = &h - &ek * mu;
            p = DVector::from_vec(a.mul(p.as_slice(), shifted.as_slice())) / (means[0] - mu);
        }
        let pap = a.left_matrix(p.as_slice()) * a.right_matrix(p.as_slice());
        if numerical_rank(&pap, 1e-8) != ddim {
            return Outcome::Retry;
        }
        blocks.push((division, size));
    }
    Outcome::Done(AlgebraStructure::new(blocks))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::clifford::{clifford_structure, CliffordClass};
    use crate::repr::{twisted_group_algebra, ungraded_ct_algebra, Base};
    use crate::symmetry::{ParityGroupData, TenfoldClass};

    fn st(s: &str) -> AlgebraStructure {
        s.parse().unwrap()
    }

    #[test]
    fn scalars() {
        assert_eq!(wedderburn(&StructureAlgebra::scalars(Base::Real)).unwrap(), st("R"));
        assert_eq!(wedderburn(&StructureAlgebra::scalars(Base::Complex)).unwrap(), st("C"));
    }

    #[test]
    fn cl_1_1_is_m2r() {
        let a = twisted_group_algebra(&ParityGroupData::clifford_real(1, 1).unwrap(), Base::Real).unwrap();
        assert_eq!(wedderburn(&a).unwrap(), st("M2(R)"));
    }

    #[test]
    fn quaternions_and_split_cases() {
        let w = |r, s| wedderburn(&twisted_group_algebra(&ParityGroupData::clifford_real(r, s).unwrap(), Base::Real).unwrap()).unwrap();
        assert_eq!(w(1, 0), st("C"));
        assert_eq!(w(2, 0), st("H"));
        assert_eq!(w(3, 0), st("H + H"));
        assert_eq!(w(0, 1), st("R + R"));
        assert_eq!(w(0, 3), st("M2(C)"));
    }

    #[test]
    fn small_clifford_agreement() {
        for r in 0..=3 {
            for s in 0..=(3 - r) {
                let a = twisted_group_algebra(&ParityGroupData::clifford_real(r, s).unwrap(), Base::Real).unwrap();
                assert_eq!(wedderburn(&a).unwrap(), clifford_structure(CliffordClass::real(r, s)), "({r},{s})");
            }
        }
    }

    #[test]
    fn ct_rows() {
        assert_eq!(wedderburn(&ungraded_ct_algebra(TenfoldClass::AI)).unwrap(), st("M2(R) + M2(R)"));
        assert_eq!(wedderburn(&ungraded_ct_algebra(TenfoldClass::D)).unwrap(), st("M2(C)"));
        assert_eq!(wedderburn(&ungraded_ct_algebra(TenfoldClass::CII)).unwrap(), st("M2(H)"));
        assert_eq!(wedderburn(&ungraded_ct_algebra(TenfoldClass::A)).unwrap(), st("C + C"));
    }
}
