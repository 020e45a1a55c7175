//! Brute-force matrix oracle.
//!
//! Everything here is real-linear: complex scalars are 2x2 real blocks (or a
//! two-dimensional real coefficient algebra), so antiunitary operators need
//! no special casing. Random choices come from seeded ChaCha generators and
//! are reproducible.

mod algebra;
mod graded;
mod packer_raeburn;
mod wedderburn;

pub use algebra::{
    adjoin_grading, crossed_product, twisted_crossed_product, twisted_group_algebra, ungraded_ct_algebra,
    Base, FiniteGroup, GroupCocycle, StructureAlgebra,
};
pub use graded::{
    build_irreducible_graded_reps, decompose, equivalent, intertwiner_dim, restriction_matrix, sr_bruteforce,
    GradedRep, MAX_GENERATORS,
};
pub use packer_raeburn::{
    packer_raeburn_decompose, packer_raeburn_suite, packer_raeburn_verify, FiniteExtension, PackerRaeburnCase,
    PackerRaeburnReport, TwistingPair,
};
pub use wedderburn::{center_dim, wedderburn, wedderburn_clifford, WEDDERBURN_ATTEMPTS};

use nalgebra::DMatrix;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ReprError {
    #[error("(r, s) = ({r}, {s}) exceeds the supported generator count")]
    TooLarge { r: usize, s: usize },
    #[error("irreducible catalogue for ({r}, {s}) is incomplete: dimension count {found} != {expected}")]
    Incomplete { r: usize, s: usize, found: f64, expected: f64 },
    #[error("intertwiner count {0} is not an integer multiple of the endomorphism dimension")]
    FractionalMultiplicity(f64),
    #[error("not a group: {0}")]
    NotAGroup(String),
    #[error("cocycle fails the twisted 2-cocycle identity")]
    InvalidCocycle,
    #[error("phase {0} is not available in the chosen coefficient field")]
    UnsupportedPhase(String),
    #[error("basis is not orthonormal for the trace form (max deviation {0:e})")]
    NotOrthonormal(f64),
    #[error("central spectrum not separated after {0} seeds")]
    Degenerate(usize),
    #[error("subgroup is not normal")]
    NotNormal,
    #[error("subgroup is not contained in the kernel of the grading homomorphism")]
    NotInKernelOfC,
    #[error("shape mismatch: {0}")]
    Shape(String),
}

/// Groups sorted values whose neighbours differ by at most `merge`; returns
/// `None` when some gap falls in the ambiguous band `(merge, split]`.
pub(crate) fn cluster(values: &[f64], merge: f64, split: f64) -> Option<Vec<Vec<usize>>> {
    let mut idx: Vec<usize> = (0..values.len()).collect();
    idx.sort_by(|&a, &b| values[a].total_cmp(&values[b]));
    let mut out: Vec<Vec<usize>> = Vec::new();
    for (k, &i) in idx.iter().enumerate() {
        if k > 0 {
            let gap = values[i] - values[idx[k - 1]];
            if gap > merge && gap <= split {
                return None;
            }
            if gap <= merge {
                out.last_mut().expect("non-empty").push(i);
                continue;
            }
        }
        out.push(vec![i]);
    }
    Some(out)
}

/// Numerical rank from singular values, relative to the largest one.
pub(crate) fn numerical_rank(m: &DMatrix<f64>, rel_tol: f64) -> usize {
    if m.nrows() == 0 || m.ncols() == 0 {
        return 0;
    }
    let sv = m.clone().svd(false, false).singular_values;
    let top = sv.iter().cloned().fold(0.0, f64::max);
    if top == 0.0 {
        return 0;
    }
    sv.iter().filter(|&&x| x > rel_tol * top).count()
}
