use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{cluster, numerical_rank, ReprError};
use crate::groups::{cokernel, AbelianGroup, IntMatrix};

/// Largest `r + s` accepted by [`build_irreducible_graded_reps`].
pub const MAX_GENERATORS: usize = 10;

/// A real graded `Cl_{r,s}`-module `R^{p|q}`.
///
/// The grading is `diag(1_p, -1_q)`. Generators are orthogonal and odd;
/// the `neg` ones are skew (square `-1`), the `pos` ones symmetric (square
/// `+1`).
#[derive(Clone, Debug)]
pub struct GradedRep {
    p: usize,
    q: usize,
    neg: Vec<DMatrix<f64>>,
    pos: Vec<DMatrix<f64>>,
}

impl GradedRep {
    pub fn even_line() -> Self {
        Self { p: 1, q: 0, neg: vec![], pos: vec![] }
    }

    pub fn odd_line() -> Self {
        Self { p: 0, q: 1, neg: vec![], pos: vec![] }
    }

    pub fn dim(&self) -> usize {
        self.p + self.q
    }

    /// `(p, q)`: dimensions of the even and odd parts.
    pub fn split(&self) -> (usize, usize) {
        (self.p, self.q)
    }

    /// `(r, s)`.
    pub fn signature(&self) -> (usize, usize) {
        (self.neg.len(), self.pos.len())
    }

    pub fn grading(&self) -> DMatrix<f64> {
        DMatrix::from_diagonal(&DVector::from_fn(self.dim(), |i, _| if i < self.p { 1.0 } else { -1.0 }))
    }

    pub fn negative_generators(&self) -> &[DMatrix<f64>] {
        &self.neg
    }

    pub fn positive_generators(&self) -> &[DMatrix<f64>] {
        &self.pos
    }

    /// Generators (negative first) followed by the grading.
    fn operators(&self) -> Vec<DMatrix<f64>> {
        let mut ops: Vec<DMatrix<f64>> = self.neg.iter().chain(&self.pos).cloned().collect();
        ops.push(self.grading());
        ops
    }

    /// Largest deviation from the defining relations: odd generators,
    /// pairwise anticommutation, squares `+-1`.
    pub fn residual(&self) -> f64 {
        let n = self.dim();
        let gamma = self.grading();
        let id = DMatrix::<f64>::identity(n, n);
        let gens: Vec<(&DMatrix<f64>, f64)> =
            self.neg.iter().map(|g| (g, -1.0)).chain(self.pos.iter().map(|g| (g, 1.0))).collect();
        let mut worst: f64 = 0.0;
        for (i, (a, sa)) in gens.iter().enumerate() {
            worst = worst.max((*a * &gamma + &gamma * *a).amax());
            worst = worst.max((*a * *a - &id * *sa).amax());
            for (b, _) in &gens[i + 1..] {
                worst = worst.max((*a * *b + *b * *a).amax());
            }
        }
        worst
    }

    /// `V (x) R^{1|1}` with one extra generator squaring to `+1`, appended last.
    pub fn add_positive(&self) -> Self {
        self.double(&DMatrix::from_row_slice(2, 2, &[0.0, 1.0, 1.0, 0.0]), true)
    }

    /// `V (x) R^{1|1}` with one extra generator squaring to `-1`, appended last.
    pub fn add_negative(&self) -> Self {
        self.double(&DMatrix::from_row_slice(2, 2, &[0.0, -1.0, 1.0, 0.0]), false)
    }

    fn double(&self, block: &DMatrix<f64>, positive: bool) -> Self {
        let gamma = self.grading();
        let id2 = DMatrix::<f64>::identity(2, 2);
        let d = DMatrix::from_diagonal(&DVector::from_row_slice(&[1.0, -1.0]));
        let new_gamma = gamma.kronecker(&d);
        let mut neg: Vec<DMatrix<f64>> = self.neg.iter().map(|g| g.kronecker(&id2)).collect();
        let mut pos: Vec<DMatrix<f64>> = self.pos.iter().map(|g| g.kronecker(&id2)).collect();
        let extra = gamma.kronecker(block);
        if positive {
            pos.push(extra);
        } else {
            neg.push(extra);
        }
        Self::from_operators(&new_gamma, neg, pos)
    }

    /// Restriction to the subalgebra without the last positive generator.
    pub fn forget_last_positive(&self) -> Self {
        let mut out = self.clone();
        out.pos.pop();
        out
    }

    /// Re-bases so the grading becomes `diag(1_p, -1_q)`.
    fn from_operators(gamma: &DMatrix<f64>, neg: Vec<DMatrix<f64>>, pos: Vec<DMatrix<f64>>) -> Self {
        let n = gamma.nrows();
        let basis = if is_signed_diagonal(gamma) {
            let mut cols: Vec<usize> = (0..n).filter(|&i| gamma[(i, i)] > 0.0).collect();
            cols.extend((0..n).filter(|&i| gamma[(i, i)] < 0.0));
            DMatrix::from_fn(n, n, |i, j| if cols[j] == i { 1.0 } else { 0.0 })
        } else {
            let eig = SymmetricEigen::new(gamma.clone());
            let mut order: Vec<usize> = (0..n).collect();
            order.sort_by(|&a, &b| eig.eigenvalues[b].total_cmp(&eig.eigenvalues[a]));
            DMatrix::from_fn(n, n, |i, j| eig.eigenvectors[(i, order[j])])
        };
        let p = (0..n).filter(|&j| (basis.column(j).transpose() * gamma * basis.column(j))[(0, 0)] > 0.0).count();
        let conj = |g: &DMatrix<f64>| basis.transpose() * g * &basis;
        let neg = neg.iter().map(|g| clean_odd(conj(g), p, false)).collect();
        let pos = pos.iter().map(|g| clean_odd(conj(g), p, true)).collect();
        Self { p, q: n - p, neg, pos }
    }

    fn restrict(&self, basis: &DMatrix<f64>) -> Self {
        let conj = |g: &DMatrix<f64>| basis.transpose() * g * basis;
        let gamma = conj(&self.grading());
        let gamma = (&gamma + gamma.transpose()) * 0.5;
        Self::from_operators(&gamma, self.neg.iter().map(conj).collect(), self.pos.iter().map(conj).collect())
    }
}

fn is_signed_diagonal(m: &DMatrix<f64>) -> bool {
    (0..m.nrows()).all(|i| {
        (0..m.ncols()).all(|j| if i == j { m[(i, j)].abs() == 1.0 } else { m[(i, j)] == 0.0 })
    })
}

/// Zeroes the even-to-even and odd-to-odd blocks and restores exact
/// (skew-)symmetry.
fn clean_odd(mut g: DMatrix<f64>, p: usize, symmetric: bool) -> DMatrix<f64> {
    let n = g.nrows();
    for i in 0..n {
        for j in 0..n {
            if (i < p) == (j < p) {
                g[(i, j)] = 0.0;
            }
        }
    }
    let t = g.transpose();
    if symmetric {
        (g + t) * 0.5
    } else {
        (g - t) * 0.5
    }
}

fn random_matrix(rng: &mut ChaCha8Rng, rows: usize, cols: usize) -> DMatrix<f64> {
    DMatrix::from_fn(rows, cols, |_, _| rng.gen_range(-1.0..1.0))
}

/// Orthogonal projection onto even intertwiners `W <- V`.
fn project_hom(v: &GradedRep, w: &GradedRep, mut x: DMatrix<f64>) -> DMatrix<f64> {
    for (gv, gw) in v.operators().iter().zip(w.operators().iter()) {
        x = (&x + gw * &x * gv.transpose()) * 0.5;
    }
    x
}

/// Splits a graded module into irreducible summands.
pub fn decompose(v: &GradedRep, rng: &mut ChaCha8Rng) -> Vec<GradedRep> {
    let mut out = Vec::new();
    decompose_into(v, rng, &mut out);
    out
}

fn decompose_into(v: &GradedRep, rng: &mut ChaCha8Rng, out: &mut Vec<GradedRep>) {
    let n = v.dim();
    if n <= 1 {
        out.push(v.clone());
        return;
    }
    let clusters = loop {
        let x = random_matrix(rng, n, n);
        let e = project_hom(v, v, &x + x.transpose());
        let eig = SymmetricEigen::new(e);
        let scale = eig.eigenvalues.amax().max(1e-300);
        if let Some(c) = cluster(eig.eigenvalues.as_slice(), 1e-9 * scale, 1e-6 * scale) {
            break c.into_iter().map(|idx| (idx, eig.eigenvectors.clone())).collect::<Vec<_>>();
        }
    };
    if clusters.len() == 1 {
        out.push(v.clone());
        return;
    }
    for (idx, vecs) in clusters {
        let basis = DMatrix::from_fn(n, idx.len(), |i, j| vecs[(i, idx[j])]);
        decompose_into(&v.restrict(&basis), rng, out);
    }
}

/// Dimension of the space of even intertwiners `v -> w`.
pub fn intertwiner_dim(v: &GradedRep, w: &GradedRep, rng: &mut ChaCha8Rng) -> usize {
    if v.signature() != w.signature() {
        return 0;
    }
    let samples = 4 * w.dim().div_ceil(v.dim().max(1)) + 1;
    let len = v.dim() * w.dim();
    let mut m = DMatrix::zeros(len, samples);
    for k in 0..samples {
        let x = project_hom(v, w, random_matrix(rng, w.dim(), v.dim()));
        m.column_mut(k).copy_from_slice(x.as_slice());
    }
    numerical_rank(&m, 1e-8)
}

/// Graded isomorphism test for irreducible modules.
pub fn equivalent(v: &GradedRep, w: &GradedRep, rng: &mut ChaCha8Rng) -> bool {
    if v.signature() != w.signature() || v.split() != w.split() {
        return false;
    }
    let x = random_matrix(rng, w.dim(), v.dim());
    project_hom(v, w, x.clone()).norm() > 1e-8 * x.norm()
}

fn cache() -> &'static Mutex<HashMap<(usize, usize), Vec<GradedRep>>> {
    static CACHE: OnceLock<Mutex<HashMap<(usize, usize), Vec<GradedRep>>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

fn seed(tag: u64, r: usize, s: usize) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(tag ^ ((r as u64) << 32 | s as u64))
}

/// Pairwise inequivalent irreducible graded `Cl_{r,s}`-modules, built by
/// repeated doubling from `R^{1|0}` and `R^{0|1}`.
///
/// Completeness is certified by `sum dim(V)^2 / dim End(V) = 2^{r+s+1}`,
/// the dimension of the ungraded algebra `Cl_{r,s+1}`.
pub fn build_irreducible_graded_reps(r: usize, s: usize) -> Result<Vec<GradedRep>, ReprError> {
    if r + s > MAX_GENERATORS {
        return Err(ReprError::TooLarge { r, s });
    }
    if let Some(hit) = cache().lock().expect("cache lock").get(&(r, s)) {
        return Ok(hit.clone());
    }
    let reps = if r == 0 && s == 0 {
        vec![GradedRep::even_line(), GradedRep::odd_line()]
    } else {
        let (prev, positive) = if s > 0 {
            (build_irreducible_graded_reps(r, s - 1)?, true)
        } else {
            (build_irreducible_graded_reps(r - 1, 0)?, false)
        };
        let mut rng = seed(0x6c69_6674, r, s);
        let expected = (1u64 << (r + s + 1)) as f64;
        let mut found: Vec<(GradedRep, usize)> = Vec::new();
        let mut count = 0.0;
        for w in &prev {
            let doubled = if positive { w.add_positive() } else { w.add_negative() };
            for part in decompose(&doubled, &mut rng) {
                if found.iter().any(|(f, _)| equivalent(f, &part, &mut rng)) {
                    continue;
                }
                let end = intertwiner_dim(&part, &part, &mut rng);
                count += (part.dim() * part.dim()) as f64 / end as f64;
                found.push((part, end));
            }
            if (count - expected).abs() < 1e-9 {
                break;
            }
        }
        if (count - expected).abs() > 1e-9 {
            return Err(ReprError::Incomplete { r, s, found: count, expected });
        }
        found.into_iter().map(|(v, _)| v).collect()
    };
    cache().lock().expect("cache lock").insert((r, s), reps.clone());
    Ok(reps)
}

/// Columns: irreducible graded `Cl_{r,s+1}`-modules restricted to
/// `Cl_{r,s}` (last positive generator forgotten), decomposed into the
/// irreducible graded `Cl_{r,s}`-modules indexing the rows.
pub fn restriction_matrix(r: usize, s: usize) -> Result<IntMatrix, ReprError> {
    let small = build_irreducible_graded_reps(r, s)?;
    let big = build_irreducible_graded_reps(r, s + 1)?;
    let mut rng = seed(0x7265_7374, r, s);
    let ends: Vec<usize> = small.iter().map(|v| intertwiner_dim(v, v, &mut rng)).collect();
    let mut rows = vec![vec![0i64; big.len()]; small.len()];
    for (j, w) in big.iter().enumerate() {
        let res = w.forget_last_positive();
        let mut covered = 0;
        for (i, v) in small.iter().enumerate() {
            let m = intertwiner_dim(v, &res, &mut rng) as f64 / ends[i] as f64;
            if (m - m.round()).abs() > 1e-9 {
                return Err(ReprError::FractionalMultiplicity(m));
            }
            rows[i][j] = m.round() as i64;
            covered += rows[i][j] as usize * v.dim();
        }
        if covered != w.dim() {
            return Err(ReprError::Shape(format!(
                "restriction of a {}-dimensional module accounts for only {covered} dimensions",
                w.dim()
            )));
        }
    }
    Ok(IntMatrix::from_rows_with_cols(&rows, big.len()))
}

/// Super-representation group `GR(Cl_{r,s}) / i* GR(Cl_{r,s+1})`.
pub fn sr_bruteforce(r: usize, s: usize) -> Result<AbelianGroup, ReprError> {
    Ok(cokernel(&restriction_matrix(r, s)?))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn base_cases() {
        let reps = build_irreducible_graded_reps(0, 0).unwrap();
        assert_eq!(reps.iter().map(|v| v.split()).collect::<Vec<_>>(), vec![(1, 0), (0, 1)]);

        let f = &build_irreducible_graded_reps(0, 1).unwrap();
        assert_eq!(f.len(), 1);
        assert_eq!(f[0].split(), (1, 1));
        assert_eq!(f[0].positive_generators()[0], DMatrix::from_row_slice(2, 2, &[0.0, 1.0, 1.0, 0.0]));

        let e = &build_irreducible_graded_reps(1, 0).unwrap();
        assert_eq!(e.len(), 1);
        assert_eq!(e[0].negative_generators()[0], DMatrix::from_row_slice(2, 2, &[0.0, -1.0, 1.0, 0.0]));
    }

    #[test]
    fn relations_hold() {
        for r in 0..4 {
            for s in 0..4 {
                for v in build_irreducible_graded_reps(r, s).unwrap() {
                    assert!(v.residual() < 1e-12, "({r},{s}) residual {}", v.residual());
                }
            }
        }
    }

    #[test]
    fn restriction_examples() {
        assert_eq!(restriction_matrix(0, 0).unwrap(), IntMatrix::from_rows(&[[1], [1]]));
        assert_eq!(restriction_matrix(0, 1).unwrap(), IntMatrix::from_rows(&[[2]]));
        assert!(sr_bruteforce(0, 3).unwrap().is_trivial());
    }

    #[test]
    fn small_sr_groups() {
        assert_eq!(sr_bruteforce(0, 0).unwrap(), AbelianGroup::integers());
        assert_eq!(sr_bruteforce(0, 2).unwrap(), AbelianGroup::cyclic(2));
        assert_eq!(sr_bruteforce(0, 4).unwrap(), AbelianGroup::integers());
    }

    #[test]
    fn reducible_module_splits() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let v = &build_irreducible_graded_reps(0, 1).unwrap()[0];
        let doubled = v.add_positive();
        let parts = decompose(&doubled, &mut rng);
        let total: usize = parts.iter().map(|p| p.dim()).sum();
        assert_eq!(total, 4);
        for p in &parts {
            assert!(intertwiner_dim(p, p, &mut rng) > 0);
        }
    }
}
