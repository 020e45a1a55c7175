//! Gradings on the rank-two chiral circle model.
//!
//! A family is a closed loop of 2x2 self-adjoint unitaries anticommuting
//! with `sigma_3`, i.e. `cos f sigma_1 + sin f sigma_2`, sampled at
//! `theta_j = 2 pi j / M`. Its homotopy invariant is the winding of `f`.

use std::f64::consts::{FRAC_PI_2, PI, TAU};
use std::fmt;
use std::str::FromStr;

use nalgebra::{Complex, DMatrix, Matrix2, SymmetricEigen};
use thiserror::Error;

use crate::symmetry::Sign;

pub type C64 = Complex<f64>;

/// Default grid size.
pub const DEFAULT_SAMPLES: usize = 256;
/// Tolerance for `Gamma^2 = 1`, oddness and path checks.
pub const SAMPLE_TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum HomotopyError {
    #[error("gapless: smallest |eigenvalue| {min:e} is below the declared gap {gap:e}")]
    Gapless { min: f64, gap: f64 },
    #[error("matrix is not hermitian (deviation {0:e})")]
    NotHermitian(f64),
    #[error("phase step {step:.4} at sample {index} is at least pi/2; refine the grid")]
    StepTooLarge { index: usize, step: f64 },
    #[error("sample {index} is not a sigma_3-odd grading (residual {residual:e})")]
    InvalidSample { index: usize, residual: f64 },
    #[error("families are sampled on different grids ({0} vs {1})")]
    GridMismatch(usize, usize),
    #[error("family has no samples")]
    Empty,
    #[error("operator is not an involution (residual {0:e})")]
    NotInvolution(f64),
    #[error("involution does not anticommute with the grading (residual {0:e})")]
    NotOdd(f64),
    #[error("involution does not graded-commute with symmetry operator {0}")]
    NotCompatible(usize),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}

fn c(re: f64, im: f64) -> C64 {
    Complex::new(re, im)
}

pub fn sigma1() -> Matrix2<C64> {
    Matrix2::new(c(0., 0.), c(1., 0.), c(1., 0.), c(0., 0.))
}

pub fn sigma2() -> Matrix2<C64> {
    Matrix2::new(c(0., 0.), c(0., -1.), c(0., 1.), c(0., 0.))
}

pub fn sigma3() -> Matrix2<C64> {
    Matrix2::new(c(1., 0.), c(0., 0.), c(0., 0.), c(-1., 0.))
}

/// `cos f sigma_1 + sin f sigma_2`.
pub fn phase_grading(f: f64) -> Matrix2<C64> {
    sigma1() * c(f.cos(), 0.) + sigma2() * c(f.sin(), 0.)
}

fn grading_residual(m: &Matrix2<C64>) -> f64 {
    let sq = (m * m - Matrix2::identity()).norm();
    let s3 = sigma3();
    let odd = (m * s3 + s3 * m).norm();
    let herm = (m - m.adjoint()).norm();
    sq.max(odd).max(herm)
}

#[derive(Clone, Debug, PartialEq)]
pub struct GradingFamily {
    samples: Vec<Matrix2<C64>>,
}

impl GradingFamily {
    pub fn new(samples: Vec<Matrix2<C64>>) -> Result<Self, HomotopyError> {
        if samples.is_empty() {
            return Err(HomotopyError::Empty);
        }
        for (index, m) in samples.iter().enumerate() {
            let residual = grading_residual(m);
            if residual >= SAMPLE_TOL {
                return Err(HomotopyError::InvalidSample { index, residual });
            }
        }
        Ok(Self { samples })
    }

    /// Samples `f(theta_j)` on the `m`-point grid.
    pub fn from_phase_fn(m: usize, f: impl Fn(f64) -> f64) -> Self {
        let samples = (0..m).map(|j| phase_grading(f(TAU * j as f64 / m as f64))).collect();
        Self { samples }
    }

    pub fn from_phases(phases: &[f64]) -> Result<Self, HomotopyError> {
        Self::new(phases.iter().map(|&f| phase_grading(f)).collect())
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    pub fn samples(&self) -> &[Matrix2<C64>] {
        &self.samples
    }

    pub fn theta(&self, j: usize) -> f64 {
        TAU * j as f64 / self.samples.len() as f64
    }

    /// `f(theta_j)` on the principal branch.
    pub fn phases(&self) -> Result<Vec<f64>, HomotopyError> {
        self.samples
            .iter()
            .enumerate()
            .map(|(index, m)| {
                let z = m[(1, 0)];
                if z.re.abs() < SAMPLE_TOL && z.im.abs() < SAMPLE_TOL {
                    Err(HomotopyError::InvalidSample { index, residual: 1.0 })
                } else {
                    Ok(z.im.atan2(z.re))
                }
            })
            .collect()
    }

    /// Applies `map` to every sample and projects the result back onto the
    /// odd gradings (odd part, then spectral flattening).
    pub fn reflattened(&self, mut map: impl FnMut(usize, &Matrix2<C64>) -> Matrix2<C64>) -> Result<Self, HomotopyError> {
        let samples = self
            .samples
            .iter()
            .enumerate()
            .map(|(j, m)| reflatten(&map(j, m)))
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(samples)
    }
}

impl fmt::Display for GradingFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for m in &self.samples {
            let e: Vec<String> = [m[(0, 0)], m[(0, 1)], m[(1, 0)], m[(1, 1)]]
                .iter()
                .flat_map(|z| [z.re, z.im])
                .map(|x| format!("{x:.17e}"))
                .collect();
            writeln!(f, "{}", e.join(" "))?;
        }
        Ok(())
    }
}

/// One sample per line: `f <phase>` or eight reals (row-major 2x2,
/// re/im interleaved). Blank lines and `#` comments are skipped.
impl FromStr for GradingFamily {
    type Err = HomotopyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut samples = Vec::new();
        for (k, raw) in s.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let perr = |message: String| HomotopyError::Parse { line: k + 1, message };
            let toks: Vec<&str> = line.split_whitespace().collect();
            let num = |t: &str| t.parse::<f64>().map_err(|e| perr(format!("bad number {t:?}: {e}")));
            match toks.as_slice() {
                ["f", v] => samples.push(phase_grading(num(v)?)),
                t if t.len() == 8 => {
                    let x = t.iter().map(|v| num(v)).collect::<Result<Vec<_>, _>>()?;
                    samples.push(Matrix2::new(c(x[0], x[1]), c(x[2], x[3]), c(x[4], x[5]), c(x[6], x[7])));
                }
                _ => return Err(perr("expected `f <value>` or 8 reals".into())),
            }
        }
        if samples.is_empty() {
            return Err(HomotopyError::Parse { line: 0, message: "no samples".into() });
        }
        Self::new(samples)
    }
}

/// Winding of `f` around the loop.
pub fn winding(g: &GradingFamily) -> Result<i64, HomotopyError> {
    let phases = g.phases()?;
    let n = phases.len();
    let mut total = 0.0;
    for j in 0..n {
        let step = (phases[(j + 1) % n] - phases[j] + PI).rem_euclid(TAU) - PI;
        if step.abs() >= FRAC_PI_2 {
            return Err(HomotopyError::StepTooLarge { index: j, step });
        }
        total += step;
    }
    Ok((total / TAU).round() as i64)
}

/// Class of the triple `(W, g1, g2)`.
pub fn difference_class(g1: &GradingFamily, g2: &GradingFamily) -> Result<i64, HomotopyError> {
    if g1.len() != g2.len() {
        return Err(HomotopyError::GridMismatch(g1.len(), g2.len()));
    }
    Ok(winding(g2)? - winding(g1)?)
}

/// Gauge transformation `Gamma(theta) -> U Gamma U*`, `U = exp(-i k theta
/// sigma_3 / 2)`; it shifts the winding by `k`. `k = 2` is `exp(-i theta sigma_3)`.
pub fn conjugate_family(g: &GradingFamily, k: i64) -> GradingFamily {
    let samples = g
        .samples
        .iter()
        .enumerate()
        .map(|(j, m)| {
            let half = k as f64 * g.theta(j) / 2.0;
            let u = Matrix2::new(C64::from_polar(1.0, -half), c(0., 0.), c(0., 0.), C64::from_polar(1.0, half));
            u * m * u.adjoint()
        })
        .collect();
    GradingFamily { samples }
}

fn block_diag(a: &Matrix2<C64>, b: &Matrix2<C64>) -> DMatrix<C64> {
    let mut m = DMatrix::zeros(4, 4);
    m.view_mut((0, 0), (2, 2)).copy_from(a);
    m.view_mut((2, 2), (2, 2)).copy_from(b);
    m
}

/// Number of points on the rotation path `[0, pi/2]`.
const SWAP_STEPS: usize = 32;

/// Checks the rotation path `R(t)(G1 + G2)R(t)^T`, `t in [0, pi/2]`, from
/// `G1 + G2` to `G2 + G1` at every grid point.
pub fn direct_sum_swap_check(g1: &GradingFamily, g2: &GradingFamily) -> Result<bool, HomotopyError> {
    if g1.len() != g2.len() {
        return Err(HomotopyError::GridMismatch(g1.len(), g2.len()));
    }
    let s3 = block_diag(&sigma3(), &sigma3());
    let id = DMatrix::<C64>::identity(4, 4);
    let mut worst: f64 = 0.0;
    for (a, b) in g1.samples.iter().zip(&g2.samples) {
        let start = block_diag(a, b);
        let end = block_diag(b, a);
        for step in 0..=SWAP_STEPS {
            let t = FRAC_PI_2 * step as f64 / SWAP_STEPS as f64;
            let (sn, cs) = t.sin_cos();
            let mut r = DMatrix::<C64>::zeros(4, 4);
            for i in 0..2 {
                r[(i, i)] = c(cs, 0.);
                r[(i + 2, i + 2)] = c(cs, 0.);
                r[(i, i + 2)] = c(-sn, 0.);
                r[(i + 2, i)] = c(sn, 0.);
            }
            let m = &r * &start * r.transpose();
            worst = worst.max((&m * &m - &id).norm()).max((&m * &s3 + &s3 * &m).norm());
            if step == 0 {
                worst = worst.max((&m - &start).norm());
            }
            if step == SWAP_STEPS {
                worst = worst.max((&m - &end).norm());
            }
        }
    }
    Ok(worst < SAMPLE_TOL)
}

/// `Gamma(t) = cos t gamma + sin t inv` on `steps + 1` points of `[0, pi]`.
///
/// `symmetries` pairs each operator with its degree; the involution must
/// satisfy `inv x = c(x) x inv`.
pub fn trivializing_path(
    gamma: &DMatrix<C64>,
    inv: &DMatrix<C64>,
    symmetries: &[(DMatrix<C64>, Sign)],
    steps: usize,
) -> Result<Vec<DMatrix<C64>>, HomotopyError> {
    let n = gamma.nrows();
    let id = DMatrix::<C64>::identity(n, n);
    let inv_res = (inv * inv - &id).norm().max((inv - inv.adjoint()).norm());
    if inv_res >= SAMPLE_TOL {
        return Err(HomotopyError::NotInvolution(inv_res));
    }
    let g_res = (gamma * gamma - &id).norm();
    if g_res >= SAMPLE_TOL {
        return Err(HomotopyError::NotInvolution(g_res));
    }
    let odd = (gamma * inv + inv * gamma).norm();
    if odd >= SAMPLE_TOL {
        return Err(HomotopyError::NotOdd(odd));
    }
    for (i, (x, deg)) in symmetries.iter().enumerate() {
        let sgn = c(f64::from(deg.to_i8()), 0.);
        if (inv * x - x * inv * sgn).norm() >= SAMPLE_TOL {
            return Err(HomotopyError::NotCompatible(i));
        }
    }
    let steps = steps.max(1);
    Ok((0..=steps)
        .map(|k| {
            let (sn, cs) = (PI * k as f64 / steps as f64).sin_cos();
            gamma * c(cs, 0.) + inv * c(sn, 0.)
        })
        .collect())
}

/// Hermitian matrix with a declared spectral gap around zero.
#[derive(Clone, Debug)]
pub struct GappedMatrix {
    h: DMatrix<C64>,
    gap: f64,
}

impl GappedMatrix {
    pub fn new(h: DMatrix<C64>, gap: f64) -> Result<Self, HomotopyError> {
        if h.nrows() != h.ncols() {
            return Err(HomotopyError::NotHermitian(f64::INFINITY));
        }
        let dev = (&h - h.adjoint()).norm();
        if dev > 1e-12 * h.norm().max(1.0) {
            return Err(HomotopyError::NotHermitian(dev));
        }
        Ok(Self { h, gap })
    }

    pub fn dim(&self) -> usize {
        self.h.nrows()
    }

    pub fn matrix(&self) -> &DMatrix<C64> {
        &self.h
    }
}

/// `sgn(H)` from the eigendecomposition.
pub fn spectral_flatten(h: &GappedMatrix) -> Result<DMatrix<C64>, HomotopyError> {
    let eig = SymmetricEigen::new(h.h.clone());
    let min = eig.eigenvalues.iter().fold(f64::INFINITY, |m, x| m.min(x.abs()));
    if min < h.gap {
        return Err(HomotopyError::Gapless { min, gap: h.gap });
    }
    let signs = eig.eigenvalues.map(|x| c(x.signum(), 0.));
    let v = &eig.eigenvectors;
    Ok(v * DMatrix::from_diagonal(&signs) * v.adjoint())
}

/// Odd part followed by flattening, for a perturbed 2x2 sample.
pub fn reflatten(m: &Matrix2<C64>) -> Result<Matrix2<C64>, HomotopyError> {
    let s3 = sigma3();
    let herm = (m + m.adjoint()) * c(0.5, 0.);
    let odd = (herm - s3 * herm * s3) * c(0.5, 0.);
    let g = GappedMatrix::new(DMatrix::from_column_slice(2, 2, odd.as_slice()), SAMPLE_TOL)?;
    let flat = spectral_flatten(&g)?;
    Ok(Matrix2::from_column_slice(flat.as_slice()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gamma0() -> GradingFamily {
        GradingFamily::from_phase_fn(DEFAULT_SAMPLES, |_| 0.0)
    }

    fn gamma1() -> GradingFamily {
        GradingFamily::from_phase_fn(DEFAULT_SAMPLES, |t| 2.0 * t)
    }

    #[test]
    fn basic_windings() {
        assert_eq!(winding(&gamma0()).unwrap(), 0);
        assert_eq!(winding(&gamma1()).unwrap(), 2);
        assert_eq!(winding(&GradingFamily::from_phase_fn(64, |t| -t)).unwrap(), -1);
        assert_eq!(difference_class(&gamma0(), &gamma1()).unwrap(), 2);
        assert_eq!(difference_class(&gamma0(), &gamma0()).unwrap(), 0);
    }

    #[test]
    fn coarse_grid_is_rejected() {
        let g = GradingFamily::from_phase_fn(8, |t| 3.0 * t);
        assert!(matches!(winding(&g), Err(HomotopyError::StepTooLarge { .. })));
    }

    #[test]
    fn gauge_maps_gamma0_to_gamma1() {
        let phi = conjugate_family(&gamma0(), 2);
        let worst = phi.samples().iter().zip(gamma1().samples()).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max);
        assert!(worst < 1e-9);
        assert_eq!(conjugate_family(&gamma1(), 0), gamma1());
    }

    #[test]
    fn swap_path() {
        assert!(direct_sum_swap_check(&gamma0(), &gamma0()).unwrap());
        assert!(direct_sum_swap_check(&gamma0(), &gamma1()).unwrap());
    }

    #[test]
    fn flattening() {
        let h = DMatrix::from_diagonal(&nalgebra::DVector::from_vec(vec![c(2., 0.), c(-1., 0.)]));
        let f = spectral_flatten(&GappedMatrix::new(h, 0.5).unwrap()).unwrap();
        assert!((f[(0, 0)].re - 1.0).abs() < 1e-12 && (f[(1, 1)].re + 1.0).abs() < 1e-12);
        let s1 = DMatrix::from_column_slice(2, 2, (sigma1() * c(3., 0.)).as_slice());
        let f = spectral_flatten(&GappedMatrix::new(s1, 0.5).unwrap()).unwrap();
        assert!((f - DMatrix::from_column_slice(2, 2, sigma1().as_slice())).norm() < 1e-12);
        let z = DMatrix::from_diagonal(&nalgebra::DVector::from_vec(vec![c(1e-3, 0.), c(-1., 0.)]));
        assert!(matches!(spectral_flatten(&GappedMatrix::new(z, 0.1).unwrap()), Err(HomotopyError::Gapless { .. })));
    }

    #[test]
    fn trivializing() {
        // sigma_3 blocks on C^2 + C^2 with the block swap
        let mut gamma = DMatrix::<C64>::zeros(4, 4);
        let mut swap = DMatrix::<C64>::zeros(4, 4);
        for i in 0..2 {
            gamma[(i, i)] = c(1., 0.);
            gamma[(i + 2, i + 2)] = c(-1., 0.);
            swap[(i, i + 2)] = c(1., 0.);
            swap[(i + 2, i)] = c(1., 0.);
        }
        let path = trivializing_path(&gamma, &swap, &[], 16).unwrap();
        let id = DMatrix::<C64>::identity(4, 4);
        assert!(path.iter().all(|m| (m * m - &id).norm() < 1e-9));
        assert!((path[16].clone() + &gamma).norm() < 1e-12);
        let mut bad = swap.clone();
        bad[(0, 2)] = c(-1., 0.);
        assert!(matches!(trivializing_path(&gamma, &bad, &[], 4), Err(HomotopyError::NotInvolution(_))));
        assert!(matches!(trivializing_path(&gamma, &gamma, &[], 4), Err(HomotopyError::NotOdd(_))));
    }

    #[test]
    fn family_file_round_trip() {
        let g = gamma1();
        let back: GradingFamily = g.to_string().parse().unwrap();
        assert_eq!(winding(&back).unwrap(), 2);
        let text = "# comment\nf 0\n\nf 0.1\nf 0.2\nf 0.1\n";
        assert_eq!(winding(&text.parse().unwrap()).unwrap(), 0);
        assert!(matches!("f x".parse::<GradingFamily>(), Err(HomotopyError::Parse { line: 1, .. })));
        let not_odd = "1 0 0 0 0 0 -1 0\n";
        assert!(matches!(not_odd.parse::<GradingFamily>(), Err(HomotopyError::InvalidSample { index: 0, .. })));
    }
}
