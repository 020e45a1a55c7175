//! Command implementations behind the `tenfold` binary. Each command returns
//! its output text or a [`CliError`] carrying the process exit code.

use std::collections::HashSet;
use std::fmt;
use std::path::Path;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::clifford::{clifford_structure, ct_to_clifford};
use crate::homotopy::{
    conjugate_family, difference_class, direct_sum_swap_check, trivializing_path, winding, GradingFamily,
    HomotopyError, C64, DEFAULT_SAMPLES,
};
use crate::kcalc::{k_point, lattice_classify, KSequence};
use crate::repr::{
    build_irreducible_graded_reps, packer_raeburn_suite, sr_bruteforce, ungraded_ct_algebra, wedderburn,
};
use crate::symmetry::{Series, Sign, SymmetrySpec};
use crate::tables;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Parse(String),
    #[error("inconsistent spec: {0}")]
    Inconsistent(String),
    #[error("{0}")]
    StepTooLarge(String),
    #[error("{0}")]
    InvalidSample(String),
    #[error("{0}")]
    Failed(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Failed(_) => 1,
            CliError::Parse(_) => 2,
            CliError::Inconsistent(_) => 3,
            CliError::StepTooLarge(_) => 4,
            CliError::InvalidSample(_) => 5,
        }
    }
}

const RESERVED_KEYS: [&str; 4] = ["inversion", "point_group", "I", "P"];

/// Parses the `key = value` spec format. `#` starts a comment.
pub fn parse_spec(text: &str) -> Result<SymmetrySpec, CliError> {
    let mut spec = SymmetrySpec::default();
    let mut seen = HashSet::new();
    for (k, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let perr = |m: String| CliError::Parse(format!("line {}: {m}", k + 1));
        let (key, value) = line.split_once('=').ok_or_else(|| perr("expected `key = value`".into()))?;
        let (key, value) = (key.trim(), value.trim());
        if RESERVED_KEYS.contains(&key) {
            return Err(CliError::Inconsistent(format!(
                "`{key}` is reserved: inversion or point-group symmetries act on the lattice nontrivially, \
                 which the dimension-shift formula does not cover"
            )));
        }
        if !seen.insert(key.to_string()) {
            return Err(perr(format!("duplicate key `{key}`")));
        }
        let square = |v: &str| match v {
            "none" => Ok(None),
            "+1" | "1" => Ok(Some(Sign::Plus)),
            "-1" => Ok(Some(Sign::Minus)),
            _ => Err(perr(format!("`{key}` must be none, +1 or -1"))),
        };
        let count = |v: &str| v.parse::<usize>().map_err(|_| perr(format!("`{key}` must be a non-negative integer")));
        match key {
            "T" => spec.t_square = square(value)?,
            "C" => spec.c_square = square(value)?,
            "S" => {
                spec.s_present = match value {
                    "none" => false,
                    "+1" | "1" => true,
                    _ => return Err(perr("`S` must be none or +1".into())),
                }
            }
            "continuous_dims" => spec.continuous_dims = count(value)?,
            "lattice_dims" => spec.lattice_dims = count(value)?,
            "base_k" => {
                spec.base_k = Some(value.parse::<KSequence>().map_err(|e| perr(format!("base_k: {e}")))?)
            }
            _ => return Err(perr(format!("unknown key `{key}`"))),
        }
    }
    spec.validate().map_err(|e| CliError::Inconsistent(e.to_string()))?;
    Ok(spec)
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Human,
    Machine,
}

pub fn classify_text(text: &str, format: Format) -> Result<String, CliError> {
    let spec = parse_spec(text)?;
    let g = lattice_classify(&spec).map_err(|e| CliError::Inconsistent(e.to_string()))?;
    Ok(match format {
        Format::Human => g.to_string(),
        Format::Machine => g.to_machine_string(),
    })
}

pub fn cmd_classify(path: &Path, format: Format) -> Result<String, CliError> {
    classify_text(&read(path)?, format)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Which {
    Tenfold,
    ZeroD,
    Periodic,
}

pub fn cmd_table(which: Which, d_max: usize) -> Result<String, CliError> {
    if d_max > tables::MAX_DMAX {
        return Err(CliError::Parse(format!("--dmax must be at most {}", tables::MAX_DMAX)));
    }
    Ok(match which {
        Which::Tenfold => tables::tenfold(),
        Which::ZeroD => tables::zero_d(),
        Which::Periodic => tables::periodic(d_max),
    })
}

fn homotopy_error(e: HomotopyError) -> CliError {
    match e {
        HomotopyError::StepTooLarge { .. } => CliError::StepTooLarge(e.to_string()),
        HomotopyError::Parse { .. } => CliError::Parse(e.to_string()),
        _ => CliError::InvalidSample(e.to_string()),
    }
}

pub fn winding_text(text: &str) -> Result<i64, CliError> {
    let family: GradingFamily = text.parse().map_err(homotopy_error)?;
    winding(&family).map_err(homotopy_error)
}

pub fn cmd_winding(path: &Path) -> Result<i64, CliError> {
    winding_text(&read(path)?)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    Repr,
    Wedderburn,
    PackerRaeburn,
    Homotopy,
    All,
}

#[derive(Clone, Debug)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, Default)]
pub struct VerifyReport {
    pub checks: Vec<Check>,
}

impl VerifyReport {
    fn push(&mut self, name: impl Into<String>, passed: bool, detail: impl Into<String>) {
        self.checks.push(Check { name: name.into(), passed, detail: detail.into() });
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn count_passed(&self) -> usize {
        self.checks.iter().filter(|c| c.passed).count()
    }
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            writeln!(f, "[{}] {}: {}", if c.passed { "pass" } else { "FAIL" }, c.name, c.detail)?;
        }
        write!(f, "{}/{} checks passed", self.count_passed(), self.checks.len())
    }
}

fn verify_repr(report: &mut VerifyReport) {
    let point = k_point(Series::Real);
    for n in 0..8 {
        let expected = point.get(n as i64);
        let residual = build_irreducible_graded_reps(0, n + 1)
            .map(|reps| reps.iter().map(|r| r.residual()).fold(0.0, f64::max))
            .unwrap_or(f64::INFINITY);
        match sr_bruteforce(0, n) {
            Ok(g) => report.push(
                format!("SR(Cl(0,{n}))"),
                &g == expected && residual < 1e-12,
                format!("{g} (expected {expected}), residual {residual:.1e}"),
            ),
            Err(e) => report.push(format!("SR(Cl(0,{n}))"), false, e.to_string()),
        }
    }
}

fn verify_wedderburn(report: &mut VerifyReport) {
    for class in tables::TENFOLD_ORDER {
        let expected = clifford_structure(ct_to_clifford(&class.spec()).expect("valid").ungraded);
        let a = ungraded_ct_algebra(class);
        match wedderburn(&a) {
            Ok(s) => report.push(
                format!("{class} associated algebra"),
                s == expected,
                format!("{s} (expected {expected}), dim {}", a.dim()),
            ),
            Err(e) => report.push(format!("{class} associated algebra"), false, e.to_string()),
        }
    }
}

fn verify_packer_raeburn(report: &mut VerifyReport) {
    for case in packer_raeburn_suite() {
        match case.verify() {
            Ok(r) => report.push(
                case.name,
                r.passed(),
                format!(
                    "dim {}/{}, center {}/{}, {} vs {}",
                    r.full_dim, r.iterated_dim, r.full_center_dim, r.iterated_center_dim, r.full_structure,
                    r.iterated_structure
                ),
            ),
            Err(e) => report.push(case.name, false, e.to_string()),
        }
    }
}

/// Random smooth loop `f(theta) = w theta + small Fourier terms`.
pub fn random_family(rng: &mut ChaCha8Rng, samples: usize) -> GradingFamily {
    let w = rng.gen_range(-4i64..=4) as f64;
    let coeffs: Vec<(f64, f64)> = (0..3).map(|_| (rng.gen_range(-0.3..0.3), rng.gen_range(-0.3..0.3))).collect();
    let offset = rng.gen_range(0.0..std::f64::consts::TAU);
    GradingFamily::from_phase_fn(samples, move |t| {
        let wiggle: f64 =
            coeffs.iter().enumerate().map(|(k, (a, b))| a * ((k + 1) as f64 * t).cos() + b * ((k + 1) as f64 * t).sin()).sum();
        offset + w * t + wiggle
    })
}

fn verify_homotopy(report: &mut VerifyReport) {
    let g0 = GradingFamily::from_phase_fn(DEFAULT_SAMPLES, |_| 0.0);
    let g1 = GradingFamily::from_phase_fn(DEFAULT_SAMPLES, |t| 2.0 * t);
    let w = (winding(&g0), winding(&g1), difference_class(&g0, &g1));
    report.push("model windings", w == (Ok(0), Ok(2), Ok(2)), format!("{w:?}"));

    let phi = conjugate_family(&g0, 2);
    let dev = phi.samples().iter().zip(g1.samples()).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max);
    report.push("gauge map", dev < 1e-9, format!("max deviation {dev:.1e}"));

    let mut rng = ChaCha8Rng::seed_from_u64(0x686f_6d6f);
    let mut chain = true;
    let mut swap = true;
    for _ in 0..100 {
        let f: Vec<GradingFamily> = (0..3).map(|_| random_family(&mut rng, DEFAULT_SAMPLES)).collect();
        let dc = |a: usize, b: usize| difference_class(&f[a], &f[b]).ok();
        chain &= dc(0, 1).zip(dc(1, 2)).map(|(x, y)| x + y) == dc(0, 2) && dc(0, 1).map(|x| -x) == dc(1, 0);
        swap &= direct_sum_swap_check(&f[0], &f[1]).unwrap_or(false);
    }
    report.push("chain rule and antisymmetry", chain, "100 random triples");
    report.push("swap homotopy", swap, "100 random pairs");

    let perturbed = g1.reflattened(|_, m| {
        let e = nalgebra::Matrix2::from_fn(|_, _| C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)));
        m + e * C64::new(5e-3 / e.norm(), 0.0)
    });
    let pw = perturbed.as_ref().map_err(|e| e.to_string()).and_then(|p| winding(p).map_err(|e| e.to_string()));
    report.push("perturbation invariance", pw == Ok(2), format!("{pw:?}"));

    let mut gamma = nalgebra::DMatrix::<C64>::zeros(4, 4);
    let mut inv = nalgebra::DMatrix::<C64>::zeros(4, 4);
    for i in 0..2 {
        gamma[(i, i)] = C64::new(1.0, 0.0);
        gamma[(i + 2, i + 2)] = C64::new(-1.0, 0.0);
        inv[(i, i + 2)] = C64::new(1.0, 0.0);
        inv[(i + 2, i)] = C64::new(1.0, 0.0);
    }
    let ok = trivializing_path(&gamma, &inv, &[], 64).is_ok();
    report.push("trivializing path", ok, "Gamma to -Gamma through unit squares");
}

pub fn cmd_verify(suite: Suite) -> VerifyReport {
    let mut report = VerifyReport::default();
    let all = suite == Suite::All;
    if all || suite == Suite::Repr {
        verify_repr(&mut report);
    }
    if all || suite == Suite::Wedderburn {
        verify_wedderburn(&mut report);
    }
    if all || suite == Suite::PackerRaeburn {
        verify_packer_raeburn(&mut report);
    }
    if all || suite == Suite::Homotopy {
        verify_homotopy(&mut report);
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spec_examples() {
        assert_eq!(classify_text("T = -1\nlattice_dims = 3\n", Format::Human).unwrap(), "Z + Z_2^4");
        assert_eq!(classify_text("", Format::Human).unwrap(), "Z");
        assert_eq!(classify_text("S = +1\ncontinuous_dims = 1", Format::Human).unwrap(), "Z");
        assert_eq!(classify_text("T = -1 # AII\n", Format::Machine).unwrap(), "free_rank=1 torsion=");
    }

    #[test]
    fn spec_errors() {
        let code = |t: &str| classify_text(t, Format::Human).unwrap_err().exit_code();
        assert_eq!(code("T = 2"), 2);
        assert_eq!(code("T = 1\nT = 1"), 2);
        assert_eq!(code("colour = red"), 2);
        assert_eq!(code("T = +1\nC = -1\nS = +1"), 3);
        assert_eq!(code("inversion = yes"), 3);
        assert_eq!(code("T = +1\nbase_k = [Z,0]"), 3);
    }

    #[test]
    fn winding_codes() {
        assert_eq!(winding_text("f 0\nf 0\nf 0\nf 0\n").unwrap(), 0);
        let coarse: String = (0..8).map(|j| format!("f {}\n", 3.0 * std::f64::consts::TAU * j as f64 / 8.0)).collect();
        assert_eq!(winding_text(&coarse).unwrap_err().exit_code(), 4);
        assert_eq!(winding_text("1 0 0 0 0 0 1 0\n").unwrap_err().exit_code(), 5);
        assert_eq!(winding_text("hello\n").unwrap_err().exit_code(), 2);
    }
}
