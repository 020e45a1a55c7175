//! Plain-text renderings of the classification tables. Output is a pure
//! function of the inputs, so it is byte-stable.

use crate::clifford::{clifford_structure, ct_to_clifford, CliffordClass};
use crate::kcalc::{k_point, periodic_table};
use crate::symmetry::{Series, TenfoldClass};

/// Largest `d` accepted by [`periodic`].
pub const MAX_DMAX: usize = 12;

/// Rows ordered by graded Morita class `Cl_{k,0}`, `k = 0..7`, then the
/// two complex classes.
pub const TENFOLD_ORDER: [TenfoldClass; 10] = [
    TenfoldClass::AI,
    TenfoldClass::CI,
    TenfoldClass::C,
    TenfoldClass::CII,
    TenfoldClass::AII,
    TenfoldClass::DIII,
    TenfoldClass::D,
    TenfoldClass::BDI,
    TenfoldClass::A,
    TenfoldClass::AIII,
];

fn render(header: &[String], rows: &[Vec<String>]) -> String {
    let ncol = header.len();
    let width: Vec<usize> = (0..ncol)
        .map(|j| rows.iter().map(|r| r[j].chars().count()).chain([header[j].chars().count()]).max().unwrap_or(0))
        .collect();
    let line = |cells: &[String]| {
        let s: Vec<String> = cells.iter().zip(&width).map(|(c, w)| format!("{c:<w$}")).collect();
        s.join("  ").trim_end().to_string()
    };
    let mut out = line(header);
    out.push('\n');
    out.push_str(&"-".repeat(width.iter().sum::<usize>() + 2 * (ncol - 1)));
    out.push('\n');
    for r in rows {
        out.push_str(&line(r));
        out.push('\n');
    }
    out
}

fn generators(class: TenfoldClass) -> &'static str {
    match class.symmetries() {
        (Some(_), Some(_), _) => "C,T",
        (Some(_), None, _) => "T",
        (None, Some(_), _) => "C",
        (None, None, true) => "S",
        (None, None, false) => "-",
    }
}

fn squares(class: TenfoldClass) -> [String; 2] {
    let (t, c, s) = class.symmetries();
    if s {
        return ["S^2=+1".into(), String::new()];
    }
    let show = |x: Option<crate::symmetry::Sign>| x.map(|v| v.to_string()).unwrap_or_default();
    [show(c), show(t)]
}

fn strs(v: &[&str]) -> Vec<String> {
    v.iter().map(|s| s.to_string()).collect()
}

/// Generators, squares, associated algebra, ungraded Clifford algebra and
/// graded Morita class for each class.
pub fn tenfold() -> String {
    let header = strs(&["class", "generators", "C^2", "T^2", "associated algebra", "ungraded", "graded Morita"]);
    let rows: Vec<Vec<String>> = TENFOLD_ORDER
        .iter()
        .map(|&class| {
            let a = ct_to_clifford(&class.spec()).expect("standard classes are valid");
            let [c2, t2] = squares(class);
            vec![
                class.to_string(),
                generators(class).into(),
                c2,
                t2,
                clifford_structure(a.ungraded).to_string(),
                a.ungraded.to_string(),
                a.graded_morita.to_string(),
            ]
        })
        .collect();
    render(&header, &rows)
}

fn model_algebra(class: TenfoldClass) -> CliffordClass {
    match class.series() {
        Series::Real => CliffordClass::real(0, class.degree()),
        Series::Complex => CliffordClass::complex(class.degree()),
    }
}

/// Zero-dimensional classification.
pub fn zero_d() -> String {
    let header = strs(&["n", "class", "generators", "C^2", "T^2", "algebra", "K_n"]);
    let rows: Vec<Vec<String>> = TenfoldClass::ALL
        .iter()
        .map(|&class| {
            let [c2, t2] = squares(class);
            vec![
                class.degree().to_string(),
                class.to_string(),
                generators(class).into(),
                c2,
                t2,
                model_algebra(class).to_string(),
                k_point(class.series()).get(class.degree() as i64).to_string(),
            ]
        })
        .collect();
    render(&header, &rows)
}

/// `K_{n-d}` for `d = 0..=d_max`; `d_max` is clamped to [`MAX_DMAX`].
pub fn periodic(d_max: usize) -> String {
    let d_max = d_max.min(MAX_DMAX);
    let table = periodic_table(d_max);
    let mut header = strs(&["n", "class", "C^2", "T^2"]);
    header.extend((0..=d_max).map(|d| format!("d={d}")));
    let rows: Vec<Vec<String>> = table
        .rows
        .iter()
        .map(|(class, groups)| {
            let [c2, t2] = squares(*class);
            let mut r = vec![class.degree().to_string(), class.to_string(), c2, t2];
            r.extend(groups.iter().map(|g| g.to_string()));
            r
        })
        .collect();
    render(&header, &rows)
}
