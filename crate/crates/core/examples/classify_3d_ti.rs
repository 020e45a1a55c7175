//! Strong and weak invariants of time-reversal-invariant insulators.
//!
//! With `T^2 = -1` on a cubic lattice the answer is one integer (the
//! number of filled bands) plus four Z_2 invariants: one strong, three weak.

use tenfold::kcalc::{classify, lattice_classify};
use tenfold::symmetry::{Sign, SymmetrySpec, TenfoldClass};

fn main() {
    let aii = SymmetrySpec { t_square: Some(Sign::Minus), ..Default::default() };
    for d in 0..=3 {
        let lattice = lattice_classify(&aii.clone().with_dims(0, d)).unwrap();
        let continuum = classify(&aii.clone().with_dims(d, 0)).unwrap();
        println!("AII  d={d}  lattice: {lattice:<14} continuum: {continuum}");
    }

    // the same spec through the text format the binary reads
    let text = "T = -1\nlattice_dims = 3\n";
    println!("\n{text}=> {}", tenfold::cli::classify_text(text, tenfold::cli::Format::Machine).unwrap());

    println!("\nlattice d=3 for every class:");
    for class in TenfoldClass::ALL {
        let g = lattice_classify(&class.spec().with_dims(0, 3)).unwrap();
        println!("  {:<5} {g}", class.name());
    }
}
