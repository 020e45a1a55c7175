//! The algebra generated by the symmetry operators and the grading, for
//! each of the ten classes, split into simple blocks numerically.

use tenfold::clifford::{clifford_structure, ct_to_clifford};
use tenfold::repr::{center_dim, ungraded_ct_algebra, wedderburn};
use tenfold::tables::TENFOLD_ORDER;

fn main() {
    for class in TENFOLD_ORDER {
        let a = ungraded_ct_algebra(class);
        let numeric = wedderburn(&a).unwrap();
        let assignment = ct_to_clifford(&class.spec()).unwrap();
        let symbolic = clifford_structure(assignment.ungraded);
        println!(
            "{:<5} dim {:>2}  center {}  {:<16} {} {}",
            class.name(),
            a.dim(),
            center_dim(&a),
            numeric.to_string(),
            assignment.ungraded,
            if numeric == symbolic { "ok" } else { "MISMATCH" },
        );
    }
}
