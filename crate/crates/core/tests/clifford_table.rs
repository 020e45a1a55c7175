//! The shipped structure table must agree with a fresh numerical
//! decomposition, and the Morita reduction must reproduce larger cases.

use tenfold::clifford::{base_table_classes, base_table_text, clifford_structure, CliffordClass};
use tenfold::repr::wedderburn_clifford;

#[test]
fn embedded_table_matches_wedderburn() {
    let mut derived = String::new();
    for class in base_table_classes() {
        derived.push_str(&format!("{class} = {}\n", wedderburn_clifford(class).unwrap()));
    }
    assert_eq!(derived, base_table_text());
}

#[test]
fn mixed_signatures_follow_from_the_base_table() {
    for (r, s) in [(1, 1), (2, 1), (1, 2), (3, 2), (2, 4), (4, 3)] {
        let c = CliffordClass::real(r, s);
        assert_eq!(wedderburn_clifford(c).unwrap(), clifford_structure(c), "{c}");
    }
    for n in 2..6 {
        let c = CliffordClass::complex(n);
        assert_eq!(wedderburn_clifford(c).unwrap(), clifford_structure(c), "{c}");
    }
}
