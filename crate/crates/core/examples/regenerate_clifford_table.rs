//! Recomputes `data/clifford_base.txt` from scratch: each entry is the
//! Wedderburn decomposition of the corresponding twisted group algebra.
//!
//!     cargo run --release --example regenerate_clifford_table [-- --check]

use std::path::PathBuf;

use tenfold::clifford::{base_table_classes, base_table_text};
use tenfold::repr::wedderburn_clifford;

fn main() {
    let check = std::env::args().any(|a| a == "--check");
    let mut out = String::new();
    for class in base_table_classes() {
        let s = wedderburn_clifford(class).unwrap_or_else(|e| panic!("{class}: {e}"));
        out.push_str(&format!("{class} = {s}\n"));
    }
    print!("{out}");
    if check {
        if out != base_table_text() {
            eprintln!("embedded table differs from the computed one");
            std::process::exit(1);
        }
        return;
    }
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data/clifford_base.txt");
    std::fs::write(&path, out).expect("write table");
    eprintln!("wrote {}", path.display());
}
