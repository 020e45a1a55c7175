//! Brute-force graded Clifford modules.
//!
//! Builds every irreducible graded module of `Cl(r,s)` as explicit real
//! matrices, restricts modules of `Cl(r,s+1)` to `Cl(r,s)`, and reads off
//! the super-representation group as a cokernel.

use tenfold::groups::smith_normal_form;
use tenfold::repr::{build_irreducible_graded_reps, restriction_matrix, sr_bruteforce};

fn main() {
    for (r, s) in [(0, 0), (0, 1), (1, 0), (0, 2), (2, 2), (0, 4)] {
        let reps = build_irreducible_graded_reps(r, s).unwrap();
        let shape: Vec<String> =
            reps.iter().map(|v| format!("{}+{} (res {:.0e})", v.split().0, v.split().1, v.residual())).collect();
        println!("Cl({r},{s}): {} irreducible graded modules: {}", reps.len(), shape.join(", "));
    }

    let m = restriction_matrix(0, 2).unwrap();
    println!("\nrestriction Cl(0,3) -> Cl(0,2):\n{m}");
    println!("Smith diagonal: {:?}", smith_normal_form(&m).diagonal);

    println!("\nSR(Cl(0,n)):");
    for n in 0..8 {
        println!("  n={n}: {}", sr_bruteforce(0, n).unwrap());
    }
    println!("\nstripping Cl(1,1): SR(Cl(1,3)) = {}, SR(Cl(0,2)) = {}", sr_bruteforce(1, 3).unwrap(), sr_bruteforce(0, 2).unwrap());
}
