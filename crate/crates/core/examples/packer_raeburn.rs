//! Twisted crossed products by finite groups, computed both in one step
//! and iterated through a normal subgroup, then compared.

use tenfold::repr::{packer_raeburn_decompose, packer_raeburn_suite};

fn main() {
    for case in packer_raeburn_suite() {
        let r = case.verify().unwrap();
        println!(
            "{:<40} |G|={:<2} {:<24} {}",
            case.name,
            case.extension.group().order(),
            r.full_structure.to_string(),
            if r.passed() { "ok" } else { "FAIL" }
        );
    }

    // the twisting pair for Z4 over Z2: nu(1,1) is the generator of N
    let case = &packer_raeburn_suite()[1];
    let pair = packer_raeburn_decompose(&case.extension, &case.data, case.base).unwrap();
    println!("\n{}: nu(1,1) = {:?} in the inner basis", case.name, pair.nu[3]);
}
