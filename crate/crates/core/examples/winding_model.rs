//! The chiral circle model: two gradings that are isomorphic but not
//! homotopic, their difference class, and the rotation path swapping a
//! direct sum.
//!
//!     cargo run --example winding_model [-- OUT]   # writes OUT as a family file

use tenfold::homotopy::{
    conjugate_family, difference_class, direct_sum_swap_check, winding, GradingFamily, DEFAULT_SAMPLES,
};

fn main() {
    let g0 = GradingFamily::from_phase_fn(DEFAULT_SAMPLES, |_| 0.0);
    let g1 = GradingFamily::from_phase_fn(DEFAULT_SAMPLES, |t| 2.0 * t);
    println!("winding(G0) = {}", winding(&g0).unwrap());
    println!("winding(G1) = {}", winding(&g1).unwrap());
    println!("[G0, G1] = {}", difference_class(&g0, &g1).unwrap());

    let gauged = conjugate_family(&g0, 2);
    let dev = gauged.samples().iter().zip(g1.samples()).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max);
    println!("exp(-i theta s3) G0 exp(i theta s3) vs G1: max deviation {dev:.1e}");
    println!("swap path valid: {}", direct_sum_swap_check(&g0, &g1).unwrap());

    let coarse = GradingFamily::from_phase_fn(8, |t| 3.0 * t);
    println!("8 samples of f = 3 theta: {}", winding(&coarse).unwrap_err());

    if let Some(out) = std::env::args().nth(1) {
        std::fs::write(&out, g1.to_string()).unwrap();
        println!("wrote {out}");
    }
}
