//! Prints the three tables and shows the eightfold repeat along a row.
//!
//!     cargo run --example periodic_table [-- DMAX]

use tenfold::kcalc::periodic_table;
use tenfold::symmetry::TenfoldClass;
use tenfold::tables;

fn main() {
    let d_max = std::env::args().nth(1).and_then(|a| a.parse().ok()).unwrap_or(3);
    println!("{}", tables::tenfold());
    println!("{}", tables::zero_d());
    println!("{}", tables::periodic(d_max));

    let t = periodic_table(11);
    let ai: Vec<String> = (0..=11).map(|d| t.get(TenfoldClass::AI, d).to_string()).collect();
    println!("AI, d = 0..11: {}", ai.join(" "));
    assert!((0..4).all(|d| t.get(TenfoldClass::AI, d) == t.get(TenfoldClass::AI, d + 8)));
}
