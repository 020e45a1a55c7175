pub mod cli;
pub mod clifford;
pub mod groups;
pub mod homotopy;
pub mod kcalc;
pub mod repr;
pub mod symmetry;
pub mod tables;
