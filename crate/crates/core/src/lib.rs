pub mod cauchy;
pub mod cli;
pub mod error;
pub mod funcspec;
pub mod grid;
pub mod poles;
pub mod poly;
pub mod rational;
pub mod rigidity;
pub mod rng;
pub mod series;
pub mod suites;
pub mod valence;
pub mod winding;
pub mod zeros;
