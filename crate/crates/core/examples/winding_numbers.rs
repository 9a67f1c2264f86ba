//! Winding numbers of sampled functions on the unit circle, including what
//! happens when a sample sits on a zero.

use meroscope::grid::BoundaryGrid;
use meroscope::winding::{winding, winding_with_retry};
use num_complex::Complex64;

type CircleFn = fn(Complex64) -> Complex64;

fn main() -> Result<(), meroscope::error::Error> {
    let cases: [(&str, CircleFn); 3] = [
        ("t^3", |t| t.powi(3)),
        ("(t - 0.5)/(t - 2)", |t| (t - 0.5) / (t - 2.0)),
        ("1/t + t/3", |t| 1.0 / t + t / 3.0),
    ];
    for (name, f) in cases {
        let report = winding(&BoundaryGrid::sample(256, f)?)?;
        println!(
            "{name:>20}: winding {} (min |g| = {:.3})",
            report.winding, report.min_modulus
        );
    }

    // t + 1 vanishes at the node t = -1
    let g = BoundaryGrid::sample(64, |t| t + 1.0)?;
    println!("t + 1: {}", winding(&g).unwrap_err());
    let out = winding_with_retry(&g, 1e-3, 8)?;
    println!(
        "t + 1 + {:.2e}: winding {}",
        out.epsilon.unwrap(),
        out.report.winding
    );
    Ok(())
}
