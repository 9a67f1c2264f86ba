//! Zeros of f- + q outside the disk, counted on the unit circle only.

use meroscope::cauchy::AntiAnalytic;
use meroscope::poly::ComplexPoly;
use meroscope::rational::RationalFn;
use meroscope::winding::winding_via_zeros;
use meroscope::zeros::{count_zeros_disk, count_zeros_exterior};
use num_complex::Complex64;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn main() -> Result<(), meroscope::error::Error> {
    let f_minus = RationalFn::from_partial_fractions(
        &[c(0.5, 0.0), c(-0.2, 0.6)],
        &[c(1.0, 0.0), c(0.0, 2.0)],
    );
    let minus = AntiAnalytic::from_rational_converged(&f_minus)?;

    for q in [
        ComplexPoly::new(vec![c(0.5, 0.0)]),
        ComplexPoly::new(vec![c(0.0, 0.0), c(1.0, 0.0)]),
        ComplexPoly::new(vec![c(1.0, 0.0), c(0.0, -1.0), c(0.3, 0.0)]),
    ] {
        let exterior = count_zeros_exterior(&minus, &q)?;
        // numerator roots give an independent count
        let numerator = &f_minus.num + &(&q * &f_minus.den);
        let roots = numerator.root_list()?;
        let by_roots = roots.iter().filter(|r| r.norm() > 1.0).count();
        let winding = winding_via_zeros(&minus, &q, exterior, 2048)?;
        println!(
            "deg q = {}: {exterior} exterior zeros ({by_roots} from roots), winding {winding}",
            q.signed_degree()
        );
    }

    let p = ComplexPoly::from_roots(&[c(0.1, 0.2), c(0.9, 0.0), c(-1.3, 0.4)]);
    println!(
        "zeros of p in |z| < 1: {}",
        count_zeros_disk(|z| p.eval(z), 1.0)?
    );
    println!(
        "zeros of p in |z| < 0.5: {}",
        count_zeros_disk(|z| p.eval(z), 0.5)?
    );
    Ok(())
}
