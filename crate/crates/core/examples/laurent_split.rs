//! Split boundary data into the part analytic inside the disk and the part
//! analytic outside, then check both against the Cauchy integral.

use meroscope::cauchy::{cauchy_eval, reflect, split};
use meroscope::grid::{analyze_grid, BoundaryGrid};
use num_complex::Complex64;

fn main() -> Result<(), meroscope::error::Error> {
    let plus = |z: Complex64| (z * 0.5).exp();
    let minus = |z: Complex64| 0.3 / (z - 0.4);
    let grid = BoundaryGrid::sample(1024, |t| plus(t) + minus(t))?;
    let parts = split(&analyze_grid(&grid));

    let show = |c: &[Complex64]| {
        c.iter()
            .map(|v| format!("{:.6}", v.re))
            .collect::<Vec<_>>()
            .join(" ")
    };
    println!("c_0..c_3:    {}", show(&parts.plus.coeffs()[..4]));
    println!("c_-1..c_-4:  {}", show(&parts.minus.coeffs()[..4]));

    let z = Complex64::new(0.2, 0.1);
    println!(
        "f+ at {z:.2}: error {:.1e}",
        (parts.plus.eval(z) - plus(z)).norm()
    );
    for w in [Complex64::new(1.5, -0.7), Complex64::new(-0.3, 2.0)] {
        let series = (parts.minus.eval(w) - minus(w)).norm();
        let integral = (cauchy_eval(&grid, w)? - minus(w)).norm();
        println!("f- at {w:.2}: series error {series:.1e}, Cauchy integral error {integral:.1e}");
    }

    // z^n f-(1/z) is analytic in the disk
    let z = Complex64::new(0.3, 0.6);
    let f3 = reflect(&parts.minus, 3);
    println!(
        "reflection at n = 3: {:.1e}",
        (f3.eval(z) - z.powu(3) * minus(z.inv())).norm()
    );
    Ok(())
}
