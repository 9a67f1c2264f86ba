//! Recover the pole count of sampled data from the singular values of its
//! Hankel matrix, reconstruct the poles, and check that the winding bound
//! holds for random polynomial perturbations.

use meroscope::grid::{analyze_grid, BoundaryGrid};
use meroscope::poles::{
    check_necessity_on_grid, minimal_pole_count, NecessityOptions, PoleCount, PoleOptions,
};
use meroscope::rng::{random_pole_rational, trial_rng};

fn main() -> Result<(), meroscope::error::Error> {
    let mut rng = trial_rng(3, 0);
    let f_minus = random_pole_rational(&mut rng, 3, 0.8, 0.1);
    let grid = BoundaryGrid::sample(4096, |t| f_minus.eval(t) + t * t)?;
    let f = analyze_grid(&grid);

    let report = minimal_pole_count(&f, &PoleOptions::default())?;
    let sigma: Vec<String> = report.singular_values[..6]
        .iter()
        .map(|s| format!("{s:.2e}"))
        .collect();
    println!("singular values: {}", sigma.join(" "));
    println!(
        "gap ratio {:.2e}, residual {:.2e}",
        report.gap_ratio, report.residual
    );
    let mut truth = f_minus.poles()?;
    truth.sort_by(|a, b| a.re.total_cmp(&b.re));
    let mut found = report.poles.clone();
    found.sort_by(|a, b| a.re.total_cmp(&b.re));
    for (t, p) in truth.iter().zip(&found) {
        println!("pole {t:.6} recovered as {p:.6}");
    }

    let PoleCount::Finite(m) = report.m else {
        println!("not meromorphic");
        return Ok(());
    };
    let necessity = check_necessity_on_grid(&grid, m, 200, 7, &NecessityOptions::default())?;
    println!(
        "m = {m}: {} trials, min winding {:?}, {} violations",
        necessity.trials, necessity.min_winding, necessity.violations
    );
    println!("winding histogram {:?}", necessity.histogram);
    Ok(())
}
