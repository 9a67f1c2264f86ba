use meroscope::grid::{analyze_grid, BoundaryGrid};
use meroscope::rigidity::{equivalence_suite, find_witness, DEFAULT_BUDGET, WITNESS_SEPARATION};
use meroscope::rng::{random_pole_rational, trial_rng};

fn main() -> Result<(), meroscope::error::Error> {
    let mut rng = trial_rng(11, 0);
    let f_minus = random_pole_rational(&mut rng, 2, 0.8, WITNESS_SEPARATION);
    let m = 2;

    // at the true pole count, z(f_n + p) <= m + n for every (n, p)
    let report = equivalence_suite(&f_minus, m, 200, 1)?;
    println!(
        "{} trials: {} agree with the root count, {} violations, windings {}/{} checked",
        report.trials,
        report.matches,
        report.violations,
        report.winding_checked - report.winding_failures,
        report.winding_checked
    );

    // one level lower the bound fails, and the search exhibits it
    let f = analyze_grid(&BoundaryGrid::sample(4096, |t| f_minus.eval(t))?);
    let search = find_witness(&f, m - 1, DEFAULT_BUDGET)?;
    match &search.witness {
        Some(w) => println!(
            "witness after {} candidates ({:?}): n = {}, z(f_n + p) = {} > {}",
            search.log.len(),
            search.layer.unwrap(),
            w.n,
            w.zero_count,
            w.bound
        ),
        None => println!("no witness within {} candidates", search.budget),
    }
    Ok(())
}
