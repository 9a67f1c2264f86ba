//! Coefficient polynomials of the class B_m and the level-set transform that
//! maps it into itself.

use meroscope::rng::trial_rng;
use meroscope::valence::{
    ell_polynomials, is_bm, iterate_transform, random_level, us2_check, BmFn, DEFAULT_SLIT_MARGIN,
    WORKING_LEN,
};
use num_complex::Complex64;

fn main() -> Result<(), meroscope::error::Error> {
    let table = ell_polynomials(2, 6)?;
    for k in 3..=6 {
        let terms = table.get(k).map_or(0, |p| p.terms().count());
        println!("ell_(2,{k}) has {terms} terms");
    }

    let m = 2;
    let g = BmFn::from_zeros(&[Complex64::new(2.0, 1.0), Complex64::new(-1.5, 2.5)], m)?
        .valent(WORKING_LEN)?;
    println!("g in B_2: {:?}", is_bm(&g, 12, 1e-10)?);

    let mut rng = trial_rng(5, 0);
    let schedule: Vec<Complex64> = (0..4)
        .map(|_| random_level(&mut rng, m, 0.2, 0.9, DEFAULT_SLIT_MARGIN))
        .collect();
    let trajectory = iterate_transform(&g, &schedule, 12)?;
    for step in &trajectory.steps {
        let worst = step.phi.iter().copied().fold(0.0, f64::max);
        println!(
            "step {}: leading {}, max phi {worst:.1e}",
            step.step,
            step.leading
                .iter()
                .map(|c| format!("{c:.4}"))
                .collect::<Vec<_>>()
                .join(", ")
        );
    }

    let check = us2_check(&g, schedule[0])?;
    println!(
        "series division vs symmetric functions: {:.1e}",
        check.max_deviation
    );
    Ok(())
}
