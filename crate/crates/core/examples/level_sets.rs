//! Solutions of g(z) = a inside the disk for an m-valent g and |a| < 4^-m.

use meroscope::rng::trial_rng;
use meroscope::valence::{hayman_radius, random_level, BmFn, DEFAULT_SLIT_MARGIN, WORKING_LEN};
use meroscope::zeros::solve_level_set;

fn main() -> Result<(), meroscope::error::Error> {
    for m in 1..=3 {
        let mut rng = trial_rng(17, m as u64);
        let g = BmFn::random(&mut rng, m)?.valent(WORKING_LEN)?;
        let a = random_level(&mut rng, m, 0.1, 0.9, DEFAULT_SLIT_MARGIN);
        let roots = solve_level_set(g.series(), m, a)?;
        let residual = roots
            .iter()
            .map(|&z| (g.eval(z) - a).norm())
            .fold(0.0, f64::max);
        println!(
            "m = {m}, |a| = {:.2e} (disk {:.2e}): {} roots, residual {residual:.1e}",
            a.norm(),
            hayman_radius(m),
            roots.len()
        );
    }
    Ok(())
}
