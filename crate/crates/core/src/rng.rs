//! Seeded randomness for the randomized suites.
//!
//! Every trial gets its own ChaCha stream derived from `(seed, index)`, so
//! trials can run in any order or concurrently with identical results.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::poly::ComplexPoly;
use crate::rational::RationalFn;

pub fn trial_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

/// Uniform point in the disk `|z| <= radius`.
pub fn point_in_disk(rng: &mut impl Rng, radius: f64) -> Complex64 {
    let r = radius * rng.random::<f64>().sqrt();
    let theta = rng.random::<f64>() * std::f64::consts::TAU;
    Complex64::from_polar(r, theta)
}

/// Uniform point in the annulus `inner <= |z| <= outer`.
pub fn point_in_annulus(rng: &mut impl Rng, inner: f64, outer: f64) -> Complex64 {
    let u: f64 = rng.random();
    let r = (inner * inner + u * (outer * outer - inner * inner)).sqrt();
    let theta = rng.random::<f64>() * std::f64::consts::TAU;
    Complex64::from_polar(r, theta)
}

/// Polynomial of degree at most `n` with coefficients uniform in a disk.
pub fn poly_in_disk(rng: &mut impl Rng, n: usize, radius: f64) -> ComplexPoly {
    ComplexPoly::new((0..=n).map(|_| point_in_disk(rng, radius)).collect())
}

/// `count` points in `|z| <= radius` with pairwise distance at least
/// `separation`, by rejection.
pub fn separated_points(
    rng: &mut impl Rng,
    count: usize,
    radius: f64,
    separation: f64,
) -> Vec<Complex64> {
    let mut points: Vec<Complex64> = Vec::with_capacity(count);
    while points.len() < count {
        let z = point_in_disk(rng, radius);
        if points.iter().all(|p| (p - z).norm() >= separation) {
            points.push(z);
        }
    }
    points
}

/// `Σ r_j / (z - z_j)` with `m` poles in `|z| <= radius` separated by at
/// least `separation` and residue moduli in `[0.5, 2]`.
pub fn random_pole_rational(
    rng: &mut impl Rng,
    m: usize,
    radius: f64,
    separation: f64,
) -> RationalFn {
    let poles = separated_points(rng, m, radius, separation);
    let residues: Vec<Complex64> = (0..m)
        .map(|_| {
            let r = rng.random_range(0.5..=2.0);
            Complex64::from_polar(r, rng.random::<f64>() * std::f64::consts::TAU)
        })
        .collect();
    RationalFn::from_partial_fractions(&poles, &residues)
}
