//! Zero counting by the argument principle.
//!
//! Exterior counts for `f₋ + q` never integrate near infinity: with
//! `p(z) = z^n q(1/z)` the identity `z^n (f₋ + q)(1/z) = f_n(z) + p(z)` maps
//! the exterior of the disk onto the disk, so the count becomes a disk count
//! of the reflected function minus the zeros that sit at the origin.

use num_complex::Complex64;

use crate::cauchy::{reflect, AntiAnalytic};
use crate::error::{Error, Result};
use crate::poly::ComplexPoly;
use crate::series::TaylorSeries;
use crate::winding::{winding_of_samples, WindingOptions};

/// Starting contour resolution; doubled on under-resolution up to the cap.
pub const CONTOUR_SAMPLES: usize = 4096;
pub const MAX_CONTOUR_SAMPLES: usize = 1 << 16;
/// Radius at which level-set roots are located and verified.
pub const LEVEL_SET_RADIUS: f64 = 0.95;

/// Radii tried after a contour hits a zero: `rho (1 ± 2^-k)`, nearest first.
pub fn retry_radii(rho: f64) -> Vec<f64> {
    (1..=6)
        .rev()
        .flat_map(|k| {
            let h = 0.5f64.powi(k);
            [rho * (1.0 - h), rho * (1.0 + h)]
        })
        .collect()
}

/// Winding of `g` on `|z| = rho`; the number of zeros in the disk for `g`
/// analytic on a neighbourhood of the closed disk.
pub fn count_zeros_disk(g: impl Fn(Complex64) -> Complex64, rho: f64) -> Result<i64> {
    count_zeros_disk_with(g, rho, WindingOptions::default())
}

/// [`count_zeros_disk`] with explicit vanishing thresholds.
pub fn count_zeros_disk_with(
    g: impl Fn(Complex64) -> Complex64,
    rho: f64,
    opts: WindingOptions,
) -> Result<i64> {
    let mut n = CONTOUR_SAMPLES;
    loop {
        let values: Vec<Complex64> = (0..n)
            .map(|j| {
                g(Complex64::from_polar(
                    rho,
                    std::f64::consts::TAU * j as f64 / n as f64,
                ))
            })
            .collect();
        match winding_of_samples(&values, opts) {
            Ok(report) => return Ok(report.winding),
            Err(Error::UnderResolved { .. }) if n < MAX_CONTOUR_SAMPLES => n *= 2,
            Err(Error::VanishingOnCircle { .. }) => {
                return Err(Error::VanishingOnContour {
                    radius: rho,
                    suggested_radii: retry_radii(rho),
                })
            }
            Err(e) => return Err(e),
        }
    }
}

/// [`count_zeros_disk`] walking the retry schedule when the contour hits a
/// zero. Returns the radius actually used with the count.
pub fn count_zeros_disk_retrying(
    g: impl Fn(Complex64) -> Complex64,
    rho: f64,
) -> Result<(f64, i64)> {
    match count_zeros_disk(&g, rho) {
        Ok(count) => Ok((rho, count)),
        Err(Error::VanishingOnContour {
            suggested_radii, ..
        }) => {
            for r in suggested_radii.into_iter().filter(|&r| r > 0.0) {
                if let Ok(count) = count_zeros_disk(&g, r) {
                    return Ok((r, count));
                }
            }
            Err(Error::VanishingOnContour {
                radius: rho,
                suggested_radii: retry_radii(rho),
            })
        }
        Err(e) => Err(e),
    }
}

/// Number of zeros of `f₋ + q` in `|z| > 1` (finite points only), through the
/// reflection at `n = deg q`.
pub fn count_zeros_exterior(minus: &AntiAnalytic, q: &ComplexPoly) -> Result<usize> {
    count_zeros_exterior_at(minus, q, q.degree().unwrap_or(0))
}

/// As [`count_zeros_exterior`] but reflecting at any `n >= deg q`. Then
/// `p = z^n q(1/z)` has a zero of order `k = n - deg q` at the origin and
/// `#{|z| > 1} = z(f_n + p) - k`.
pub fn count_zeros_exterior_at(minus: &AntiAnalytic, q: &ComplexPoly, n: usize) -> Result<usize> {
    if !q.in_pn(n) {
        return Err(Error::invalid("n", "reflection order below deg q"));
    }
    let minus = minus.trimmed(1e-18);
    let origin_zeros = match q.degree() {
        Some(d) => n - d,
        None => {
            let at_infinity = minus
                .order_at_infinity()
                .ok_or_else(|| Error::invalid("f_minus", "f₋ + q vanishes identically"))?;
            n + at_infinity
        }
    };
    let reflected = reflected_sum(&minus, q, n);
    let count = count_zeros_disk(|z| reflected.eval(z), 1.0)?;
    let exterior = count - origin_zeros as i64;
    if exterior < 0 {
        return Err(Error::ZeroCountMismatch {
            expected: origin_zeros,
            contour: count,
            located: 0,
        });
    }
    Ok(exterior as usize)
}

/// `f_n + p` with `p(z) = z^n q(1/z)`.
pub fn reflected_sum(minus: &AntiAnalytic, q: &ComplexPoly, n: usize) -> TaylorSeries {
    reflect(minus, n).add_poly(&q.reversed(n))
}

/// The `m` solutions of `g(z) = a` in the disk for `g` normalized m-valent
/// (`g = z^m + ...`) and `|a| < 4^-m`, listed with multiplicity.
///
/// Roots of a truncation of `g - a` seed Newton refinement on the full series;
/// the located roots are checked against an argument-principle count on
/// `|z| = 0.95`.
pub fn solve_level_set(g: &TaylorSeries, m: usize, a: Complex64) -> Result<Vec<Complex64>> {
    if !(a.norm() < 0.25f64.powi(m as i32)) {
        return Err(Error::OutsideHaymanDisk { a, m });
    }
    let radius = LEVEL_SET_RADIUS;
    let len = g.effective_len(radius, 1e-12).max(m + 1);
    let truncated = g.truncated(len).to_poly();
    let shifted = &truncated - &ComplexPoly::constant(a);
    let candidates = if shifted.degree().unwrap_or(0) == 0 {
        Vec::new()
    } else {
        shifted.roots_unclustered()?
    };
    let mut roots: Vec<Complex64> = candidates
        .into_iter()
        .filter(|z| z.norm() < 1.0)
        .map(|z| newton_polish(g, a, z))
        .filter(|z| z.norm() < radius)
        .collect();
    roots.sort_by(|x, y| {
        x.norm()
            .total_cmp(&y.norm())
            .then(x.arg().total_cmp(&y.arg()))
    });

    let contour = count_zeros_disk(|z| g.eval(z) - a, radius)?;
    if contour != roots.len() as i64 || roots.len() != m {
        return Err(Error::RootCountMismatch {
            expected: m,
            contour,
            located: roots.len(),
        });
    }
    Ok(roots)
}

/// Newton steps on `g(z) = a`, kept only while the residual decreases.
pub(crate) fn newton_polish(g: &TaylorSeries, a: Complex64, mut z: Complex64) -> Complex64 {
    let (mut value, mut deriv) = g.eval_with_derivative(z);
    value -= a;
    for _ in 0..50 {
        if value.norm() == 0.0 || deriv.norm() == 0.0 {
            break;
        }
        let candidate = z - value / deriv;
        let (v, d) = g.eval_with_derivative(candidate);
        let v = v - a;
        if !(v.norm() < value.norm()) {
            break;
        }
        z = candidate;
        value = v;
        deriv = d;
    }
    z
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn disk_counts() {
        let p = ComplexPoly::from_real(&[-0.25, 0.0, 1.0]);
        assert_eq!(count_zeros_disk(|z| p.eval(z), 1.0).unwrap(), 2);
        assert_eq!(count_zeros_disk(|z| p.eval(z), 0.4).unwrap(), 0);
    }

    #[test]
    fn perturbed_double_zero_stays_inside() {
        let g = |z: Complex64| z * z / ((1.0 - 0.3 * z) * (1.0 + 0.4 * z)) + 0.001;
        assert_eq!(count_zeros_disk(g, 1.0).unwrap(), 2);
        // numerator z^2 + 0.001 (1 - 0.3 z)(1 + 0.4 z)
        let num = &ComplexPoly::monomial(2)
            + &ComplexPoly::from_roots(&[c(1.0 / 0.3, 0.0), c(-2.5, 0.0)])
                .scale(c(0.001 * -0.12, 0.0));
        let inside = num
            .root_list()
            .unwrap()
            .iter()
            .filter(|r| r.norm() < 1.0)
            .count();
        assert_eq!(inside, 2);
    }

    #[test]
    fn contour_hits_zero() {
        let p = ComplexPoly::from_real(&[-0.25, 0.0, 1.0]);
        match count_zeros_disk(|z| p.eval(z), 0.5) {
            Err(Error::VanishingOnContour {
                suggested_radii, ..
            }) => {
                assert_eq!(suggested_radii.len(), 12);
                assert!((suggested_radii[0] - 0.5 * (1.0 - 1.0 / 64.0)).abs() < 1e-15);
            }
            other => panic!("unexpected {other:?}"),
        }
        let (r, count) = count_zeros_disk_retrying(|z| p.eval(z), 0.5).unwrap();
        assert!(r < 0.5);
        assert_eq!(count, 0);
    }

    #[test]
    fn exterior_examples() {
        let one_over_z = AntiAnalytic::new(vec![c(1.0, 0.0)]);
        assert_eq!(
            count_zeros_exterior(&one_over_z, &ComplexPoly::constant(c(0.5, 0.0))).unwrap(),
            1
        );
        assert_eq!(
            count_zeros_exterior(&one_over_z, &ComplexPoly::zero()).unwrap(),
            0
        );
        // 1/(z - 0.5) = 0.9 at z ≈ 1.611
        let minus = AntiAnalytic::new((0..80).map(|k| c(0.5f64.powi(k), 0.0)).collect());
        assert_eq!(
            count_zeros_exterior(&minus, &ComplexPoly::constant(c(-0.9, 0.0))).unwrap(),
            1
        );
    }

    #[test]
    fn exterior_count_independent_of_reflection_order() {
        let minus = AntiAnalytic::new((0..80).map(|k| c(0.5f64.powi(k), 0.0)).collect());
        let q = ComplexPoly::from_real(&[-0.9, 0.2]);
        let base = count_zeros_exterior(&minus, &q).unwrap();
        for n in 1..5 {
            assert_eq!(count_zeros_exterior_at(&minus, &q, n).unwrap(), base);
        }
    }

    #[test]
    fn level_set_examples() {
        let z2 = TaylorSeries::new(vec![c(0.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)]);
        let roots = solve_level_set(&z2, 2, c(0.01, 0.0)).unwrap();
        assert!((roots[0].norm() - 0.1).abs() < 1e-14);
        assert!((roots[0] + roots[1]).norm() < 1e-14);

        // z / (1 - z/2) = a  =>  z = a / (1 + a/2)
        let b1 = TaylorSeries::from_ratio(
            &ComplexPoly::monomial(1),
            &ComplexPoly::from_real(&[1.0, -0.5]),
            80,
        );
        let roots = solve_level_set(&b1, 1, c(0.1, 0.0)).unwrap();
        assert!((roots[0] - c(0.1 / 1.05, 0.0)).norm() < 1e-13);

        let roots = solve_level_set(&z2, 2, c(0.0, 0.0)).unwrap();
        assert_eq!(roots, vec![c(0.0, 0.0); 2]);
    }

    #[test]
    fn level_outside_hayman_disk_rejected() {
        let z2 = TaylorSeries::new(vec![c(0.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)]);
        assert!(matches!(
            solve_level_set(&z2, 2, c(0.07, 0.0)),
            Err(Error::OutsideHaymanDisk { .. })
        ));
    }
}
