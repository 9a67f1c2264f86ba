//! Integer winding numbers of sampled, non-vanishing circle functions.
//!
//! The argument is tracked one step at a time with the principal branch of
//! `arg(g(t_{j+1}) / g(t_j))`. A step close to `±π` means the grid cannot
//! tell which way the curve went around the origin, so the result is rejected
//! rather than risk an off-by-one.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::cauchy::AntiAnalytic;
use crate::error::{Error, Result};
use crate::grid::BoundaryGrid;
use crate::poly::ComplexPoly;

pub const DEFAULT_GUARD: f64 = 0.1;
pub const DEFAULT_REL_TOL: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WindingOptions {
    /// Steps must stay below `π (1 - guard)`.
    pub guard: f64,
    /// Samples with `|g| <= rel_tol * max|g|` count as vanishing.
    pub rel_tol: f64,
    /// Samples with `|g| <= abs_tol` count as vanishing as well.
    pub abs_tol: f64,
}

impl Default for WindingOptions {
    fn default() -> Self {
        WindingOptions {
            guard: DEFAULT_GUARD,
            rel_tol: DEFAULT_REL_TOL,
            abs_tol: 0.0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WindingReport {
    pub winding: i64,
    pub min_modulus: f64,
    pub max_step_angle: f64,
    pub samples: usize,
}

pub fn winding(g: &BoundaryGrid) -> Result<WindingReport> {
    winding_with(g, WindingOptions::default())
}

pub fn winding_with(g: &BoundaryGrid, opts: WindingOptions) -> Result<WindingReport> {
    winding_of_samples(g.values(), opts)
}

/// Winding of a closed sample sequence (last sample connects to the first).
pub(crate) fn winding_of_samples(
    values: &[Complex64],
    opts: WindingOptions,
) -> Result<WindingReport> {
    let max_modulus = values.iter().map(|v| v.norm()).fold(0.0, f64::max);
    let min_modulus = values
        .iter()
        .map(|v| v.norm())
        .fold(f64::INFINITY, f64::min);
    let tolerance = (opts.rel_tol * max_modulus).max(opts.abs_tol);
    if !(min_modulus > tolerance) {
        return Err(Error::VanishingOnCircle {
            min_modulus,
            tolerance,
        });
    }
    let n = values.len();
    let mut total = 0.0;
    let mut max_step_angle: f64 = 0.0;
    for j in 0..n {
        let step = (values[(j + 1) % n] / values[j]).arg();
        max_step_angle = max_step_angle.max(step.abs());
        total += step;
    }
    if max_step_angle >= PI * (1.0 - opts.guard) {
        return Err(Error::UnderResolved { n, max_step_angle });
    }
    let turns = total / std::f64::consts::TAU;
    let winding = turns.round();
    if (turns - winding).abs() >= 0.25 {
        return Err(Error::UnderResolved { n, max_step_angle });
    }
    // Steps beyond π alias silently; a disagreeing half-resolution pass exposes them.
    if n >= 8 && n % 2 == 0 {
        let half: Vec<Complex64> = values.iter().step_by(2).copied().collect();
        let coarse: f64 = (0..half.len())
            .map(|j| (half[(j + 1) % half.len()] / half[j]).arg())
            .sum();
        let coarse_max = (0..half.len())
            .map(|j| (half[(j + 1) % half.len()] / half[j]).arg().abs())
            .fold(0.0, f64::max);
        let coarse_winding = (coarse / std::f64::consts::TAU).round();
        if coarse_max < PI * (1.0 - opts.guard) && coarse_winding != winding {
            return Err(Error::UnderResolved { n, max_step_angle });
        }
    }
    Ok(WindingReport {
        winding: winding as i64,
        min_modulus,
        max_step_angle,
        samples: n,
    })
}

/// Outcome of the explicit `g + ε` retry for near-vanishing data.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PerturbedWinding {
    /// `None` when the unperturbed data was already admissible.
    pub epsilon: Option<Complex64>,
    pub report: WindingReport,
}

/// Arguments tried for `ε = δ e^{iθ}`, offset from the axes.
pub fn retry_epsilons(delta: f64, count: usize) -> impl Iterator<Item = Complex64> {
    (0..count).map(move |j| {
        Complex64::from_polar(
            delta,
            std::f64::consts::TAU * (j as f64 + 0.3) / count as f64,
        )
    })
}

/// Winding of `g`, or of `g + ε` for the first `ε` on the circle `|ε| = δ`
/// (tried at `count` arguments) that makes the data admissible.
pub fn winding_with_retry(g: &BoundaryGrid, delta: f64, count: usize) -> Result<PerturbedWinding> {
    match winding(g) {
        Ok(report) => Ok(PerturbedWinding {
            epsilon: None,
            report,
        }),
        Err(first @ Error::VanishingOnCircle { .. }) => {
            for eps in retry_epsilons(delta, count) {
                if let Ok(report) = winding(&g.map(|v| v + eps)) {
                    return Ok(PerturbedWinding {
                        epsilon: Some(eps),
                        report,
                    });
                }
            }
            Err(first)
        }
        Err(e) => Err(e),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StabilityReport {
    /// `max |h - q|` on the grid.
    pub perturbation: f64,
    /// `min |f + h|` on the grid.
    pub min_modulus: f64,
    pub winding_f_plus_h: i64,
    pub winding_f_plus_q: i64,
}

/// Check that replacing `h` by a polynomial `q` with `|h - q| < |f + h|`
/// leaves the winding of `f + h` unchanged.
pub fn winding_stability(
    f: &BoundaryGrid,
    h: &BoundaryGrid,
    q: &ComplexPoly,
) -> Result<StabilityReport> {
    let q_grid = BoundaryGrid::sample(f.len(), |t| q.eval(t))?;
    let f_plus_h = f.zip_with(h, |a, b| a + b);
    let perturbation = h.zip_with(&q_grid, |a, b| a - b).max_modulus();
    let min_modulus = f_plus_h.min_modulus();
    if !(perturbation < min_modulus) {
        return Err(Error::PremiseFails {
            perturbation,
            min_modulus,
        });
    }
    let winding_f_plus_h = winding(&f_plus_h)?.winding;
    let winding_f_plus_q = winding(&f.zip_with(&q_grid, |a, b| a + b))?.winding;
    if winding_f_plus_h != winding_f_plus_q {
        return Err(Error::WindingMismatch {
            on_grid: winding_f_plus_q,
            predicted: winding_f_plus_h,
        });
    }
    Ok(StabilityReport {
        perturbation,
        min_modulus,
        winding_f_plus_h,
        winding_f_plus_q,
    })
}

/// Net order of `f₋ + q` at infinity counted as a pole: `deg q` when `q` is
/// not identically zero, otherwise minus the order of the zero of `f₋`.
pub fn order_at_infinity(minus: &AntiAnalytic, q: &ComplexPoly) -> Option<i64> {
    match q.degree() {
        Some(d) => Some(d as i64),
        None => minus.order_at_infinity().map(|k| -(k as i64)),
    }
}

/// Winding of `f₋ + q` predicted from its exterior zero count
/// (`deg q - #zeros in |z| > 1`), checked against the winding on an
/// `n`-point grid.
pub fn winding_via_zeros(
    minus: &AntiAnalytic,
    q: &ComplexPoly,
    exterior_zero_count: usize,
    n: usize,
) -> Result<i64> {
    let on_grid = winding(&minus.sample_plus(q, n)?)?.winding;
    let Some(balance) = order_at_infinity(minus, q) else {
        // f₋ + q ≡ 0 would have been caught as vanishing above
        unreachable!("identically zero data has no winding")
    };
    let predicted = balance - exterior_zero_count as i64;
    if predicted != on_grid {
        return Err(Error::WindingMismatch { on_grid, predicted });
    }
    Ok(predicted)
}
