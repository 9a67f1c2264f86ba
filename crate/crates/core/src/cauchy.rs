//! Analytic / anti-analytic splitting of circle data.
//!
//! `f = f₊ + f₋` where `f₊` carries the coefficients `c_k`, `k >= 0`, and
//! `f₋(z) = Σ_{k>=1} c_{-k} z^{-k}` is holomorphic outside the closed disk and
//! vanishes at infinity. Downstream modules work with the coefficient form of
//! `f₋`; [`cauchy_eval`] computes the Cauchy integral directly for
//! cross-validation.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::grid::BoundaryGrid;
use crate::poly::ComplexPoly;
use crate::series::{LaurentSeries, TaylorSeries};

pub const DEFAULT_MARGIN: f64 = 0.05;

/// Coefficients `c_{-1}, c_{-2}, ...` of an anti-analytic part.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct AntiAnalytic {
    coeffs: Vec<Complex64>,
}

impl AntiAnalytic {
    pub fn new(coeffs: Vec<Complex64>) -> Self {
        AntiAnalytic { coeffs }
    }

    pub fn zero() -> Self {
        AntiAnalytic { coeffs: Vec::new() }
    }

    /// Coefficients of a strictly proper rational function expanded at infinity.
    pub fn from_rational(f: &crate::rational::RationalFn, count: usize) -> Self {
        AntiAnalytic::new(f.coefficients_at_infinity(count))
    }

    /// As [`AntiAnalytic::from_rational`] with enough coefficients that the
    /// dropped tail is below `1e-18` relative, from the largest pole modulus.
    pub fn from_rational_converged(f: &crate::rational::RationalFn) -> Result<Self> {
        let rho = f.poles()?.iter().map(|p| p.norm()).fold(0.0, f64::max);
        if rho >= 1.0 {
            return Err(Error::invalid("den", "poles must lie in the open disk"));
        }
        let degree = f.den.degree().unwrap_or(0);
        let count = if rho == 0.0 {
            degree + 1
        } else {
            (1e-18f64.ln() / rho.ln()).ceil() as usize + 4 * degree + 8
        };
        Ok(AntiAnalytic::from_rational(f, count.clamp(degree + 1, 1 << 14)).trimmed(1e-18))
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    /// `c_{-k}` for `k >= 1`.
    pub fn coeff(&self, k: usize) -> Complex64 {
        assert!(k >= 1, "anti-analytic parts have no constant term");
        self.coeffs.get(k - 1).copied().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| *c == Complex64::new(0.0, 0.0))
    }

    /// Order of the zero at infinity (index of the first nonzero `c_{-k}`).
    pub fn order_at_infinity(&self) -> Option<usize> {
        self.coeffs
            .iter()
            .position(|c| *c != Complex64::new(0.0, 0.0))
            .map(|i| i + 1)
    }

    pub fn eval(&self, z: Complex64) -> Complex64 {
        let w = z.inv();
        self.coeffs
            .iter()
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, &c| acc * w + c)
            * w
    }

    /// Drop trailing coefficients below `rel_tol * max|c|`.
    pub fn trimmed(&self, rel_tol: f64) -> Self {
        let cutoff = rel_tol * self.coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max);
        let mut coeffs = self.coeffs.clone();
        while matches!(coeffs.last(), Some(c) if c.norm() <= cutoff) {
            coeffs.pop();
        }
        AntiAnalytic { coeffs }
    }

    pub fn sample(&self, n: usize) -> Result<BoundaryGrid> {
        BoundaryGrid::sample(n, |t| self.eval(t))
    }

    /// `f₋ + q` on the grid.
    pub fn sample_plus(&self, q: &ComplexPoly, n: usize) -> Result<BoundaryGrid> {
        BoundaryGrid::sample(n, |t| self.eval(t) + q.eval(t))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SplitPair {
    /// `f₊`, analytic in the disk.
    pub plus: TaylorSeries,
    /// `f₋`, analytic outside the closed disk and zero at infinity.
    pub minus: AntiAnalytic,
}

pub fn split(f: &LaurentSeries) -> SplitPair {
    SplitPair {
        plus: TaylorSeries::new(f.nonneg.clone()),
        minus: AntiAnalytic::new(f.neg.clone()),
    }
}

/// Trapezoidal quadrature of `(1/2πi) ∮ f(t) dt / (z - t)` for `|z| > 1`.
pub fn cauchy_eval(f: &BoundaryGrid, z: Complex64) -> Result<Complex64> {
    cauchy_eval_with_margin(f, z, DEFAULT_MARGIN)
}

pub fn cauchy_eval_with_margin(f: &BoundaryGrid, z: Complex64, margin: f64) -> Result<Complex64> {
    if z.norm() < 1.0 + margin {
        return Err(Error::TooCloseToCircle {
            modulus: z.norm(),
            margin,
        });
    }
    // dt = i t dθ, so the 1/(2πi) prefactor leaves the plain mean of f(t) t / (z - t).
    let sum: Complex64 = f
        .nodes()
        .zip(f.values())
        .map(|(t, &v)| v * t / (z - t))
        .sum();
    Ok(sum / f.len() as f64)
}

/// `f_n(z) = z^n f₋(1/z)`: the coefficient of `z^{n+k}` is `c_{-k}`.
pub fn reflect(minus: &AntiAnalytic, n: usize) -> TaylorSeries {
    let mut coeffs = vec![Complex64::new(0.0, 0.0); n + 1 + minus.coeffs.len()];
    for (i, &c) in minus.coeffs.iter().enumerate() {
        coeffs[n + 1 + i] = c;
    }
    TaylorSeries::new(coeffs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::analyze_grid;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn split_monomials() {
        let g = BoundaryGrid::sample(64, |t| t * t + 3.0 / t).unwrap();
        let s = split(&analyze_grid(&g));
        assert!((s.plus.coeff(2) - c(1.0)).norm() < 1e-13);
        assert!((s.minus.coeff(1) - c(3.0)).norm() < 1e-13);
        let z = Complex64::new(1.5, -0.5);
        assert!((s.minus.eval(z) - 3.0 / z).norm() < 1e-12);
    }

    #[test]
    fn disk_algebra_trace_has_no_minus_part() {
        let g = BoundaryGrid::sample(128, |t| (t * 0.5).exp()).unwrap();
        let s = split(&analyze_grid(&g));
        assert!(s.minus.coeffs().iter().all(|x| x.norm() < 1e-14));
    }

    #[test]
    fn outside_pole_function_is_all_minus() {
        let g = BoundaryGrid::sample(1024, |t| 1.0 / (t - 0.5)).unwrap();
        let s = split(&analyze_grid(&g));
        assert!(s.plus.coeffs().iter().all(|x| x.norm() < 1e-12));
        for k in 1..40 {
            assert!((s.minus.coeff(k) - c(0.5f64.powi(k as i32 - 1))).norm() < 1e-12);
        }
    }

    #[test]
    fn cauchy_eval_examples() {
        let g = BoundaryGrid::sample(256, |t| 3.0 / t).unwrap();
        assert!((cauchy_eval(&g, c(2.0)).unwrap() - c(1.5)).norm() < 1e-12);
        let g = BoundaryGrid::sample(256, |t| t * t).unwrap();
        assert!(cauchy_eval(&g, c(2.0)).unwrap().norm() < 1e-12);
        let g = BoundaryGrid::sample(256, |t| 1.0 / (t - 0.5)).unwrap();
        assert!((cauchy_eval(&g, c(3.0)).unwrap() - c(0.4)).norm() < 1e-12);
    }

    #[test]
    fn cauchy_eval_rejects_points_near_circle() {
        let g = BoundaryGrid::sample(64, |t| t).unwrap();
        assert!(matches!(
            cauchy_eval(&g, c(1.01)),
            Err(Error::TooCloseToCircle { .. })
        ));
    }

    #[test]
    fn reflection_examples() {
        let f1 = reflect(&AntiAnalytic::new(vec![c(3.0)]), 1);
        assert_eq!(f1.coeffs(), &[c(0.0), c(0.0), c(3.0)]);
        assert!(reflect(&AntiAnalytic::zero(), 4).is_zero());
        let minus = AntiAnalytic::new((0..20).map(|k| c(0.5f64.powi(k))).collect());
        let f0 = reflect(&minus, 0);
        let z = c(0.3);
        assert!((f0.eval(z) - z / (1.0 - 0.5 * z)).norm() < 1e-7);
        assert_eq!(f0.origin_order(), Some(1));
    }
}
