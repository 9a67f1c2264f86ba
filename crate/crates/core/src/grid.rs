//! Uniform samples on the unit circle and their discrete Fourier analysis.

use std::f64::consts::TAU;

use num_complex::Complex64;
use rustfft::FftPlanner;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::series::LaurentSeries;

pub const MIN_GRID_SIZE: usize = 64;

/// Samples `f(t_j)` at `t_j = exp(2πij/N)`, `N` a power of two, `N >= 64`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundaryGrid {
    values: Vec<Complex64>,
}

pub fn check_grid_size(n: usize) -> Result<()> {
    if n < MIN_GRID_SIZE || !n.is_power_of_two() {
        return Err(Error::invalid(
            "n",
            format!("grid size {n} must be a power of two >= {MIN_GRID_SIZE}"),
        ));
    }
    Ok(())
}

/// The `j`-th node `exp(2πij/N)`.
pub fn node(n: usize, j: usize) -> Complex64 {
    Complex64::from_polar(1.0, TAU * j as f64 / n as f64)
}

impl BoundaryGrid {
    pub fn from_values(values: Vec<Complex64>) -> Result<Self> {
        check_grid_size(values.len())?;
        Ok(BoundaryGrid { values })
    }

    /// Sample `f` at the `n` nodes.
    pub fn sample(n: usize, f: impl Fn(Complex64) -> Complex64) -> Result<Self> {
        check_grid_size(n)?;
        Ok(BoundaryGrid {
            values: (0..n).map(|j| f(node(n, j))).collect(),
        })
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn nodes(&self) -> impl Iterator<Item = Complex64> + '_ {
        let n = self.len();
        (0..n).map(move |j| node(n, j))
    }

    pub fn map(&self, f: impl Fn(Complex64) -> Complex64) -> Self {
        BoundaryGrid {
            values: self.values.iter().map(|&v| f(v)).collect(),
        }
    }

    /// Pointwise combination with a function of the node and the sample.
    pub fn map_with_node(&self, f: impl Fn(Complex64, Complex64) -> Complex64) -> Self {
        BoundaryGrid {
            values: self
                .nodes()
                .zip(&self.values)
                .map(|(t, &v)| f(t, v))
                .collect(),
        }
    }

    pub fn zip_with(
        &self,
        other: &BoundaryGrid,
        f: impl Fn(Complex64, Complex64) -> Complex64,
    ) -> Self {
        assert_eq!(self.len(), other.len(), "grid sizes differ");
        BoundaryGrid {
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(&a, &b)| f(a, b))
                .collect(),
        }
    }

    pub fn conj(&self) -> Self {
        self.map(|v| v.conj())
    }

    pub fn max_modulus(&self) -> f64 {
        self.values.iter().map(|v| v.norm()).fold(0.0, f64::max)
    }

    pub fn min_modulus(&self) -> f64 {
        self.values
            .iter()
            .map(|v| v.norm())
            .fold(f64::INFINITY, f64::min)
    }
}

/// Discrete Laurent coefficients `c_k = (1/N) Σ_j f(t_j) t_j^{-k}` for
/// `|k| <= N/2 - 1`.
pub fn analyze_grid(f: &BoundaryGrid) -> LaurentSeries {
    let n = f.len();
    let mut buf = f.values.clone();
    FftPlanner::new().plan_fft_forward(n).process(&mut buf);
    let scale = 1.0 / n as f64;
    let k_max = n / 2 - 1;
    let nonneg = (0..=k_max).map(|k| buf[k] * scale).collect();
    let neg = (1..=k_max).map(|k| buf[n - k] * scale).collect();
    LaurentSeries::new(neg, nonneg)
}

/// Evaluate a Laurent table at the `n` nodes (inverse of [`analyze_grid`]
/// for band-limited data).
pub fn synthesize(series: &LaurentSeries, n: usize) -> Result<BoundaryGrid> {
    check_grid_size(n)?;
    if series.order() > n / 2 - 1 {
        // table wider than the grid band: evaluate directly
        return BoundaryGrid::sample(n, |t| series.eval(t));
    }
    let mut buf = vec![Complex64::new(0.0, 0.0); n];
    for (k, &c) in series.nonneg.iter().enumerate() {
        buf[k] += c;
    }
    for (k, &c) in series.neg.iter().enumerate() {
        buf[n - k - 1] += c;
    }
    FftPlanner::new().plan_fft_inverse(n).process(&mut buf);
    BoundaryGrid::from_values(buf)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn rejects_bad_sizes() {
        assert!(check_grid_size(32).is_err());
        assert!(check_grid_size(100).is_err());
        assert!(check_grid_size(64).is_ok());
    }

    #[test]
    fn monomial_coefficients() {
        let g = BoundaryGrid::sample(64, |t| t * t).unwrap();
        let l = analyze_grid(&g);
        for k in -31..=31i64 {
            let expected = if k == 2 { c(1.0) } else { c(0.0) };
            assert!((l.coeff(k) - expected).norm() < 1e-13, "k = {k}");
        }
        let g = BoundaryGrid::sample(64, |t| 3.0 / t).unwrap();
        let l = analyze_grid(&g);
        assert!((l.coeff(-1) - c(3.0)).norm() < 1e-13);
        assert!(l.neg[1..].iter().chain(&l.nonneg).all(|x| x.norm() < 1e-13));
    }

    #[test]
    fn simple_pole_gives_geometric_tail() {
        let g = BoundaryGrid::sample(1024, |t| 1.0 / (t - 0.5)).unwrap();
        let l = analyze_grid(&g);
        for k in 1..=511 {
            let expected = 0.5f64.powi(k - 1);
            assert!((l.coeff(-(k as i64)) - c(expected)).norm() < 1e-12);
        }
        assert!(l.nonneg.iter().all(|x| x.norm() < 1e-12));
    }

    #[test]
    fn round_trip() {
        let g =
            BoundaryGrid::sample(128, |t| t.powi(5) * 2.0 + 1.0 / (t * t) - t.powi(-40)).unwrap();
        let back = synthesize(&analyze_grid(&g), 128).unwrap();
        for (a, b) in g.values().iter().zip(back.values()) {
            assert!((a - b).norm() <= 1e-12 * g.max_modulus());
        }
    }
}
