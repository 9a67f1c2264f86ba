//! Truncated power series on the disk and two-sided Laurent tables on the circle.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::poly::ComplexPoly;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Coefficients `a_0..a_K` of a function holomorphic in the disk.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct TaylorSeries {
    coeffs: Vec<Complex64>,
}

impl TaylorSeries {
    pub fn new(coeffs: Vec<Complex64>) -> Self {
        TaylorSeries { coeffs }
    }

    pub fn zeros(len: usize) -> Self {
        TaylorSeries {
            coeffs: vec![ZERO; len],
        }
    }

    pub fn from_poly(p: &ComplexPoly, len: usize) -> Self {
        let mut s = Self::zeros(len.max(p.coeffs().len()));
        s.coeffs[..p.coeffs().len()].copy_from_slice(p.coeffs());
        s
    }

    /// Expansion of `num / den` at the origin; needs `den(0) != 0`.
    pub fn from_ratio(num: &ComplexPoly, den: &ComplexPoly, len: usize) -> Self {
        Self::from_poly(num, len).divide_by_poly(den)
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn coeffs_mut(&mut self) -> &mut [Complex64] {
        &mut self.coeffs
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, k: usize) -> Complex64 {
        self.coeffs.get(k).copied().unwrap_or(ZERO)
    }

    /// Truncation order `K` (index of the last stored coefficient).
    pub fn order(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn eval(&self, z: Complex64) -> Complex64 {
        self.coeffs.iter().rev().fold(ZERO, |acc, &c| acc * z + c)
    }

    pub fn eval_with_derivative(&self, z: Complex64) -> (Complex64, Complex64) {
        let mut p = ZERO;
        let mut dp = ZERO;
        for &c in self.coeffs.iter().rev() {
            dp = dp * z + p;
            p = p * z + c;
        }
        (p, dp)
    }

    /// Index of the first nonzero coefficient.
    pub fn origin_order(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| *c != ZERO)
    }

    pub fn is_zero(&self) -> bool {
        self.origin_order().is_none()
    }

    pub fn resized(&self, len: usize) -> Self {
        let mut coeffs = self.coeffs.clone();
        coeffs.resize(len, ZERO);
        TaylorSeries { coeffs }
    }

    /// `z^k g(z)`, keeping the stored length.
    pub fn shifted(&self, k: usize) -> Self {
        let len = self.coeffs.len();
        let mut coeffs = vec![ZERO; len];
        for i in k..len {
            coeffs[i] = self.coeffs[i - k];
        }
        TaylorSeries { coeffs }
    }

    pub fn add_poly(&self, p: &ComplexPoly) -> Self {
        let mut out = self.resized(self.len().max(p.coeffs().len()));
        for (k, &c) in p.coeffs().iter().enumerate() {
            out.coeffs[k] += c;
        }
        out
    }

    pub fn scale(&self, s: Complex64) -> Self {
        TaylorSeries {
            coeffs: self.coeffs.iter().map(|&c| c * s).collect(),
        }
    }

    /// Product truncated to the length of `self`.
    pub fn mul(&self, rhs: &TaylorSeries) -> Self {
        let len = self.len();
        let mut out = vec![ZERO; len];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == ZERO {
                continue;
            }
            for (j, &b) in rhs.coeffs.iter().take(len - i).enumerate() {
                out[i + j] += a * b;
            }
        }
        TaylorSeries { coeffs: out }
    }

    /// Series quotient `self / den`; `den(0)` must be nonzero.
    pub fn divide_by_poly(&self, den: &ComplexPoly) -> Self {
        let d0 = den.coeff(0);
        assert!(d0 != ZERO, "series division by a polynomial vanishing at 0");
        let len = self.len();
        let mut out = vec![ZERO; len];
        for k in 0..len {
            let mut acc = self.coeffs[k];
            for (j, &d) in den.coeffs().iter().enumerate().skip(1).take(k) {
                acc -= d * out[k - j];
            }
            out[k] = acc / d0;
        }
        TaylorSeries { coeffs: out }
    }

    /// `g(z) / (z - root)` for a root of `g` in the disk, by backward
    /// (tail-first) synthetic division. The result is one coefficient shorter.
    pub fn deflate(&self, root: Complex64) -> Self {
        let len = self.len();
        if len <= 1 {
            return TaylorSeries::zeros(0);
        }
        let mut out = vec![ZERO; len - 1];
        let mut acc = ZERO;
        for k in (1..len).rev() {
            acc = self.coeffs[k] + root * acc;
            out[k - 1] = acc;
        }
        TaylorSeries { coeffs: out }
    }

    /// Exponential of a series with `exp(u)' = u' exp(u)`.
    pub fn exp(&self) -> Self {
        self.exp_to(self.len())
    }

    /// First `len` coefficients of `exp(u)`, treating `u` as zero past its
    /// stored coefficients.
    pub fn exp_to(&self, len: usize) -> Self {
        let mut out = vec![ZERO; len];
        if len == 0 {
            return TaylorSeries { coeffs: out };
        }
        out[0] = self.coeffs.first().copied().unwrap_or(ZERO).exp();
        for k in 1..len {
            let mut acc = ZERO;
            for j in 1..=k.min(self.len().saturating_sub(1)) {
                acc += self.coeffs[j] * j as f64 * out[k - j];
            }
            out[k] = acc / k as f64;
        }
        TaylorSeries { coeffs: out }
    }

    pub fn to_poly(&self) -> ComplexPoly {
        ComplexPoly::new(self.coeffs.clone())
    }

    /// Largest `|a_k| r^k` over the last `window` stored coefficients.
    pub fn tail_bound(&self, radius: f64, window: usize) -> f64 {
        let len = self.len();
        (len.saturating_sub(window)..len)
            .map(|k| self.coeffs[k].norm() * radius.powi(k as i32))
            .fold(0.0, f64::max)
    }

    /// Whether the stored tail is below `threshold` at `radius`; callers that
    /// declare the function analytic beyond `radius` should warn otherwise.
    pub fn tail_resolved(&self, radius: f64, threshold: f64) -> bool {
        self.tail_bound(radius, 8) <= threshold * self.max_abs_coeff().max(f64::MIN_POSITIVE)
    }

    pub fn max_abs_coeff(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }

    /// Smallest length `L` such that every dropped term satisfies
    /// `|a_k| r^k <= tol * max|a|`.
    pub fn effective_len(&self, radius: f64, tol: f64) -> usize {
        let cutoff = tol * self.max_abs_coeff();
        let mut len = self.len();
        while len > 0 && self.coeffs[len - 1].norm() * radius.powi(len as i32 - 1) <= cutoff {
            len -= 1;
        }
        len
    }

    pub fn truncated(&self, len: usize) -> Self {
        TaylorSeries {
            coeffs: self.coeffs[..len.min(self.len())].to_vec(),
        }
    }
}

/// Two-sided coefficient table `c_k`, `|k| <= K`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LaurentSeries {
    /// `c_{-1}, c_{-2}, ..., c_{-K}`
    pub neg: Vec<Complex64>,
    /// `c_0, c_1, ..., c_K`
    pub nonneg: Vec<Complex64>,
}

impl LaurentSeries {
    pub fn new(neg: Vec<Complex64>, nonneg: Vec<Complex64>) -> Self {
        LaurentSeries { neg, nonneg }
    }

    /// Truncation order.
    pub fn order(&self) -> usize {
        self.neg.len().max(self.nonneg.len().saturating_sub(1))
    }

    /// `c_k` for any integer `k`, zero outside the table.
    pub fn coeff(&self, k: i64) -> Complex64 {
        if k >= 0 {
            self.nonneg.get(k as usize).copied().unwrap_or(ZERO)
        } else {
            self.neg.get((-k - 1) as usize).copied().unwrap_or(ZERO)
        }
    }

    pub fn eval(&self, z: Complex64) -> Complex64 {
        let plus = self.nonneg.iter().rev().fold(ZERO, |acc, &c| acc * z + c);
        let w = ONE / z;
        let minus = self.neg.iter().rev().fold(ZERO, |acc, &c| acc * w + c) * w;
        plus + minus
    }

    pub fn max_abs_coeff(&self) -> f64 {
        self.neg
            .iter()
            .chain(&self.nonneg)
            .map(|c| c.norm())
            .fold(0.0, f64::max)
    }
}
