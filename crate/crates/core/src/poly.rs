//! Dense complex polynomials and a simultaneous-iteration root finder.
//!
//! Coefficients are stored constant term first. Roots are computed with the
//! Aberth–Ehrlich iteration and then merged into clusters so that numerically
//! split multiple roots are reported once with their multiplicity.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Default distance below which two computed roots are merged.
pub const DEFAULT_CLUSTER_TOL: f64 = 1e-6;

const MAX_ABERTH_ITERATIONS: usize = 1000;

#[derive(Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct ComplexPoly {
    coeffs: Vec<Complex64>,
}

/// A root together with the number of computed roots merged into it.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Root {
    pub value: Complex64,
    pub multiplicity: usize,
}

impl ComplexPoly {
    pub fn new(coeffs: Vec<Complex64>) -> Self {
        let mut p = ComplexPoly { coeffs };
        p.trim();
        p
    }

    pub fn from_real(coeffs: &[f64]) -> Self {
        Self::new(coeffs.iter().map(|&c| Complex64::new(c, 0.0)).collect())
    }

    pub fn zero() -> Self {
        ComplexPoly { coeffs: Vec::new() }
    }

    pub fn constant(c: Complex64) -> Self {
        Self::new(vec![c])
    }

    /// `z^k`.
    pub fn monomial(k: usize) -> Self {
        let mut coeffs = vec![Complex64::new(0.0, 0.0); k + 1];
        coeffs[k] = Complex64::new(1.0, 0.0);
        ComplexPoly { coeffs }
    }

    /// Monic polynomial `∏ (z - r)`.
    pub fn from_roots(roots: &[Complex64]) -> Self {
        let mut coeffs = vec![Complex64::new(1.0, 0.0)];
        for &r in roots {
            coeffs.push(Complex64::new(0.0, 0.0));
            for k in (1..coeffs.len()).rev() {
                coeffs[k] = coeffs[k - 1] - r * coeffs[k];
            }
            coeffs[0] *= -r;
        }
        ComplexPoly::new(coeffs)
    }

    fn trim(&mut self) {
        while matches!(self.coeffs.last(), Some(c) if *c == Complex64::new(0.0, 0.0)) {
            self.coeffs.pop();
        }
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Complex64> {
        self.coeffs
    }

    /// Coefficient of `z^k`, zero beyond the degree.
    pub fn coeff(&self, k: usize) -> Complex64 {
        self.coeffs.get(k).copied().unwrap_or_default()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree with the `-1` convention for the zero polynomial.
    pub fn signed_degree(&self) -> i64 {
        self.coeffs.len() as i64 - 1
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Membership in `P_n`.
    pub fn in_pn(&self, n: usize) -> bool {
        self.degree().is_none_or(|d| d <= n)
    }

    pub fn leading(&self) -> Complex64 {
        self.coeffs.last().copied().unwrap_or_default()
    }

    /// Multiplicity of the zero at the origin; `None` for the zero polynomial.
    pub fn origin_order(&self) -> Option<usize> {
        self.coeffs
            .iter()
            .position(|c| *c != Complex64::new(0.0, 0.0))
    }

    pub fn max_abs_coeff(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }

    pub fn eval(&self, z: Complex64) -> Complex64 {
        self.coeffs
            .iter()
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, &c| acc * z + c)
    }

    /// Value and derivative in one Horner pass.
    pub fn eval_with_derivative(&self, z: Complex64) -> (Complex64, Complex64) {
        let mut p = Complex64::new(0.0, 0.0);
        let mut dp = Complex64::new(0.0, 0.0);
        for &c in self.coeffs.iter().rev() {
            dp = dp * z + p;
            p = p * z + c;
        }
        (p, dp)
    }

    pub fn derivative(&self) -> Self {
        ComplexPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, &c)| c * k as f64)
                .collect(),
        )
    }

    pub fn scale(&self, s: Complex64) -> Self {
        ComplexPoly::new(self.coeffs.iter().map(|&c| c * s).collect())
    }

    /// `z^n p(1/z)`; requires `deg p <= n`.
    pub fn reversed(&self, n: usize) -> Self {
        assert!(self.in_pn(n), "reversal degree below polynomial degree");
        let mut coeffs = vec![Complex64::new(0.0, 0.0); n + 1];
        for (k, &c) in self.coeffs.iter().enumerate() {
            coeffs[n - k] = c;
        }
        ComplexPoly::new(coeffs)
    }

    /// `z^k p(z)`.
    pub fn shifted(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![Complex64::new(0.0, 0.0); k];
        coeffs.extend_from_slice(&self.coeffs);
        ComplexPoly { coeffs }
    }

    /// Quotient and remainder of division by `divisor`.
    pub fn div_rem(&self, divisor: &ComplexPoly) -> (ComplexPoly, ComplexPoly) {
        let dd = divisor.degree().expect("division by the zero polynomial");
        let Some(nd) = self.degree() else {
            return (Self::zero(), Self::zero());
        };
        if nd < dd {
            return (Self::zero(), self.clone());
        }
        let lead = divisor.leading();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![Complex64::new(0.0, 0.0); nd - dd + 1];
        for k in (0..=nd - dd).rev() {
            let c = rem[k + dd] / lead;
            quot[k] = c;
            for (j, &d) in divisor.coeffs.iter().enumerate() {
                rem[k + j] -= c * d;
            }
        }
        rem.truncate(dd);
        (ComplexPoly::new(quot), ComplexPoly::new(rem))
    }

    /// All roots, clustered with [`DEFAULT_CLUSTER_TOL`].
    pub fn roots(&self) -> Result<Vec<Root>> {
        self.roots_with_tol(DEFAULT_CLUSTER_TOL)
    }

    /// All roots; computed roots closer than `cluster_tol` (transitively) are
    /// merged into their centroid with summed multiplicity.
    pub fn roots_with_tol(&self, cluster_tol: f64) -> Result<Vec<Root>> {
        let flat = self.roots_unclustered()?;
        let mut roots = cluster_roots(&flat, cluster_tol);
        for root in roots.iter_mut().filter(|r| r.multiplicity > 1) {
            root.value = self.polish_multiple(root.value, root.multiplicity, cluster_tol);
        }
        Ok(roots)
    }

    /// A root of multiplicity `k` is a simple root of the `(k-1)`-th
    /// derivative; a few Newton steps there sharpen the cluster centroid.
    fn polish_multiple(&self, start: Complex64, k: usize, max_shift: f64) -> Complex64 {
        if start == Complex64::new(0.0, 0.0) && self.origin_order().unwrap_or(0) >= k {
            return start;
        }
        let mut d = self.clone();
        for _ in 1..k {
            d = d.derivative();
        }
        let mut z = start;
        for _ in 0..8 {
            let (v, dv) = d.eval_with_derivative(z);
            if dv.norm() == 0.0 {
                break;
            }
            let step = v / dv;
            if !step.is_finite() {
                break;
            }
            z -= step;
            if step.norm() <= 4.0 * f64::EPSILON * z.norm().max(1.0) {
                break;
            }
        }
        if (z - start).norm() <= max_shift {
            z
        } else {
            start
        }
    }

    /// Roots listed with repetition, total count equal to the degree.
    pub fn root_list(&self) -> Result<Vec<Complex64>> {
        Ok(self
            .roots()?
            .into_iter()
            .flat_map(|r| std::iter::repeat_n(r.value, r.multiplicity))
            .collect())
    }

    /// Raw Aberth–Ehrlich roots without clustering.
    pub fn roots_unclustered(&self) -> Result<Vec<Complex64>> {
        let degree = self
            .degree()
            .filter(|&d| d >= 1)
            .ok_or_else(|| Error::invalid("poly", "root finding needs degree >= 1"))?;
        let origin = self.origin_order().unwrap_or(0);
        let mut roots = vec![Complex64::new(0.0, 0.0); origin];
        let reduced = ComplexPoly::new(self.coeffs[origin..].to_vec());
        match degree - origin {
            0 => {}
            1 => roots.push(-reduced.coeffs[0] / reduced.coeffs[1]),
            _ => roots.extend(aberth(&reduced)?),
        }
        Ok(roots)
    }
}

fn initial_guesses(p: &ComplexPoly) -> Vec<Complex64> {
    let n = p.degree().unwrap();
    // Geometric mean of root moduli, then a rotated circle.
    let radius = (p.coeffs[0].norm() / p.leading().norm()).powf(1.0 / n as f64);
    let radius = if radius.is_finite() && radius > 0.0 {
        radius
    } else {
        1.0
    };
    (0..n)
        .map(|k| {
            let theta = std::f64::consts::TAU * k as f64 / n as f64 + 0.4;
            Complex64::from_polar(radius, theta)
        })
        .collect()
}

fn aberth(p: &ComplexPoly) -> Result<Vec<Complex64>> {
    let n = p.degree().unwrap();
    let abs_coeffs: Vec<f64> = p.coeffs.iter().map(|c| c.norm()).collect();
    let mut z = initial_guesses(p);
    let mut converged = vec![false; n];
    for _ in 0..MAX_ABERTH_ITERATIONS {
        let mut all_done = true;
        for i in 0..n {
            if converged[i] {
                continue;
            }
            let (value, deriv) = p.eval_with_derivative(z[i]);
            // Horner running-error bound: stop once |p(z)| is at rounding level.
            let scale = abs_coeffs
                .iter()
                .rev()
                .fold(0.0, |acc, &c| acc * z[i].norm() + c);
            if value.norm() <= 8.0 * f64::EPSILON * scale {
                converged[i] = true;
                continue;
            }
            all_done = false;
            let ratio = value / deriv;
            let repulsion: Complex64 = (0..n)
                .filter(|&j| j != i)
                .map(|j| {
                    let diff = z[i] - z[j];
                    if diff == Complex64::new(0.0, 0.0) {
                        Complex64::new(0.0, 0.0)
                    } else {
                        diff.inv()
                    }
                })
                .sum();
            let step = ratio / (Complex64::new(1.0, 0.0) - ratio * repulsion);
            if step.is_finite() {
                z[i] -= step;
            } else {
                // derivative vanished: nudge off the critical point
                let nudge = Complex64::new(1e-3, 1e-3) * (1.0 + z[i].norm());
                z[i] += nudge;
            }
        }
        if all_done {
            return Ok(z);
        }
    }
    Err(Error::NonConvergence {
        iterations: MAX_ABERTH_ITERATIONS,
    })
}

/// Single-linkage clustering of computed roots.
pub fn cluster_roots(roots: &[Complex64], cluster_tol: f64) -> Vec<Root> {
    let n = roots.len();
    let mut label: Vec<usize> = (0..n).collect();
    fn find(label: &mut [usize], i: usize) -> usize {
        let mut r = i;
        while label[r] != r {
            r = label[r];
        }
        label[i] = r;
        r
    }
    for i in 0..n {
        for j in i + 1..n {
            if (roots[i] - roots[j]).norm() <= cluster_tol {
                let (a, b) = (find(&mut label, i), find(&mut label, j));
                if a != b {
                    label[b.max(a)] = a.min(b);
                }
            }
        }
    }
    let mut groups: Vec<(usize, Complex64, usize)> = Vec::new();
    for i in 0..n {
        let r = find(&mut label, i);
        match groups.iter_mut().find(|g| g.0 == r) {
            Some(g) => {
                g.1 += roots[i];
                g.2 += 1;
            }
            None => groups.push((r, roots[i], 1)),
        }
    }
    groups
        .into_iter()
        .map(|(_, sum, count)| Root {
            value: sum / count as f64,
            multiplicity: count,
        })
        .collect()
}

impl fmt::Debug for ComplexPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ComplexPoly{:?}", self.coeffs)
    }
}

impl Add for &ComplexPoly {
    type Output = ComplexPoly;
    fn add(self, rhs: &ComplexPoly) -> ComplexPoly {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        ComplexPoly::new((0..len).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl Sub for &ComplexPoly {
    type Output = ComplexPoly;
    fn sub(self, rhs: &ComplexPoly) -> ComplexPoly {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        ComplexPoly::new((0..len).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl Neg for &ComplexPoly {
    type Output = ComplexPoly;
    fn neg(self) -> ComplexPoly {
        self.scale(Complex64::new(-1.0, 0.0))
    }
}

impl Mul for &ComplexPoly {
    type Output = ComplexPoly;
    fn mul(self, rhs: &ComplexPoly) -> ComplexPoly {
        if self.is_zero() || rhs.is_zero() {
            return ComplexPoly::zero();
        }
        let mut out = vec![Complex64::new(0.0, 0.0); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        ComplexPoly::new(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn eval_examples() {
        let p = ComplexPoly::from_real(&[-0.25, 0.0, 1.0]);
        assert_eq!(p.eval(c(1.0, 0.0)), c(0.75, 0.0));
        assert_eq!(ComplexPoly::zero().eval(c(5.0, 0.0)), c(0.0, 0.0));
        // 1 + 2i + i^3 = 1 + i
        let p = ComplexPoly::from_real(&[1.0, 2.0, 0.0, 1.0]);
        assert_eq!(p.eval(c(0.0, 1.0)), c(1.0, 1.0));
    }

    #[test]
    fn degree_conventions() {
        assert_eq!(ComplexPoly::zero().degree(), None);
        assert_eq!(ComplexPoly::zero().signed_degree(), -1);
        let p = ComplexPoly::new(vec![c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)]);
        assert_eq!(p.degree(), Some(0));
        assert!(p.in_pn(0));
        assert!(!ComplexPoly::monomial(3).in_pn(2));
    }

    #[test]
    fn roots_of_quadratic() {
        let p = ComplexPoly::from_real(&[-0.25, 0.0, 1.0]);
        let mut r = p.root_list().unwrap();
        r.sort_by(|a, b| a.re.total_cmp(&b.re));
        assert!((r[0] - c(-0.5, 0.0)).norm() < 1e-14);
        assert!((r[1] - c(0.5, 0.0)).norm() < 1e-14);
    }

    #[test]
    fn double_root_is_clustered() {
        // (z - 0.3)^2 (z + 0.5)
        let p = ComplexPoly::from_roots(&[c(0.3, 0.0), c(0.3, 0.0), c(-0.5, 0.0)]);
        let roots = p.roots().unwrap();
        assert_eq!(roots.len(), 2);
        let double = roots.iter().find(|r| r.multiplicity == 2).unwrap();
        let single = roots.iter().find(|r| r.multiplicity == 1).unwrap();
        assert!((double.value - c(0.3, 0.0)).norm() < 1e-9);
        assert!((single.value - c(-0.5, 0.0)).norm() < 1e-12);
        // residual check against the factored form
        for r in &roots {
            let bound = 1e-12 * (1.0 + r.value.norm()).powi(3) * p.max_abs_coeff();
            assert!(p.eval(r.value).norm() <= bound);
        }
    }

    #[test]
    fn cube_root_at_origin() {
        let roots = ComplexPoly::monomial(3).roots().unwrap();
        assert_eq!(
            roots,
            vec![Root {
                value: c(0.0, 0.0),
                multiplicity: 3
            }]
        );
    }

    #[test]
    fn constant_has_no_roots() {
        assert!(ComplexPoly::constant(c(2.0, 0.0)).roots().is_err());
    }

    #[test]
    fn division_recovers_factors() {
        let a = ComplexPoly::from_roots(&[c(0.2, 0.1), c(-0.4, 0.0)]);
        let b = ComplexPoly::from_real(&[1.0, 3.0, 0.5]);
        let prod = &(&a * &b) + &ComplexPoly::from_real(&[0.25]);
        let (q, r) = prod.div_rem(&a);
        assert!((&q - &b).max_abs_coeff() < 1e-14);
        assert!((r.coeff(0) - c(0.25, 0.0)).norm() < 1e-14);
        assert!(r.in_pn(1));
    }

    #[test]
    fn reversal() {
        // z^3 q(1/z) with q = 1 + 2z
        let q = ComplexPoly::from_real(&[1.0, 2.0]);
        let p = q.reversed(3);
        assert_eq!(
            p.coeffs(),
            &[c(0.0, 0.0), c(0.0, 0.0), c(2.0, 0.0), c(1.0, 0.0)]
        );
        assert_eq!(p.origin_order(), Some(2));
    }
}
