//! Integer-coefficient polynomials `ℓ_{m,k}` expressing the higher Taylor
//! coefficients of `z^m / d(z)` through the first `m` of them.

use std::collections::BTreeMap;

use num_complex::Complex64;
use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// Elementary symmetric functions `s_1..s_N` of `values`, read off the
/// incremental expansion of `∏ (x + b_j)`.
pub fn symmetric_functions(values: &[Complex64]) -> Vec<Complex64> {
    let mut e = vec![Complex64::new(0.0, 0.0); values.len() + 1];
    e[0] = Complex64::new(1.0, 0.0);
    for (j, &b) in values.iter().enumerate() {
        for k in (1..=j + 1).rev() {
            let prev = e[k - 1];
            e[k] += b * prev;
        }
    }
    e.remove(0);
    e
}

/// Multivariate polynomial with exact `i128` coefficients, keyed by
/// exponent vectors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntPoly {
    vars: usize,
    terms: BTreeMap<Vec<u32>, i128>,
}

impl IntPoly {
    pub fn zero(vars: usize) -> Self {
        IntPoly {
            vars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(vars: usize, c: i128) -> Self {
        let mut p = IntPoly::zero(vars);
        if c != 0 {
            p.terms.insert(vec![0; vars], c);
        }
        p
    }

    /// The variable `x_{i+1}`.
    pub fn variable(vars: usize, i: usize) -> Self {
        let mut exps = vec![0; vars];
        exps[i] = 1;
        let mut p = IntPoly::zero(vars);
        p.terms.insert(exps, 1);
        p
    }

    pub fn vars(&self) -> usize {
        self.vars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[u32], i128)> {
        self.terms.iter().map(|(e, &c)| (e.as_slice(), c))
    }

    pub fn coefficient(&self, exponents: &[u32]) -> i128 {
        self.terms.get(exponents).copied().unwrap_or(0)
    }

    fn insert_add(&mut self, exps: Vec<u32>, c: i128) -> Result<()> {
        let entry = self.terms.entry(exps).or_insert(0);
        *entry = entry.checked_add(c).ok_or(Error::CoefficientOverflow)?;
        self.terms.retain(|_, c| *c != 0);
        Ok(())
    }

    pub fn checked_add(&self, other: &IntPoly) -> Result<Self> {
        let mut out = self.clone();
        for (e, &c) in &other.terms {
            out.insert_add(e.clone(), c)?;
        }
        Ok(out)
    }

    pub fn checked_neg(&self) -> Result<Self> {
        let mut out = IntPoly::zero(self.vars);
        for (e, &c) in &self.terms {
            out.terms.insert(
                e.clone(),
                c.checked_neg().ok_or(Error::CoefficientOverflow)?,
            );
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &IntPoly) -> Result<Self> {
        self.checked_add(&other.checked_neg()?)
    }

    pub fn checked_mul(&self, other: &IntPoly) -> Result<Self> {
        let mut out = IntPoly::zero(self.vars);
        for (ea, &ca) in &self.terms {
            for (eb, &cb) in &other.terms {
                let exps: Vec<u32> = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.insert_add(exps, ca.checked_mul(cb).ok_or(Error::CoefficientOverflow)?)?;
            }
        }
        Ok(out)
    }

    pub fn eval(&self, x: &[Complex64]) -> Complex64 {
        assert_eq!(x.len(), self.vars, "wrong number of variables");
        self.terms
            .iter()
            .map(|(exps, &c)| {
                exps.iter()
                    .zip(x)
                    .fold(Complex64::new(c as f64, 0.0), |acc, (&e, &xi)| {
                        acc * xi.powu(e)
                    })
            })
            .sum()
    }
}

impl Serialize for IntPoly {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Term<'a> {
            exponents: &'a [u32],
            coefficient: i128,
        }
        let mut seq = s.serialize_seq(Some(self.terms.len()))?;
        for (exponents, &coefficient) in &self.terms {
            seq.serialize_element(&Term {
                exponents,
                coefficient,
            })?;
        }
        seq.end()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EllEntry {
    pub k: usize,
    pub terms: IntPoly,
}

/// `ℓ_{m,k}` for `m < k <= k_max`, plus the denominator coefficients
/// `d_1..d_m` as polynomials in `x_1..x_m`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EllTable {
    pub m: usize,
    pub k_max: usize,
    pub d: Vec<IntPoly>,
    pub polynomials: Vec<EllEntry>,
}

impl EllTable {
    pub fn get(&self, k: usize) -> Option<&IntPoly> {
        k.checked_sub(self.m + 1)
            .and_then(|i| self.polynomials.get(i))
            .map(|e| &e.terms)
    }

    /// `ℓ_{m,k}(x)`.
    pub fn eval(&self, k: usize, x: &[Complex64]) -> Option<Complex64> {
        self.get(k).map(|p| p.eval(x))
    }
}

/// Solve `d_k = -x_k - Σ_{j<k} x_{k-j} d_j` for `d_1..d_m`, then iterate
/// `(g)_n = -Σ_{i=1}^m d_i (g)_{n-i}` symbolically.
pub fn ell_polynomials(m: usize, k_max: usize) -> Result<EllTable> {
    if m == 0 {
        return Err(Error::invalid("m", "valence must be at least 1"));
    }
    if k_max <= m {
        return Err(Error::invalid("k_max", format!("must exceed m = {m}")));
    }
    let x: Vec<IntPoly> = (0..m).map(|i| IntPoly::variable(m, i)).collect();
    let mut d: Vec<IntPoly> = Vec::with_capacity(m);
    for k in 1..=m {
        let mut dk = x[k - 1].checked_neg()?;
        for j in 1..k {
            dk = dk.checked_sub(&x[k - j - 1].checked_mul(&d[j - 1])?)?;
        }
        d.push(dk);
    }
    // g[n] holds (g)_n as a polynomial; (g)_0 = 1.
    let mut g: Vec<IntPoly> = vec![IntPoly::constant(m, 1)];
    g.extend(x.iter().cloned());
    let mut polynomials = Vec::with_capacity(k_max - m);
    for n in m + 1..=k_max {
        let mut gn = IntPoly::zero(m);
        for i in 1..=m {
            gn = gn.checked_sub(&d[i - 1].checked_mul(&g[n - i])?)?;
        }
        g.push(gn.clone());
        polynomials.push(EllEntry { k: n, terms: gn });
    }
    Ok(EllTable {
        m,
        k_max,
        d,
        polynomials,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::ComplexPoly;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn symmetric_function_examples() {
        let s = symmetric_functions(&[c(1.0, 0.0), c(2.0, 0.0), c(3.0, 0.0)]);
        assert_eq!(s, vec![c(6.0, 0.0), c(11.0, 0.0), c(6.0, 0.0)]);
        assert_eq!(symmetric_functions(&[c(0.3, -2.0)]), vec![c(0.3, -2.0)]);
    }

    #[test]
    fn symmetric_functions_match_expansion() {
        let b = [
            c(0.3, 1.0),
            c(-2.0, 0.5),
            c(1.5, -0.7),
            c(0.0, 0.2),
            c(-0.9, -0.9),
        ];
        // ∏ (x + b_j) = ∏ (x - (-b_j)); coefficient of x^{N-k} is s_k
        let roots: Vec<Complex64> = b.iter().map(|v| -v).collect();
        let expanded = ComplexPoly::from_roots(&roots);
        let s = symmetric_functions(&b);
        for k in 1..=5 {
            assert!((s[k - 1] - expanded.coeff(5 - k)).norm() < 1e-12);
        }
    }

    #[test]
    fn m_one_gives_powers() {
        let table = ell_polynomials(1, 8).unwrap();
        for k in 2..=8 {
            let p = table.get(k).unwrap();
            assert_eq!(p.terms().count(), 1);
            assert_eq!(p.coefficient(&[k as u32]), 1);
        }
    }

    #[test]
    fn m_two_third_coefficient() {
        let table = ell_polynomials(2, 5).unwrap();
        let l23 = table.get(3).unwrap();
        assert_eq!(l23.coefficient(&[1, 1]), 2);
        assert_eq!(l23.coefficient(&[3, 0]), -1);
        assert_eq!(l23.terms().count(), 2);
        assert_eq!(table.d[1].coefficient(&[2, 0]), 1);
        assert_eq!(table.d[1].coefficient(&[0, 1]), -1);
    }

    #[test]
    fn vanishes_at_origin() {
        for m in 1..=4 {
            let table = ell_polynomials(m, 12).unwrap();
            let zeros = vec![c(0.0, 0.0); m];
            for k in m + 1..=12 {
                assert_eq!(table.eval(k, &zeros).unwrap(), c(0.0, 0.0));
            }
        }
    }

    #[test]
    fn invalid_arguments() {
        assert!(ell_polynomials(0, 3).is_err());
        assert!(ell_polynomials(3, 3).is_err());
    }

    #[test]
    fn serializes_terms() {
        let table = ell_polynomials(1, 2).unwrap();
        let json = serde_json::to_string(&table.polynomials[0]).unwrap();
        assert_eq!(
            json,
            r#"{"k":2,"terms":[{"exponents":[2],"coefficient":1}]}"#
        );
    }
}
