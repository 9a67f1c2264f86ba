use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::{ComplexPoly, DEFAULT_CLUSTER_TOL};
use crate::series::TaylorSeries;

/// Quotient `num / den` of complex polynomials.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RationalFn {
    pub num: ComplexPoly,
    pub den: ComplexPoly,
}

impl RationalFn {
    pub fn new(num: ComplexPoly, den: ComplexPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::invalid("den", "denominator is the zero polynomial"));
        }
        Ok(RationalFn { num, den })
    }

    pub fn zero() -> Self {
        RationalFn {
            num: ComplexPoly::zero(),
            den: ComplexPoly::constant(Complex64::new(1.0, 0.0)),
        }
    }

    pub fn polynomial(p: ComplexPoly) -> Self {
        RationalFn {
            num: p,
            den: ComplexPoly::constant(Complex64::new(1.0, 0.0)),
        }
    }

    /// `Σ residues[j] / (z - poles[j])`.
    pub fn from_partial_fractions(poles: &[Complex64], residues: &[Complex64]) -> Self {
        assert_eq!(poles.len(), residues.len());
        let den = ComplexPoly::from_roots(poles);
        let mut num = ComplexPoly::zero();
        for (j, &r) in residues.iter().enumerate() {
            let others: Vec<Complex64> = poles
                .iter()
                .enumerate()
                .filter(|&(i, _)| i != j)
                .map(|(_, &p)| p)
                .collect();
            num = &num + &ComplexPoly::from_roots(&others).scale(r);
        }
        RationalFn { num, den }
    }

    pub fn eval(&self, z: Complex64) -> Complex64 {
        self.num.eval(z) / self.den.eval(z)
    }

    pub fn add_poly(&self, q: &ComplexPoly) -> Self {
        RationalFn {
            num: &self.num + &(q * &self.den),
            den: self.den.clone(),
        }
    }

    pub fn mul(&self, other: &RationalFn) -> Self {
        RationalFn {
            num: &self.num * &other.num,
            den: &self.den * &other.den,
        }
    }

    pub fn poles(&self) -> Result<Vec<Complex64>> {
        if self.den.degree() == Some(0) {
            return Ok(Vec::new());
        }
        self.den.root_list()
    }

    /// Cancel numerator and denominator roots closer than the clustering
    /// tolerance; the denominator comes back monic.
    pub fn normalized(&self) -> Result<Self> {
        if self.num.is_zero() {
            return Ok(RationalFn::zero());
        }
        let num_roots = if self.num.degree() > Some(0) {
            self.num.root_list()?
        } else {
            Vec::new()
        };
        let mut den_roots = self.poles()?;
        let mut kept_num = Vec::new();
        for r in num_roots {
            match den_roots
                .iter()
                .position(|d| (d - r).norm() <= DEFAULT_CLUSTER_TOL)
            {
                Some(i) => {
                    den_roots.swap_remove(i);
                }
                None => kept_num.push(r),
            }
        }
        let gain = self.num.leading() / self.den.leading();
        Ok(RationalFn {
            num: ComplexPoly::from_roots(&kept_num).scale(gain),
            den: ComplexPoly::from_roots(&den_roots),
        })
    }

    /// Coefficients `c_{-1}, c_{-2}, ...` of the expansion at infinity of a
    /// strictly proper rational function, `count` of them.
    ///
    /// Uses `f(1/w) = w^{D-d} rev(num)(w) / rev(den)(w)` with `D = deg den`.
    pub fn coefficients_at_infinity(&self, count: usize) -> Vec<Complex64> {
        let dd = self.den.degree().expect("nonzero denominator");
        let Some(dn) = self.num.degree() else {
            return vec![Complex64::new(0.0, 0.0); count];
        };
        assert!(
            dn < dd,
            "expansion at infinity needs a strictly proper function"
        );
        let rev_num = self.num.reversed(dn).shifted(dd - dn);
        let rev_den = self.den.reversed(dd);
        let s = TaylorSeries::from_ratio(&rev_num, &rev_den, count + 1);
        s.coeffs()[1..].to_vec()
    }
}
