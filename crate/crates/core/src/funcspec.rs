//! JSON function specifications.
//!
//! ```json
//! {"type": "rational", "num": [[1, 0]], "den": [[-0.5, 0], [1, 0]]}
//! {"type": "laurent", "neg": [[3, 0]], "nonneg": [[0, 0], [1, 0]]}
//! {"type": "samples", "n": 64, "values": [[1, 0], ...]}
//! ```
//!
//! Complex numbers are `[re, im]` pairs; coefficient arrays start at the
//! constant term (`neg` starts at `c_{-1}`).

use num_complex::Complex64;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::grid::{analyze_grid, check_grid_size, synthesize, BoundaryGrid};
use crate::poly::ComplexPoly;
use crate::rational::RationalFn;
use crate::series::LaurentSeries;

/// Samples with `|den| <= POLE_TOL * max|den|` are treated as poles on the circle.
const POLE_TOL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq)]
pub enum FunctionSpec {
    Rational(RationalFn),
    Laurent(LaurentSeries),
    Samples(BoundaryGrid),
}

impl FunctionSpec {
    pub fn parse(text: &str) -> Result<Self> {
        let value: Value =
            serde_json::from_str(text).map_err(|e| Error::invalid("$", e.to_string()))?;
        FunctionSpec::from_value(&value)
    }

    pub fn from_value(value: &Value) -> Result<Self> {
        let obj = value
            .as_object()
            .ok_or_else(|| Error::invalid("$", "expected a JSON object"))?;
        let kind = obj
            .get("type")
            .ok_or_else(|| Error::invalid("type", "missing"))?
            .as_str()
            .ok_or_else(|| Error::invalid("type", "expected a string"))?;
        let field = |name: &str| obj.get(name).ok_or_else(|| Error::invalid(name, "missing"));
        match kind {
            "rational" => {
                let num = ComplexPoly::new(complex_array(field("num")?, "num")?);
                let den = ComplexPoly::new(complex_array(field("den")?, "den")?);
                Ok(FunctionSpec::Rational(RationalFn::new(num, den)?))
            }
            "laurent" => {
                let neg = complex_array(field("neg")?, "neg")?;
                let nonneg = complex_array(field("nonneg")?, "nonneg")?;
                Ok(FunctionSpec::Laurent(LaurentSeries::new(neg, nonneg)))
            }
            "samples" => {
                let n = field("n")?
                    .as_u64()
                    .ok_or_else(|| Error::invalid("n", "expected a nonnegative integer"))?
                    as usize;
                check_grid_size(n).map_err(|e| Error::invalid("n", e.to_string()))?;
                let values = complex_array(field("values")?, "values")?;
                if values.len() != n {
                    return Err(Error::invalid(
                        "values",
                        format!("expected {n} samples, got {}", values.len()),
                    ));
                }
                Ok(FunctionSpec::Samples(BoundaryGrid::from_values(values)?))
            }
            other => Err(Error::invalid(
                "type",
                format!("unknown function type `{other}`"),
            )),
        }
    }

    pub fn to_value(&self) -> Value {
        let pairs = |v: &[Complex64]| -> Value { v.iter().map(|c| json!([c.re, c.im])).collect() };
        match self {
            FunctionSpec::Rational(r) => {
                json!({"type": "rational", "num": pairs(r.num.coeffs()), "den": pairs(r.den.coeffs())})
            }
            FunctionSpec::Laurent(l) => {
                json!({"type": "laurent", "neg": pairs(&l.neg), "nonneg": pairs(&l.nonneg)})
            }
            FunctionSpec::Samples(g) => {
                json!({"type": "samples", "n": g.len(), "values": pairs(g.values())})
            }
        }
    }

    /// Samples on an `n`-point grid; sample specs keep their own size.
    pub fn grid(&self, n: usize) -> Result<BoundaryGrid> {
        match self {
            FunctionSpec::Rational(r) => {
                let den = BoundaryGrid::sample(n, |t| r.den.eval(t))?;
                if den.min_modulus() <= POLE_TOL * den.max_modulus() {
                    return Err(Error::invalid("den", "pole on the unit circle"));
                }
                BoundaryGrid::sample(n, |t| r.eval(t))
            }
            FunctionSpec::Laurent(l) => synthesize(l, n),
            FunctionSpec::Samples(g) => Ok(g.clone()),
        }
    }

    pub fn laurent(&self, n: usize) -> Result<LaurentSeries> {
        Ok(analyze_grid(&self.grid(n)?))
    }
}

fn complex_array(value: &Value, field: &str) -> Result<Vec<Complex64>> {
    let items = value
        .as_array()
        .ok_or_else(|| Error::invalid(field, "expected an array of [re, im] pairs"))?;
    items
        .iter()
        .enumerate()
        .map(|(i, item)| {
            parse_complex(item)
                .ok_or_else(|| Error::invalid(format!("{field}[{i}]"), "expected [re, im]"))
        })
        .collect()
}

/// A `[re, im]` pair of finite numbers.
pub fn parse_complex(value: &Value) -> Option<Complex64> {
    match value.as_array()?.as_slice() {
        [re, im] => {
            let z = Complex64::new(re.as_f64()?, im.as_f64()?);
            (z.re.is_finite() && z.im.is_finite()).then_some(z)
        }
        _ => None,
    }
}

/// Parse a JSON array of `[re, im]` pairs, naming `field` on failure.
pub fn parse_complex_list(text: &str, field: &str) -> Result<Vec<Complex64>> {
    let value: Value =
        serde_json::from_str(text).map_err(|e| Error::invalid(field, e.to_string()))?;
    complex_array(&value, field)
}
