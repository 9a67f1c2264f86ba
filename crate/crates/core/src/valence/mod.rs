//! Normalized m-valent functions, the rational class `B_m = {z^m / d}` and
//! the transformation
//!
//! ```text
//! gᵃ(z) = c z^m (g(z) - a) / ((z - z_1) ... (z - z_m)),   g(z_j) = a,
//! ```
//!
//! which fixes exactly the members of `B_m`.

mod ell;

pub use ell::{ell_polynomials, symmetric_functions, EllEntry, EllTable, IntPoly};

use num_complex::Complex64;
use rand::Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::poly::ComplexPoly;
use crate::rng::{point_in_annulus, poly_in_disk, trial_rng};
use crate::series::TaylorSeries;
use crate::zeros::{count_zeros_disk, newton_polish, solve_level_set, LEVEL_SET_RADIUS};

/// Default series length for valent functions.
pub const WORKING_LEN: usize = 256;
pub const DEFAULT_SLIT_MARGIN: f64 = 1e-3;
const NORMALIZATION_TOL: f64 = 1e-12;
/// Level values used to confirm valence on construction.
const VERIFY_LEVELS: usize = 5;

/// Radius `4^-m` of the disk of levels attained exactly `m` times.
pub fn hayman_radius(m: usize) -> f64 {
    0.25f64.powi(m as i32)
}

/// A series `z^m + (g)_1 z^{m+1} + ...` whose valence was checked on
/// `|z| < verified_radius`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ValentFn {
    series: TaylorSeries,
    m: usize,
    verified_radius: f64,
}

impl ValentFn {
    /// Checks the normalization and that `g = a` has `m` solutions for a few
    /// fixed levels in the Hayman disk.
    pub fn new(series: TaylorSeries, m: usize) -> Result<Self> {
        let g = ValentFn::normalized(series, m)?;
        for a in verification_levels(m) {
            solve_level_set(&g.series, m, a)?;
        }
        Ok(g)
    }

    fn normalized(series: TaylorSeries, m: usize) -> Result<Self> {
        if m == 0 {
            return Err(Error::invalid("m", "valence must be at least 1"));
        }
        if series.len() <= m {
            return Err(Error::invalid(
                "series",
                format!("needs more than {m} coefficients"),
            ));
        }
        if let Some(j) = (0..m).find(|&j| series.coeff(j).norm() > NORMALIZATION_TOL) {
            return Err(Error::invalid(
                "series",
                format!("coefficient {j} must vanish"),
            ));
        }
        if (series.coeff(m) - Complex64::new(1.0, 0.0)).norm() > NORMALIZATION_TOL {
            return Err(Error::invalid(
                "series",
                format!("coefficient {m} must equal 1"),
            ));
        }
        Ok(ValentFn {
            series,
            m,
            verified_radius: LEVEL_SET_RADIUS,
        })
    }

    pub fn series(&self) -> &TaylorSeries {
        &self.series
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn verified_radius(&self) -> f64 {
        self.verified_radius
    }

    /// `(g)_k`, the coefficient of `z^{m+k}`.
    pub fn coeff(&self, k: usize) -> Complex64 {
        self.series.coeff(self.m + k)
    }

    /// `(g)_1 .. (g)_m`.
    pub fn leading(&self) -> Vec<Complex64> {
        (1..=self.m).map(|k| self.coeff(k)).collect()
    }

    pub fn eval(&self, z: Complex64) -> Complex64 {
        self.series.eval(z)
    }
}

fn verification_levels(m: usize) -> impl Iterator<Item = Complex64> {
    let r = 0.5 * hayman_radius(m);
    (0..VERIFY_LEVELS).map(move |j| {
        Complex64::from_polar(
            r,
            std::f64::consts::TAU * (j as f64 + 0.3) / VERIFY_LEVELS as f64,
        )
    })
}

/// `z^m / d` with `d ∈ P_m`, `d(0) = 1` and no zeros in the closed disk.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BmFn {
    d: ComplexPoly,
    m: usize,
}

impl BmFn {
    pub fn new(d: ComplexPoly, m: usize) -> Result<Self> {
        if m == 0 {
            return Err(Error::invalid("m", "valence must be at least 1"));
        }
        if !d.in_pn(m) {
            return Err(Error::invalid("d", format!("degree exceeds m = {m}")));
        }
        if (d.coeff(0) - Complex64::new(1.0, 0.0)).norm() > NORMALIZATION_TOL {
            return Err(Error::invalid("d", "d(0) must equal 1"));
        }
        if d.degree().unwrap_or(0) > 0 {
            if let Some(r) = d.root_list()?.into_iter().find(|r| r.norm() <= 1.0) {
                return Err(Error::invalid(
                    "d",
                    format!("zero {r} lies in the closed disk"),
                ));
            }
        }
        Ok(BmFn { d, m })
    }

    /// `d(z) = ∏ (1 - z / ζ_j)`.
    pub fn from_zeros(zeros: &[Complex64], m: usize) -> Result<Self> {
        let d = zeros.iter().fold(
            ComplexPoly::constant(Complex64::new(1.0, 0.0)),
            |acc, &zeta| &acc * &ComplexPoly::new(vec![Complex64::new(1.0, 0.0), -zeta.inv()]),
        );
        BmFn::new(d, m)
    }

    /// Random member with `m` zeros of `d` in the annulus `1.25 <= |ζ| <= 3`.
    pub fn random(rng: &mut impl Rng, m: usize) -> Result<Self> {
        let zeros: Vec<Complex64> = (0..m).map(|_| point_in_annulus(rng, 1.25, 3.0)).collect();
        BmFn::from_zeros(&zeros, m)
    }

    pub fn d(&self) -> &ComplexPoly {
        &self.d
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn eval(&self, z: Complex64) -> Complex64 {
        z.powu(self.m as u32) / self.d.eval(z)
    }

    pub fn series(&self, len: usize) -> TaylorSeries {
        TaylorSeries::from_ratio(&ComplexPoly::monomial(self.m), &self.d, len)
    }

    pub fn valent(&self, len: usize) -> Result<ValentFn> {
        ValentFn::new(self.series(len), self.m)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BmCheck {
    pub member: bool,
    /// `max_{m < k <= k_max} |(g)_k - ℓ_{m,k}((g)_1, ..., (g)_m)|`.
    pub deviation: f64,
}

pub fn is_bm(g: &ValentFn, k_max: usize, tol: f64) -> Result<BmCheck> {
    is_bm_with(&ell_polynomials(g.m, k_max)?, g, tol)
}

pub fn is_bm_with(table: &EllTable, g: &ValentFn, tol: f64) -> Result<BmCheck> {
    let deviation = phi(table, g)?.into_iter().fold(0.0, f64::max);
    Ok(BmCheck {
        member: deviation <= tol,
        deviation,
    })
}

/// `φ_n(g) = |(g)_n - ℓ_{m,n}((g)_1..(g)_m)|` for `m < n <= k_max`.
pub fn phi(table: &EllTable, g: &ValentFn) -> Result<Vec<f64>> {
    if table.m != g.m {
        return Err(Error::invalid("m", "table and function valence differ"));
    }
    if g.series.len() <= g.m + table.k_max {
        return Err(Error::invalid(
            "series",
            format!("needs coefficients up to z^{}", g.m + table.k_max),
        ));
    }
    let x = g.leading();
    Ok((g.m + 1..=table.k_max)
        .map(|n| (g.coeff(n) - table.eval(n, &x).unwrap()).norm())
        .collect())
}

/// `d_1..d_m` from the exact triangular relations `d_k = -(g)_k - Σ (g)_{k-j} d_j`.
pub fn fit_denominator(g: &ValentFn) -> ComplexPoly {
    let mut d = vec![Complex64::new(1.0, 0.0)];
    for k in 1..=g.m {
        let mut dk = -g.coeff(k);
        for j in 1..k {
            dk -= g.coeff(k - j) * d[j];
        }
        d.push(dk);
    }
    ComplexPoly::new(d)
}

/// `c z^k h(z) / ∏ (z - z_j)` with `c` making the `z^k` coefficient exactly 1.
/// Returns the series and `c`.
fn divide_out(
    h: &TaylorSeries,
    roots: &[Complex64],
    k: usize,
) -> Result<(TaylorSeries, Complex64)> {
    let quotient = roots.iter().fold(h.clone(), |acc, &r| acc.deflate(r));
    let lead = quotient.coeff(0);
    if lead.norm() == 0.0 {
        return Err(Error::invalid("roots", "quotient vanishes at the origin"));
    }
    let c = lead.inv();
    let mut coeffs = vec![Complex64::new(0.0, 0.0); k];
    coeffs.extend(quotient.coeffs().iter().map(|&v| v * c));
    coeffs[k] = Complex64::new(1.0, 0.0);
    Ok((TaylorSeries::new(coeffs), c))
}

/// Series of `gᵃ` without re-checking valence. Keeps the input length.
pub fn transform_series(g: &ValentFn, a: Complex64) -> Result<TaylorSeries> {
    let roots = solve_level_set(&g.series, g.m, a)?;
    let h = g.series.add_poly(&ComplexPoly::constant(-a));
    Ok(divide_out(&h, &roots, g.m)?.0)
}

pub fn transform(g: &ValentFn, a: Complex64) -> Result<ValentFn> {
    ValentFn::new(transform_series(g, a)?, g.m)
}

/// Coefficients `(gᵃ)_1..(gᵃ)_m` two ways: from the transformed series, and
/// from `1/d`, `d(z) = ∏ (1 - z/ζ_j)` over the level-set roots, with
/// `(gᵃ)_m = (1/d)_m - 1/a`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Us2Check {
    pub a: Complex64,
    pub roots: Vec<Complex64>,
    pub series: Vec<Complex64>,
    pub formula: Vec<Complex64>,
    pub max_deviation: f64,
}

pub fn us2_check(g: &ValentFn, a: Complex64) -> Result<Us2Check> {
    if a.norm() == 0.0 {
        return Err(Error::invalid("a", "level must be nonzero"));
    }
    let m = g.m;
    let roots = solve_level_set(&g.series, m, a)?;
    let h = g.series.add_poly(&ComplexPoly::constant(-a));
    let (transformed, _) = divide_out(&h, &roots, m)?;
    let series: Vec<Complex64> = (1..=m).map(|j| transformed.coeff(m + j)).collect();

    let b: Vec<Complex64> = roots.iter().map(|z| -z.inv()).collect();
    let s = symmetric_functions(&b);
    let mut inv_d = vec![Complex64::new(1.0, 0.0)];
    for k in 1..=m {
        let mut v = -s[k - 1];
        for j in 1..k {
            v -= inv_d[k - j] * s[j - 1];
        }
        inv_d.push(v);
    }
    let mut formula: Vec<Complex64> = inv_d[1..].to_vec();
    formula[m - 1] -= a.inv();
    let max_deviation = series
        .iter()
        .zip(&formula)
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max);
    Ok(Us2Check {
        a,
        roots,
        series,
        formula,
        max_deviation,
    })
}

/// Distance from `a` to the slit `[0, 4^-m]`.
pub fn slit_distance(a: Complex64, m: usize) -> f64 {
    let end = hayman_radius(m);
    if a.re < 0.0 {
        a.norm()
    } else if a.re > end {
        (a - end).norm()
    } else {
        a.im.abs()
    }
}

/// Random level with `lo <= |a| / 4^-m <= hi`, away from the slit.
pub fn random_level(rng: &mut impl Rng, m: usize, lo: f64, hi: f64, slit_margin: f64) -> Complex64 {
    let r = hayman_radius(m);
    loop {
        let a = point_in_annulus(rng, lo * r, hi * r);
        if slit_distance(a, m) >= slit_margin * r {
            return a;
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProfileOptions {
    pub slit_margin: f64,
    /// Points on each sub-mean-value circle; 0 disables the probe.
    pub probe_samples: usize,
}

impl Default for ProfileOptions {
    fn default() -> Self {
        ProfileOptions {
            slit_margin: DEFAULT_SLIT_MARGIN,
            probe_samples: 16,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SubMeanProbe {
    pub center: Complex64,
    pub radius: f64,
    pub center_value: f64,
    pub circle_mean: f64,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ModulusProfile {
    pub k: usize,
    pub levels: Vec<Complex64>,
    pub values: Vec<f64>,
    pub probes: Vec<SubMeanProbe>,
}

impl ModulusProfile {
    pub fn spread(&self) -> f64 {
        let max = self
            .values
            .iter()
            .copied()
            .fold(f64::NEG_INFINITY, f64::max);
        let min = self.values.iter().copied().fold(f64::INFINITY, f64::min);
        max - min
    }
}

/// `|(gᵃ)_k|` over `levels`, with a sub-mean-value check on a circle around
/// each level.
pub fn modulus_profile(
    g: &ValentFn,
    k: usize,
    levels: &[Complex64],
    opts: &ProfileOptions,
) -> Result<ModulusProfile> {
    let r = hayman_radius(g.m);
    for &a in levels {
        if !(a.norm() < r) {
            return Err(Error::OutsideHaymanDisk { a, m: g.m });
        }
        if slit_distance(a, g.m) < opts.slit_margin {
            return Err(Error::OnSlit {
                a,
                margin: opts.slit_margin,
            });
        }
    }
    let coefficient =
        |a: Complex64| -> Result<f64> { Ok(transform_series(g, a)?.coeff(g.m + k).norm()) };
    let values = levels
        .iter()
        .map(|&a| coefficient(a))
        .collect::<Result<Vec<_>>>()?;
    let mut probes = Vec::new();
    if opts.probe_samples > 0 {
        for (&a, &center_value) in levels.iter().zip(&values) {
            let radius = 0.5 * (r - a.norm());
            let mut sum = 0.0;
            for j in 0..opts.probe_samples {
                let theta = std::f64::consts::TAU * j as f64 / opts.probe_samples as f64;
                sum += coefficient(a + Complex64::from_polar(radius, theta))?;
            }
            let circle_mean = sum / opts.probe_samples as f64;
            probes.push(SubMeanProbe {
                center: a,
                radius,
                center_value,
                circle_mean,
                holds: center_value <= circle_mean + 1e-8,
            });
        }
    }
    Ok(ModulusProfile {
        k,
        levels: levels.to_vec(),
        values,
        probes,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SpotCheck {
    pub n: usize,
    pub p: ComplexPoly,
    pub zero_count: i64,
    pub bound: usize,
    pub satisfied: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct YConstruction {
    pub k: usize,
    pub y: ValentFn,
    /// Monic polynomial vanishing at the zeros of `g_{n0} + q`.
    pub v: ComplexPoly,
    pub c: Complex64,
    /// Radius of the disk on which zeros were counted.
    pub radius: f64,
    pub spot_checks: Vec<SpotCheck>,
}

/// `y = c z^k (g_{n0} + q) / v` with `k = m + n0`, `g_{n0} = z^{n0} g`, `v`
/// the monic polynomial vanishing at the `k` zeros of `g_{n0} + q` in the
/// disk and `z^{-k} y -> 1`. Counts `z(y_n + p) <= k + n` are spot-checked
/// on random `(n, p)`.
pub fn build_y(
    g: &TaylorSeries,
    m: usize,
    n0: usize,
    q: &ComplexPoly,
    seed: u64,
) -> Result<YConstruction> {
    if !q.in_pn(n0) {
        return Err(Error::invalid("q", format!("degree exceeds n0 = {n0}")));
    }
    let k = m + n0;
    let h = g.resized(g.len() + n0).shifted(n0).add_poly(q);
    let radius = if h.tail_resolved(1.0, 1e-14) {
        1.0
    } else {
        LEVEL_SET_RADIUS
    };
    let contour = count_zeros_disk(|z| h.eval(z), radius)?;

    let truncated = h.truncated(h.effective_len(radius, 1e-13)).to_poly();
    let located: Vec<Complex64> = match truncated.degree() {
        None => return Err(Error::invalid("g", "g_{n0} + q vanishes identically")),
        Some(0) => Vec::new(),
        Some(_) => truncated
            .root_list()?
            .into_iter()
            .filter(|z| z.norm() < 1.0)
            .map(|z| {
                if z.norm() == 0.0 {
                    z
                } else {
                    newton_polish(&h, Complex64::new(0.0, 0.0), z)
                }
            })
            .filter(|z| z.norm() < radius)
            .collect(),
    };
    if contour != k as i64 || located.len() != k {
        return Err(Error::ZeroCountMismatch {
            expected: k,
            contour,
            located: located.len(),
        });
    }
    let v = ComplexPoly::from_roots(&located);
    let (series, c) = divide_out(&h, &located, k)?;
    let y = ValentFn::new(series, k)?;

    let spot_checks = (0..10u64)
        .map(|i| {
            let mut rng = trial_rng(seed, i);
            let n = rng.random_range(0..=3usize);
            let p = poly_in_disk(&mut rng, n, 2.0);
            let zero_count =
                count_zeros_disk(|z| z.powu(n as u32) * y.eval(z) + p.eval(z), radius)?;
            Ok(SpotCheck {
                n,
                zero_count,
                bound: k + n,
                satisfied: zero_count <= (k + n) as i64,
                p,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(YConstruction {
        k,
        y,
        v,
        c,
        radius,
        spot_checks,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TrajectoryStep {
    pub step: usize,
    /// Level used to reach this step; `None` for the starting function.
    pub a: Option<Complex64>,
    pub leading: Vec<Complex64>,
    /// `φ_n` for `n = m+1 ..= k_max`.
    pub phi: Vec<f64>,
    pub bm_deviation: f64,
    /// Denominator fitted from `(g)_1..(g)_m`.
    pub d: ComplexPoly,
    /// `sup_{|z| = 0.5} |g - z^m / d|`.
    pub fit_residual: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Trajectory {
    pub m: usize,
    pub k_max: usize,
    pub steps: Vec<TrajectoryStep>,
    #[serde(skip)]
    pub last: ValentFn,
}

pub fn iterate_transform(g: &ValentFn, schedule: &[Complex64], k_max: usize) -> Result<Trajectory> {
    let table = ell_polynomials(g.m, k_max)?;
    let mut current = g.clone();
    let mut steps = vec![trajectory_step(&table, &current, 0, None)?];
    for (i, &a) in schedule.iter().enumerate() {
        current = transform(&current, a)?;
        steps.push(trajectory_step(&table, &current, i + 1, Some(a))?);
    }
    Ok(Trajectory {
        m: g.m,
        k_max,
        steps,
        last: current,
    })
}

fn trajectory_step(
    table: &EllTable,
    g: &ValentFn,
    step: usize,
    a: Option<Complex64>,
) -> Result<TrajectoryStep> {
    let phi = phi(table, g)?;
    let d = fit_denominator(g);
    let fit_residual = (0..256)
        .map(|j| {
            let z = Complex64::from_polar(0.5, std::f64::consts::TAU * j as f64 / 256.0);
            (g.eval(z) - z.powu(g.m as u32) / d.eval(z)).norm()
        })
        .fold(0.0, f64::max);
    Ok(TrajectoryStep {
        step,
        a,
        leading: g.leading(),
        bm_deviation: phi.iter().copied().fold(0.0, f64::max),
        phi,
        d,
        fit_residual,
    })
}
