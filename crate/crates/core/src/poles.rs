//! Pole counting from Fourier data.
//!
//! The Hankel matrix `H[j][k] = c_{-(j+k+1)}` built from the negative
//! coefficients has rank equal to the number of poles of `f₋` when `f₋` is
//! rational, and full numerical rank otherwise. The pole count is read off a
//! singular value gap and confirmed by reconstructing `f₋ = P/Q` from the
//! null space of a Hankel system and measuring the sup-norm residual on the
//! circle.

use std::collections::BTreeMap;

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::Rng;
use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::cauchy::AntiAnalytic;
use crate::error::{Error, Result};
use crate::grid::{synthesize, BoundaryGrid};
use crate::poly::ComplexPoly;
use crate::rational::RationalFn;
use crate::rng::{poly_in_disk, trial_rng};
use crate::series::LaurentSeries;
use crate::winding::winding;

pub const DEFAULT_GAP_THRESHOLD: f64 = 1e6;
pub const DEFAULT_REL_FLOOR: f64 = 1e-10;
pub const DEFAULT_RESIDUAL_TOL: f64 = 1e-8;
/// Singular values below this multiple of `max|c_k|` are rounding noise.
pub const NOISE_FLOOR: f64 = 1e-13;
/// Absolute residual slack relative to `sup|f|`, so that `f₋ ≡ 0` up to
/// rounding is accepted at zero poles.
pub const RESIDUAL_NOISE_FLOOR: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PoleOptions {
    pub max_m: usize,
    /// Hankel size; defaults to `max_m + 2`.
    pub hankel_size: Option<usize>,
    pub gap_threshold: f64,
    pub rel_floor: f64,
    /// Residual tolerance relative to `sup|f₋|`.
    pub residual_tol: f64,
}

impl Default for PoleOptions {
    fn default() -> Self {
        PoleOptions {
            max_m: 8,
            hankel_size: None,
            gap_threshold: DEFAULT_GAP_THRESHOLD,
            rel_floor: DEFAULT_REL_FLOOR,
            residual_tol: DEFAULT_RESIDUAL_TOL,
        }
    }
}

/// Square Hankel matrix of the negative coefficients.
#[derive(Debug, Clone, PartialEq)]
pub struct HankelMatrix {
    entries: DMatrix<Complex64>,
}

impl HankelMatrix {
    pub fn from_laurent(f: &LaurentSeries, size: usize) -> Self {
        HankelMatrix {
            entries: DMatrix::from_fn(size, size, |j, k| f.coeff(-((j + k + 1) as i64))),
        }
    }

    pub fn size(&self) -> usize {
        self.entries.nrows()
    }

    pub fn entry(&self, j: usize, k: usize) -> Complex64 {
        self.entries[(j, k)]
    }

    /// Singular values, descending.
    pub fn singular_values(&self) -> Vec<f64> {
        let mut s: Vec<f64> = self
            .entries
            .clone()
            .singular_values()
            .iter()
            .copied()
            .collect();
        s.sort_by(|a, b| b.total_cmp(a));
        s
    }
}

/// `σ_{m-1} / σ_m`, with `σ_{-1}` taken as `scale`; infinite when `σ_m = 0`
/// or `m` equals the matrix size.
pub fn gap_at(singular_values: &[f64], m: usize, scale: f64) -> f64 {
    let upper = if m == 0 {
        scale
    } else {
        singular_values[m - 1]
    };
    match singular_values.get(m) {
        Some(&lower) if lower > 0.0 => upper / lower,
        Some(_) => f64::INFINITY,
        None => 0.0,
    }
}

/// Numerical rank of the `size × size` Hankel matrix: the number of singular
/// values above `max(rel_floor σ_0, noise)`, accepted only when the gap at
/// that split reaches `gap_threshold`.
pub fn hankel_rank(
    f: &LaurentSeries,
    size: usize,
    gap_threshold: f64,
) -> Result<(usize, Vec<f64>)> {
    hankel_rank_with(f, size, gap_threshold, DEFAULT_REL_FLOOR)
}

pub fn hankel_rank_with(
    f: &LaurentSeries,
    size: usize,
    gap_threshold: f64,
    rel_floor: f64,
) -> Result<(usize, Vec<f64>)> {
    if f.neg.len() < 2 * size - 1 {
        return Err(Error::invalid(
            "hankel_size",
            format!(
                "{} negative coefficients cannot fill a {size}x{size} Hankel matrix",
                f.neg.len()
            ),
        ));
    }
    let sigma = HankelMatrix::from_laurent(f, size).singular_values();
    let scale = f.max_abs_coeff();
    let floor = (rel_floor * sigma[0]).max(NOISE_FLOOR * scale);
    let m = sigma.iter().filter(|&&s| s > floor).count();
    let gap = gap_at(&sigma, m, scale);
    if gap >= gap_threshold {
        return Ok((m, sigma));
    }
    let (best_split, best_ratio) = (0..size)
        .map(|i| (i, gap_at(&sigma, i, scale)))
        .max_by(|a, b| a.1.total_cmp(&b.1))
        .unwrap();
    Err(Error::AmbiguousRank {
        threshold: gap_threshold,
        best_split,
        best_ratio,
    })
}

/// `f₋ = P/Q` with monic `Q` of degree `m` (equivalently, the reflected
/// denominator `z^m Q(1/z)` has constant term 1).
///
/// `Q` spans the null space of the Hankel system `Σ_i q_i c_{-(k+i)} = 0`,
/// `k >= 1`, which states that `Q f₋` has no negative powers; `P` is the
/// polynomial part of `Q f₋`.
pub fn reconstruct_rational(f: &LaurentSeries, m: usize) -> Result<RationalFn> {
    if m == 0 {
        return Ok(RationalFn::zero());
    }
    let available = f.neg.len();
    if available < 2 * m + 1 {
        return Err(Error::invalid(
            "m",
            format!("{available} coefficients cannot determine {m} poles"),
        ));
    }
    let rows = available - m;
    let system = DMatrix::from_fn(rows, m + 1, |r, i| f.coeff(-((r + 1 + i) as i64)));
    let svd = system.svd(false, true);
    let v_t = svd.v_t.expect("right singular vectors requested");
    let smallest = svd
        .singular_values
        .iter()
        .enumerate()
        .min_by(|a, b| a.1.total_cmp(b.1))
        .map(|(i, _)| i)
        .unwrap();
    let null: Vec<Complex64> = v_t.row(smallest).iter().map(|c| c.conj()).collect();
    let lead = null[m];
    if lead.norm() == 0.0 {
        return Err(Error::invalid(
            "m",
            "denominator degree collapses at this pole count",
        ));
    }
    let q: Vec<Complex64> = null.iter().map(|&c| c / lead).collect();
    let numerator: Vec<Complex64> = (0..m)
        .map(|j| (j + 1..=m).map(|i| q[i] * f.coeff(-((i - j) as i64))).sum())
        .collect();
    let rational = RationalFn::new(ComplexPoly::new(numerator), ComplexPoly::new(q))?;
    if let Some(pole) = rational.poles()?.into_iter().find(|p| p.norm() >= 1.0) {
        return Err(Error::PoleOutsideDisk { pole });
    }
    Ok(rational)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PoleCount {
    Finite(usize),
    NotMeromorphic,
}

impl Serialize for PoleCount {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            PoleCount::Finite(m) => s.serialize_u64(*m as u64),
            PoleCount::NotMeromorphic => s.serialize_str("not_meromorphic"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PoleReport {
    pub m: PoleCount,
    pub singular_values: Vec<f64>,
    /// Gap at the accepted split, or the best split when none was accepted.
    #[serde(serialize_with = "finite_f64")]
    pub gap_ratio: f64,
    pub poles: Vec<Complex64>,
    pub residual: f64,
    #[serde(skip)]
    pub reconstruction: Option<RationalFn>,
    #[serde(skip)]
    pub residual_tol: f64,
}

fn finite_f64<S: Serializer>(x: &f64, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_f64(if x.is_finite() { *x } else { f64::MAX })
}

/// Sup-norm of `f₋ - P/Q` on an `n`-point grid.
pub fn reconstruction_residual(minus: &BoundaryGrid, rational: &RationalFn) -> f64 {
    minus
        .nodes()
        .zip(minus.values())
        .map(|(t, &v)| (v - rational.eval(t)).norm())
        .fold(0.0, f64::max)
}

fn analysis_grid_size(f: &LaurentSeries) -> usize {
    (2 * (f.order() + 1)).next_power_of_two().max(64)
}

/// Smallest `m <= max_m` whose singular value gap and reconstruction residual
/// both pass.
pub fn minimal_pole_count(f: &LaurentSeries, opts: &PoleOptions) -> Result<PoleReport> {
    let size = opts.hankel_size.unwrap_or(opts.max_m + 2);
    let sigma = if f.neg.len() >= 2 * size - 1 {
        HankelMatrix::from_laurent(f, size).singular_values()
    } else {
        return Err(Error::invalid(
            "hankel_size",
            format!(
                "{} negative coefficients cannot fill a {size}x{size} Hankel matrix",
                f.neg.len()
            ),
        ));
    };
    let scale = f.max_abs_coeff();
    let n = analysis_grid_size(f);
    let minus_only = LaurentSeries::new(f.neg.clone(), Vec::new());
    let minus_grid = synthesize(&minus_only, n)?;
    let whole = synthesize(f, n)?;
    let tol =
        opts.residual_tol * minus_grid.max_modulus() + RESIDUAL_NOISE_FLOOR * whole.max_modulus();

    let mut best: Option<(f64, usize)> = None;
    for m in 0..=opts.max_m.min(size - 1) {
        let gap = gap_at(&sigma, m, scale);
        if best.is_none_or(|(g, _)| gap > g) {
            best = Some((gap, m));
        }
        if gap < opts.gap_threshold {
            continue;
        }
        let Ok(rational) = reconstruct_rational(f, m) else {
            continue;
        };
        let residual = reconstruction_residual(&minus_grid, &rational);
        if residual <= tol {
            return Ok(PoleReport {
                m: PoleCount::Finite(m),
                singular_values: sigma,
                gap_ratio: gap,
                poles: rational.poles()?,
                residual,
                reconstruction: Some(rational),
                residual_tol: tol,
            });
        }
    }
    let (gap_ratio, split) = best.unwrap_or((0.0, 0));
    let residual = reconstruct_rational(f, split)
        .map(|r| reconstruction_residual(&minus_grid, &r))
        .unwrap_or(f64::INFINITY);
    Ok(PoleReport {
        m: PoleCount::NotMeromorphic,
        singular_values: sigma,
        gap_ratio,
        poles: Vec::new(),
        residual,
        reconstruction: None,
        residual_tol: tol,
    })
}

/// The anti-analytic part of a reconstruction, as coefficients.
pub fn reconstructed_minus(report: &PoleReport, count: usize) -> Option<AntiAnalytic> {
    report
        .reconstruction
        .as_ref()
        .map(|r| AntiAnalytic::from_rational(r, count))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NecessityOptions {
    pub grid_size: usize,
    pub max_h_degree: usize,
    pub coeff_radius: f64,
    pub max_rejections: usize,
}

impl Default for NecessityOptions {
    fn default() -> Self {
        NecessityOptions {
            grid_size: 4096,
            max_h_degree: 8,
            coeff_radius: 2.0,
            max_rejections: 100,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NecessityTrial {
    pub index: u64,
    pub h: Option<ComplexPoly>,
    pub winding: Option<i64>,
    pub rejections: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NecessityReport {
    pub m: usize,
    pub trials: usize,
    pub histogram: BTreeMap<i64, usize>,
    pub min_winding: Option<i64>,
    pub violations: usize,
    /// Trials abandoned after too many rejected draws.
    pub abandoned: usize,
    pub records: Vec<NecessityTrial>,
}

/// `winding(f + h) >= -m` for random polynomials `h`, where `f = g/q` has
/// its `m` poles in the disk.
pub fn check_necessity(f: &RationalFn, trials: usize, seed: u64) -> Result<NecessityReport> {
    check_necessity_with(f, trials, seed, &NecessityOptions::default())
}

pub fn check_necessity_with(
    f: &RationalFn,
    trials: usize,
    seed: u64,
    opts: &NecessityOptions,
) -> Result<NecessityReport> {
    let poles = f.poles()?;
    if let Some(p) = poles.iter().find(|p| p.norm() >= 1.0) {
        return Err(Error::invalid(
            "den",
            format!("pole {p} is not inside the disk"),
        ));
    }
    let grid = BoundaryGrid::sample(opts.grid_size, |t| f.eval(t))?;
    check_necessity_on_grid(&grid, poles.len(), trials, seed, opts)
}

/// One draw of `h`, rejected and redrawn while `f + h` is not admissible.
pub fn necessity_trial(
    f: &BoundaryGrid,
    rng: &mut impl Rng,
    index: u64,
    opts: &NecessityOptions,
) -> NecessityTrial {
    for rejections in 0..opts.max_rejections {
        let degree = rng.random_range(0..=opts.max_h_degree);
        let h = poly_in_disk(rng, degree, opts.coeff_radius);
        let sum = f.map_with_node(|t, v| v + h.eval(t));
        if let Ok(report) = winding(&sum) {
            return NecessityTrial {
                index,
                h: Some(h),
                winding: Some(report.winding),
                rejections,
            };
        }
    }
    NecessityTrial {
        index,
        h: None,
        winding: None,
        rejections: opts.max_rejections,
    }
}

/// As [`check_necessity_with`] for boundary samples of a function known to
/// extend with `m` poles.
pub fn check_necessity_on_grid(
    f: &BoundaryGrid,
    m: usize,
    trials: usize,
    seed: u64,
    opts: &NecessityOptions,
) -> Result<NecessityReport> {
    let records: Vec<NecessityTrial> = (0..trials as u64)
        .into_par_iter()
        .map(|index| necessity_trial(f, &mut trial_rng(seed, index), index, opts))
        .collect();
    let mut histogram = BTreeMap::new();
    for w in records.iter().filter_map(|r| r.winding) {
        *histogram.entry(w).or_insert(0) += 1;
    }
    let violations = records
        .iter()
        .filter(|r| r.winding.is_some_and(|w| w < -(m as i64)))
        .count();
    Ok(NecessityReport {
        m,
        trials,
        min_winding: histogram.keys().next().copied(),
        histogram,
        violations,
        abandoned: records.iter().filter(|r| r.winding.is_none()).count(),
        records,
    })
}
