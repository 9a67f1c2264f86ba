//! Seeded randomized verification suites behind `meroscope verify`.
//!
//! Every trial draws from its own stream `(seed, suite << 32 | index)` and
//! records are kept in trial order, so a report depends on the seed alone.

use num_complex::Complex64;
use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::cauchy::AntiAnalytic;
use crate::error::Result;
use crate::grid::{analyze_grid, BoundaryGrid};
use crate::poles::{necessity_trial, NecessityOptions};
use crate::poly::ComplexPoly;
use crate::rational::RationalFn;
use crate::rigidity::{
    equivalence_trial, find_witness, random_p, SuiteOptions, DEFAULT_BUDGET, WITNESS_MAX_POLES,
    WITNESS_SEPARATION,
};
use crate::rng::{poly_in_disk, random_pole_rational, trial_rng};
use crate::series::TaylorSeries;
use crate::valence::{
    hayman_radius, is_bm, random_level, transform, us2_check, BmFn, ValentFn, DEFAULT_SLIT_MARGIN,
    WORKING_LEN,
};
use crate::zeros::solve_level_set;

pub const DEFAULT_TRIALS: usize = 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Rigidity,
    Necessity,
    Valence,
    All,
}

impl Suite {
    pub fn parse(name: &str) -> Option<Suite> {
        match name {
            "rigidity" => Some(Suite::Rigidity),
            "necessity" => Some(Suite::Necessity),
            "valence" => Some(Suite::Valence),
            "all" => Some(Suite::All),
            _ => None,
        }
    }

    fn id(self) -> u64 {
        match self {
            Suite::Rigidity => 1,
            Suite::Necessity => 2,
            Suite::Valence => 3,
            Suite::All => 0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SuiteReport {
    pub suite: &'static str,
    pub passed: bool,
    pub trials: usize,
    pub failures: usize,
    pub records: Vec<Value>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerifyReport {
    pub seed: u64,
    pub passed: bool,
    pub suites: Vec<SuiteReport>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VerifyOptions {
    pub seed: u64,
    pub trials: usize,
    pub grid_size: usize,
}

pub fn run(suite: Suite, opts: &VerifyOptions) -> VerifyReport {
    let suites = match suite {
        Suite::Rigidity => vec![rigidity_suite(opts)],
        Suite::Necessity => vec![necessity_suite(opts)],
        Suite::Valence => vec![valence_suite(opts)],
        Suite::All => vec![
            rigidity_suite(opts),
            necessity_suite(opts),
            valence_suite(opts),
        ],
    };
    VerifyReport {
        seed: opts.seed,
        passed: suites.iter().all(|s| s.passed),
        suites,
    }
}

fn stream(suite: Suite, index: usize) -> u64 {
    (suite.id() << 32) | index as u64
}

fn collect(suite: &'static str, records: Vec<(bool, Value)>) -> SuiteReport {
    let failures = records.iter().filter(|(ok, _)| !ok).count();
    SuiteReport {
        suite,
        passed: failures == 0,
        trials: records.len(),
        failures,
        records: records
            .into_iter()
            .map(|(ok, mut v)| {
                v["passed"] = json!(ok);
                v
            })
            .collect(),
    }
}

fn error_record(index: usize, e: impl std::fmt::Display) -> (bool, Value) {
    (false, json!({"index": index, "error": e.to_string()}))
}

/// Random `f₋` with `1..=3` well separated poles: the two zero counts agree,
/// the bound holds at the true pole count, and a violating pair exists one
/// pole lower.
fn rigidity_suite(opts: &VerifyOptions) -> SuiteReport {
    let records = (0..opts.trials)
        .into_par_iter()
        .map(|i| {
            let mut rng = trial_rng(opts.seed, stream(Suite::Rigidity, i));
            let m = 1 + i % WITNESS_MAX_POLES;
            let minus = random_pole_rational(&mut rng, m, 0.8, WITNESS_SEPARATION);
            let (n, p) = random_p(&mut rng, false, &SuiteOptions::default());
            rigidity_record(&minus, m, i, n, p, opts.grid_size)
                .unwrap_or_else(|e| error_record(i, e))
        })
        .collect();
    collect("rigidity", records)
}

fn rigidity_record(
    minus: &RationalFn,
    m: usize,
    index: usize,
    n: usize,
    p: ComplexPoly,
    grid_size: usize,
) -> Result<(bool, Value)> {
    let coeffs = AntiAnalytic::from_rational_converged(minus)?;
    let trial = equivalence_trial(minus, &coeffs, m, index as u64, n, p);
    let f = analyze_grid(&BoundaryGrid::sample(grid_size, |t| minus.eval(t))?);
    let search = find_witness(&f, m - 1, DEFAULT_BUDGET)?;
    let witness_found = search.witness.is_some();
    let ok = trial.agree
        && trial.satisfied == Some(true)
        && trial.winding_consistent != Some(false)
        && witness_found;
    Ok((
        ok,
        json!({
            "index": index,
            "m": m,
            "poles": minus.poles()?,
            "trial": trial,
            "witness_found": witness_found,
            "witness_layer": search.layer,
            "witness_candidates": search.log.len(),
        }),
    ))
}

/// `f = f₊ + P/Q` with `0..=3` poles: `winding(f + h) >= -m`.
fn necessity_suite(opts: &VerifyOptions) -> SuiteReport {
    let records = (0..opts.trials)
        .into_par_iter()
        .map(|i| {
            let mut rng = trial_rng(opts.seed, stream(Suite::Necessity, i));
            let m = i % 4;
            let minus = random_pole_rational(&mut rng, m, 0.8, 0.05);
            let degree = rng.random_range(0..=3);
            let plus = poly_in_disk(&mut rng, degree, 1.0);
            let grid = match BoundaryGrid::sample(opts.grid_size, |t| minus.eval(t) + plus.eval(t))
            {
                Ok(g) => g,
                Err(e) => return error_record(i, e),
            };
            let trial = necessity_trial(&grid, &mut rng, i as u64, &NecessityOptions::default());
            let ok = trial.winding.is_some_and(|w| w >= -(m as i64));
            (ok, json!({"index": i, "m": m, "trial": trial}))
        })
        .collect();
    collect("necessity", records)
}

/// Random `B_m` members, `m = 1..=3`: coefficient identities, the fixed
/// point of the transform, the level-set count, and rejection of a
/// perturbed non-member.
fn valence_suite(opts: &VerifyOptions) -> SuiteReport {
    let records = (0..opts.trials)
        .into_par_iter()
        .map(|i| {
            let mut rng = trial_rng(opts.seed, stream(Suite::Valence, i));
            valence_record(&mut rng, 1 + i % 3, i).unwrap_or_else(|e| error_record(i, e))
        })
        .collect();
    collect("valence", records)
}

fn valence_record(rng: &mut impl Rng, m: usize, index: usize) -> Result<(bool, Value)> {
    let b = BmFn::random(rng, m)?;
    let g = b.valent(WORKING_LEN)?;
    let a = random_level(rng, m, 0.2, 0.9, DEFAULT_SLIT_MARGIN);

    let membership = is_bm(&g, 10, 1e-10)?;
    let ga = transform(&g, a)?;
    let fixed_point_error = sup_on_circle(0.5, |z| ga.eval(z) - g.eval(z));

    let c = crate::rng::point_in_disk(rng, 0.1);
    let general = ValentFn::new(
        b.series(WORKING_LEN).mul(&TaylorSeries::from_poly(
            &ComplexPoly::new(vec![Complex64::new(1.0, 0.0), c]),
            WORKING_LEN,
        )),
        m,
    )?;
    let us2 = us2_check(&general, a)?;

    let roots = solve_level_set(g.series(), m, a)?;
    let level_residual = roots
        .iter()
        .map(|&z| (g.eval(z) - a).norm())
        .fold(0.0, f64::max);

    let mut perturbed = g.series().clone();
    perturbed.coeffs_mut()[2 * m + 1] += Complex64::new(1e-3, 0.0);
    let perturbed = ValentFn::new(perturbed, m)?;
    let perturbed_check = is_bm(&perturbed, 10, 1e-10)?;

    let ok = membership.member
        && fixed_point_error <= 1e-9
        && us2.max_deviation <= 1e-9
        && roots.len() == m
        && level_residual <= 1e-10
        && !perturbed_check.member;
    Ok((
        ok,
        json!({
            "index": index,
            "m": m,
            "d": b.d(),
            "a": a,
            "hayman_radius": hayman_radius(m),
            "bm_deviation": membership.deviation,
            "fixed_point_error": fixed_point_error,
            "us2_deviation": us2.max_deviation,
            "level_roots": roots,
            "level_residual": level_residual,
            "perturbed_deviation": perturbed_check.deviation,
        }),
    ))
}

fn sup_on_circle(radius: f64, f: impl Fn(Complex64) -> Complex64) -> f64 {
    (0..256)
        .map(|j| {
            f(Complex64::from_polar(
                radius,
                std::f64::consts::TAU * j as f64 / 256.0,
            ))
            .norm()
        })
        .fold(0.0, f64::max)
}
