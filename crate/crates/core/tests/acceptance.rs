//! Acceptance suite. Runs without the libtest harness so that every
//! criterion prints one PASS/FAIL line; exits nonzero if any fails.

use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use meroscope::cauchy::AntiAnalytic;
use meroscope::error::Error;
use meroscope::grid::{analyze_grid, BoundaryGrid};
use meroscope::poles::{
    check_necessity_on_grid, minimal_pole_count, NecessityOptions, PoleCount, PoleOptions,
};
use meroscope::poly::ComplexPoly;
use meroscope::rigidity::{
    equivalence_suite, find_witness, DEFAULT_BUDGET, WITNESS_MAX_POLES, WITNESS_SEPARATION,
};
use meroscope::rng::{point_in_disk, poly_in_disk, random_pole_rational, trial_rng};
use meroscope::series::TaylorSeries;
use meroscope::valence::{
    is_bm, random_level, transform, us2_check, BmFn, ValentFn, DEFAULT_SLIT_MARGIN, WORKING_LEN,
};
use meroscope::winding::winding;
use meroscope::zeros::{count_zeros_exterior, solve_level_set};
use num_complex::Complex64;
use rand::Rng;
use rayon::prelude::*;

const N: usize = 4096;
const SEED: u64 = 20240611;

struct Outcome {
    passed: bool,
    detail: String,
}

fn outcome(passed: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        passed,
        detail: detail.into(),
    }
}

fn sup_on_circle(radius: f64, f: impl Fn(Complex64) -> Complex64) -> f64 {
    (0..512)
        .map(|j| {
            f(Complex64::from_polar(
                radius,
                std::f64::consts::TAU * j as f64 / 512.0,
            ))
            .norm()
        })
        .fold(0.0, f64::max)
}

/// `f = f₊ + P/Q` with `m` poles and a random polynomial `f₊`.
fn random_meromorphic(rng: &mut impl Rng, m: usize) -> (BoundaryGrid, ComplexPoly) {
    let minus = random_pole_rational(rng, m, 0.8, 0.05);
    let degree = rng.random_range(0..=3);
    let plus = poly_in_disk(rng, degree, 1.0);
    let grid = BoundaryGrid::sample(N, |t| minus.eval(t) + plus.eval(t)).unwrap();
    (grid, plus)
}

fn pole_count_recovery() -> Outcome {
    let start = Instant::now();
    let failures: Vec<String> = (0..100u64)
        .into_par_iter()
        .filter_map(|i| {
            let mut rng = trial_rng(SEED, (1 << 32) | i);
            let m = (i % 6) as usize;
            let (grid, _) = random_meromorphic(&mut rng, m);
            let report = minimal_pole_count(&analyze_grid(&grid), &PoleOptions::default());
            match report {
                Ok(r)
                    if r.m == PoleCount::Finite(m) && r.gap_ratio >= 1e6 && r.residual <= 1e-8 =>
                {
                    None
                }
                Ok(r) => Some(format!(
                    "trial {i}: m={m} got {:?} gap {:e} residual {:e}",
                    r.m, r.gap_ratio, r.residual
                )),
                Err(e) => Some(format!("trial {i}: {e}")),
            }
        })
        .collect();
    let elapsed = start.elapsed();
    outcome(
        failures.is_empty() && elapsed < Duration::from_secs(10),
        format!(
            "{}/100 exact, {:.2?} {}",
            100 - failures.len(),
            elapsed,
            failures.join("; ")
        ),
    )
}

fn winding_exactness() -> Outcome {
    let mut failures = Vec::new();
    for k in -10i32..=10 {
        for j in 0..20u64 {
            let mut rng = trial_rng(SEED, (2 << 32) | ((k + 10) as u64) << 8 | j);
            let terms: Vec<(i32, Complex64)> = (0..5)
                .map(|_| {
                    let power = rng.random_range(-10..=10);
                    (
                        power,
                        Complex64::from_polar(0.1, rng.random::<f64>() * std::f64::consts::TAU),
                    )
                })
                .collect();
            let grid = BoundaryGrid::sample(N, |t| {
                t.powi(k) + terms.iter().map(|&(p, c)| c * t.powi(p)).sum::<Complex64>()
            })
            .unwrap();
            match winding(&grid) {
                Ok(r) if r.winding == k as i64 => {}
                other => failures.push(format!("k={k} j={j}: {other:?}")),
            }
        }
    }
    outcome(
        failures.is_empty(),
        format!("{}/420 exact {}", 420 - failures.len(), failures.join("; ")),
    )
}

fn zeros_and_winding_identity() -> Outcome {
    let results: Vec<(usize, Vec<String>)> = (0..50u64)
        .into_par_iter()
        .map(|i| {
            let mut rng = trial_rng(SEED, (3 << 32) | i);
            let m = 1 + (i % 6) as usize;
            let minus = AntiAnalytic::from_rational_converged(&random_pole_rational(
                &mut rng, m, 0.8, 0.05,
            ))
            .unwrap();
            let mut applicable = 0;
            let mut failures = Vec::new();
            for j in 0..20 {
                let degree = rng.random_range(0..=4);
                let q = poly_in_disk(&mut rng, degree, 2.0);
                let w = match winding(&minus.sample_plus(&q, N).unwrap()) {
                    Ok(r) => r.winding,
                    Err(Error::VanishingOnCircle { .. }) => continue,
                    Err(e) => {
                        failures.push(format!("f{i} q{j}: {e}"));
                        continue;
                    }
                };
                applicable += 1;
                match count_zeros_exterior(&minus, &q) {
                    Ok(c) if w == degree as i64 - c as i64 => {}
                    other => failures.push(format!(
                        "f{i} q{j}: winding {w}, deg {degree}, exterior {other:?}"
                    )),
                }
            }
            (applicable, failures)
        })
        .collect();
    let applicable: usize = results.iter().map(|r| r.0).sum();
    let failures: Vec<String> = results.into_iter().flat_map(|r| r.1).collect();
    outcome(
        failures.is_empty(),
        format!(
            "{}/{applicable} applicable cases exact {}",
            applicable - failures.len().min(applicable),
            failures.join("; ")
        ),
    )
}

fn two_oracle_agreement() -> Outcome {
    let reports: Vec<_> = (0..50u64)
        .into_par_iter()
        .map(|i| {
            let mut rng = trial_rng(SEED, (4 << 32) | i);
            let m = (i % 7) as usize;
            let minus = random_pole_rational(&mut rng, m, 0.8, 0.05);
            equivalence_suite(&minus, m, 20, SEED ^ i)
        })
        .collect();
    let mut matches = 0;
    let mut trials = 0;
    let mut failures = Vec::new();
    for (i, r) in reports.into_iter().enumerate() {
        match r {
            Ok(r) => {
                trials += r.trials;
                matches += r.matches;
                failures.extend(
                    r.records
                        .iter()
                        .filter(|t| !t.agree)
                        .map(|t| format!("f{i} trial {}", t.index)),
                );
            }
            Err(e) => failures.push(format!("f{i}: {e}")),
        }
    }
    outcome(
        failures.is_empty() && trials == 1000,
        format!("{matches}/{trials} agree {}", failures.join("; ")),
    )
}

fn necessity() -> Outcome {
    let opts = NecessityOptions::default();
    let reports: Vec<_> = (0..50u64)
        .into_par_iter()
        .map(|i| {
            let mut rng = trial_rng(SEED, (5 << 32) | i);
            let m = (i % 6) as usize;
            let (grid, _) = random_meromorphic(&mut rng, m);
            (
                m,
                check_necessity_on_grid(&grid, m, 10, SEED ^ (i << 8), &opts),
            )
        })
        .collect();
    let mut observed = 0;
    let mut violations = 0;
    let mut abandoned = 0;
    let mut errors = Vec::new();
    for (i, (m, r)) in reports.into_iter().enumerate() {
        match r {
            Ok(r) => {
                observed += r.trials - r.abandoned;
                violations += r.violations;
                abandoned += r.abandoned;
                if r.min_winding.is_some_and(|w| w < -(m as i64)) {
                    errors.push(format!("f{i}: min winding {:?} below -{m}", r.min_winding));
                }
            }
            Err(e) => errors.push(format!("f{i}: {e}")),
        }
    }
    outcome(
        violations == 0 && abandoned == 0 && errors.is_empty(),
        format!(
            "{observed}/500 observed, {violations} violations, {abandoned} abandoned {}",
            errors.join("; ")
        ),
    )
}

fn witness_search() -> Outcome {
    let results: Vec<Option<String>> = (0..25u64)
        .into_par_iter()
        .map(|i| {
            let mut rng = trial_rng(SEED, (6 << 32) | i);
            let m = (i as usize) % WITNESS_MAX_POLES;
            let minus = random_pole_rational(&mut rng, m + 1, 0.8, WITNESS_SEPARATION);
            let f = analyze_grid(&BoundaryGrid::sample(N, |t| minus.eval(t)).unwrap());
            match find_witness(&f, m, DEFAULT_BUDGET) {
                Ok(s) => match s.witness {
                    Some(w) if w.zero_count > m + w.n => None,
                    Some(w) => Some(format!(
                        "f{i}: unverified witness {} <= {}",
                        w.zero_count,
                        m + w.n
                    )),
                    None => Some(format!("f{i}: none within {} candidates", s.log.len())),
                },
                Err(e) => Some(format!("f{i}: {e}")),
            }
        })
        .collect();
    let failures: Vec<String> = results.into_iter().flatten().collect();
    outcome(
        failures.is_empty(),
        format!(
            "{}/25 witnesses {}",
            25 - failures.len(),
            failures.join("; ")
        ),
    )
}

fn ell_soundness() -> Outcome {
    let mut worst = 0.0f64;
    let mut failures = Vec::new();
    for m in 1..=3usize {
        for i in 0..20u64 {
            let mut rng = trial_rng(SEED, (7 << 32) | (m as u64) << 8 | i);
            let g = BmFn::random(&mut rng, m)
                .unwrap()
                .valent(WORKING_LEN)
                .unwrap();
            let check = is_bm(&g, 10, 1e-10).unwrap();
            worst = worst.max(check.deviation);
            if !check.member {
                failures.push(format!("member m={m} #{i}: {:e}", check.deviation));
            }
            let mut series = g.series().clone();
            let k = rng.random_range(m + 1..=10);
            series.coeffs_mut()[m + k] +=
                Complex64::from_polar(1e-3, rng.random::<f64>() * std::f64::consts::TAU);
            match ValentFn::new(series, m).and_then(|h| is_bm(&h, 10, 1e-10)) {
                Ok(c) if !c.member => {}
                other => failures.push(format!("non-member m={m} #{i}: {other:?}")),
            }
        }
    }
    outcome(
        failures.is_empty(),
        format!(
            "max member deviation {worst:e}, 60+60 classified {}",
            failures.join("; ")
        ),
    )
}

fn fixed_point() -> Outcome {
    let mut worst = 0.0f64;
    let mut errors = Vec::new();
    for m in 1..=3usize {
        for i in 0..10u64 {
            let mut rng = trial_rng(SEED, (8 << 32) | (m as u64) << 8 | i);
            let g = BmFn::random(&mut rng, m)
                .unwrap()
                .valent(WORKING_LEN)
                .unwrap();
            for _ in 0..10 {
                let a = random_level(&mut rng, m, 0.2, 0.9, DEFAULT_SLIT_MARGIN);
                match transform(&g, a) {
                    Ok(ga) => worst = worst.max(sup_on_circle(0.5, |z| ga.eval(z) - g.eval(z))),
                    Err(e) => errors.push(format!("m={m} #{i} a={a}: {e}")),
                }
            }
        }
    }
    outcome(
        worst <= 1e-9 && errors.is_empty(),
        format!(
            "sup deviation {worst:e} over 300 pairs {}",
            errors.join("; ")
        ),
    )
}

fn us2_cross_check() -> Outcome {
    let mut worst = 0.0f64;
    let mut errors = Vec::new();
    for i in 0..100u64 {
        let mut rng = trial_rng(SEED, (9 << 32) | i);
        let m = 1 + (i % 3) as usize;
        let base = BmFn::random(&mut rng, m).unwrap().series(WORKING_LEN);
        let c = point_in_disk(&mut rng, 0.1);
        let factor = TaylorSeries::from_poly(
            &ComplexPoly::new(vec![Complex64::new(1.0, 0.0), c]),
            WORKING_LEN,
        );
        let a = random_level(&mut rng, m, 0.2, 0.9, DEFAULT_SLIT_MARGIN);
        match ValentFn::new(base.mul(&factor), m).and_then(|g| us2_check(&g, a)) {
            Ok(check) => worst = worst.max(check.max_deviation),
            Err(e) => errors.push(format!("#{i}: {e}")),
        }
    }
    outcome(
        worst <= 1e-9 && errors.is_empty(),
        format!(
            "max deviation {worst:e} over 100 pairs {}",
            errors.join("; ")
        ),
    )
}

fn hayman_root_count() -> Outcome {
    let mut worst = 0.0f64;
    let mut failures = Vec::new();
    for m in 1..=3usize {
        let mut rng = trial_rng(SEED, (10 << 32) | m as u64);
        let member = BmFn::random(&mut rng, m).unwrap().series(WORKING_LEN);
        let c = point_in_disk(&mut rng, 0.1);
        let general = member.mul(&TaylorSeries::from_poly(
            &ComplexPoly::new(vec![Complex64::new(1.0, 0.0), c]),
            WORKING_LEN,
        ));
        for (name, g) in [("member", &member), ("general", &general)] {
            for _ in 0..20 {
                let a = random_level(&mut rng, m, 0.05, 0.95, DEFAULT_SLIT_MARGIN);
                match solve_level_set(g, m, a) {
                    Ok(roots) if roots.len() == m => {
                        worst = worst.max(
                            roots
                                .iter()
                                .map(|&z| (g.eval(z) - a).norm())
                                .fold(0.0, f64::max),
                        );
                    }
                    other => failures.push(format!("{name} m={m} a={a}: {other:?}")),
                }
            }
        }
    }
    outcome(
        failures.is_empty() && worst <= 1e-10,
        format!(
            "120 level sets, max residual {worst:e} {}",
            failures.join("; ")
        ),
    )
}

fn determinism() -> Outcome {
    let run = || {
        Command::new(env!("CARGO_BIN_EXE_meroscope"))
            .args(["verify", "all", "--seed", "42"])
            .env_remove("MEROSCOPE_SEED")
            .output()
            .expect("binary runs")
    };
    let (a, b) = (run(), run());
    let same = a.stdout == b.stdout && !a.stdout.is_empty();
    outcome(
        same && a.status.success() && b.status.success(),
        format!(
            "{} bytes, identical: {same}, exit codes {:?} {:?}",
            a.stdout.len(),
            a.status.code(),
            b.status.code()
        ),
    )
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 11] = [
        ("pole-count recovery", pole_count_recovery),
        ("winding exactness", winding_exactness),
        (
            "exterior zeros and winding identity",
            zeros_and_winding_identity,
        ),
        ("two-oracle zero count agreement", two_oracle_agreement),
        ("necessity of the winding bound", necessity),
        ("witnesses one level below the pole count", witness_search),
        (
            "coefficient polynomial soundness and completeness",
            ell_soundness,
        ),
        ("transform fixed point on B_m", fixed_point),
        (
            "series division against symmetric functions",
            us2_cross_check,
        ),
        ("level-set root count", hayman_root_count),
        ("determinism of verify all", determinism),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = check();
        let status = if result.passed { "PASS" } else { "FAIL" };
        println!(
            "criterion {:>2} {status} {name}: {} [{:.1?}]",
            i + 1,
            result.detail.trim_end(),
            start.elapsed()
        );
        if !result.passed {
            failed += 1;
        }
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
