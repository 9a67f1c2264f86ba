//! Interpolation rigidity: the bound `z(f_n + p) <= m + n` on zeros in the
//! disk of the reflected function, its equivalence with the winding
//! criterion, and a search for violating pairs `(n, p)`.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::cauchy::{reflect, split, AntiAnalytic};
use crate::error::{Error, Result};
use crate::poles::{minimal_pole_count, reconstruct_rational, PoleCount, PoleOptions};
use crate::poly::ComplexPoly;
use crate::rational::RationalFn;
use crate::rng::{poly_in_disk, trial_rng};
use crate::series::{LaurentSeries, TaylorSeries};
use crate::winding::{retry_epsilons, winding_via_zeros, WindingOptions};
use crate::zeros::count_zeros_disk_with;

pub const DEFAULT_BUDGET: usize = 64;
/// Pole separation of the random family used for witness searches. With
/// closer poles, or four and more of them, every zero-free `P + qQ` can make
/// `|f_n + p|` span more orders of magnitude on the circle than double
/// precision resolves.
pub const WITNESS_SEPARATION: f64 = 0.25;
/// Largest pole count in the witness family.
pub const WITNESS_MAX_POLES: usize = 3;
/// Grid used for the winding cross-check in [`equivalence_suite`].
pub const WINDING_GRID: usize = 4096;
/// Relative size of the constant added to `p` when the contour hits a zero.
const RETRY_DELTA: f64 = 1e-6;
const RETRY_ARGUMENTS: usize = 8;
/// Coefficients of a sampled `f₋` below this fraction of the largest are
/// treated as quadrature noise by the witness search.
const NOISE_TRIM: f64 = 1e-15;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RigidityTrial {
    pub n: usize,
    pub p: ComplexPoly,
    /// `z(f_n + p)`, zeros in the open disk with multiplicity.
    pub zero_count: usize,
    /// `m + n`.
    pub bound: usize,
    pub satisfied: bool,
    /// Constant added to `p` after the contour hit a zero.
    pub epsilon: Option<Complex64>,
}

/// When a sample of `f_n + p` on the circle is too small to trust.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum VanishingTest {
    /// Below the winding engine's default relative tolerance.
    #[default]
    Relative,
    /// Below a bound on the rounding error of evaluating `f_n` and `p`.
    /// Witness candidates legitimately span many orders of magnitude on the
    /// circle, while their values stay accurate far below the relative
    /// tolerance.
    Rounding,
}

/// Safety factor over the Horner error bound `2 (len) u Σ|a_k|`.
const ROUNDING_SAFETY: f64 = 8.0;

fn contour_options(test: VanishingTest, f_n: &TaylorSeries, p: &ComplexPoly) -> WindingOptions {
    match test {
        VanishingTest::Relative => WindingOptions::default(),
        VanishingTest::Rounding => {
            let l1: f64 = f_n
                .coeffs()
                .iter()
                .chain(p.coeffs())
                .map(|c| c.norm())
                .sum();
            let len = f_n.len().max(p.coeffs().len()) as f64;
            WindingOptions {
                rel_tol: 0.0,
                abs_tol: ROUNDING_SAFETY * 2.0 * len * f64::EPSILON * l1,
                ..WindingOptions::default()
            }
        }
    }
}

/// Count the zeros of `f_n + p` in the disk and compare with `m + n`.
pub fn rigidity_check(
    minus: &AntiAnalytic,
    n: usize,
    p: &ComplexPoly,
    m: usize,
) -> Result<RigidityTrial> {
    rigidity_check_with(minus, n, p, m, VanishingTest::Relative)
}

/// [`rigidity_check`] with a choice of vanishing test for the contour.
pub fn rigidity_check_with(
    minus: &AntiAnalytic,
    n: usize,
    p: &ComplexPoly,
    m: usize,
    test: VanishingTest,
) -> Result<RigidityTrial> {
    if !p.in_pn(n) {
        return Err(Error::invalid(
            "p",
            format!("degree {} exceeds n = {n}", p.signed_degree()),
        ));
    }
    let f_n = reflect(minus, n);
    let opts = contour_options(test, &f_n, p);
    let count_with =
        |eps: Complex64| count_zeros_disk_with(|z| f_n.eval(z) + p.eval(z) + eps, 1.0, opts);
    let (count, epsilon) = match count_with(Complex64::new(0.0, 0.0)) {
        Ok(c) => (c, None),
        Err(first @ Error::VanishingOnContour { .. }) => {
            let scale = f_n.max_abs_coeff().max(p.max_abs_coeff()).max(1.0);
            retry_epsilons(RETRY_DELTA * scale, RETRY_ARGUMENTS)
                .find_map(|eps| count_with(eps).ok().map(|c| (c, Some(eps))))
                .ok_or(first)?
        }
        Err(e) => return Err(e),
    };
    let zero_count = usize::try_from(count).map_err(|_| Error::ZeroCountMismatch {
        expected: 0,
        contour: count,
        located: 0,
    })?;
    Ok(RigidityTrial {
        n,
        p: p.clone(),
        zero_count,
        bound: m + n,
        satisfied: zero_count <= m + n,
        epsilon,
    })
}

/// Zeros of `f_n + p` in the disk counted from the numerator of
/// `f₋ + q = (P + qQ) / Q`, `q(z) = z^n p(1/z)`: exterior roots of the
/// numerator plus the order of the zero at the origin.
pub fn brute_force_count(minus: &RationalFn, n: usize, p: &ComplexPoly) -> Result<usize> {
    let q = p.reversed(n);
    let numerator = &minus.num + &(&q * &minus.den);
    let exterior = match numerator.degree() {
        None => return Err(Error::invalid("p", "f₋ + q vanishes identically")),
        Some(0) => 0,
        Some(_) => numerator
            .root_list()?
            .iter()
            .filter(|r| r.norm() > 1.0)
            .count(),
    };
    let at_origin = match p.origin_order() {
        Some(k) => k,
        None => {
            let dn = minus
                .num
                .degree()
                .ok_or_else(|| Error::invalid("p", "f₋ + q vanishes identically"))?;
            n + minus.den.degree().unwrap_or(0) - dn
        }
    };
    Ok(exterior + at_origin)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SuiteOptions {
    pub max_n: usize,
    pub coeff_radius: f64,
    /// Probability of zeroing the low coefficients of `p`, so that `p`
    /// vanishes at the origin.
    pub origin_zero_rate: f64,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        SuiteOptions {
            max_n: 5,
            coeff_radius: 2.0,
            origin_zero_rate: 0.25,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EquivalenceTrial {
    pub index: u64,
    pub n: usize,
    pub p: ComplexPoly,
    pub reflected: Option<usize>,
    pub brute_force: Option<usize>,
    pub agree: bool,
    pub satisfied: Option<bool>,
    /// Winding of `f₋ + q` when it is admissible on the grid.
    pub winding: Option<i64>,
    pub winding_consistent: Option<bool>,
    pub error: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EquivalenceReport {
    pub m: usize,
    pub trials: usize,
    pub matches: usize,
    pub mismatches: usize,
    pub violations: usize,
    pub winding_checked: usize,
    pub winding_failures: usize,
    pub records: Vec<EquivalenceTrial>,
}

impl EquivalenceReport {
    pub fn passed(&self) -> bool {
        self.mismatches == 0 && self.winding_failures == 0
    }
}

/// Compare the reflected count with the numerator-root count on random
/// `(n, p)`, and the winding of `f₋ + q` with `deg q - #exterior zeros`.
pub fn equivalence_suite(
    minus: &RationalFn,
    m: usize,
    trials: usize,
    seed: u64,
) -> Result<EquivalenceReport> {
    equivalence_suite_with(minus, m, trials, seed, &SuiteOptions::default())
}

pub fn equivalence_suite_with(
    minus: &RationalFn,
    m: usize,
    trials: usize,
    seed: u64,
    opts: &SuiteOptions,
) -> Result<EquivalenceReport> {
    if minus.num.degree().unwrap_or(0) >= minus.den.degree().unwrap_or(0) && !minus.num.is_zero() {
        return Err(Error::invalid("f_minus", "must be strictly proper"));
    }
    let coeffs = AntiAnalytic::from_rational_converged(minus)?;
    let records: Vec<EquivalenceTrial> = (0..trials as u64)
        .into_par_iter()
        .map(|index| {
            let (n, p) = random_p(&mut trial_rng(seed, index), minus.num.is_zero(), opts);
            equivalence_trial(minus, &coeffs, m, index, n, p)
        })
        .collect();
    let count = |f: &dyn Fn(&EquivalenceTrial) -> bool| records.iter().filter(|r| f(r)).count();
    Ok(EquivalenceReport {
        m,
        trials,
        matches: count(&|r| r.agree),
        mismatches: count(&|r| !r.agree),
        violations: count(&|r| r.satisfied == Some(false)),
        winding_checked: count(&|r| r.winding_consistent.is_some()),
        winding_failures: count(&|r| r.winding_consistent == Some(false)),
        records,
    })
}

/// `f₋` of a Laurent table as a rational function, for
/// [`equivalence_suite`] on sampled data.
pub fn rational_minus(f: &LaurentSeries, max_m: usize) -> Result<RationalFn> {
    let report = minimal_pole_count(
        f,
        &PoleOptions {
            max_m,
            ..PoleOptions::default()
        },
    )?;
    report
        .reconstruction
        .ok_or_else(|| Error::invalid("f", "f₋ is not rational at the given pole bound"))
}

/// Random `n <= max_n` and `p ∈ P_n`, sometimes vanishing at the origin.
pub fn random_p(
    rng: &mut impl Rng,
    minus_is_zero: bool,
    opts: &SuiteOptions,
) -> (usize, ComplexPoly) {
    let n = rng.random_range(0..=opts.max_n);
    let mut p = poly_in_disk(rng, n, opts.coeff_radius);
    if n > 0 && rng.random::<f64>() < opts.origin_zero_rate {
        let k = rng.random_range(1..=n);
        let mut c = p.coeffs().to_vec();
        c.iter_mut()
            .take(k)
            .for_each(|x| *x = Complex64::new(0.0, 0.0));
        p = ComplexPoly::new(c);
    }
    if p.is_zero() && minus_is_zero {
        p = ComplexPoly::constant(Complex64::new(1.0, 0.0));
    }
    (n, p)
}

/// Both zero counts and the winding cross-check for one `(n, p)`; `coeffs`
/// holds the expansion of `minus` at infinity.
pub fn equivalence_trial(
    minus: &RationalFn,
    coeffs: &AntiAnalytic,
    m: usize,
    index: u64,
    n: usize,
    p: ComplexPoly,
) -> EquivalenceTrial {
    let reflected = rigidity_check(coeffs, n, &p, m);
    let brute = brute_force_count(minus, n, &p);
    let error = match (&reflected, &brute) {
        (Err(e), _) | (_, Err(e)) => Some(e.to_string()),
        _ => None,
    };
    let reflected = reflected.ok();
    let brute = brute.ok();
    let agree = matches!((&reflected, brute), (Some(t), Some(b)) if t.zero_count == b);

    let q = p.reversed(n);
    let (winding, winding_consistent) = match brute {
        Some(count) => {
            let origin = p.origin_order().unwrap_or_else(|| {
                n + minus.den.degree().unwrap_or(0) - minus.num.degree().unwrap_or(0)
            });
            let exterior = count.saturating_sub(origin);
            match winding_via_zeros(coeffs, &q, exterior, WINDING_GRID) {
                Ok(w) => (Some(w), Some(true)),
                Err(Error::WindingMismatch { on_grid, .. }) => (Some(on_grid), Some(false)),
                Err(_) => (None, None),
            }
        }
        None => (None, None),
    };
    EquivalenceTrial {
        index,
        n,
        satisfied: reflected.as_ref().map(|t| t.satisfied),
        reflected: reflected.map(|t| t.zero_count),
        brute_force: brute,
        p,
        agree,
        winding,
        winding_consistent,
        error,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum WitnessLayer {
    Constant,
    ZeroFreeInterpolant,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CandidateLog {
    pub layer: WitnessLayer,
    pub n: usize,
    pub zero_count: Option<usize>,
    pub error: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WitnessSearch {
    pub m: usize,
    pub budget: usize,
    /// A verified violating trial, or `None` when the budget ran out.
    pub witness: Option<RigidityTrial>,
    pub layer: Option<WitnessLayer>,
    pub log: Vec<CandidateLog>,
}

/// Search for `(n, p)` with `z(f_n + p) > m + n`.
///
/// Candidates are tried in a fixed order: small constants `p = ε` for
/// `n = 0..3`, which split a high-order zero of `f_n` at the origin; then
/// polynomials making `P + qQ` zero-free in the disk, built from the
/// reconstruction of `f₋ = P/Q` with more than `m` poles.
pub fn find_witness(f: &LaurentSeries, m: usize, budget: usize) -> Result<WitnessSearch> {
    let minus = split(f).minus.trimmed(NOISE_TRIM);
    let mut search = WitnessSearch {
        m,
        budget,
        witness: None,
        layer: None,
        log: Vec::new(),
    };
    let constants = (0..=3usize).flat_map(|n| {
        [1e-2, 1e-3, 1e-4].into_iter().flat_map(move |e| {
            [Complex64::new(e, 0.0), Complex64::new(0.0, e)].map(|c| (n, ComplexPoly::constant(c)))
        })
    });
    for (n, p) in constants {
        if try_candidate(&mut search, &minus, WitnessLayer::Constant, n, &p) {
            return Ok(search);
        }
    }
    let remaining = budget.saturating_sub(search.log.len());
    if remaining == 0 {
        return Ok(search);
    }
    for (n, p) in zero_free_candidates(f, m, remaining) {
        if try_candidate(
            &mut search,
            &minus,
            WitnessLayer::ZeroFreeInterpolant,
            n,
            &p,
        ) {
            return Ok(search);
        }
    }
    Ok(search)
}

fn try_candidate(
    search: &mut WitnessSearch,
    minus: &AntiAnalytic,
    layer: WitnessLayer,
    n: usize,
    p: &ComplexPoly,
) -> bool {
    if search.log.len() >= search.budget {
        return false;
    }
    let trial = rigidity_check_with(minus, n, p, search.m, VanishingTest::Rounding);
    search.log.push(CandidateLog {
        layer,
        n,
        zero_count: trial.as_ref().ok().map(|t| t.zero_count),
        error: trial.as_ref().err().map(|e| e.to_string()),
    });
    match trial {
        Ok(t) if !t.satisfied => {
            search.witness = Some(t);
            search.layer = Some(layer);
            true
        }
        _ => false,
    }
}

/// Pairs `(n, p)` for which `R = P + qQ` should have no zeros in the disk,
/// so that `z(f_n + p) = n + deg Q`.
///
/// `R = O e^v` with `O(z) = ∏ (1 - conj(z_j) z)`, so that `|R / Q|` is a
/// constant times `|e^v|` on the circle, and `v` a polynomial taking the
/// values `log(P(z_j) / O(z_j)) + 2πi k_j` at the poles. Among such `v` the
/// search picks the one with the smallest spread of `Re v` on the
/// circle (a small linear program), since the spread of `Re v` is what the
/// zero count has to resolve. Branch choices are ranked by that spread and
/// candidates with hopeless spreads are dropped. The truncated exponential is corrected to interpolate exactly by taking
/// `q = (R - P) div Q`.
pub fn zero_free_candidates(
    f: &LaurentSeries,
    m: usize,
    max_count: usize,
) -> Vec<(usize, ComplexPoly)> {
    let Some(rational) = reconstruction_above(f, m) else {
        return Vec::new();
    };
    let Ok(roots) = rational.den.roots() else {
        return Vec::new();
    };
    if roots.iter().any(|r| r.multiplicity > 1) {
        return Vec::new();
    }
    let nodes: Vec<Complex64> = roots.iter().map(|r| r.value).collect();
    let mirrored: Vec<Complex64> = nodes
        .iter()
        .filter(|z| z.norm() > 0.0)
        .map(|z| z.conj().inv())
        .collect();
    let outer = ComplexPoly::from_roots(&mirrored);
    // from_roots is monic; rescale so that outer(0) = 1
    let outer = outer.scale(outer.coeff(0).inv());
    let mut targets = Vec::with_capacity(nodes.len());
    for &z in &nodes {
        let value = rational.num.eval(z) / outer.eval(z);
        if value.norm() == 0.0 {
            return Vec::new();
        }
        targets.push(value.ln());
    }
    let with_shift = |shift: &[i32]| -> Vec<Complex64> {
        targets
            .iter()
            .zip(shift)
            .map(|(t, &k)| t + Complex64::new(0.0, std::f64::consts::TAU * k as f64))
            .collect()
    };
    let coarse = ExponentFit::new(&nodes, EXPONENT_DEGREES[0]);
    let mut ranked: Vec<(f64, Vec<i32>)> = branch_shifts(nodes.len())
        .into_iter()
        .filter_map(|shift| {
            coarse
                .solve(&with_shift(&shift))
                .map(|(spread, _)| (spread, shift))
        })
        .collect();
    ranked.sort_by(|a, b| a.0.total_cmp(&b.0));
    ranked.truncate(REFINED_BRANCHES);

    let mut choices: Vec<(f64, TaylorSeries)> = EXPONENT_DEGREES
        .iter()
        .map(|&degree| ExponentFit::new(&nodes, degree))
        .flat_map(|fit| {
            ranked
                .iter()
                .filter_map(|(_, shift)| fit.solve(&with_shift(shift)))
                .collect::<Vec<_>>()
        })
        .filter(|(spread, _)| *spread <= MAX_SPREAD)
        .collect();
    choices.sort_by(|a, b| a.0.total_cmp(&b.0));

    choices
        .into_iter()
        .take(max_count)
        .filter_map(|(_, v)| {
            let e = v.exp_to(EXP_LEN);
            let len = e.effective_len(1.0, 1e-17);
            if len >= EXP_LEN {
                return None;
            }
            let r = &e.truncated(len).to_poly() * &outer;
            let (q, _) = (&r - &rational.num).div_rem(&rational.den);
            let n = q.degree().unwrap_or(0);
            Some((n, q.reversed(n)))
        })
        .collect()
}

/// Degrees tried for the exponent polynomial `v`; the first one ranks the
/// branch choices.
const EXPONENT_DEGREES: [usize; 3] = [8, 16, 32];
/// Branch choices kept after ranking.
const REFINED_BRANCHES: usize = 3;
/// Circle samples used to measure `v`.
const FIT_SAMPLES: usize = 256;
/// Largest spread of `Re v` worth verifying: `e^-30` is about where the
/// rounding floor of [`VanishingTest::Rounding`] sits for typical candidates.
const MAX_SPREAD: f64 = 30.0;
/// Series length for `e^v`; a candidate whose exponential has not decayed
/// by then is dropped.
const EXP_LEN: usize = 4096;

/// Polynomials `v` with prescribed values at fixed nodes, fitted to keep
/// `Re v` flat on the circle. Unknowns are `(Re a_0.., Im a_0..)`.
struct ExponentFit {
    degree: usize,
    /// Real form of `v(z_j) = w_j`: rows `2j` and `2j + 1` give the real and
    /// imaginary parts.
    interp: DMatrix<f64>,
    /// `Re (v(e^{it}) - a_0)` as a row per sample.
    basis: DMatrix<f64>,
}

impl ExponentFit {
    fn new(nodes: &[Complex64], degree: usize) -> Self {
        let cols = degree + 1;
        let mut interp = DMatrix::zeros(2 * nodes.len(), 2 * cols);
        for (j, &z) in nodes.iter().enumerate() {
            for k in 0..cols {
                let p = z.powu(k as u32);
                interp[(2 * j, k)] = p.re;
                interp[(2 * j, cols + k)] = -p.im;
                interp[(2 * j + 1, k)] = p.im;
                interp[(2 * j + 1, cols + k)] = p.re;
            }
        }
        let mut basis = DMatrix::zeros(FIT_SAMPLES, 2 * cols);
        for t in 0..FIT_SAMPLES {
            for k in 1..cols {
                let e = Complex64::from_polar(
                    1.0,
                    std::f64::consts::TAU * (t * k) as f64 / FIT_SAMPLES as f64,
                );
                basis[(t, k)] = e.re;
                basis[(t, cols + k)] = -e.im;
            }
        }
        ExponentFit {
            degree,
            interp,
            basis,
        }
    }

    /// Linear program for the smallest `t` with `|Re v(e^{iθ}) - c| <= t` at
    /// every sample, `c` free.
    fn solve(&self, w: &[Complex64]) -> Option<(f64, TaylorSeries)> {
        use microlp::{ComparisonOp, OptimizationDirection, Problem};
        let n = self.degree + 1;
        let mut lp = Problem::new(OptimizationDirection::Minimize);
        let free = (f64::NEG_INFINITY, f64::INFINITY);
        let vars: Vec<_> = (0..2 * n).map(|_| lp.add_var(0.0, free)).collect();
        let centre = lp.add_var(0.0, free);
        let t = lp.add_var(1.0, (0.0, f64::INFINITY));
        for row in 0..self.interp.nrows() {
            let target = if row % 2 == 0 {
                w[row / 2].re
            } else {
                w[row / 2].im
            };
            let expr: Vec<_> = vars
                .iter()
                .enumerate()
                .map(|(k, &v)| (v, self.interp[(row, k)]))
                .collect();
            lp.add_constraint(expr, ComparisonOp::Eq, target);
        }
        for s in 0..FIT_SAMPLES {
            let mut expr: Vec<_> = vars
                .iter()
                .enumerate()
                .filter(|&(k, _)| self.basis[(s, k)] != 0.0)
                .map(|(k, &v)| (v, self.basis[(s, k)]))
                .collect();
            expr.push((centre, -1.0));
            let mut upper = expr.clone();
            upper.push((t, -1.0));
            lp.add_constraint(upper, ComparisonOp::Le, 0.0);
            expr.push((t, 1.0));
            lp.add_constraint(expr, ComparisonOp::Ge, 0.0);
        }
        let solution = lp.solve().ok()?.into_solution().ok()?;
        let u = DVector::from_iterator(2 * n, vars.iter().map(|&v| solution[v]));
        let values = &self.basis * &u;
        let spread = values.max() - values.min();
        let v = TaylorSeries::new((0..n).map(|k| Complex64::new(u[k], u[n + k])).collect());
        Some((spread, v))
    }
}

fn reconstruction_above(f: &LaurentSeries, m: usize) -> Option<RationalFn> {
    let opts = PoleOptions {
        max_m: (m + 1).max(8),
        ..PoleOptions::default()
    };
    if let Ok(report) = minimal_pole_count(f, &opts) {
        if matches!(report.m, PoleCount::Finite(k) if k > m) {
            return report.reconstruction;
        }
    }
    reconstruct_rational(f, m + 1).ok()
}

/// Integer shifts in `{-1, 0, 1}` for every node after the first.
fn branch_shifts(size: usize) -> Vec<Vec<i32>> {
    let mut out = vec![vec![0]];
    for _ in 1..size {
        out = out
            .into_iter()
            .flat_map(|s| {
                [-1, 0, 1].map(|k| {
                    let mut t = s.clone();
                    t.push(k);
                    t
                })
            })
            .collect();
    }
    if size == 0 {
        out.clear();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::{analyze_grid, BoundaryGrid};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn laurent_of(n: usize, f: impl Fn(Complex64) -> Complex64) -> LaurentSeries {
        analyze_grid(&BoundaryGrid::sample(n, f).unwrap())
    }

    fn two_pole() -> RationalFn {
        RationalFn::new(
            ComplexPoly::from_real(&[1.0]),
            ComplexPoly::from_roots(&[c(0.3, 0.0), c(-0.4, 0.0)]),
        )
        .unwrap()
    }

    #[test]
    fn one_over_z_constants() {
        // f_0(z) = z, so z(z + c) = 1 iff |c| < 1
        let minus = AntiAnalytic::new(vec![c(1.0, 0.0)]);
        for (cst, expected) in [(0.5, 1), (3.0, 0), (-10.0, 0), (0.0, 1)] {
            let t = rigidity_check(&minus, 0, &ComplexPoly::constant(c(cst, 0.0)), 1).unwrap();
            assert_eq!(t.zero_count, expected, "c = {cst}");
            assert!(t.satisfied);
        }
    }

    #[test]
    fn zero_minus_counts_polynomial_zeros() {
        let p = ComplexPoly::from_roots(&[c(0.5, 0.0), c(2.0, 0.0), c(0.0, -0.1)]);
        let t = rigidity_check(&AntiAnalytic::zero(), 3, &p, 0).unwrap();
        assert_eq!(t.zero_count, 2);
        assert!(t.satisfied);
    }

    #[test]
    fn two_poles_violate_at_one() {
        let minus = AntiAnalytic::from_rational_converged(&two_pole()).unwrap();
        let t = rigidity_check(&minus, 0, &ComplexPoly::constant(c(1e-3, 0.0)), 1).unwrap();
        assert_eq!(t.zero_count, 2);
        assert!(!t.satisfied);
        assert_eq!(
            brute_force_count(&two_pole(), 0, &ComplexPoly::constant(c(1e-3, 0.0))).unwrap(),
            2
        );
    }

    #[test]
    fn contour_zero_triggers_retry() {
        // f_0 + p = z + 1 vanishes at -1 on the contour
        let minus = AntiAnalytic::new(vec![c(1.0, 0.0)]);
        let t = rigidity_check(&minus, 0, &ComplexPoly::constant(c(1.0, 0.0)), 1).unwrap();
        assert!(t.epsilon.is_some());
        assert!(t.zero_count <= 1);
    }

    #[test]
    fn rounding_test_resolves_small_but_accurate_values() {
        // (z + 1.001)^3: |.| ranges from 1e-9 to 8 on the circle, no zeros inside
        let p = ComplexPoly::from_roots(&[c(-1.001, 0.0); 3]);
        let zero = AntiAnalytic::zero();
        let t = rigidity_check_with(&zero, 3, &p, 0, VanishingTest::Rounding).unwrap();
        assert_eq!((t.zero_count, t.epsilon), (0, None));
        let t = rigidity_check(&zero, 3, &p, 0).unwrap();
        assert!(t.epsilon.is_some());
    }

    #[test]
    fn brute_force_handles_origin_shift() {
        let minus = RationalFn::new(
            ComplexPoly::from_real(&[1.0]),
            ComplexPoly::from_real(&[-0.5, 1.0]),
        )
        .unwrap();
        let coeffs = AntiAnalytic::from_rational_converged(&minus).unwrap();
        let p = ComplexPoly::new(vec![c(0.0, 0.0), c(0.0, 0.0), c(0.7, 0.2), c(-1.0, 1.5)]);
        let reflected = rigidity_check(&coeffs, 3, &p, 1).unwrap().zero_count;
        assert_eq!(reflected, brute_force_count(&minus, 3, &p).unwrap());
        let zero = ComplexPoly::zero();
        assert_eq!(
            rigidity_check(&coeffs, 2, &zero, 1).unwrap().zero_count,
            brute_force_count(&minus, 2, &zero).unwrap()
        );
    }

    #[test]
    fn one_pole_suite_has_no_violations() {
        let minus = RationalFn::new(
            ComplexPoly::from_real(&[1.0]),
            ComplexPoly::from_real(&[-0.5, 1.0]),
        )
        .unwrap();
        let report = equivalence_suite(&minus, 1, 100, 11).unwrap();
        assert_eq!(
            report.matches,
            100,
            "{:?}",
            report.records.iter().find(|r| !r.agree)
        );
        assert_eq!(report.violations, 0);
        assert_eq!(report.winding_failures, 0);
        assert!(report.winding_checked > 50);
    }

    #[test]
    fn zero_minus_suite() {
        let report = equivalence_suite(&RationalFn::zero(), 0, 50, 3).unwrap();
        assert_eq!(report.mismatches, 0);
        assert!(report.records.iter().all(|r| r.reflected.unwrap() <= r.n));
    }

    #[test]
    fn witness_examples() {
        let f = laurent_of(4096, |t| two_pole().eval(t));
        let search = find_witness(&f, 1, DEFAULT_BUDGET).unwrap();
        let w = search.witness.unwrap();
        assert_eq!((w.n, w.p.coeff(0)), (0, c(1e-2, 0.0)));
        assert_eq!(search.layer, Some(WitnessLayer::Constant));

        let f = laurent_of(4096, |t| 1.0 / (t - 0.5));
        let search = find_witness(&f, 1, DEFAULT_BUDGET).unwrap();
        assert!(search.witness.is_none());
        assert!(search.log.len() <= DEFAULT_BUDGET);

        let f = laurent_of(1024, |t| t * t);
        assert!(find_witness(&f, 0, DEFAULT_BUDGET)
            .unwrap()
            .witness
            .is_none());
    }

    #[test]
    fn three_poles_fail_at_two() {
        let minus = RationalFn::from_partial_fractions(
            &[c(0.5, 0.1), c(-0.4, 0.3), c(0.1, -0.6)],
            &[c(1.0, 0.0), c(-0.7, 0.4), c(0.5, 1.0)],
        );
        let f = laurent_of(4096, |t| minus.eval(t));
        let search = find_witness(&f, 2, DEFAULT_BUDGET).unwrap();
        let w = search.witness.expect("a violating pair exists");
        assert!(w.zero_count > 2 + w.n);
    }

    #[test]
    fn no_witness_at_the_true_pole_count() {
        for i in 0..6u64 {
            let mut rng = crate::rng::trial_rng(21, i);
            let poles = 1 + i as usize % WITNESS_MAX_POLES;
            let minus = crate::rng::random_pole_rational(&mut rng, poles, 0.8, WITNESS_SEPARATION);
            let f = laurent_of(4096, |t| minus.eval(t) + t);
            let search = find_witness(&f, poles, DEFAULT_BUDGET).unwrap();
            assert!(search.witness.is_none(), "case {i}: {:?}", search.witness);
        }
    }

    #[test]
    fn branch_shift_enumeration() {
        assert_eq!(branch_shifts(1), vec![vec![0]]);
        assert_eq!(branch_shifts(3).len(), 9);
        assert!(branch_shifts(0).is_empty());
    }
}
