use meroscope::cauchy::{reflect, split, AntiAnalytic};
use meroscope::grid::{analyze_grid, synthesize, BoundaryGrid};
use meroscope::poles::{hankel_rank, DEFAULT_GAP_THRESHOLD};
use meroscope::poly::ComplexPoly;
use meroscope::rational::RationalFn;
use meroscope::series::LaurentSeries;
use meroscope::winding::winding;
use meroscope::zeros::count_zeros_disk;
use num_complex::Complex64;
use proptest::prelude::*;

fn point(max_radius: f64) -> impl Strategy<Value = Complex64> {
    (0.0..max_radius, 0.0..std::f64::consts::TAU).prop_map(|(r, t)| Complex64::from_polar(r, t))
}

/// A point well away from the unit circle, inside or outside.
fn off_circle() -> impl Strategy<Value = Complex64> {
    prop_oneof![
        (0.0..0.8f64, 0.0..std::f64::consts::TAU).prop_map(|(r, t)| Complex64::from_polar(r, t)),
        (1.25..2.5f64, 0.0..std::f64::consts::TAU).prop_map(|(r, t)| Complex64::from_polar(r, t)),
    ]
}

fn separated(points: &[Complex64], sep: f64) -> bool {
    points
        .iter()
        .enumerate()
        .all(|(i, a)| points[..i].iter().all(|b| (a - b).norm() >= sep))
}

fn poly_grid(roots: &[Complex64], n: usize) -> BoundaryGrid {
    let p = ComplexPoly::from_roots(roots);
    BoundaryGrid::sample(n, |t| p.eval(t)).unwrap()
}

fn inside(roots: &[Complex64]) -> i64 {
    roots.iter().filter(|r| r.norm() < 1.0).count() as i64
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn roots_round_trip(roots in prop::collection::vec(point(1.5), 1..7)) {
        prop_assume!(separated(&roots, 0.1));
        let found = ComplexPoly::from_roots(&roots).root_list().unwrap();
        prop_assert_eq!(found.len(), roots.len());
        for r in &roots {
            let nearest = found.iter().map(|f| (f - r).norm()).fold(f64::INFINITY, f64::min);
            prop_assert!(nearest < 1e-8, "root {} missed by {}", r, nearest);
        }
    }

    #[test]
    fn winding_counts_interior_roots(roots in prop::collection::vec(off_circle(), 0..8)) {
        let w = winding(&poly_grid(&roots, 512)).unwrap().winding;
        prop_assert_eq!(w, inside(&roots));
    }

    #[test]
    fn winding_is_additive_under_products(
        a in prop::collection::vec(off_circle(), 0..5),
        b in prop::collection::vec(off_circle(), 0..5),
    ) {
        let (ga, gb) = (poly_grid(&a, 512), poly_grid(&b, 512));
        let product = ga.zip_with(&gb, |x, y| x * y);
        prop_assert_eq!(
            winding(&product).unwrap().winding,
            winding(&ga).unwrap().winding + winding(&gb).unwrap().winding
        );
    }

    #[test]
    fn conjugation_negates_winding(roots in prop::collection::vec(off_circle(), 0..6)) {
        let g = poly_grid(&roots, 512);
        prop_assert_eq!(winding(&g.conj()).unwrap().winding, -winding(&g).unwrap().winding);
    }

    #[test]
    fn finer_grids_keep_the_winding(roots in prop::collection::vec(off_circle(), 0..10)) {
        if let Ok(coarse) = winding(&poly_grid(&roots, 64)) {
            let fine = winding(&poly_grid(&roots, 1024)).unwrap();
            prop_assert_eq!(coarse.winding, fine.winding);
        }
    }

    #[test]
    fn disk_counts_match_roots(roots in prop::collection::vec(off_circle(), 1..8)) {
        let p = ComplexPoly::from_roots(&roots);
        prop_assert_eq!(count_zeros_disk(|z| p.eval(z), 1.0).unwrap(), inside(&roots));
    }

    #[test]
    fn reflection_identity(
        coeffs in prop::collection::vec(point(1.0), 1..12),
        n in 0usize..6,
        z in point(0.95),
    ) {
        prop_assume!(z.norm() > 0.05);
        let minus = AntiAnalytic::new(coeffs);
        let lhs = reflect(&minus, n).eval(z);
        let rhs = z.powu(n as u32) * minus.eval(z.inv());
        prop_assert!((lhs - rhs).norm() <= 1e-10 * (1.0 + rhs.norm()));
    }

    #[test]
    fn partial_fractions_evaluate(
        terms in prop::collection::vec((point(0.9), point(2.0)), 1..5),
        z in off_circle(),
    ) {
        let (poles, residues): (Vec<_>, Vec<_>) = terms.into_iter().unzip();
        prop_assume!(poles.iter().all(|p| (z - p).norm() > 0.1));
        let f = RationalFn::from_partial_fractions(&poles, &residues);
        let direct: Complex64 = poles.iter().zip(&residues).map(|(p, r)| r / (z - p)).sum();
        prop_assert!((f.eval(z) - direct).norm() <= 1e-9 * (1.0 + direct.norm()));
    }

    #[test]
    fn normalization_keeps_values(
        poles in prop::collection::vec(point(0.9), 1..4),
        common in point(0.9),
        z in off_circle(),
    ) {
        prop_assume!(separated(&poles, 0.1) && poles.iter().all(|p| (p - common).norm() > 0.1));
        let mut den_roots = poles.clone();
        den_roots.push(common);
        let f = RationalFn::new(
            ComplexPoly::from_roots(&[common]).scale(Complex64::new(2.0, -1.0)),
            ComplexPoly::from_roots(&den_roots),
        ).unwrap();
        let g = f.normalized().unwrap();
        prop_assert_eq!(g.den.degree(), Some(poles.len()));
        prop_assume!((z - common).norm() > 0.1 && poles.iter().all(|p| (z - p).norm() > 0.1));
        prop_assert!((f.eval(z) - g.eval(z)).norm() <= 1e-7 * (1.0 + g.eval(z).norm()));
    }

    #[test]
    fn split_recombines(
        plus in prop::collection::vec(point(0.5), 1..8),
        minus in prop::collection::vec(point(0.5), 1..8),
    ) {
        let f = LaurentSeries::new(minus.clone(), plus.clone());
        let g = synthesize(&f, 256).unwrap();
        let parts = split(&analyze_grid(&g));
        for (k, c) in minus.iter().enumerate() {
            prop_assert!((parts.minus.coeff(k + 1) - c).norm() < 1e-12);
        }
        for (k, c) in plus.iter().enumerate() {
            prop_assert!((parts.plus.coeff(k) - c).norm() < 1e-12);
        }
    }

    #[test]
    fn hankel_rank_counts_poles(
        terms in prop::collection::vec((point(0.7), 0.5..2.0f64, 0.0..std::f64::consts::TAU), 1..5),
    ) {
        let poles: Vec<Complex64> = terms.iter().map(|t| t.0).collect();
        prop_assume!(separated(&poles, 0.2));
        let residues: Vec<Complex64> = terms.iter().map(|t| Complex64::from_polar(t.1, t.2)).collect();
        let f = RationalFn::from_partial_fractions(&poles, &residues);
        let series = analyze_grid(&BoundaryGrid::sample(1024, |t| f.eval(t)).unwrap());
        let (rank, _) = hankel_rank(&series, 12, DEFAULT_GAP_THRESHOLD).unwrap();
        prop_assert_eq!(rank, poles.len());
    }
}
