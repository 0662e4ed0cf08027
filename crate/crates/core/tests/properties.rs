use polyint::exactpoly::rising_factorial_ratio;
use polyint::regions::{cardioid_contains, classify_e, phi, Region};
use polyint::rootfind::{roots, RootOptions};
use polyint::{BigComplex, GaussRat, RatPoly};
use proptest::prelude::*;
use rug::Rational;

fn gauss() -> impl Strategy<Value = GaussRat> {
    (-50i64..=50, 1i64..=12, -50i64..=50, 1i64..=12).prop_map(|(a, b, c, d)| {
        GaussRat::new(Rational::from((a, b)), Rational::from((c, d)))
    })
}

fn monic(max_deg: usize) -> impl Strategy<Value = RatPoly> {
    prop::collection::vec(gauss(), 0..max_deg).prop_map(|mut c| {
        c.push(GaussRat::one());
        RatPoly::new(c)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn gauss_text_round_trip(g in gauss()) {
        let back: GaussRat = g.to_string().parse().unwrap();
        prop_assert_eq!(back, g);
    }

    #[test]
    fn poly_text_round_trip(p in monic(8)) {
        let back = RatPoly::parse_coeffs(&p.to_strings()).unwrap();
        prop_assert_eq!(back, p);
    }

    #[test]
    fn integral_contracts(p in monic(8), m in 1usize..5, lambda in gauss()) {
        let n = p.degree();
        let int = p.iterated_integral(m, &lambda).unwrap();
        prop_assert!(int.is_monic());
        prop_assert_eq!(int.degree(), n + m);
        prop_assert_eq!(int.derivative(m), p.scale_int(&rising_factorial_ratio(n, m)));
        let taylor = int.taylor_coeffs(&lambda);
        prop_assert!(taylor[..m].iter().all(|c| c.is_zero()));
    }

    #[test]
    fn origin_fast_path_matches_general(p in monic(8), m in 1usize..5) {
        let fast = p.iterated_integral(m, &GaussRat::zero()).unwrap();
        let mut raw = p.clone();
        for _ in 0..m {
            raw = raw.antiderivative();
        }
        prop_assert_eq!(fast, raw.scale_int(&rising_factorial_ratio(p.degree(), m)));
    }

    #[test]
    fn phi_inversion_symmetry(re in -4.0f64..4.0, im in -4.0f64..4.0) {
        let z = BigComplex::from_f64(re, im, 128);
        prop_assume!(z.abs_f64() > 1e-3);
        let a = phi(&z).unwrap().abs_f64();
        let b = phi(&z.recip()).unwrap().abs_f64();
        prop_assert!((a - b).abs() <= 1e-12 * a.max(1.0));
        let lab = classify_e(&z, 0.0);
        prop_assert_eq!(lab.region == Region::E1, a > 1.0 && z.abs_f64() > 1.0);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn recovers_prescribed_roots(rs in prop::collection::btree_set((-6i64..=6, -6i64..=6), 1..9)) {
        let pts: Vec<GaussRat> = rs
            .iter()
            .map(|&(a, b)| GaussRat::new(Rational::from((a, 2)), Rational::from((b, 2))))
            .collect();
        let p = RatPoly::from_roots(&pts);
        let found = roots(&p, &RootOptions::default()).unwrap();
        prop_assert!(found.converged);
        prop_assert_eq!(found.len(), pts.len());
        for g in &pts {
            let want = BigComplex::from_gauss(g, 128);
            let d = found.roots.iter().map(|z| z.dist_f64(&want)).fold(f64::INFINITY, f64::min);
            prop_assert!(d < 1e-25);
        }
    }

    #[test]
    fn cardioid_holds_for_random_critical_points(
        crit in prop::collection::vec((-8i64..=8, -8i64..=8), 1..6),
        lam in (-24i64..=24, -24i64..=24),
    ) {
        // critical points in the closed disc of radius 1
        let crit: Vec<GaussRat> = crit
            .iter()
            .map(|&(a, b)| GaussRat::new(Rational::from((a, 12)), Rational::from((b, 12))))
            .collect();
        let lambda = GaussRat::new(Rational::from((lam.0, 8)), Rational::from((lam.1, 8)));
        let p = RatPoly::from_roots(&crit).iterated_integral_any(1, &lambda);
        let found = roots(&p, &RootOptions::default()).unwrap();
        let l = BigComplex::from_gauss(&lambda, 128);
        for z in &found.roots {
            prop_assert!(cardioid_contains(z, &l, 1.0));
            prop_assert!((z.abs_f64() - l.abs_f64()).abs() <= 2.0 + 1e-8);
        }
    }
}
