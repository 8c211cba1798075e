//! The release gate: ten numbered end-to-end checks, each a single test so
//! the harness prints one pass/fail line per criterion. Everything here is
//! exact arithmetic; a criterion either holds coefficient-for-coefficient
//! through its stated order or the test fails with the first mismatch.

use std::collections::BTreeSet;
use std::time::Instant;

use num::{One, Zero};
use qdivisor::chebyshev::{a128504_term, c_n_closed, cheb_coeff_sum, riordan_coeff, ChebCoeffQuery};
use qdivisor::etatheta::sigma;
use qdivisor::identities;
use qdivisor::macmahon::{
    compute_route, scan_congruence_1mod3_mod3, scan_congruence_2mod3, u_cheb, u_direct, MacParams,
    Route,
};
use qdivisor::partitions::{
    enumerate_class, exceptional_count, forward_map, inverse_map, InverseOutcome, PartitionClass,
};
use qdivisor::quasimodular::{
    a_t_series, b_series, c_series_check, de2_proposition_check, diff_difference_check,
    fact_sum_umbral_check, fit_quasimodular, parse_basis, umbral_h_r_check,
};
use qdivisor::rational::{binomial, frac, rat, Rat};
use qdivisor::series::QSeries;
use qdivisor::wz::{wz1_check, wz2_direct_check};

#[test]
fn criterion_01_direct_route_matches_triple_divisor_sum() {
    let order = 300;
    let direct = u_direct(&MacParams::new(1, 2, order).unwrap());

    let mut coeffs = vec![Rat::zero(); order + 1];
    for n in 1.. {
        if 3 * n > order {
            break;
        }
        for j in 1.. {
            let e = 3 * n * j;
            if e > order {
                break;
            }
            coeffs[e] += rat(j as i64);
        }
    }
    let divisor_sum = QSeries::from_coeffs(coeffs);
    assert_eq!(direct.first_mismatch(&divisor_sum), None);

    for n in 1..=order {
        if n % 3 == 0 {
            assert_eq!(direct.cn(n), &Rat::from_integer(sigma(n / 3)), "n={n}");
        } else {
            assert!(direct.cn(n).is_zero(), "n={n}");
        }
    }
    println!("PASS criterion 1: U_2(1,q) by direct enumeration == sum q^3n/(1-q^3n)^2 to order 300");
}

#[test]
fn criterion_02_three_routes_agree_everywhere() {
    let order = 200;
    let started = Instant::now();
    for a in [-2i64, -1, 0, 1, 2] {
        for t in 1..=4i64 {
            let params = MacParams::new(a, t, order).unwrap();
            let results: Vec<_> = [Route::Direct, Route::Product, Route::Cheb]
                .iter()
                .map(|&r| compute_route(&params, r))
                .collect();
            for pair in results.windows(2) {
                assert_eq!(
                    pair[0].series.first_mismatch(&pair[1].series),
                    None,
                    "a={a} t={t}: {} vs {}",
                    pair[0].route.name(),
                    pair[1].route.name()
                );
            }
        }
    }
    let elapsed = started.elapsed();
    assert!(elapsed.as_secs() < 60, "route agreement took {elapsed:?}");
    println!(
        "PASS criterion 2: direct == product == cheb for all a, t <= 4, order 200 ({:.1}s)",
        elapsed.as_secs_f64()
    );
}

#[test]
fn criterion_03_congruence_scans() {
    let outcome = scan_congruence_2mod3(5, 300);
    assert!(outcome.report.passed(), "{:?}", outcome.report.first_mismatch);
    assert!(outcome.checked > 0);

    let outcome = scan_congruence_1mod3_mod3(300);
    assert!(outcome.report.passed(), "{:?}", outcome.report.first_mismatch);
    assert!(outcome.checked > 0);
    println!("PASS criterion 3: MO(1,t;3n+2) == 0 for t <= 5 and MO(1,3;3n+1) == 0 mod 3, to 300");
}

#[test]
fn criterion_04_partition_classes_and_bijection() {
    for n in 1..=120u64 {
        let p0 = enumerate_class(n, PartitionClass::P0);
        let p1 = enumerate_class(n, PartitionClass::P1);
        let expect = if n % 3 == 0 {
            i64::try_from(sigma((n / 3) as usize)).unwrap()
        } else {
            0
        };
        assert_eq!(p0.len() as i64 - p1.len() as i64, expect, "n={n}");

        let p0: BTreeSet<_> = p0.into_iter().collect();
        let mut images = BTreeSet::new();
        for q in &p1 {
            let img = forward_map(q).unwrap();
            assert_eq!(img.weight(), n);
            assert!(images.insert(img), "forward map not injective at n={n}");
            assert_eq!(inverse_map(&img).unwrap(), InverseOutcome::Preimage(*q), "n={n}");
        }
        assert!(images.is_subset(&p0));
        for q in p0.difference(&images) {
            assert_eq!(inverse_map(q).unwrap(), InverseOutcome::Exceptional, "n={n} {q:?}");
        }
    }
    assert_eq!(exceptional_count(9), 4);
    println!("PASS criterion 4: P0(n)-P1(n) == [3|n] sigma(n/3) to 120, bijection exact off the exceptional set, 4 exceptions at n=9");
}

#[test]
fn criterion_05_coefficient_closed_forms() {
    for a in [-2i64, -1, 0, 1, 2] {
        for n in 0..=40 {
            for t in 0..=n {
                let q = ChebCoeffQuery::new(n, t, a);
                assert_eq!(cheb_coeff_sum(q), riordan_coeff(q), "a={a} n={n} t={t}");
            }
        }
    }
    for n in 0..=40 {
        for t in 0..=n {
            assert_eq!(
                cheb_coeff_sum(ChebCoeffQuery::new(n, t, 2)),
                Rat::from_integer(binomial(n + t, 2 * t)),
                "n={n} t={t}"
            );
        }
    }
    for n in 0..=60 {
        assert_eq!(c_n_closed(n), cheb_coeff_sum(ChebCoeffQuery::new(n, 2, 1)), "c_{n}");
    }
    let order = 60usize;
    let den =
        QSeries::from_coeffs((0..=order).map(|i| if i <= 2 { rat(1) } else { rat(0) }).collect());
    let expansion = den.pow(3).invert().unwrap();
    for n in 0..=order {
        assert_eq!(&a128504_term(n as i64), expansion.cn(n), "a_{n}");
    }
    println!("PASS criterion 5: coefficient sum == Riordan on the 40-grid, binomial column at a=2, piecewise c_n and 1/(1+z+z^2)^3 to 60");
}

#[test]
fn criterion_06_wz_certificates() {
    for t in 1..=3 {
        let report = wz1_check(t, 40);
        assert!(report.passed(), "t={t}: {:?}", report.first_mismatch);
    }
    let report = wz2_direct_check(100);
    assert!(report.passed(), "{:?}", report.first_mismatch);
    println!("PASS criterion 6: WZ pair relation for t <= 3, n <= 40; direct summation matches c_n to 100");
}

#[test]
fn criterion_07_triangular_operator_structure() {
    let order = 200;
    let mut lhs = b_series(order);
    for t in 1..=4u32 {
        lhs = lhs.add(&lhs.derive().scale(&rat(8))).unwrap();
        assert_eq!(lhs.first_mismatch(&a_t_series(2 * t, order)), None, "t={t}");
    }
    for t in 0..=4 {
        let report = c_series_check(t, order);
        assert!(report.passed(), "t={t}: {:?}", report.first_mismatch);
    }
    for t in 1..=4 {
        let report = fact_sum_umbral_check(t, order);
        assert!(report.passed(), "t={t}: {:?}", report.first_mismatch);
    }
    let report = diff_difference_check(6, order);
    assert!(report.passed(), "{:?}", report.first_mismatch);
    for r in 1..=5 {
        let report = umbral_h_r_check(r, order);
        assert!(report.passed(), "r={r}: {:?}", report.first_mismatch);
    }
    println!("PASS criterion 7: (1+8D)^t B == A_2t and the umbral, factorial-sum and differential-difference structure, order 200");
}

#[test]
fn criterion_08_quasimodular_fits() {
    let order = 80;

    let u2 = u_cheb(&MacParams::new(1, 2, order).unwrap());
    let expr = fit_quasimodular(&u2, &parse_basis("E2@3").unwrap(), 2).unwrap();
    assert_eq!(expr.coefficient_of(&[0]), frac(1, 24));
    assert_eq!(expr.coefficient_of(&[1]), frac(-1, 24));

    let u1 = u_cheb(&MacParams::new(2, 1, order).unwrap());
    let expr = fit_quasimodular(&u1, &parse_basis("E2,E2@2").unwrap(), 2).unwrap();
    assert_eq!(expr.coefficient_of(&[0, 0]), frac(-1, 8));
    assert_eq!(expr.coefficient_of(&[1, 0]), frac(-1, 24));
    assert_eq!(expr.coefficient_of(&[0, 1]), frac(1, 6));

    let basis = parse_basis("E2,E4,E6").unwrap();
    for t in 1..=4 {
        let u = u_cheb(&MacParams::new(-2, t, order).unwrap());
        let expr = fit_quasimodular(&u, &basis, 2 * t as u32)
            .unwrap_or_else(|e| panic!("t={t}: {e}"));
        assert_eq!(expr.evaluate(order).first_mismatch(&u), None, "t={t}");
    }

    let outcome = de2_proposition_check(3, order);
    assert!(outcome.report.passed(), "{:?}", outcome.report.first_mismatch);
    let constant = outcome.constant.expect("constant determined at t=1");
    assert!(!constant.is_zero());
    println!(
        "PASS criterion 8: E2(q^3) fit for U_2(1), two-level E2 fit for U_1(2), weight<=2t fits for U_t(-2), partial-E2 constant {} consistent for t=1..3",
        constant
    );
}

#[test]
fn criterion_09_identity_registry_at_two_orders() {
    for id in [
        "u1-0",
        "u1-1-pent",
        "u1-neg1-theta",
        "a113661",
        "u1-1-q4",
        "relay-q4",
        "lem-7.1-a",
        "lem-7.1-b",
        "lem-7.1-c",
        "hex-lattice",
        "ex-7-theta",
        "ex-7-eta",
        "prop-7-ft",
    ] {
        assert!(
            identities::registry().iter().any(|e| e.id == id),
            "registry is missing {id}"
        );
    }
    for order in [120, 300] {
        for report in identities::check_all(order) {
            assert!(
                report.passed(),
                "{} at order {order}: {:?}",
                report.id,
                report.first_mismatch
            );
        }
    }
    println!("PASS criterion 9: all {} registered identities pass at orders 120 and 300", identities::registry().len());
}

#[test]
fn criterion_10_engine_properties() {
    use proptest::collection::vec;
    use proptest::prelude::*;
    use proptest::test_runner::{Config, TestRunner};

    const CASES: u32 = 200;

    fn coeff() -> impl Strategy<Value = Rat> {
        (-1000i64..=1000, 1i64..=12).prop_map(|(n, d)| frac(n, d))
    }

    fn series(ord: usize) -> impl Strategy<Value = QSeries> {
        vec(coeff(), ord + 1).prop_map(QSeries::from_coeffs)
    }

    fn unit_series(ord: usize) -> impl Strategy<Value = QSeries> {
        vec(coeff(), ord + 1).prop_map(|mut v| {
            if v[0].is_zero() {
                v[0] = Rat::one();
            }
            QSeries::from_coeffs(v)
        })
    }

    fn runner() -> TestRunner {
        TestRunner::new(Config { cases: CASES, ..Config::default() })
    }

    let mut total = 0u32;

    // Addition is associative and commutative; multiplication distributes.
    runner()
        .run(
            &(0usize..=16).prop_flat_map(|o| (series(o), series(o), series(o))),
            |(f, g, h)| {
                let fg_h = f.add(&g).unwrap().add(&h).unwrap();
                let f_gh = f.add(&g.add(&h).unwrap()).unwrap();
                prop_assert_eq!(&fg_h, &f_gh);
                prop_assert_eq!(f.add(&g).unwrap(), g.add(&f).unwrap());
                let dist = f.mul(&g.add(&h).unwrap());
                prop_assert_eq!(dist, f.mul(&g).add(&f.mul(&h)).unwrap());
                Ok(())
            },
        )
        .unwrap();
    total += CASES;

    // Multiplication is associative and commutative.
    runner()
        .run(
            &(0usize..=12).prop_flat_map(|o| (series(o), series(o), series(o))),
            |(f, g, h)| {
                prop_assert_eq!(f.mul(&g).mul(&h), f.mul(&g.mul(&h)));
                prop_assert_eq!(f.mul(&g), g.mul(&f));
                Ok(())
            },
        )
        .unwrap();
    total += CASES;

    // One and zero behave as ring identities.
    runner()
        .run(&(0usize..=16).prop_flat_map(series), |f| {
            let one = QSeries::one(f.order());
            let zero = QSeries::zero(f.order());
            prop_assert_eq!(&f.mul(&one), &f);
            prop_assert_eq!(&f.add(&zero).unwrap(), &f);
            prop_assert_eq!(f.add(&f.negate()).unwrap(), zero);
            Ok(())
        })
        .unwrap();
    total += CASES;

    // Inversion round-trips whenever the constant term is a unit.
    runner()
        .run(&(0usize..=16).prop_flat_map(unit_series), |f| {
            let inv = f.invert().unwrap();
            prop_assert_eq!(f.mul(&inv), QSeries::one(f.order()));
            prop_assert_eq!(inv.invert().unwrap(), f);
            Ok(())
        })
        .unwrap();
    total += CASES;

    // The derivation D = q d/dq obeys the product rule.
    runner()
        .run(
            &(0usize..=16).prop_flat_map(|o| (series(o), series(o))),
            |(f, g)| {
                let lhs = f.mul(&g).derive();
                let rhs = f.derive().mul(&g).add(&f.mul(&g.derive())).unwrap();
                prop_assert_eq!(lhs, rhs);
                Ok(())
            },
        )
        .unwrap();
    total += CASES;

    // q -> q^k is a ring morphism.
    runner()
        .run(
            &(0usize..=16).prop_flat_map(|o| (series(o), series(o), 1usize..=4)),
            |(f, g, k)| {
                let sum = f.add(&g).unwrap().substitute_power(k).unwrap();
                prop_assert_eq!(
                    sum,
                    f.substitute_power(k).unwrap().add(&g.substitute_power(k).unwrap()).unwrap()
                );
                let prod = f.mul(&g).substitute_power(k).unwrap();
                prop_assert_eq!(
                    prod,
                    f.substitute_power(k).unwrap().mul(&g.substitute_power(k).unwrap())
                );
                Ok(())
            },
        )
        .unwrap();
    total += CASES;

    assert!(total >= 1000, "only {total} properties cases run");
    println!("PASS criterion 10: {total} randomized engine-property cases, zero failures");
}
