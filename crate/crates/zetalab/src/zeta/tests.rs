use super::*;
use proptest::prelude::*;

fn evaluator() -> ZetaEvaluator<f64> {
    ZetaEvaluator::new(ZetaConfig::default())
}

fn rs_evaluator(threshold: f64) -> ZetaEvaluator<f64> {
    ZetaEvaluator::new(ZetaConfig {
        rs_threshold: threshold,
        ..ZetaConfig::default()
    })
}

#[test]
fn zeta_two_is_pi_sq_over_six() {
    let ev = evaluator();
    let p = ev.point(2.0, 0.0).unwrap();
    let v = ev.zeta_point(&p, 1e-12).unwrap();
    assert!((v.re - std::f64::consts::PI.powi(2) / 6.0).abs() < 1e-13);
    assert_eq!(v.im, 0.0);
}

#[test]
fn real_axis_values() {
    // zeta(3), zeta(1.5), zeta(0.5) against 50-digit references
    let ev = evaluator();
    let cases = [
        (3.0, 1.2020569031595942854),
        (1.5, 2.6123753486854883433),
        (0.5, -1.4603545088095868129),
    ];
    for (sigma, want) in cases {
        let p = ev.point(sigma, 0.0).unwrap();
        let v = ev.zeta_point(&p, 1e-10).unwrap();
        assert!((v.re - want).abs() < 1e-12, "zeta({sigma}) = {}", v.re);
    }
}

#[test]
fn first_critical_zero() {
    let ev = evaluator();
    let p = ev.point(0.5, 14.134725141734694).unwrap();
    let sq = ev.abs_zeta_sq(&p, 1e-10).unwrap();
    assert!(sq < 1e-12, "|zeta|^2 at the first zero: {sq:.3e}");
}

#[test]
fn conjugate_symmetry_is_bit_exact() {
    let ev = evaluator();
    for t in [0.0, 3.7, 141.3, 2718.28] {
        let plus = ev.abs_zeta_sq_signed(0.75, t, 1e-9).unwrap();
        let minus = ev.abs_zeta_sq_signed(0.75, -t, 1e-9).unwrap();
        assert_eq!(plus.to_bits(), minus.to_bits(), "t = {t}");
    }
}

#[test]
fn matches_high_precision_oracle() {
    let mut oracle = zetalab_oracle::HighPrecZeta::new(40);
    let ev = evaluator();
    for (sigma, t) in [
        (0.5, 50.0),
        (0.5, 1234.5),
        (0.75, 777.0),
        (1.0, 100.0),
        (2.0, 10.0),
    ] {
        let (ore, oim) = oracle.zeta_f64(sigma, t);
        let v = ev
            .zeta_point(&ev.point(sigma, t).unwrap(), 1e-9)
            .unwrap();
        assert!(
            (v.re - ore).abs() < 1e-10 && (v.im - oim).abs() < 1e-10,
            "sigma={sigma} t={t}: ({}, {}) vs oracle ({ore}, {oim})",
            v.re,
            v.im
        );
    }
}

#[test]
fn riemann_siegel_agrees_with_euler_maclaurin() {
    let em = evaluator();
    let rs = rs_evaluator(1000.0);
    for t in [1500.0, 3000.0, 4321.5, 9999.25] {
        let p = em.point(0.5, t).unwrap();
        let a = em.abs_zeta_sq(&p, 1e-8).unwrap();
        let b = rs.abs_zeta_sq(&p, 1e-3).unwrap();
        assert!(
            (a - b).abs() < 1e-5 * (1.0 + a),
            "t = {t}: EM {a} vs RS {b}"
        );
    }
}

#[test]
fn riemann_siegel_path_is_reported() {
    let rs = rs_evaluator(1000.0);
    let below = rs.eval(&rs.point(0.5, 500.0).unwrap(), 1e-8).unwrap();
    assert_eq!(below.path, EvalPath::EulerMaclaurin);
    let above = rs.eval(&rs.point(0.5, 2000.0).unwrap(), 1e-3).unwrap();
    assert_eq!(above.path, EvalPath::RiemannSiegel);
    // the strip never takes the fast path
    let strip = rs.eval(&rs.point(0.75, 2000.0).unwrap(), 1e-8).unwrap();
    assert_eq!(strip.path, EvalPath::EulerMaclaurin);
}

#[test]
fn domain_errors() {
    let ev = evaluator();
    assert!(matches!(ev.point(0.51, 10.0), Err(Error::Domain(_))));
    assert!(matches!(ev.point(0.3, 10.0), Err(Error::Domain(_))));
    assert!(matches!(ev.point(0.5, -1.0), Err(Error::Domain(_))));
    assert!(matches!(
        ev.point(f64::NAN, 10.0),
        Err(Error::Domain(_))
    ));
    assert!(matches!(
        prime_counting_approx(1.0_f64),
        Err(Error::Domain(_))
    ));
    assert!(matches!(
        zeta_two_sigma(0.5_f64, 0.05),
        Err(Error::Domain(_))
    ));
}

#[test]
fn precision_error_reports_achievable() {
    let ev = evaluator();
    let p = ev.point(0.5, 5000.0).unwrap();
    match ev.eval(&p, 1e-16) {
        Err(Error::Precision {
            requested,
            achievable,
        }) => {
            assert_eq!(requested, 1e-16);
            assert!(achievable > 1e-16 && achievable < 1e-6);
        }
        other => panic!("expected a precision error, got {other:?}"),
    }
}

#[test]
fn term_count_monotone_within_each_path() {
    let rs = rs_evaluator(1000.0);
    let mut last = 0u32;
    for i in 0..40 {
        let t = 10.0 + 20.0 * i as f64; // stays on the EM side
        let e = rs.eval(&rs.point(0.5, t).unwrap(), 1e-6).unwrap();
        assert!(e.terms >= last, "EM terms dropped at t = {t}");
        last = e.terms;
    }
    last = 0;
    for i in 0..40 {
        let t = 1200.0 + 200.0 * i as f64; // stays on the RS side
        let e = rs.eval(&rs.point(0.5, t).unwrap(), 1e-3).unwrap();
        assert!(e.terms >= last, "RS terms dropped at t = {t}");
        last = e.terms;
    }
}

#[test]
fn zeta_two_sigma_values() {
    assert!((zeta_two_sigma(0.75_f64, 0.05).unwrap() - 2.6123753486854883).abs() < 1e-12);
    assert!((zeta_two_sigma(1.5_f64, 0.05).unwrap() - 1.2020569031595942).abs() < 1e-12);
}

#[test]
fn f32_instantiation_runs() {
    let ev = zeta::ZetaEvaluator::<f32>::new(zeta::ZetaConfig::default());
    let p = ev.point(2.0f32, 0.0).unwrap();
    let v = ev.zeta_point(&p, 1e-4f32).unwrap();
    assert!((v.re - std::f32::consts::PI.powi(2) / 6.0).abs() < 1e-5);
}

use crate as zeta_crate;
use zeta_crate::zeta;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn abs_sq_nonnegative_and_consistent(sigma in 0.55f64..3.0, t in 0.0f64..500.0) {
        let ev = evaluator();
        let p = ev.point(sigma, t).unwrap();
        let e = ev.eval(&p, 1e-8).unwrap();
        let v = e.value;
        prop_assert!(v.abs_sq >= 0.0);
        prop_assert_eq!(v.abs_sq, v.re * v.re + v.im * v.im);
    }

    #[test]
    fn signed_entry_point_is_even(t in -400.0f64..400.0) {
        let ev = evaluator();
        let a = ev.abs_zeta_sq_signed(0.75, t, 1e-8).unwrap();
        let b = ev.abs_zeta_sq_signed(0.75, -t, 1e-8).unwrap();
        prop_assert_eq!(a.to_bits(), b.to_bits());
    }
}
