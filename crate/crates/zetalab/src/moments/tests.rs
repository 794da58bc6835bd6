use super::*;
use proptest::prelude::*;

fn engine() -> MomentEngine<f64> {
    MomentEngine::default()
}

fn spec(lower: f64, upper: f64, sigma: f64, power: u8, tol: f64) -> MomentSpec<f64> {
    MomentSpec::new(lower, upper, sigma, power, tol, 0.05).unwrap()
}

#[test]
fn spec_invariants() {
    let mk = |l, u, s, p, t| MomentSpec::new(l, u, s, p, t, 0.05);
    assert!(matches!(mk(0.0, 1.0, 0.5, 3, 1e-6), Err(Error::Domain(_))));
    assert!(matches!(mk(1.0, 2.0, 1.0, 4, 1e-6), Err(Error::Domain(_))));
    assert!(matches!(mk(1.0, 2.0, 0.52, 2, 1e-6), Err(Error::Domain(_))));
    assert!(matches!(mk(0.5, 2.0, 1.0, 2, 1e-6), Err(Error::Domain(_))));
    assert!(matches!(mk(2.0, 1.0, 0.5, 2, 1e-6), Err(Error::Domain(_))));
    assert!(matches!(mk(0.0, 1.0, 0.5, 2, 0.0), Err(Error::Domain(_))));
    assert!(mk(0.0, 1.0, 0.5, 2, 1e-6).is_ok());
    assert!(mk(1.0, 2.0, 0.55, 2, 1e-6).is_ok());
}

#[test]
fn empty_range_is_exactly_zero() {
    let e = engine();
    let mut cache = e.new_cache();
    let r = e
        .moment_integral(&spec(7.0, 7.0, 0.5, 2, 1e-8), &mut cache)
        .unwrap();
    assert_eq!(r.value, 0.0);
    assert_eq!(r.n_evals, 0);
}

#[test]
fn second_moment_to_100_matches_frozen_oracle() {
    // frozen from the independent fixed-step high-precision quadrature
    let e = engine();
    let mut cache = e.new_cache();
    let r = e.hardy_littlewood_j(100.0, 1e-6, &mut cache).unwrap();
    assert!(
        (r.value - 295.6350990547).abs() < 1e-5,
        "J(100) = {}",
        r.value
    );
    assert!(r.err_estimate <= 1e-6);
}

#[test]
fn j_at_zero_is_zero() {
    let e = engine();
    let mut cache = e.new_cache();
    assert_eq!(
        e.hardy_littlewood_j(0.0, 1e-8, &mut cache).unwrap().value,
        0.0
    );
}

#[test]
fn additivity_of_ranges() {
    let e = engine();
    let mut cache = e.new_cache();
    let tol = 1e-7;
    let a = e
        .moment_integral(&spec(0.0, 50.0, 0.5, 2, tol), &mut cache)
        .unwrap()
        .value;
    let b = e
        .moment_integral(&spec(50.0, 100.0, 0.5, 2, tol), &mut cache)
        .unwrap()
        .value;
    let whole = e
        .moment_integral(&spec(0.0, 100.0, 0.5, 2, tol), &mut cache)
        .unwrap()
        .value;
    assert!((a + b - whole).abs() <= 2.0 * tol, "{a} + {b} != {whole}");
}

#[test]
fn monotone_in_upper_bound() {
    let e = engine();
    let mut cache = e.new_cache();
    let j500 = e.hardy_littlewood_j(500.0, 1e-4, &mut cache).unwrap().value;
    let j1000 = e.hardy_littlewood_j(1000.0, 1e-4, &mut cache).unwrap().value;
    assert!(j1000 > j500 && j500 > 0.0);
}

#[test]
fn strip_moment_near_its_asymptote() {
    let e = engine();
    let mut cache = e.new_cache();
    let r = e
        .strip_second_moment(2000.0, 1.0, 1e-2, &mut cache)
        .unwrap();
    let lead = asymptotic_strip(2000.0, 1.0, 0.05).unwrap();
    let ratio = r.value / lead;
    // frozen oracle ratio 0.991947
    assert!((ratio - 0.991947).abs() < 1e-3, "ratio = {ratio}");
}

#[test]
fn fourth_moment_monotone() {
    let e = engine();
    let mut cache = e.new_cache();
    let a = e.fourth_moment(100.0, 1e-3, &mut cache).unwrap().value;
    let b = e.fourth_moment(200.0, 1e-3, &mut cache).unwrap().value;
    assert!(b > a && a > 0.0);
}

#[test]
fn cache_reuse_cuts_evaluations() {
    let e = engine();
    let mut cache = e.new_cache();
    let first = e.hardy_littlewood_j(100.0, 1e-6, &mut cache).unwrap();
    let second = e.hardy_littlewood_j(100.0, 1e-6, &mut cache).unwrap();
    assert_eq!(first.cache_hits, 0);
    assert!(second.cache_hits >= 50, "hits = {}", second.cache_hits);
    assert!(second.n_evals < first.n_evals / 4);
    assert_eq!(first.value, second.value);
}

#[test]
fn cache_roundtrip_is_bit_identical() {
    let e = engine();
    let mut cache = e.new_cache();
    e.hardy_littlewood_j(60.0, 1e-6, &mut cache).unwrap();
    e.strip_second_moment(40.0, 2.0, 1e-6, &mut cache).unwrap();
    let dir = std::env::temp_dir().join("zetalab-moments-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("roundtrip.cache");
    cache.save(&path).unwrap();
    let loaded = MomentCache::<f64>::load(&path, &e.version()).unwrap();
    assert_eq!(cache, loaded);
}

#[test]
fn empty_cache_roundtrip() {
    let e = engine();
    let cache = e.new_cache();
    let dir = std::env::temp_dir().join("zetalab-moments-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("empty.cache");
    cache.save(&path).unwrap();
    let loaded = MomentCache::<f64>::load(&path, &e.version()).unwrap();
    assert_eq!(loaded.stats(), (0, 0));
    assert_eq!(cache, loaded);
}

#[test]
fn version_mismatch_is_rejected() {
    let e = engine();
    let cache = e.new_cache();
    let dir = std::env::temp_dir().join("zetalab-moments-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("version.cache");
    cache.save(&path).unwrap();
    match MomentCache::<f64>::load(&path, "some-other-evaluator") {
        Err(Error::Compatibility { found, expected }) => {
            assert_eq!(found, e.version());
            assert_eq!(expected, "some-other-evaluator");
        }
        other => panic!("expected compatibility error, got {other:?}"),
    }
}

#[test]
fn corrupt_cache_is_rejected() {
    let dir = std::env::temp_dir().join("zetalab-moments-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("corrupt.cache");
    std::fs::write(&path, "not a cache at all\n").unwrap();
    assert!(matches!(
        MomentCache::<f64>::load(&path, "x"),
        Err(Error::Integrity(_))
    ));
    // monotonicity violation inside an otherwise well-formed file
    let text = format!(
        "{CACHE_FORMAT}\nevaluator x\ngrid 2e0 per_unit_tol 1e-9\n\
         series sigma=5e-1 power=2 grid=g2e0 n=3\n0e0,0e0\n2e0,5e0\n4e0,4e0\n"
    );
    std::fs::write(&path, text).unwrap();
    assert!(matches!(
        MomentCache::<f64>::load(&path, "x"),
        Err(Error::Integrity(_))
    ));
}

#[test]
fn budget_exhaustion_reports_partial() {
    let e = MomentEngine::<f64> {
        budget_max: 200,
        ..MomentEngine::default()
    };
    let mut cache = e.new_cache();
    match e.hardy_littlewood_j(100.0, 1e-6, &mut cache) {
        Err(Error::Budget { spent, partial, .. }) => {
            assert!(spent <= 200);
            assert!(partial >= 0.0);
        }
        other => panic!("expected budget error, got {other:?}"),
    }
}

#[test]
fn extend_then_query_hits_cache() {
    let e = engine();
    let mut cache = e.new_cache();
    let added = e.extend_cache(&mut cache, 0.5, 2, 80.0).unwrap();
    assert!(added >= 40);
    let r = e.hardy_littlewood_j(80.0, 1e-6, &mut cache).unwrap();
    assert!(r.cache_hits >= 40);
}

#[test]
fn asymptotic_j_values() {
    let k = crate::consts::Constants::<f64>::new();
    let root = k.hli_linear.exp();
    assert!(asymptotic_j(root).unwrap().abs() < 1e-12 * root);
    assert!((asymptotic_j(100.0f64).unwrap() - 292.17244493818).abs() < 1e-8);
    assert!((asymptotic_j(1e4f64).unwrap() - 75268.946353699).abs() < 1e-6);
    assert!(matches!(asymptotic_j(1.0), Err(Error::Domain(_))));
}

#[test]
fn asymptotic_fourth_values() {
    let k = crate::consts::Constants::<f64>::new();
    let e = std::f64::consts::E;
    assert!((asymptotic_fourth(e).unwrap() - k.ingham_coeff * e).abs() < 1e-14);
    assert!((asymptotic_fourth(2000.0f64).unwrap() - 338190.10154284).abs() < 1e-5);
    // value(T)/T strictly increasing
    assert!(asymptotic_fourth(3000.0).unwrap() / 3000.0 > asymptotic_fourth(2000.0).unwrap() / 2000.0);
}

#[test]
fn asymptotic_strip_values() {
    assert!((asymptotic_strip(1000.0f64, 1.0, 0.05).unwrap() - 1644.9340668).abs() < 1e-5);
    assert!((asymptotic_strip(1000.0f64, 0.75, 0.05).unwrap() - 2612.3753487).abs() < 1e-5);
    let one = asymptotic_strip(500.0, 1.0, 0.05).unwrap();
    let two = asymptotic_strip(1000.0, 1.0, 0.05).unwrap();
    assert_eq!(two, 2.0 * one);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn additivity_on_random_splits(a in 1.0f64..30.0, w1 in 0.5f64..15.0, w2 in 0.5f64..15.0) {
        let e = engine();
        let mut cache = e.new_cache();
        let tol = 1e-7;
        let b = a + w1;
        let c = b + w2;
        let ab = e.moment_integral(&spec(a, b, 2.0, 2, tol), &mut cache).unwrap().value;
        let bc = e.moment_integral(&spec(b, c, 2.0, 2, tol), &mut cache).unwrap().value;
        let ac = e.moment_integral(&spec(a, c, 2.0, 2, tol), &mut cache).unwrap().value;
        prop_assert!((ab + bc - ac).abs() <= 2.0 * tol);
    }
}
