mod oracle;

use proptest::prelude::*;
use zsl_core::zerofind::*;
use zsl_core::Error;

fn catalog_100() -> ZeroCatalog {
    scan_zeros(&RiemannXi, 100.0, DEFAULT_STEP).unwrap()
}

#[test]
fn twenty_nine_zeros_below_one_hundred() {
    let cat = catalog_100();
    assert_eq!(cat.len(), 29);
    assert!(cat.certified);
    assert_eq!(cat.family, FamilyTag::Riemann);
    assert_eq!(cat.center, 0.5);
    let cert = completeness_check(&cat).unwrap();
    assert!(cert.passed && cert.slack <= 1.0);
    assert_eq!(cert.exact_count, 29);
}

#[test]
fn zeros_agree_with_independent_scan() {
    let cat = catalog_100();
    let reference = oracle::hardy_zeros(10.0, 100.0, 0.05);
    assert_eq!(reference.len(), cat.len());
    for (z, r) in cat.zeros.iter().zip(&reference) {
        assert!((z.gamma - r).abs() < 1e-6, "{} vs {r}", z.gamma);
        assert_eq!(z.mult, 1);
    }
    assert!((cat.zeros[0].gamma - 14.134725141734695).abs() < 1e-9);
}

#[test]
fn cataloged_zeros_are_zeros() {
    let cat = catalog_100();
    for z in &cat.zeros {
        let v = RiemannXi.eval(zsl_core::Complex::new(0.5, z.gamma)).unwrap();
        let scale = RiemannXi.eval(zsl_core::Complex::new(0.5, z.gamma + 0.1)).unwrap().norm();
        assert!(v.norm() <= 1e-8 * scale.max(1.0), "gamma={}", z.gamma);
    }
}

#[test]
fn nothing_below_the_first_zero() {
    let cat = scan_zeros(&RiemannXi, 14.0, DEFAULT_STEP).unwrap();
    assert!(cat.is_empty());
    assert!(completeness_check(&cat).unwrap().passed);
}

#[test]
fn a_deleted_zero_is_flagged() {
    let mut cat = catalog_100();
    let removed = cat.zeros.remove(10);
    let cert = completeness_check(&cat).unwrap();
    assert!(!cert.passed);
    let (lo, hi) = cert.flagged_interval.unwrap();
    assert!(lo < removed.gamma && removed.gamma < hi);
}

#[test]
fn count_mode_reaches_two_hundred() {
    let cat = scan_zero_count(&RiemannXi, 79, DEFAULT_STEP).unwrap();
    assert_eq!(cat.len(), 79);
    assert!(cat.t_max < 200.0 && cat.zeros[78].gamma < cat.t_max);
    let full = scan_zeros(&RiemannXi, 200.0, DEFAULT_STEP).unwrap();
    assert_eq!(full.len(), 79);
    assert_eq!(riemann_zero_count(200.0).unwrap(), 79);
    let cert = completeness_check(&full).unwrap();
    assert!(cert.passed && cert.slack <= 1.0, "{cert:?}");
}

#[test]
fn scanning_is_idempotent_and_serializable() {
    let a = catalog_100();
    let b = catalog_100();
    assert_eq!(a, b);
    let json = a.to_json();
    let back = ZeroCatalog::from_json(&json).unwrap();
    assert_eq!(back, a);
    assert_eq!(back.to_json(), json);
    assert!(json.contains("\"gamma\": 14.1347251417"));
}

#[test]
fn truncation_keeps_the_prefix() {
    let cat = catalog_100();
    let short = cat.truncated(10);
    assert_eq!(short.len(), 10);
    assert_eq!(&short.zeros[..], &cat.zeros[..10]);
    assert!(short.t_max > short.zeros[9].gamma && short.t_max < cat.zeros[10].gamma);
}

#[test]
fn no_real_zeros_inside_the_critical_strip() {
    assert!(detect_real_zeros(&RiemannXi, 0.05, 0.95).unwrap().is_empty());
}

#[test]
fn coarse_steps_are_rejected() {
    assert!(matches!(
        scan_zeros(&RiemannXi, 50.0, 0.2),
        Err(Error::StepTooCoarse { .. })
    ));
}

#[test]
fn malformed_catalogs_are_rejected() {
    let mut cat = catalog_100();
    cat.zeros.swap(0, 1);
    assert!(cat.validate().is_err());
    assert!(ZeroCatalog::from_json("{\"family\": 3}").is_err());
}

proptest! {
    #[test]
    fn refinement_finds_cubic_roots(r in -5.0f64..5.0, c in 0.1f64..3.0) {
        let f = |x: f64| Ok((x - r) * ((x - r).powi(2) + c));
        let out = refine_root(f, r - 1.3, r + 0.7).unwrap();
        prop_assert!((out.root - r).abs() <= 1e-12 * r.abs().max(1.0));
        for w in out.bisection_widths.windows(2) {
            prop_assert!(w[1] < w[0]);
        }
    }
}
