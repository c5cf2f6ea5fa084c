use nalgebra::DMatrix;
use num_complex::Complex64 as C;
use proptest::prelude::*;
use std::f64::consts::{E, PI};
use std::sync::{Arc, OnceLock};
use zsl_core::mellin::*;
use zsl_core::pairing::*;
use zsl_core::surd::QuadSurd;
use zsl_core::zerofind::*;
use zsl_core::Error;

/// Minimum Hermitian Gram eigenvalue of the default family on 100 zeros is
/// 2.675e−3 by the direct-summation oracle below; regressions must stay above.
const GRAM_MIN_EIGENVALUE_FLOOR: f64 = 1e-3;

fn catalog(n: usize) -> Arc<ZeroCatalog> {
    static FULL: OnceLock<ZeroCatalog> = OnceLock::new();
    let full = FULL.get_or_init(|| scan_zero_count(&RiemannXi, 100, DEFAULT_STEP).unwrap());
    Arc::new(if n == 100 { full.clone() } else { full.truncated(n) })
}

/// Closed-form transform of amp·exp(−a(ln x − mu)²), independent of the library.
fn lg_transform(a: f64, mu: f64, s: C) -> C {
    (PI / a).sqrt() * (s * mu + s * s / (4.0 * a)).exp()
}

fn default_mus() -> [f64; 5] {
    [-1.0, -0.5, 0.0, 0.5, 1.0]
}

#[test]
fn spectral_coefficients_at_the_first_zero() {
    let cat = catalog(50);
    let f = TestFunction::real_log_gaussian(100.0, 0.0).unwrap();
    let u = spectralize(&f, cat.clone()).unwrap();
    let rho = C::new(0.5, cat.zeros[0].gamma);
    assert!((u.plus[0] - lg_transform(100.0, 0.0, rho)).norm() <= 1e-15);
    for (p, m) in u.plus.iter().zip(&u.minus) {
        assert!((p.conj() - m).norm() <= 1e-10 * p.norm().max(1e-300));
    }
    assert_eq!(u.plus.len(), 50);
    assert!(u.zero.is_empty());
}

#[test]
fn antisymmetric_pairing_against_two_loop_oracle() {
    let cat = catalog(50);
    let f = TestFunction::real_log_gaussian(100.0, 0.0).unwrap();
    let g = TestFunction::real_log_gaussian(100.0, 0.5).unwrap();
    let got = pair_antisym(&spectralize(&f, cat.clone()).unwrap(), &spectralize(&g, cat.clone()).unwrap())
        .unwrap();
    let mut oracle = C::new(0.0, 0.0);
    for z in &cat.zeros {
        let rho = C::new(0.5, z.gamma);
        for (first, second, sign) in [((0.0, 0.5), (1.0, 0.0), 1.0), ((0.5, 0.0), (1.0, 0.0), -1.0)] {
            let _ = second;
            let (mu_a, mu_b) = first;
            oracle += sign * lg_transform(100.0, mu_a, rho) * lg_transform(100.0, mu_b, 1.0 - rho);
        }
    }
    assert!(got.value.norm() > 1e-12);
    assert!((got.value - oracle).norm() <= 1e-12 * oracle.norm());
    assert_eq!(got.twist, 1);
    assert!(got.truncation_bound >= 0.0 && got.truncation_bound < 1e-30);
    assert!(got.flags.is_empty());
}

#[test]
fn symmetric_pairing_identities() {
    let zeros = vec![Zero { gamma: 6.0, mult: 1 }, Zero { gamma: 8.9, mult: 2 }];
    let cat = Arc::new(
        ZeroCatalog::new(FamilyTag::Elliptic("11a1".into()), 2, 10.0, 1e-8, zeros, vec![]).unwrap(),
    );
    let f = TestFunction::log_gaussian(20.0, 0.2, C::new(1.0, -0.5)).unwrap();
    let g = TestFunction::real_log_gaussian(30.0, -0.1).unwrap();
    let u = spectralize(&f, cat.clone()).unwrap();
    let v = spectralize(&g, cat.clone()).unwrap();
    assert_eq!(pair_sym(&u, &v).unwrap().value, pair_sym(&v, &u).unwrap().value);
    let uu = pair_sym(&u, &u).unwrap().value;
    let direct: C = (0..2).map(|k| f64::from(cat.zeros[k].mult) * u.plus[k] * u.minus[k]).sum();
    assert!((uu - 2.0 * direct).norm() <= 1e-15 * uu.norm());
    assert_eq!(pair_sym(&u, &v).unwrap().twist, 2);
    assert!(pair_antisym(&u, &v).is_err());
}

#[test]
fn symmetric_pairing_flags_real_zeros() {
    let cat = Arc::new(
        ZeroCatalog::new(
            FamilyTag::Elliptic("37a1".into()),
            2,
            10.0,
            1e-8,
            vec![Zero { gamma: 5.0, mult: 1 }],
            vec![RealZero { sigma: 1.0, mult: 1 }],
        )
        .unwrap(),
    );
    let f = TestFunction::real_log_gaussian(20.0, 0.0).unwrap();
    let u = spectralize(&f, cat).unwrap();
    assert_eq!(u.zero.len(), 1);
    let p = pair_sym(&u, &u).unwrap();
    assert_eq!(p.flags, vec![PairingFlag::RealZerosIgnored]);
}

#[test]
fn kernel_contains_smoothed_images() {
    let cat = catalog(50);
    let fam = TestFunction::default_family();
    for h in &fam {
        let sm = spectralize(&smoothed_image(h.clone()).unwrap(), cat.clone()).unwrap();
        let h_norm = spectralize(h, cat.clone()).unwrap().norm();
        for c in sm.plus.iter().chain(&sm.minus) {
            assert!(c.norm() <= 1e-8 * h_norm);
        }
        for v in &fam {
            let vv = spectralize(v, cat.clone()).unwrap();
            let p = pair_antisym(&sm, &vv).unwrap().value;
            assert!(p.norm() <= 1e-8 * h_norm * vv.norm());
            let herm = hermitian_form(&sm, &vv).unwrap();
            assert!(herm.norm() <= 1e-8 * h_norm * vv.norm());
        }
    }
}

#[test]
fn kernel_check_detects_non_zeros() {
    // Moving every ordinate by 0.05 leaves the zero set; the smoothed image
    // must then fail the kernel bound.
    let cat = catalog(20);
    let shifted: Vec<Zero> = cat.zeros.iter().map(|z| Zero { gamma: z.gamma + 0.05, mult: 1 }).collect();
    let off = Arc::new(ZeroCatalog::new(FamilyTag::Riemann, 1, cat.t_max, 1e-8, shifted, vec![]).unwrap());
    let h = TestFunction::real_log_gaussian(100.0, 0.0).unwrap();
    let v = TestFunction::real_log_gaussian(100.0, 0.5).unwrap();
    let sm = spectralize(&smoothed_image(h.clone()).unwrap(), off.clone()).unwrap();
    let vv = spectralize(&v, off.clone()).unwrap();
    let scale = spectralize(&h, off.clone()).unwrap().norm() * vv.norm();
    let ratio = pair_antisym(&sm, &vv).unwrap().value.norm() / scale;
    assert!(ratio > 1e-8, "ratio {ratio:e}");

    let sm = spectralize(&smoothed_image(h.clone()).unwrap(), cat.clone()).unwrap();
    let vv = spectralize(&v, cat.clone()).unwrap();
    let scale = spectralize(&h, cat).unwrap().norm() * vv.norm();
    assert!(pair_antisym(&sm, &vv).unwrap().value.norm() <= 1e-13 * scale);
}

/// Hermitian Gram by direct summation over all zeros γ and −γ.
fn gram_oracle(cat: &ZeroCatalog) -> DMatrix<C> {
    let mus = default_mus();
    DMatrix::from_fn(5, 5, |i, j| {
        let mut acc = C::new(0.0, 0.0);
        for z in &cat.zeros {
            for gamma in [z.gamma, -z.gamma] {
                let rho = C::new(0.5, gamma);
                acc += lg_transform(100.0, mus[i], rho) * lg_transform(100.0, mus[j], rho).conj();
            }
        }
        acc
    })
}

#[test]
fn hermitian_gram_is_positive_definite() {
    let cat = catalog(100);
    let gram = gram_matrix(&TestFunction::default_family(), Form::Hermitian, cat.clone()).unwrap();
    let oracle = gram_oracle(&cat);
    for i in 0..5 {
        for j in 0..5 {
            assert!((gram.entries[i][j] - oracle[(i, j)]).norm() <= 1e-12 * oracle[(i, j)].norm().max(1e-3));
        }
    }
    let oracle_eigs = oracle.symmetric_eigenvalues();
    let oracle_min = oracle_eigs.iter().cloned().fold(f64::INFINITY, f64::min);
    let (min, max) = psd_check(&gram.entries).unwrap();
    assert!((min - oracle_min).abs() <= 1e-12);
    assert!(min > GRAM_MIN_EIGENVALUE_FLOOR, "min eigenvalue {min}");
    assert!(max >= min);
}

#[test]
fn antisymmetric_gram_structure_and_rank() {
    let cat = catalog(100);
    let fam = TestFunction::default_family();
    let g = gram_matrix(&fam, Form::Antisym, cat.clone()).unwrap();
    for i in 0..5 {
        assert_eq!(g.entries[i][i], C::new(0.0, 0.0));
        for j in 0..5 {
            assert_eq!(g.entries[i][j], -g.entries[j][i]);
        }
    }
    let mut ten = fam.clone();
    ten.extend(fam.iter().map(|f| apply_j(f.clone(), 1).unwrap()));
    let big = gram_matrix(&ten, Form::Antisym, cat).unwrap();
    assert_eq!(numeric_rank(&big.entries, 1e-9).unwrap(), 10);
    let m = DMatrix::from_fn(10, 10, |i, j| big.entries[i][j]);
    let mut oracle_sv: Vec<f64> = m.singular_values().iter().cloned().collect();
    oracle_sv.sort_by(|a, b| b.total_cmp(a));
    let sv = singular_values(&big.entries).unwrap();
    for (a, b) in sv.iter().zip(&oracle_sv) {
        assert!((a - b).abs() <= 1e-12 * oracle_sv[0]);
    }
    assert!(oracle_sv[9] > 1e-9 * oracle_sv[0]);
}

#[test]
fn gram_csv_has_dsl_header() {
    let fam = TestFunction::default_family();
    let g = gram_matrix(&fam[..2], Form::Antisym, catalog(10)).unwrap();
    let csv = g.to_csv().unwrap();
    let mut lines = csv.lines();
    assert_eq!(lines.next().unwrap(), "\"loggauss:a=100,mu=-1\",\"loggauss:a=100,mu=-0.5\"");
    assert_eq!(lines.count(), 2);
}

#[test]
fn equivariance_at_weight_one() {
    let cat = catalog(50);
    let fam = TestFunction::default_family();
    assert_eq!(equivariance_check(&fam[0], &fam[3], 1.0, 1, cat.clone()).unwrap(), 0.0);
    for lambda in [1.0 / 3.0, 2.0, E] {
        for i in 0..5 {
            let d = equivariance_check(&fam[i], &fam[(i + 2) % 5], lambda, 1, cat.clone()).unwrap();
            assert!(d <= 1e-9, "lambda={lambda}: {d}");
        }
    }
    assert!(equivariance_check(&fam[0], &fam[1], 2.0, 2, cat).is_err());
}

#[test]
fn functional_equation_trace_identity() {
    let cat = catalog(50);
    let fam = TestFunction::default_family();
    for i in 0..5 {
        let u = spectralize(&fam[i], cat.clone()).unwrap();
        let v = spectralize(&fam[(i + 1) % 5], cat.clone()).unwrap();
        assert!(funceq_identity_residual(&u, &v).unwrap() <= 1e-10 * u.norm() * v.norm());
        assert_eq!(funceq_identity_residual(&u, &u).unwrap(), 0.0);
    }
    let f = TestFunction::log_gaussian(60.0, 0.2, C::new(0.3, 1.7)).unwrap();
    let g = TestFunction::log_gaussian(90.0, -0.6, C::new(-1.1, 0.4)).unwrap();
    let u = spectralize(&f, cat.clone()).unwrap();
    let v = spectralize(&g, cat).unwrap();
    assert!(funceq_identity_residual(&u, &v).unwrap() <= 1e-10 * u.norm() * v.norm());
}

#[test]
fn truncation_is_certified() {
    let short = catalog(50);
    let long = catalog(100);
    let fam = TestFunction::default_family();
    for i in 0..5 {
        for j in 0..5 {
            let (u, v) = (spectralize(&fam[i], short.clone()).unwrap(), spectralize(&fam[j], short.clone()).unwrap());
            let (ul, vl) = (spectralize(&fam[i], long.clone()).unwrap(), spectralize(&fam[j], long.clone()).unwrap());
            let a = pair_antisym(&u, &v).unwrap();
            let b = pair_antisym(&ul, &vl).unwrap();
            let change = (a.value - b.value).norm();
            assert!(change <= a.truncation_bound || change == 0.0);
            if i != j {
                assert!(change <= 1e-12 * b.value.norm());
                assert!(a.truncation_bound <= 1e-12 * a.value.norm());
            }
        }
    }
}

#[test]
fn pairing_report_json() {
    let cat = catalog(20);
    let fam = TestFunction::default_family();
    let u = spectralize(&fam[2], cat.clone()).unwrap();
    let v = spectralize(&fam[3], cat).unwrap();
    let p = pair_antisym(&u, &v).unwrap();
    let report = PairingReport::new(Form::Antisym, 1, "z.json", &p);
    let text = serde_json::to_string(&report).unwrap();
    let order: Vec<usize> = ["\"form\"", "\"weight\"", "\"catalog_ref\"", "\"value\"", "\"twist\"", "\"truncation_bound\"", "\"flags\""]
        .iter()
        .map(|k| text.find(k).unwrap())
        .collect();
    assert!(order.windows(2).all(|w| w[0] < w[1]), "{text}");
    let json: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(json["twist"], 1);
    assert_eq!(json["form"], "antisym");
}

#[test]
fn suspension_examples() {
    let s = suspend(4, &[(C::new(-2.0, 0.0), 1), (C::new(2.0, 0.0), 1)]).unwrap();
    assert!((s.entries[0].s0 - C::new(0.5, PI / 4f64.ln())).norm() <= 1e-15);
    assert!(!s.entries[0].is_real());
    assert!(s.entries[1].is_real() && s.entries[1].s0 == C::new(0.5, 0.0));
    let v = suspension_twist_check(&s, 3).unwrap();
    assert!(v.passed);

    let exact = suspend_exact(
        4,
        &[(QuadSurd::integer(2), 2)],
    )
    .unwrap();
    let v = suspension_twist_check(&exact, 5).unwrap();
    assert_eq!(v.exact, Some(true));

    let unpaired = suspend(4, &[(C::new(1.0, 0.0), 1)]).unwrap();
    assert!(matches!(suspension_twist_check(&unpaired, 1), Err(Error::UnpairedEigenvalue(_))));
}

#[test]
fn archimedean_suspension_is_the_catalog() {
    let cat = catalog(10);
    let s = suspend_catalog(&cat);
    assert_eq!(s.period, 0.0);
    assert_eq!(s.entries.len(), 10);
    assert_eq!(s.entries[0].s0, C::new(0.5, cat.zeros[0].gamma));
}

proptest! {
    #[test]
    fn suspension_commutes_with_base_change(
        re in -3.0f64..3.0, im in -3.0f64..3.0, r in 1u32..5, qi in 0usize..4
    ) {
        let q = [2u64, 3, 4, 5][qi];
        let alpha = C::new(re, im);
        prop_assume!(alpha.norm() > 0.1);
        let s = suspend(q, &[(alpha, 1)]).unwrap();
        let changed = base_change(&s, r).unwrap();
        let direct = suspend(q.pow(r), &[(alpha.powu(r), 1)]).unwrap();
        let (a, b) = (changed.entries[0].s0, direct.entries[0].s0);
        let p = changed.period;
        prop_assert!((changed.period - direct.period).abs() <= 1e-14 * p);
        prop_assert!((a.re - b.re).abs() <= 1e-12);
        let d = (a.im - b.im).abs();
        prop_assert!(d.min(p - d) <= 1e-9);
    }

    #[test]
    fn antisymmetry_and_hermitian_symmetry_are_exact(
        a1 in 5.0f64..200.0, m1 in -1.0f64..1.0, r1 in -2.0f64..2.0, i1 in -2.0f64..2.0,
        a2 in 5.0f64..200.0, m2 in -1.0f64..1.0, r2 in -2.0f64..2.0, i2 in -2.0f64..2.0,
    ) {
        let cat = catalog(20);
        let f = TestFunction::log_gaussian(a1, m1, C::new(r1, i1)).unwrap();
        let g = TestFunction::log_gaussian(a2, m2, C::new(r2, i2)).unwrap();
        let u = spectralize(&f, cat.clone()).unwrap();
        let v = spectralize(&g, cat).unwrap();
        prop_assert_eq!(pair_antisym(&u, &v).unwrap().value + pair_antisym(&v, &u).unwrap().value, C::new(0.0, 0.0));
        prop_assert_eq!(hermitian_form(&u, &v).unwrap(), hermitian_form(&v, &u).unwrap().conj());
        let h = hermitian_form(&u, &u).unwrap();
        prop_assert!(h.im == 0.0 && h.re >= 0.0);
    }
}
