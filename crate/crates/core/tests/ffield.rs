use proptest::prelude::*;
use zsl_core::ffield::{
    base_change, count_points, frobenius_eigenvalues, function_field_catalog, poincare_pairing_matrix,
    split_real_zeros, zeta_numerator, CurveOverFq, FfReport, GaloisField, ZetaPolynomial,
};
use zsl_core::pairing::suspend;
use zsl_core::surd::QuadSurd;
use zsl_core::{Complex, Error};

/// Schoolbook arithmetic in 𝔽_p[x]/(m), elements as coefficient vectors.
struct NaiveField {
    p: u32,
    m: Vec<u32>,
}

impl NaiveField {
    fn k(&self) -> usize {
        self.m.len() - 1
    }

    fn elements(&self) -> Vec<Vec<u32>> {
        let q = self.p.pow(self.k() as u32);
        (0..q)
            .map(|mut c| {
                (0..self.k())
                    .map(|_| {
                        let d = c % self.p;
                        c /= self.p;
                        d
                    })
                    .collect()
            })
            .collect()
    }

    fn add(&self, a: &[u32], b: &[u32]) -> Vec<u32> {
        a.iter().zip(b).map(|(x, y)| (x + y) % self.p).collect()
    }

    fn mul(&self, a: &[u32], b: &[u32]) -> Vec<u32> {
        let k = self.k();
        let mut prod = vec![0u32; 2 * k];
        for (i, x) in a.iter().enumerate() {
            for (j, y) in b.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x * y) % self.p;
            }
        }
        for deg in (k..2 * k).rev() {
            let top = prod[deg];
            if top != 0 {
                for j in 0..=k {
                    let sub = top * self.m[j] % self.p;
                    prod[deg - k + j] = (prod[deg - k + j] + self.p - sub) % self.p;
                }
            }
        }
        prod.truncate(k);
        prod
    }

    fn constant(&self, c: u32) -> Vec<u32> {
        let mut v = vec![0; self.k()];
        v[0] = c % self.p;
        v
    }
}

fn poly_rem(p: u32, a: &[u32], b: &[u32]) -> Vec<u32> {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    let inv_lead = (1..p).find(|x| x * b[db] % p == 1).unwrap();
    while r.len() > db && !r.is_empty() {
        let top = *r.last().unwrap() * inv_lead % p;
        let shift = r.len() - 1 - db;
        for j in 0..=db {
            r[shift + j] = (r[shift + j] + p - top * b[j] % p) % p;
        }
        r.pop();
    }
    r
}

/// No monic factor of degree 1..=k/2.
fn irreducible_by_trial_division(p: u32, m: &[u32]) -> bool {
    let k = m.len() - 1;
    for d in 1..=k / 2 {
        for code in 0..p.pow(d as u32) {
            let mut f: Vec<u32> = (0..d).map(|i| code / p.pow(i as u32) % p).collect();
            f.push(1);
            if poly_rem(p, m, &f).iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

/// Counts projective points by trying every (x, y).
fn naive_count(p: u32, k: u32, a: [u32; 5]) -> u64 {
    let field = GaloisField::new(p, k).unwrap();
    let naive = NaiveField { p, m: field.modulus() };
    let elts = naive.elements();
    let coeff = |c: u32| elts[c as usize].clone();
    let [a1, a2, a3, a4, a6] = a.map(coeff);
    let mut n = 1;
    for x in &elts {
        let x2 = naive.mul(x, x);
        let x3 = naive.mul(&x2, x);
        let rhs = naive.add(&naive.add(&x3, &naive.mul(&a2, &x2)), &naive.add(&naive.mul(&a4, x), &a6));
        for y in &elts {
            let lhs = naive.add(&naive.mul(y, y), &naive.add(&naive.mul(&naive.mul(&a1, x), y), &naive.mul(&a3, y)));
            if lhs == rhs {
                n += 1;
            }
        }
    }
    n
}

fn curve(text: &str) -> CurveOverFq {
    text.parse().unwrap()
}

fn zp(q: u64, coeffs: &[i128]) -> ZetaPolynomial {
    ZetaPolynomial::new(q, coeffs.to_vec()).unwrap()
}

#[test]
fn tabulated_moduli_irreducible_by_trial_division() {
    for p in [2, 3, 5, 7] {
        for k in 1..=4 {
            let m = GaloisField::new(p, k).unwrap().modulus();
            assert_eq!(m.len(), k as usize + 1);
            assert!(irreducible_by_trial_division(p, &m), "p={p} k={k} m={m:?}");
        }
    }
}

#[test]
fn table_multiplication_matches_schoolbook() {
    for (p, k) in [(2, 4), (3, 3), (5, 2), (7, 2)] {
        let f = GaloisField::new(p, k).unwrap();
        let naive = NaiveField { p, m: f.modulus() };
        let elts = naive.elements();
        for a in 0..f.size() {
            for b in 0..f.size() {
                assert_eq!(elts[f.mul(a, b) as usize], naive.mul(&elts[a as usize], &elts[b as usize]));
                assert_eq!(elts[f.add(a, b) as usize], naive.add(&elts[a as usize], &elts[b as usize]));
            }
        }
        assert_eq!(naive.constant(1), elts[1]);
    }
}

#[test]
fn spec_point_counts() {
    assert_eq!(count_points(&curve("ell:q=2;a1=0,a2=0,a3=1,a4=0,a6=0"), 1).unwrap(), 3);
    assert_eq!(count_points(&curve("ell:q=4;a1=0,a2=0,a3=1,a4=0,a6=0"), 1).unwrap(), 9);
    assert_eq!(count_points(&curve("ell:q=3;a4=1"), 1).unwrap(), 4);
    // The same curve over 𝔽₂ counted over 𝔽₄ through the embedding.
    assert_eq!(count_points(&curve("ell:q=2;a3=1"), 2).unwrap(), 9);
}

#[test]
fn counts_agree_with_naive_enumeration() {
    let cases: &[(u32, u32, &str)] = &[
        (2, 1, "a1=1,a6=1"),
        (2, 3, "a1=1,a2=g,a6=g^2+1"),
        (2, 4, "a3=1,a4=g^3,a6=g"),
        (3, 2, "a2=g,a4=1,a6=2g+1"),
        (5, 1, "a4=1,a6=1"),
        (5, 2, "a1=g,a3=1,a4=g+3,a6=4"),
        (7, 2, "a2=3,a6=g^5"),
        (3, 3, "a4=-1,a6=g^2-g"),
    ];
    for &(p, k, coeffs) in cases {
        let q = p.pow(k);
        let text = format!("ell:q={q};{coeffs}");
        let c = curve(&text);
        let CurveOverFq::Elliptic(w) = &c else { unreachable!() };
        let field = w.field();
        let mut a = [0u32; 5];
        for item in coeffs.split(',') {
            let (name, value) = item.split_once('=').unwrap();
            let slot = ["a1", "a2", "a3", "a4", "a6"].iter().position(|n| *n == name).unwrap();
            a[slot] = parse_in(field, value);
        }
        assert_eq!(count_points(&c, 1).unwrap(), naive_count(p, k, a), "{text}");
    }
}

/// Independent reading of `c g^e` sums using field powers of the generator.
fn parse_in(f: &GaloisField, text: &str) -> u32 {
    let mut acc = 0;
    let normalized = text.replace('-', "+-");
    for term in normalized.split('+').filter(|t| !t.is_empty()) {
        let (neg, body) = term.strip_prefix('-').map_or((false, term), |b| (true, b));
        let value = if let Some(pos) = body.find('g') {
            let c: i64 = if pos == 0 { 1 } else { body[..pos].parse().unwrap() };
            let e: u64 = body[pos + 1..].strip_prefix('^').map_or(1, |e| e.parse().unwrap());
            f.mul(f.from_int(c), f.pow(f.generator(), e))
        } else {
            f.from_int(body.parse().unwrap())
        };
        acc = f.add(acc, if neg { f.neg(value) } else { value });
    }
    acc
}

#[test]
fn spec_zeta_numerators() {
    assert_eq!(zeta_numerator(&[3], 1, 2).unwrap().coeffs, vec![1, 0, 2]);
    assert_eq!(zeta_numerator(&[1], 1, 4).unwrap().coeffs, vec![1, -4, 4]);
    assert_eq!(zeta_numerator(&[4], 1, 3).unwrap().coeffs, vec![1, 0, 3]);
}

#[test]
fn twist_over_f4_has_one_point() {
    // Tr(g) = 1 in 𝔽₄, so y² + y = x³ + g is the quadratic twist.
    let twist = curve("ell:q=4;a3=1,a6=g");
    assert_eq!(count_points(&twist, 1).unwrap(), 1);
    let p = twist.zeta_numerator().unwrap();
    assert_eq!(p.coeffs, vec![1, -4, 4]);
    let s = frobenius_eigenvalues(&p).unwrap();
    assert_eq!(s.real_sqrt_q_mult, 2);
}

#[test]
fn spec_eigenvalues() {
    let s = frobenius_eigenvalues(&zp(2, &[1, 0, 2])).unwrap();
    let i_sqrt2 = QuadSurd::new(0, 1, -2, 1).unwrap();
    let exact: Vec<_> = s.eigenvalues.iter().map(|e| (e.exact.unwrap(), e.mult)).collect();
    assert_eq!(exact, vec![(i_sqrt2, 1), (i_sqrt2.conjugate(), 1)]);
    assert_eq!(s.real_sqrt_q_mult, 0);

    let s = frobenius_eigenvalues(&zp(4, &[1, -4, 4])).unwrap();
    assert_eq!(s.eigenvalues.len(), 1);
    assert_eq!(s.eigenvalues[0].exact, Some(QuadSurd::integer(2)));
    assert_eq!(s.eigenvalues[0].mult, 2);
    assert_eq!(s.real_sqrt_q_mult, 2);

    let s = frobenius_eigenvalues(&zp(3, &[1, 0, 3])).unwrap();
    for e in &s.eigenvalues {
        assert_eq!(e.exact.unwrap().norm().unwrap(), QuadSurd::integer(3));
    }
}

#[test]
fn weil_violation_is_reported() {
    let err = frobenius_eigenvalues(&zp(4, &[1, -5, 4])).unwrap_err();
    assert!(matches!(err, Error::WeilViolation(_)), "{err:?}");
    // Genus two with one trace beyond 2√q: (1 − 5T + 4T²)(1 + 4T²).
    let err = frobenius_eigenvalues(&zp(4, &[1, -5, 8, -20, 16])).unwrap_err();
    assert!(matches!(err, Error::WeilViolation(_)), "{err:?}");
}

#[test]
fn pairing_blocks_for_genus_one() {
    let s = frobenius_eigenvalues(&zp(2, &[1, 0, 2])).unwrap();
    let m = poincare_pairing_matrix(&s).unwrap();
    assert_eq!(m.matrix, vec![vec![0, 1], vec![-1, 0]]);
    assert!(m.is_antisymmetric());
    assert_eq!(m.determinant(), 1);
    assert_eq!(m.equivariance_exact(), Some(true));
    let a = m.basis[0].exact.unwrap();
    let b = m.basis[1].exact.unwrap();
    assert_eq!(a.checked_mul(&b).unwrap(), QuadSurd::integer(2));

    // α = 2 = √4 with multiplicity two: one block inside the eigenspace.
    let m = poincare_pairing_matrix(&frobenius_eigenvalues(&zp(4, &[1, -4, 4])).unwrap()).unwrap();
    assert_eq!(m.blocks, 1);
    assert_eq!(m.equivariance_exact(), Some(true));
}

#[test]
fn genus_two_from_counts() {
    // (1 − T + 3T²)(1 + 2T + 3T²): traces 1 and −2, so N₁ = 5, N₂ = 17.
    let c = curve("counts:q=3;g=2;N=5,17");
    let p = c.zeta_numerator().unwrap();
    assert_eq!(p.coeffs, vec![1, 1, 4, 3, 9]);
    let s = frobenius_eigenvalues(&p).unwrap();
    assert_eq!(s.dimension(), 4);
    assert!(s.eigenvalues.iter().all(|e| e.exact.is_some()));
    let m = poincare_pairing_matrix(&s).unwrap();
    assert_eq!(m.blocks, 2);
    assert_eq!(m.determinant(), 1);
    assert_eq!(m.equivariance_exact(), Some(true));
    assert_eq!(count_points(&c, 3).unwrap(), p.point_counts(3).unwrap()[2] as u64);
}

#[test]
fn genus_three_numeric_roots() {
    // T³ h(1/T + 5T) for the irreducible h(u) = u³ − 3u + 1.
    let p = zp(5, &[1, 0, 12, 1, 60, 0, 125]);
    let s = frobenius_eigenvalues(&p).unwrap();
    assert_eq!(s.dimension(), 6);
    for e in &s.eigenvalues {
        assert!(e.exact.is_none());
        assert!((e.value.norm_sqr() / 5.0 - 1.0).abs() < 1e-10);
        let t = Complex::new(1.0, 0.0) / e.value;
        assert!(p.eval(t).norm() < 1e-9);
    }
    let m = poincare_pairing_matrix(&s).unwrap();
    assert_eq!(m.blocks, 3);
    assert!(m.equivariance_deviation() < 1e-10);
    assert_eq!(m.equivariance_exact(), None);
}

#[test]
fn split_examples() {
    let (m, rest) = split_real_zeros(&frobenius_eigenvalues(&zp(4, &[1, -4, 4])).unwrap());
    assert_eq!((m, rest.eigenvalues.len()), (2, 0));
    let s = frobenius_eigenvalues(&zp(2, &[1, 0, 2])).unwrap();
    let (m, rest) = split_real_zeros(&s);
    assert_eq!(m, 0);
    assert_eq!(rest.eigenvalues, s.eigenvalues);
    let s = frobenius_eigenvalues(&zp(4, &[1, 4, 4])).unwrap();
    assert_eq!(s.eigenvalues[0].exact, Some(QuadSurd::integer(-2)));
    let (m, _) = split_real_zeros(&s);
    assert_eq!(m, 0);
    let susp = suspend(4, &s.numeric()).unwrap();
    assert!((susp.entries[0].s0 - Complex::new(0.5, std::f64::consts::PI / 4f64.ln())).norm() < 1e-14);
}

#[test]
fn split_agrees_with_suspension() {
    for (q, coeffs) in [(4u64, vec![1i128, -4, 4]), (4, vec![1, 4, 4]), (2, vec![1, 0, 2]), (9, vec![1, -6, 9]), (3, vec![1, 1, 4, 3, 9])] {
        let s = frobenius_eigenvalues(&zp(q, &coeffs)).unwrap();
        let (m, rest) = split_real_zeros(&s);
        let susp = suspend(q, &s.numeric()).unwrap();
        let real: u32 = susp.entries.iter().filter(|e| e.s0.im.abs() < 1e-12).map(|e| e.mult).sum();
        assert_eq!(real, m);
        let kept = suspend(q, &rest.numeric()).unwrap();
        assert!(kept.entries.iter().all(|e| e.s0.im.abs() > 1e-12));
    }
}

#[test]
fn base_change_examples() {
    let p = zp(2, &[1, 0, 2]);
    let p2 = base_change(&p, 2).unwrap();
    assert_eq!((p2.q, p2.coeffs.clone()), (4, vec![1, 4, 4]));
    let direct = curve("ell:q=4;a3=1").zeta_numerator().unwrap();
    assert_eq!(direct, p2);
    assert_eq!(base_change(&p, 1).unwrap(), p);
    let p6 = base_change(&p, 6).unwrap();
    assert_eq!(base_change(&base_change(&p, 2).unwrap(), 3).unwrap(), p6);
    // α⁶ = (±i√2)⁶ = −8 for both roots.
    assert_eq!(p6.coeffs, vec![1, 16, 64]);
}

#[test]
fn counts_match_eigenvalues_up_to_degree_three() {
    for text in [
        "ell:q=2;a3=1",
        "ell:q=2;a1=1,a6=1",
        "ell:q=3;a4=1",
        "ell:q=4;a3=1,a6=g",
        "ell:q=5;a4=1,a6=1",
        "ell:q=7;a6=g",
        "ell:q=9;a2=g,a6=1",
    ] {
        let c = curve(text);
        let q = c.q() as f64;
        let s = frobenius_eigenvalues(&c.zeta_numerator().unwrap()).unwrap();
        for i in 1..=3u32 {
            let sum: Complex = s.eigenvalues.iter().map(|e| e.value.powu(i) * f64::from(e.mult)).sum();
            let predicted = q.powi(i as i32) + 1.0 - sum.re;
            let counted = count_points(&c, i).unwrap();
            assert!((predicted - counted as f64).abs() < 1e-6, "{text} i={i}: {predicted} vs {counted}");
        }
    }
}

#[test]
fn function_field_catalog_places_zeros() {
    let cat = function_field_catalog(&zp(2, &[1, 0, 2])).unwrap();
    let lq = 2f64.ln();
    let gammas: Vec<f64> = cat.zeros.iter().map(|z| z.gamma).collect();
    let expected = [std::f64::consts::FRAC_PI_2 / lq, 1.5 * std::f64::consts::PI / lq];
    for (g, e) in gammas.iter().zip(expected) {
        assert!((g - e).abs() < 1e-11);
    }
    let cat = function_field_catalog(&zp(4, &[1, -4, 4])).unwrap();
    assert!(cat.zeros.is_empty());
    assert_eq!(cat.real_zeros[0].mult, 2);
}

#[test]
fn report_shape() {
    let r = FfReport::new(&zp(2, &[1, 0, 2])).unwrap();
    let v: serde_json::Value = serde_json::from_str(&r.to_json()).unwrap();
    assert_eq!(v["q"], 2);
    assert_eq!(v["P"], serde_json::json!([1, 0, 2]));
    assert_eq!(v["real_sqrt_q_mult"], 0);
    assert_eq!(v["pairing"]["blocks"], 1);
    assert_eq!(v["pairing"]["equivariance_factor"], 2);
    assert_eq!(v["eigenvalues"][0]["mult"], 1);
    assert!(v["eigenvalues"][0]["exact"].is_string());
    assert!((v["eigenvalues"][0]["im"].as_f64().unwrap() - 2f64.sqrt()).abs() < 1e-11);
}

#[test]
fn malformed_curves_rejected() {
    for text in ["ell:q=6;a4=1", "ell:q=4;a5=1", "counts:q=4;g=1", "foo:q=2", "ell:q=2;a4=x"] {
        assert!(text.parse::<CurveOverFq>().is_err(), "{text}");
    }
    // y² = x³ is singular.
    assert!("ell:q=5".parse::<CurveOverFq>().is_err());
    assert!(matches!("counts:q=2;g=4;N=1,1,1,1".parse::<CurveOverFq>(), Err(Error::SizeCap(_))));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn hasse_bound_and_symmetry(p in prop::sample::select(vec![2u32, 3, 5, 7, 11, 13]), a in prop::array::uniform5(0u32..13)) {
        let text = format!("ell:q={p};a1={},a2={},a3={},a4={},a6={}", a[0], a[1], a[2], a[3], a[4]);
        if let Ok(c) = text.parse::<CurveOverFq>() {
            let n = count_points(&c, 1).unwrap() as f64;
            let trace = p as f64 + 1.0 - n;
            prop_assert!(trace * trace <= 4.0 * p as f64);
            let z = c.zeta_numerator().unwrap();
            prop_assert!(z.validate().is_ok());
            let s = frobenius_eigenvalues(&z).unwrap();
            let m = poincare_pairing_matrix(&s).unwrap();
            prop_assert!(m.is_antisymmetric());
            prop_assert_eq!(m.determinant(), 1);
            prop_assert_eq!(m.equivariance_exact(), Some(true));
        }
    }

    #[test]
    fn base_change_composes(q in prop::sample::select(vec![2u64, 3, 4, 5, 7, 8, 9]), t in -6i128..=6, r in 1u32..4, s in 1u32..4) {
        prop_assume!(t * t <= 4 * q as i128);
        let p = zp(q, &[1, -t, q as i128]);
        let once = base_change(&p, r * s).unwrap();
        let twice = base_change(&base_change(&p, r).unwrap(), s).unwrap();
        prop_assert_eq!(&once, &twice);
        prop_assert!(frobenius_eigenvalues(&once).is_ok());
    }
}
