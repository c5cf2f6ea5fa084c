//! Frobenius eigenvalues, the Weil bound and the Poincaré pairing.
//!
//! The reciprocal roots of P pair up as α, q/α. Writing P(T)/T^g as a
//! polynomial h in u = 1/T + qT gives an integer polynomial whose roots are
//! the traces x = α + q/α, so exact eigenvalues come from integer and
//! quadratic roots of h.

use std::f64::consts::PI;

use serde::Serialize;

use super::zeta::ZetaPolynomial;
use crate::error::{Error, Result};
use crate::report::{round12, ComplexJson};
use crate::specfun::Complex;
use crate::surd::QuadSurd;
use crate::zerofind::{FamilyTag, RealZero, Zero, ZeroCatalog};

const WEIL_TOL: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq)]
pub struct FrobeniusEigenvalue {
    pub value: Complex,
    pub exact: Option<QuadSurd>,
    pub mult: u32,
}

impl FrobeniusEigenvalue {
    fn exact(alpha: QuadSurd, mult: u32) -> Self {
        FrobeniusEigenvalue { value: alpha.to_complex(), exact: Some(alpha), mult }
    }

    /// Whether this is α = +√q.
    pub fn is_positive_sqrt_q(&self, q: u64) -> bool {
        match self.exact {
            Some(a) => {
                a.to_complex().re > 0.0
                    && a.checked_mul(&a).is_ok_and(|sq| sq == QuadSurd::integer(i128::from(q)))
            }
            None => (self.value - (q as f64).sqrt()).norm() <= 1e-12 * (q as f64).sqrt(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct FrobeniusSpectrum {
    pub q: u64,
    pub eigenvalues: Vec<FrobeniusEigenvalue>,
    pub real_sqrt_q_mult: u32,
}

impl FrobeniusSpectrum {
    pub fn new(q: u64, eigenvalues: Vec<FrobeniusEigenvalue>) -> Self {
        let real_sqrt_q_mult = eigenvalues.iter().filter(|e| e.is_positive_sqrt_q(q)).map(|e| e.mult).sum();
        FrobeniusSpectrum { q, eigenvalues, real_sqrt_q_mult }
    }

    pub fn dimension(&self) -> u32 {
        self.eigenvalues.iter().map(|e| e.mult).sum()
    }

    /// (α, multiplicity) pairs for the suspension.
    pub fn numeric(&self) -> Vec<(Complex, u32)> {
        self.eigenvalues.iter().map(|e| (e.value, e.mult)).collect()
    }

    /// Exact pairs when every eigenvalue is a quadratic surd.
    pub fn exact(&self) -> Option<Vec<(QuadSurd, u32)>> {
        self.eigenvalues.iter().map(|e| e.exact.map(|a| (a, e.mult))).collect()
    }
}

type IntPoly = Vec<i128>;

fn overflow() -> Error {
    Error::SizeCap("trace polynomial overflowed 128 bits".into())
}

/// h(u) with P(T) = T^g · h(1/T + qT), low coefficients first.
fn trace_polynomial(p: &ZetaPolynomial) -> Result<IntPoly> {
    let g = p.g as usize;
    let q = i128::from(p.q);
    // D_m(u) = T^{-m} + q^m T^m: D_0 = 2, D_1 = u, D_{m+1} = u D_m − q D_{m−1}.
    let mut dickson: Vec<IntPoly> = vec![vec![2], vec![0, 1]];
    for m in 1..g {
        let mut next = vec![0i128; m + 2];
        for (i, &c) in dickson[m].iter().enumerate() {
            next[i + 1] = c;
        }
        for (i, &c) in dickson[m - 1].iter().enumerate() {
            next[i] = next[i].checked_sub(q.checked_mul(c).ok_or_else(overflow)?).ok_or_else(overflow)?;
        }
        dickson.push(next);
    }
    let mut h = vec![0i128; g + 1];
    h[0] = p.coeffs[g];
    for m in 1..=g {
        for (i, &c) in dickson[m].iter().enumerate() {
            let term = p.coeffs[g - m].checked_mul(c).ok_or_else(overflow)?;
            h[i] = h[i].checked_add(term).ok_or_else(overflow)?;
        }
    }
    Ok(h)
}

fn eval_int(h: &[i128], x: i128) -> Option<i128> {
    h.iter().rev().try_fold(0i128, |acc, &c| acc.checked_mul(x)?.checked_add(c))
}

/// Divides by (u − x), assuming x is a root.
fn deflate(h: &[i128], x: i128) -> IntPoly {
    let n = h.len() - 1;
    let mut out = vec![0i128; n];
    let mut carry = 0i128;
    for i in (1..=n).rev() {
        carry = h[i] + carry * x;
        out[i - 1] = carry;
    }
    out
}

/// Roots of a real polynomial by Durand–Kerner (distinct roots assumed).
fn numeric_roots(h: &[i128]) -> Result<Vec<Complex>> {
    let n = h.len() - 1;
    let lead = h[n] as f64;
    let c: Vec<f64> = h.iter().map(|&v| v as f64 / lead).collect();
    let eval = |z: Complex| c.iter().rev().fold(Complex::new(0.0, 0.0), |acc, &v| acc * z + v);
    let radius = 1.0 + c[..n].iter().fold(0.0f64, |m, v| m.max(v.abs()));
    let mut z: Vec<Complex> =
        (0..n).map(|k| Complex::from_polar(radius, 2.0 * PI * k as f64 / n as f64 + 0.4)).collect();
    for _ in 0..500 {
        let mut moved: f64 = 0.0;
        for i in 0..n {
            let mut denom = Complex::new(1.0, 0.0);
            for j in 0..n {
                if i != j {
                    denom *= z[i] - z[j];
                }
            }
            let step = eval(z[i]) / denom;
            z[i] -= step;
            moved = moved.max(step.norm() / z[i].norm().max(1.0));
        }
        if moved < 1e-15 {
            return Ok(z);
        }
    }
    Err(Error::NonConvergence { what: "Durand–Kerner", iterations: 500 })
}

enum Trace {
    Exact(QuadSurd),
    Numeric(f64),
}

fn weil_violation(p: &ZetaPolynomial, detail: impl std::fmt::Display) -> Error {
    Error::WeilViolation(format!("P(T) = {p} over q = {}: {detail}", p.q))
}

/// Reciprocal roots of P with multiplicities; fails when some |α|² ≠ q.
pub fn frobenius_eigenvalues(p: &ZetaPolynomial) -> Result<FrobeniusSpectrum> {
    p.validate()?;
    let q = i128::from(p.q);
    let sqrt_q = (p.q as f64).sqrt();
    let mut h = trace_polynomial(p)?;
    let mut traces: Vec<(Trace, u32)> = Vec::new();

    // Integer traces satisfy |x| ≤ 2√q; anything else violates the bound.
    let bound = (2.0 * sqrt_q).floor() as i128 + 1;
    for x in (-bound..=bound).rev() {
        let mut mult = 0;
        while h.len() > 1 && eval_int(&h, x) == Some(0) {
            h = deflate(&h, x);
            mult += 1;
        }
        if mult > 0 {
            traces.push((Trace::Exact(QuadSurd::integer(x)), mult));
        }
    }
    match h.len() - 1 {
        0 => {}
        1 => return Err(weil_violation(p, format!("trace {} outside [-2√q, 2√q]", -h[0]))),
        2 => {
            let (c, b) = (h[0], h[1]);
            let disc = b * b - 4 * c;
            if disc < 0 {
                return Err(weil_violation(p, "non-real trace"));
            }
            for sign in [1, -1] {
                traces.push((Trace::Exact(QuadSurd::new(-b, sign, disc, 2)?), 1));
            }
        }
        _ => {
            for z in numeric_roots(&h)? {
                if z.im.abs() > 1e-9 * z.norm().max(1.0) {
                    return Err(weil_violation(p, "non-real trace"));
                }
                traces.push((Trace::Numeric(z.re), 1));
            }
            traces.sort_by(|a, b| {
                let key = |t: &Trace| match t {
                    Trace::Exact(s) => s.to_complex().re,
                    Trace::Numeric(x) => *x,
                };
                key(&b.0).total_cmp(&key(&a.0))
            });
        }
    }

    let four_q = QuadSurd::integer(4 * q);
    let mut eigenvalues = Vec::new();
    for (trace, mult) in traces {
        match trace {
            Trace::Exact(x) => {
                let delta = x.checked_mul(&x)?.checked_sub(&four_q)?;
                if delta == QuadSurd::integer(0) {
                    let half = x.checked_div(&QuadSurd::integer(2))?;
                    eigenvalues.push(FrobeniusEigenvalue::exact(half, 2 * mult));
                } else if x.is_rational() {
                    // x integer, δ = x² − 4q must be negative.
                    if delta.u > 0 {
                        return Err(weil_violation(p, format!("trace {} exceeds 2√q", x)));
                    }
                    let alpha = QuadSurd::new(x.u, 1, delta.u, 2)?;
                    eigenvalues.push(FrobeniusEigenvalue::exact(alpha, mult));
                    eigenvalues.push(FrobeniusEigenvalue::exact(alpha.conjugate(), mult));
                } else {
                    push_numeric(p, &mut eigenvalues, x.to_complex().re, mult)?;
                }
            }
            Trace::Numeric(x) => push_numeric(p, &mut eigenvalues, x, mult)?,
        }
    }
    let spectrum = FrobeniusSpectrum::new(p.q, eigenvalues);
    weil_check(&spectrum)?;
    Ok(spectrum)
}

fn push_numeric(p: &ZetaPolynomial, out: &mut Vec<FrobeniusEigenvalue>, x: f64, mult: u32) -> Result<()> {
    let delta = x * x - 4.0 * p.q as f64;
    if delta >= 0.0 {
        return Err(weil_violation(p, format!("trace {x} exceeds 2√q")));
    }
    let alpha = Complex::new(x / 2.0, (-delta).sqrt() / 2.0);
    out.push(FrobeniusEigenvalue { value: alpha, exact: None, mult });
    out.push(FrobeniusEigenvalue { value: alpha.conj(), exact: None, mult });
    Ok(())
}

/// |α|² = q: exactly for surds, to 1e−10 relative otherwise.
pub fn weil_check(s: &FrobeniusSpectrum) -> Result<()> {
    let q = QuadSurd::integer(i128::from(s.q));
    for e in &s.eigenvalues {
        let ok = match e.exact {
            // For real irrational surds the field norm is not |α|².
            Some(a) if a.d > 0 => a.checked_mul(&a)? == q,
            Some(a) => a.norm()? == q,
            None => (e.value.norm_sqr() / s.q as f64 - 1.0).abs() <= WEIL_TOL,
        };
        if !ok {
            return Err(Error::WeilViolation(format!("|{}|² ≠ {}", e.value, s.q)));
        }
    }
    Ok(())
}

/// Removes α = +√q, the eigenvalues whose suspended exponent is real.
pub fn split_real_zeros(s: &FrobeniusSpectrum) -> (u32, FrobeniusSpectrum) {
    let rest: Vec<FrobeniusEigenvalue> =
        s.eigenvalues.iter().filter(|e| !e.is_positive_sqrt_q(s.q)).cloned().collect();
    (s.real_sqrt_q_mult, FrobeniusSpectrum { q: s.q, eigenvalues: rest, real_sqrt_q_mult: 0 })
}

/// The symplectic form on the eigenbasis together with the diagonal
/// Frobenius matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct PoincarePairing {
    pub q: u64,
    /// Eigenvalue attached to each basis vector.
    pub basis: Vec<FrobeniusEigenvalue>,
    pub matrix: Vec<Vec<i64>>,
    pub blocks: usize,
}

impl PoincarePairing {
    pub fn dimension(&self) -> usize {
        self.basis.len()
    }

    pub fn is_antisymmetric(&self) -> bool {
        let n = self.dimension();
        (0..n).all(|i| (0..n).all(|j| self.matrix[i][j] + self.matrix[j][i] == 0))
    }

    /// Exact determinant by fraction-free elimination.
    pub fn determinant(&self) -> i128 {
        let n = self.dimension();
        let mut m: Vec<Vec<i128>> =
            self.matrix.iter().map(|r| r.iter().map(|&v| i128::from(v)).collect()).collect();
        let (mut sign, mut prev) = (1i128, 1i128);
        for k in 0..n {
            if m[k][k] == 0 {
                match (k + 1..n).find(|&i| m[i][k] != 0) {
                    Some(i) => {
                        m.swap(i, k);
                        sign = -sign;
                    }
                    None => return 0,
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
                }
            }
            prev = m[k][k];
        }
        if n == 0 { 1 } else { sign * m[n - 1][n - 1] }
    }

    /// ⟨F e_i, F e_j⟩ = α_i α_j ⟨e_i, e_j⟩ against q⟨e_i, e_j⟩, exactly.
    /// `None` when some eigenvalue has no exact form.
    pub fn equivariance_exact(&self) -> Option<bool> {
        let q = QuadSurd::integer(i128::from(self.q));
        let mut ok = true;
        for (i, row) in self.matrix.iter().enumerate() {
            for (j, &m) in row.iter().enumerate() {
                if m != 0 {
                    let product = self.basis[i].exact?.checked_mul(&self.basis[j].exact?).ok()?;
                    ok &= product == q;
                }
            }
        }
        Some(ok)
    }

    /// max |α_i α_j − q|/q over the nonzero entries.
    pub fn equivariance_deviation(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for (i, row) in self.matrix.iter().enumerate() {
            for (j, &m) in row.iter().enumerate() {
                if m != 0 {
                    let product = self.basis[i].value * self.basis[j].value;
                    worst = worst.max((product - self.q as f64).norm() / self.q as f64);
                }
            }
        }
        worst
    }
}

fn same_eigenvalue(a: &FrobeniusEigenvalue, b_exact: Option<QuadSurd>, b_value: Complex) -> bool {
    match (a.exact, b_exact) {
        (Some(x), Some(y)) => x == y,
        _ => (a.value - b_value).norm() <= 1e-9 * b_value.norm().max(1.0),
    }
}

/// Basis ordered as pairs (e_α, e_{q/α}), one block [[0, 1], [−1, 0]] each.
pub fn poincare_pairing_matrix(s: &FrobeniusSpectrum) -> Result<PoincarePairing> {
    let q = QuadSurd::integer(i128::from(s.q));
    let mut used = vec![false; s.eigenvalues.len()];
    let mut basis = Vec::new();
    for (i, e) in s.eigenvalues.iter().enumerate() {
        if used[i] {
            continue;
        }
        used[i] = true;
        let partner_exact = e.exact.map(|a| q.checked_div(&a)).transpose()?;
        let partner_value = Complex::new(s.q as f64, 0.0) / e.value;
        let unit = FrobeniusEigenvalue { mult: 1, ..e.clone() };
        if same_eigenvalue(e, partner_exact, partner_value) {
            if e.mult % 2 != 0 {
                return Err(Error::UnpairedEigenvalue(format!(
                    "self-dual eigenvalue {} has odd multiplicity {}",
                    e.value, e.mult
                )));
            }
            for _ in 0..e.mult {
                basis.push(unit.clone());
            }
            continue;
        }
        let j = (0..s.eigenvalues.len())
            .find(|&j| !used[j] && same_eigenvalue(&s.eigenvalues[j], partner_exact, partner_value))
            .ok_or_else(|| Error::UnpairedEigenvalue(format!("{} has no partner q/α", e.value)))?;
        let partner = &s.eigenvalues[j];
        if partner.mult != e.mult {
            return Err(Error::UnpairedEigenvalue(format!(
                "{} and {} have multiplicities {} and {}",
                e.value, partner.value, e.mult, partner.mult
            )));
        }
        used[j] = true;
        let partner_unit = FrobeniusEigenvalue { mult: 1, ..partner.clone() };
        for _ in 0..e.mult {
            basis.push(unit.clone());
            basis.push(partner_unit.clone());
        }
    }
    let n = basis.len();
    let mut matrix = vec![vec![0i64; n]; n];
    for b in 0..n / 2 {
        matrix[2 * b][2 * b + 1] = 1;
        matrix[2 * b + 1][2 * b] = -1;
    }
    Ok(PoincarePairing { q: s.q, basis, matrix, blocks: n / 2 })
}

/// Zeros of L(s) = P(q^{−s}) on the fundamental strip 0 ≤ Im s < 2π/ln q:
/// each α gives s = 1/2 + i·arg(α)/ln q, with α = +√q on the real axis.
pub fn function_field_catalog(p: &ZetaPolynomial) -> Result<ZeroCatalog> {
    let s = frobenius_eigenvalues(p)?;
    let lq = (p.q as f64).ln();
    let period = 2.0 * PI / lq;
    let mut zeros: Vec<Zero> = Vec::new();
    let mut real = Vec::new();
    for e in &s.eigenvalues {
        if e.is_positive_sqrt_q(p.q) {
            real.push(RealZero { sigma: 0.5, mult: e.mult });
            continue;
        }
        let gamma = round12(e.value.arg().rem_euclid(2.0 * PI) / lq);
        match zeros.iter_mut().find(|z| z.gamma == gamma) {
            Some(z) => z.mult += e.mult,
            None => zeros.push(Zero { gamma, mult: e.mult }),
        }
    }
    zeros.sort_by(|a, b| a.gamma.total_cmp(&b.gamma));
    let family = FamilyTag::FunctionField { q: p.q, numerator: p.coeffs_i64()? };
    ZeroCatalog::new(family, 1, period, 0.0, zeros, real)
}

#[derive(Debug, Clone, Serialize)]
pub struct EigenvalueJson {
    #[serde(flatten)]
    pub value: ComplexJson,
    pub mult: u32,
    pub exact: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct PairingJson {
    pub blocks: usize,
    pub equivariance_factor: u64,
}

/// Output record of the function-field pipeline.
#[derive(Debug, Clone, Serialize)]
pub struct FfReport {
    pub q: u64,
    pub g: u32,
    #[serde(rename = "P")]
    pub p: Vec<i64>,
    pub eigenvalues: Vec<EigenvalueJson>,
    pub real_sqrt_q_mult: u32,
    pub pairing: PairingJson,
}

impl FfReport {
    /// Computes spectrum and pairing, and confirms equivariance with factor q.
    pub fn new(p: &ZetaPolynomial) -> Result<Self> {
        let spectrum = frobenius_eigenvalues(p)?;
        let pairing = poincare_pairing_matrix(&spectrum)?;
        let equivariant = match pairing.equivariance_exact() {
            Some(ok) => ok,
            None => pairing.equivariance_deviation() <= 1e-10,
        };
        if !equivariant {
            return Err(Error::WeilViolation("pairing is not Frobenius-equivariant with factor q".into()));
        }
        Ok(FfReport {
            q: p.q,
            g: p.g,
            p: p.coeffs_i64()?,
            eigenvalues: spectrum
                .eigenvalues
                .iter()
                .map(|e| EigenvalueJson {
                    value: Complex::new(round12(e.value.re), round12(e.value.im)).into(),
                    mult: e.mult,
                    exact: e.exact.map(|a| a.to_string()),
                })
                .collect(),
            real_sqrt_q_mult: spectrum.real_sqrt_q_mult,
            pairing: PairingJson { blocks: pairing.blocks, equivariance_factor: p.q },
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}
