//! The product decomposition of Λ(E, s) by motive pieces.
//!
//! T(s) = (2π/s)·L_ℤ(s)·(2π/(1−s))·(1/Λ(E,s))·(2π/(s−1))·L_ℤ(s−1)·(2π/(2−s))
//! with L_ℤ the completed zeta function. The substitution s ↦ 2−s swaps the
//! outer factors pairwise and sends 1/Λ(E,s) to ε/Λ(E,s), so T(2−s) = εT(s).

use std::f64::consts::PI;

use serde::Serialize;

use super::lfunc::EllipticL;
use crate::error::{Error, Result};
use crate::report::ComplexJson;
use crate::specfun::{completed_l_q, Complex, POLE_EPS};
use crate::zerofind::FamilyTag;

/// The seven pieces of ℋ*(E), in product order.
pub const MOTIVE_LABELS: [&str; 7] = ["ℂ", "ℋ¹(ℤ)", "ℂ(1)", "ℋ²_p(E)", "ℂ(1)", "ℋ¹(ℤ)(1)", "ℂ(2)"];
/// The analytic factor attached to each piece.
pub const FACTOR_LABELS: [&str; 7] = ["2π/s", "L_ℤ(s)", "2π/(1−s)", "1/Λ(E,s)", "2π/(s−1)", "L_ℤ(s−1)", "2π/(2−s)"];
/// Tate twists; `None` for ℋ²_p(E).
pub const TWISTS: [Option<u32>; 7] = [Some(0), Some(0), Some(1), None, Some(1), Some(1), Some(2)];

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CatalogLink {
    pub family: FamilyTag,
    /// Zeros of the factor sit at (catalog zero) + shift.
    pub shift: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MotiveFactor {
    pub motive: &'static str,
    pub twist: Option<u32>,
    pub factor: &'static str,
    pub catalog: Option<CatalogLink>,
}

pub fn motive_factors(l: &EllipticL) -> Vec<MotiveFactor> {
    let links = [
        None,
        Some(CatalogLink { family: FamilyTag::Riemann, shift: 0.0 }),
        None,
        Some(CatalogLink { family: FamilyTag::Elliptic(l.label().to_string()), shift: 0.0 }),
        None,
        Some(CatalogLink { family: FamilyTag::Riemann, shift: 1.0 }),
        None,
    ];
    links
        .into_iter()
        .enumerate()
        .map(|(i, catalog)| MotiveFactor { motive: MOTIVE_LABELS[i], twist: TWISTS[i], factor: FACTOR_LABELS[i], catalog })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LambdaFactor {
    pub motive: &'static str,
    pub factor: &'static str,
    pub value: ComplexJson,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LambdaTotal {
    pub s: ComplexJson,
    pub value: ComplexJson,
    pub factors: Vec<LambdaFactor>,
}

impl LambdaTotal {
    pub fn value(&self) -> Complex {
        self.value.into()
    }
}

pub fn lambda_total(l: &EllipticL, s: Complex) -> Result<LambdaTotal> {
    for pole in [0.0, 1.0, 2.0] {
        if (s - pole).norm() < POLE_EPS {
            return Err(Error::pole("lambda_total", s));
        }
    }
    let two_pi = Complex::new(2.0 * PI, 0.0);
    let one = Complex::new(1.0, 0.0);
    let central = l.lambda(s)?;
    if central.norm() == 0.0 {
        return Err(Error::pole("lambda_total (zero of Λ(E,s))", s));
    }
    let values = [
        two_pi / s,
        completed_l_q(s)?,
        two_pi / (one - s),
        one / central,
        two_pi / (s - one),
        completed_l_q(s - one)?,
        two_pi / (Complex::new(2.0, 0.0) - s),
    ];
    let value: Complex = values.iter().product();
    let factors = values
        .iter()
        .enumerate()
        .map(|(i, &v)| LambdaFactor { motive: MOTIVE_LABELS[i], factor: FACTOR_LABELS[i], value: v.into() })
        .collect();
    Ok(LambdaTotal { s: s.into(), value: value.into(), factors })
}

/// |T(s) − εT(2−s)| / |T(s)|.
pub fn lambda_total_symmetry(l: &EllipticL, s: Complex) -> Result<f64> {
    let eps = f64::from(l.epsilon().ok_or(Error::UnknownRootNumber)?);
    let left = lambda_total(l, s)?.value();
    let right = lambda_total(l, Complex::new(2.0, 0.0) - s)?.value();
    Ok((left - right * eps).norm() / left.norm())
}
