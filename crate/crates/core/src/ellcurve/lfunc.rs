//! The completed L-function Λ(E, s) = N^{s/2}(2π)^{−s}Γ(s)L(E, s).
//!
//! With φ(y) = Σ a_n e^{−2πny/√N} one has Λ(s) = ∫₀^∞ φ(y) y^s dy/y and
//! φ(1/y) = ε y² φ(y). Integrating along the ray y = δu and splitting at
//! u = 1 gives, with x_n = 2πn/√N,
//!
//!   Λ(s) = Σ a_n [(√N/2πn)^s Γ(s, x_n δ) + ε (√N/2πn)^{2−s} Γ(2−s, x_n/δ)]
//!
//! for any |arg δ| < π/2. Rotating δ towards the imaginary axis keeps the
//! terms comparable to Λ itself at large |Im s|; a modulus |δ| ≠ 1 makes
//! the two sides of Λ(s) = εΛ(2−s) independent computations.

use std::f64::consts::{FRAC_PI_2, PI};
use std::sync::RwLock;

use serde::Serialize;

use super::curve::EllipticCurveQ;
use crate::error::{Error, Result};
use crate::specfun::{incomplete_gamma_upper_complex, Complex};
use crate::zerofind::{detect_real_zeros, CompletedL, FamilyTag, RealZeroReport};

/// |δ| used by default.
pub const SPLIT_MODULUS: f64 = 1.1;
/// Largest tolerated growth e^{t(π/2 − arg δ)} of the terms over |Λ|.
const ROTATION_BUDGET: f64 = 10.0;
/// Terms are kept while e^{−x cos(arg δ)} exceeds e^{−TAIL_EXPONENT}.
const TAIL_EXPONENT: f64 = 55.0;
/// Points where the root number is tested.
const ROOT_NUMBER_POINTS: [(f64, f64); 2] = [(1.3, 0.0), (1.3, 2.0)];
pub const ROOT_NUMBER_TOL: f64 = 1e-8;

#[derive(Debug)]
enum Coefficients {
    /// Extended on demand from the curve.
    Curve(EllipticCurveQ, RwLock<Vec<i64>>),
    /// A fixed list; later coefficients are zero.
    Fixed(Vec<i64>),
}

/// Λ(E, s) for a curve or a synthetic weight-2 coefficient list.
#[derive(Debug)]
pub struct EllipticL {
    label: String,
    conductor: u64,
    epsilon: Option<i8>,
    coeffs: Coefficients,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RootNumber {
    pub epsilon: i8,
    /// Relative residual of Λ(s) = εΛ(2−s) for ε = +1 and ε = −1.
    pub residual_plus: f64,
    pub residual_minus: f64,
}

impl EllipticL {
    /// The L-function of `curve` with its root number determined numerically
    /// (and checked against the curve's sign hint, if any).
    pub fn new(curve: EllipticCurveQ) -> Result<Self> {
        let hint = curve.sign_hint;
        let mut l = Self::unsigned(curve);
        let rn = root_number(&l)?;
        if let Some(h) = hint {
            if h != rn.epsilon {
                return Err(Error::AmbiguousSign { plus: rn.residual_plus, minus: rn.residual_minus });
            }
        }
        l.epsilon = Some(rn.epsilon);
        Ok(l)
    }

    /// Without a root number; evaluation fails until one is set.
    pub fn unsigned(curve: EllipticCurveQ) -> Self {
        EllipticL {
            label: curve.label().to_string(),
            conductor: curve.conductor,
            epsilon: None,
            coeffs: Coefficients::Curve(curve, RwLock::new(vec![1])),
        }
    }

    /// A synthetic function defined by the coefficient list `a_1, a_2, …`.
    pub fn from_coefficients(label: impl Into<String>, conductor: u64, epsilon: i8, coeffs: Vec<i64>) -> Result<Self> {
        if conductor == 0 || !matches!(epsilon, 1 | -1) || coeffs.first() != Some(&1) {
            return Err(Error::InvalidArgument("need N > 0, ε = ±1 and a_1 = 1".into()));
        }
        Ok(EllipticL { label: label.into(), conductor, epsilon: Some(epsilon), coeffs: Coefficients::Fixed(coeffs) })
    }

    pub fn with_epsilon(mut self, epsilon: i8) -> Result<Self> {
        if !matches!(epsilon, 1 | -1) {
            return Err(Error::InvalidArgument(format!("root number must be ±1, got {epsilon}")));
        }
        self.epsilon = Some(epsilon);
        Ok(self)
    }

    pub fn epsilon(&self) -> Option<i8> {
        self.epsilon
    }

    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn curve(&self) -> Option<&EllipticCurveQ> {
        match &self.coeffs {
            Coefficients::Curve(c, _) => Some(c),
            Coefficients::Fixed(_) => None,
        }
    }

    fn with_coeffs<R>(&self, n: usize, f: impl FnOnce(&[i64]) -> R) -> Result<R> {
        match &self.coeffs {
            Coefficients::Fixed(a) => Ok(f(&a[..n.min(a.len())])),
            Coefficients::Curve(curve, cache) => {
                {
                    let a = cache.read().expect("coefficient cache poisoned");
                    if a.len() >= n {
                        return Ok(f(&a[..n]));
                    }
                }
                let mut a = cache.write().expect("coefficient cache poisoned");
                if a.len() < n {
                    *a = curve.hecke_coefficients(n.max(2 * a.len()))?.a;
                }
                Ok(f(&a[..n]))
            }
        }
    }

    /// The default ray: arg δ grows with |Im s| so that term sizes exceed
    /// |Λ| by at most e^{ROTATION_BUDGET}.
    pub fn default_delta(s: Complex) -> Complex {
        let t = s.im;
        let theta = if t.abs() <= ROTATION_BUDGET / FRAC_PI_2 {
            0.0
        } else {
            t.signum() * (FRAC_PI_2 - ROTATION_BUDGET / t.abs())
        };
        Complex::from_polar(SPLIT_MODULUS, theta)
    }

    /// Terms needed at `s` with ray `delta`.
    pub fn default_terms(&self, s: Complex, delta: Complex) -> usize {
        let decay = delta.arg().cos() * delta.norm().min(1.0 / delta.norm());
        let x_max = (TAIL_EXPONENT + (s.re - 1.0).abs() * (2.0 + s.norm()).ln()) / decay;
        (x_max * (self.conductor as f64).sqrt() / (2.0 * PI)).ceil() as usize + 1
    }

    /// Λ(s) with explicit ray, term count and sign.
    pub fn lambda_with(&self, s: Complex, delta: Complex, n_terms: usize, epsilon: i8) -> Result<Complex> {
        if !(delta.re > 0.0) {
            return Err(Error::InvalidArgument(format!("ray {delta} must lie in Re δ > 0")));
        }
        let r = (self.conductor as f64).sqrt() / (2.0 * PI);
        let s2 = Complex::new(2.0, 0.0) - s;
        let eps = f64::from(epsilon);
        self.with_coeffs(n_terms, |a| {
            let mut sum = Complex::new(0.0, 0.0);
            for (i, &an) in a.iter().enumerate() {
                if an == 0 {
                    continue;
                }
                let n = (i + 1) as f64;
                let ln_rn = (r / n).ln();
                let x = Complex::new(n / r, 0.0);
                let first = (s * ln_rn).exp() * incomplete_gamma_upper_complex(s, x * delta)?;
                let second = (s2 * ln_rn).exp() * incomplete_gamma_upper_complex(s2, x / delta)?;
                sum += (first + second * eps) * an as f64;
            }
            Ok(sum)
        })?
    }

    /// Λ(s) with `n_terms` coefficients on the default ray.
    pub fn lambda_terms(&self, s: Complex, n_terms: usize) -> Result<Complex> {
        let eps = self.epsilon.ok_or(Error::UnknownRootNumber)?;
        self.lambda_with(s, Self::default_delta(s), n_terms, eps)
    }

    /// Λ(s) with the default ray and term count.
    pub fn lambda(&self, s: Complex) -> Result<Complex> {
        let delta = Self::default_delta(s);
        self.lambda_terms(s, self.default_terms(s, delta))
    }

    /// L(E, s) = Λ(s)·(2π/√N)^s / Γ(s).
    pub fn l_value(&self, s: Complex) -> Result<Complex> {
        let scale = (2.0 * PI / (self.conductor as f64).sqrt()).ln();
        Ok(self.lambda(s)? * (s * scale).exp() / crate::specfun::gamma(s)?)
    }

    /// |Λ(s) − εΛ(2−s)| / max(1, |Λ(s)|) with both sides on their own rays.
    pub fn functional_equation_residual(&self, s: Complex) -> Result<f64> {
        let eps = f64::from(self.epsilon.ok_or(Error::UnknownRootNumber)?);
        let left = self.lambda(s)?;
        let right = self.lambda(Complex::new(2.0, 0.0) - s)? * eps;
        Ok((left - right).norm() / left.norm().max(1.0))
    }
}

/// The sign ε minimizing the functional-equation residual at 1.3 and 1.3 + 2i.
pub fn root_number(l: &EllipticL) -> Result<RootNumber> {
    let residual = |eps: i8| -> Result<f64> {
        let mut worst: f64 = 0.0;
        for (re, im) in ROOT_NUMBER_POINTS {
            let s = Complex::new(re, im);
            let delta = EllipticL::default_delta(s);
            let n = l.default_terms(s, delta).max(l.default_terms(Complex::new(2.0, 0.0) - s, delta));
            let left = l.lambda_with(s, delta, n, eps)?;
            let right = l.lambda_with(Complex::new(2.0, 0.0) - s, delta, n, eps)?;
            worst = worst.max((left - right * f64::from(eps)).norm() / left.norm());
        }
        Ok(worst)
    };
    let (plus, minus) = (residual(1)?, residual(-1)?);
    let (epsilon, best) = if plus <= minus { (1, plus) } else { (-1, minus) };
    if !(best <= ROOT_NUMBER_TOL) {
        return Err(Error::AmbiguousSign { plus, minus });
    }
    Ok(RootNumber { epsilon, residual_plus: plus, residual_minus: minus })
}

impl CompletedL for EllipticL {
    fn family(&self) -> FamilyTag {
        FamilyTag::Elliptic(self.label.clone())
    }

    fn weight(&self) -> u32 {
        2
    }

    fn eval(&self, s: Complex) -> Result<Complex> {
        self.lambda(s)
    }

    /// Λ(1 + it)·e^{π|t|/2}, real for ε = +1 and imaginary for ε = −1.
    fn line_value(&self, t: f64) -> Result<f64> {
        let v = self.lambda(Complex::new(1.0, t))? * (FRAC_PI_2 * t.abs()).exp();
        match self.epsilon {
            Some(1) => Ok(v.re),
            Some(_) => Ok(v.im),
            None => Err(Error::UnknownRootNumber),
        }
    }

    fn real_zero_interval(&self) -> (f64, f64) {
        (0.2, 1.8)
    }

    fn parity_forced_center_zero(&self) -> bool {
        self.epsilon == Some(-1)
    }
}

/// Whether Λ(E, s) is free of zeros on the real segment [0.2, 1.8].
#[derive(Debug, Clone, PartialEq)]
pub struct RealAxisVerdict {
    pub satisfied: bool,
    pub real_zeros: Vec<RealZeroReport>,
}

pub fn real_axis_hypothesis(l: &EllipticL) -> Result<RealAxisVerdict> {
    let (a, b) = l.real_zero_interval();
    let real_zeros = detect_real_zeros(l, a, b)?;
    Ok(RealAxisVerdict { satisfied: real_zeros.is_empty(), real_zeros })
}
