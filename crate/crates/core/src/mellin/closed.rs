//! Closed-form transforms and the log-Gaussian atom expansion.

use std::f64::consts::PI;

use super::theta::theta_tilde;
use super::TestFunction;
use crate::error::{Error, Result};
use crate::specfun::{completed_l_q, Complex};

/// `amp · exp(−a (u − mu)²)` in the log coordinate `u = ln x`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Atom {
    pub a: f64,
    pub mu: f64,
    pub amp: Complex,
}

impl Atom {
    /// `amp · √(π/a) · exp(s·mu + s²/(4a))`
    pub fn mellin(&self, s: Complex) -> Complex {
        self.amp * (PI / self.a).sqrt() * (s * self.mu + s * s / (4.0 * self.a)).exp()
    }

    /// Atom value at log coordinate `u`, times `exp(log_weight)`.
    pub fn eval_log_weighted(&self, u: Complex, log_weight: Complex) -> Complex {
        let d = u - self.mu;
        self.amp * (log_weight - self.a * d * d).exp()
    }

    fn j(self, w: u32) -> Atom {
        let w = f64::from(w);
        Atom {
            a: self.a,
            mu: -self.mu - w / (2.0 * self.a),
            amp: self.amp * (w * self.mu + w * w / (4.0 * self.a)).exp(),
        }
    }

    fn convolve(self, other: Atom) -> Atom {
        let a = self.a * other.a / (self.a + other.a);
        Atom {
            a,
            mu: self.mu + other.mu,
            amp: self.amp * other.amp * (PI / (self.a + other.a)).sqrt(),
        }
    }
}

impl TestFunction {
    pub(super) fn mellin_closed(&self, s: Complex) -> Result<Complex> {
        Ok(match self {
            TestFunction::LogGaussian { a, mu, amp } => Atom { a: *a, mu: *mu, amp: *amp }.mellin(s),
            TestFunction::Jw { w, child } => child.mellin_closed(f64::from(*w) - s)?,
            TestFunction::Scale { lambda, child } => (s * lambda.ln()).exp() * child.mellin_closed(s)?,
            TestFunction::Conj(child) => child.mellin_closed(s.conj())?.conj(),
            TestFunction::Sum(children) => {
                let mut acc = Complex::new(0.0, 0.0);
                for c in children {
                    acc += c.mellin_closed(s)?;
                }
                acc
            }
            TestFunction::MultConv(l, r) => l.mellin_closed(s)? * r.mellin_closed(s)?,
            TestFunction::ThetaSmoothed { h, .. } => completed_l_q(s)? * h.mellin_closed(s)?,
        })
    }

    /// Expansion into log-Gaussian atoms; `None` when a smoothed image is
    /// involved.
    pub fn atoms(&self) -> Option<Vec<Atom>> {
        match self {
            TestFunction::LogGaussian { a, mu, amp } => Some(vec![Atom { a: *a, mu: *mu, amp: *amp }]),
            TestFunction::Jw { w, child } => {
                Some(child.atoms()?.into_iter().map(|at| at.j(*w)).collect())
            }
            TestFunction::Scale { lambda, child } => {
                let shift = lambda.ln();
                Some(child.atoms()?.into_iter().map(|at| Atom { mu: at.mu + shift, ..at }).collect())
            }
            TestFunction::Conj(child) => Some(
                child.atoms()?.into_iter().map(|at| Atom { amp: at.amp.conj(), ..at }).collect(),
            ),
            TestFunction::Sum(children) => {
                let mut out = Vec::new();
                for c in children {
                    out.extend(c.atoms()?);
                }
                Some(out)
            }
            TestFunction::MultConv(l, r) => {
                let (la, ra) = (l.atoms()?, r.atoms()?);
                Some(la.iter().flat_map(|x| ra.iter().map(move |y| x.convolve(*y))).collect())
            }
            TestFunction::ThetaSmoothed { .. } => None,
        }
    }

    /// `F(e^u) · exp(log_weight)` for complex `u`. Carrying the weight inside
    /// the exponent keeps shifted-contour integrands representable.
    /// Smoothed images are only evaluated at real `u`.
    pub fn eval_log_weighted(&self, u: Complex, log_weight: Complex) -> Result<Complex> {
        match self {
            TestFunction::LogGaussian { a, mu, amp } => {
                Ok(Atom { a: *a, mu: *mu, amp: *amp }.eval_log_weighted(u, log_weight))
            }
            TestFunction::Jw { w, child } => {
                child.eval_log_weighted(-u, log_weight - f64::from(*w) * u)
            }
            TestFunction::Scale { lambda, child } => child.eval_log_weighted(u - lambda.ln(), log_weight),
            TestFunction::Conj(child) => {
                Ok(child.eval_log_weighted(u.conj(), log_weight.conj())?.conj())
            }
            TestFunction::Sum(children) => {
                let mut acc = Complex::new(0.0, 0.0);
                for c in children {
                    acc += c.eval_log_weighted(u, log_weight)?;
                }
                Ok(acc)
            }
            TestFunction::MultConv(l, r) => match (l.atoms(), r.atoms()) {
                (Some(la), Some(ra)) => {
                    let mut acc = Complex::new(0.0, 0.0);
                    for x in &la {
                        for y in &ra {
                            acc += x.convolve(*y).eval_log_weighted(u, log_weight);
                        }
                    }
                    Ok(acc)
                }
                (Some(la), None) => convolve_numeric(&la, r.as_ref(), u, log_weight),
                (None, Some(ra)) => convolve_numeric(&ra, l.as_ref(), u, log_weight),
                (None, None) => Err(Error::InvalidArgument(
                    "convolution of two smoothed images has no pointwise evaluation".into(),
                )),
            },
            TestFunction::ThetaSmoothed { h, .. } => {
                let atoms = h.atoms().ok_or_else(|| {
                    Error::InvalidArgument("smoothed image of a non-closed-form function".into())
                })?;
                if u.im != 0.0 {
                    return Err(Error::InvalidArgument(
                        "smoothed images are evaluated on the real half-line only".into(),
                    ));
                }
                let theta = ThetaKernel;
                convolve_numeric(&atoms, &theta, u, log_weight)
            }
        }
    }
}

impl TestFunction {
    /// Upper bound for `|M(F)(c + iy)|` over `t_lo ≤ |y| ≤ t_hi`.
    ///
    /// Atoms decay like `exp(−y²/(4a))`. Smoothed images use the exact Gamma
    /// factor with a convexity bound `3 t^{(1−c)/2} ln t` for ζ on `0 ≤ c ≤ 1`
    /// and `ζ(c)` for `c > 1`; left of the critical strip no bound is given.
    pub fn envelope(&self, c: f64, t_lo: f64, t_hi: f64) -> f64 {
        let t_lo = t_lo.abs().min(t_hi.abs());
        let t_hi = t_hi.abs().max(t_lo);
        match self {
            TestFunction::LogGaussian { a, mu, amp } => {
                amp.norm() * (PI / a).sqrt() * (c * mu + (c * c - t_lo * t_lo) / (4.0 * a)).exp()
            }
            TestFunction::Jw { w, child } => child.envelope(f64::from(*w) - c, t_lo, t_hi),
            TestFunction::Scale { lambda, child } => lambda.powf(c) * child.envelope(c, t_lo, t_hi),
            TestFunction::Conj(child) => child.envelope(c, t_lo, t_hi),
            TestFunction::Sum(children) => children.iter().map(|ch| ch.envelope(c, t_lo, t_hi)).sum(),
            TestFunction::MultConv(l, r) => l.envelope(c, t_lo, t_hi) * r.envelope(c, t_lo, t_hi),
            TestFunction::ThetaSmoothed { h, .. } => {
                let zeta = if c > 1.0 + 1e-3 {
                    1.0 + 1.0 / (c - 1.0)
                } else if c >= 0.0 {
                    let t = t_hi.max(3.0);
                    3.0 * t.powf((1.0 - c) / 2.0) * t.ln()
                } else {
                    return f64::INFINITY;
                };
                let gamma = crate::specfun::log_gamma(Complex::new(c / 2.0, t_lo / 2.0))
                    .map(|lg| lg.re.exp())
                    .unwrap_or(f64::INFINITY);
                PI.powf(-c / 2.0) * gamma * zeta * h.envelope(c, t_lo, t_hi)
            }
        }
    }
}

/// Something that can be evaluated at a real log coordinate.
trait LogEval {
    fn at(&self, u: Complex) -> Result<Complex>;
}

impl LogEval for TestFunction {
    fn at(&self, u: Complex) -> Result<Complex> {
        self.eval_log_weighted(u, Complex::new(0.0, 0.0))
    }
}

struct ThetaKernel;

impl LogEval for ThetaKernel {
    fn at(&self, u: Complex) -> Result<Complex> {
        Ok(Complex::new(theta_tilde(u.re.exp())?, 0.0))
    }
}

/// `∫ A(e^v) B(e^{u−v}) dv` where `A` is a finite atom sum. The trapezoid
/// rule on the atoms' joint window is spectrally accurate for Gaussians.
fn convolve_numeric(atoms: &[Atom], other: &dyn LogEval, u: Complex, log_weight: Complex) -> Result<Complex> {
    const HALF_WIDTH: f64 = 8.0;
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    let mut a_max: f64 = 0.0;
    for at in atoms {
        let r = HALF_WIDTH / at.a.sqrt();
        lo = lo.min(at.mu - r);
        hi = hi.max(at.mu + r);
        a_max = a_max.max(at.a);
    }
    let h = 0.25 / a_max.sqrt();
    let n = ((hi - lo) / h).ceil() as usize;
    let h = (hi - lo) / n as f64;
    let weight = log_weight.exp();
    let mut acc = Complex::new(0.0, 0.0);
    for k in 0..=n {
        let v = lo + k as f64 * h;
        let mut a_val = Complex::new(0.0, 0.0);
        for at in atoms {
            a_val += at.eval_log_weighted(Complex::new(v, 0.0), Complex::new(0.0, 0.0));
        }
        if a_val.norm() == 0.0 {
            continue;
        }
        let endpoint = if k == 0 || k == n { 0.5 } else { 1.0 };
        acc += endpoint * a_val * other.at(u - v)?;
    }
    Ok(acc * h * weight)
}
