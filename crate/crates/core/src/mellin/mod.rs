//! Test functions on the multiplicative half-line and their Mellin
//! transforms `M(F)(s) = ∫₀^∞ F(x) x^s dx/x`.
//!
//! A [`TestFunction`] is an expression tree. Constructors normalize eagerly
//! (J∘J elimination, merged scalings, flattened sums, ordered convolutions)
//! so structural identities can be checked with `==`.

mod closed;
mod dsl;
mod quadrature;
mod theta;

use std::fmt;

pub use closed::Atom;
pub use dsl::parse_test_function;
pub use quadrature::mellin_quadrature;
pub use theta::{theta_series, theta_tilde};

use crate::error::{Error, Result};
use crate::specfun::Complex;
use crate::zerofind::FamilyTag;

/// How [`mellin_with`] evaluates a transform.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MellinMethod {
    /// Closed form when the tree has one, otherwise quadrature.
    Auto,
    ClosedForm,
    Quadrature,
}

#[derive(Debug, Clone, PartialEq)]
pub enum TestFunction {
    /// `amp · exp(−a (ln x − mu)²)`
    LogGaussian { a: f64, mu: f64, amp: Complex },
    /// `x^{−w} F(1/x)`
    Jw { w: u32, child: Box<TestFunction> },
    /// `F(x/λ)`
    Scale { lambda: f64, child: Box<TestFunction> },
    /// Pointwise complex conjugate.
    Conj(Box<TestFunction>),
    Sum(Vec<TestFunction>),
    /// `(F*G)(x) = ∫ F(y) G(x/y) dy/y`
    MultConv(Box<TestFunction>, Box<TestFunction>),
    /// `θ̃ * h`, the image of a Schwartz function on the adeles; its
    /// transform is `completed_l_q(s) · M(h)(s)`.
    ThetaSmoothed { h: Box<TestFunction>, family: FamilyTag },
}

impl TestFunction {
    pub fn log_gaussian(a: f64, mu: f64, amp: Complex) -> Result<Self> {
        if !(a > 0.0 && a.is_finite()) {
            return Err(Error::InvalidArgument(format!("log-Gaussian width must be > 0, got {a}")));
        }
        if !(mu.is_finite() && amp.re.is_finite() && amp.im.is_finite()) {
            return Err(Error::InvalidArgument("non-finite log-Gaussian parameter".into()));
        }
        Ok(TestFunction::LogGaussian { a, mu, amp })
    }

    /// Real log-Gaussian with unit amplitude.
    pub fn real_log_gaussian(a: f64, mu: f64) -> Result<Self> {
        Self::log_gaussian(a, mu, Complex::new(1.0, 0.0))
    }

    /// The default family: a = 100, mu ∈ {−1, −0.5, 0, 0.5, 1}.
    pub fn default_family() -> Vec<TestFunction> {
        [-1.0, -0.5, 0.0, 0.5, 1.0]
            .iter()
            .map(|&mu| Self::real_log_gaussian(100.0, mu).expect("valid parameters"))
            .collect()
    }

    pub fn conj(self) -> Self {
        match self {
            TestFunction::Conj(inner) => *inner,
            other => TestFunction::Conj(Box::new(other)),
        }
    }

    pub fn sum(children: Vec<TestFunction>) -> Result<Self> {
        let mut flat = Vec::with_capacity(children.len());
        for c in children {
            match c {
                TestFunction::Sum(inner) => flat.extend(inner),
                other => flat.push(other),
            }
        }
        match flat.len() {
            0 => Err(Error::InvalidArgument("empty sum".into())),
            1 => Ok(flat.pop().expect("one element")),
            _ => Ok(TestFunction::Sum(flat)),
        }
    }

    /// True when some node is a θ̃-smoothed image.
    pub fn contains_theta(&self) -> bool {
        match self {
            TestFunction::LogGaussian { .. } => false,
            TestFunction::Jw { child, .. } | TestFunction::Scale { child, .. } => child.contains_theta(),
            TestFunction::Conj(child) => child.contains_theta(),
            TestFunction::Sum(children) => children.iter().any(TestFunction::contains_theta),
            TestFunction::MultConv(l, r) => l.contains_theta() || r.contains_theta(),
            TestFunction::ThetaSmoothed { .. } => true,
        }
    }

    /// Every node kind in the algebra has a closed-form transform (θ̃-smoothed
    /// images through the completed zeta function).
    pub fn has_closed_form(&self) -> bool {
        match self {
            TestFunction::LogGaussian { .. } => true,
            TestFunction::Jw { child, .. } | TestFunction::Scale { child, .. } => child.has_closed_form(),
            TestFunction::Conj(child) => child.has_closed_form(),
            TestFunction::Sum(children) => children.iter().all(TestFunction::has_closed_form),
            TestFunction::MultConv(l, r) => l.has_closed_form() && r.has_closed_form(),
            TestFunction::ThetaSmoothed { h, family } => {
                *family == FamilyTag::Riemann && h.has_closed_form()
            }
        }
    }

    /// True when the function is real-valued on the half-line.
    pub fn is_real(&self) -> bool {
        match self {
            TestFunction::LogGaussian { amp, .. } => amp.im == 0.0,
            TestFunction::Jw { child, .. } | TestFunction::Scale { child, .. } => child.is_real(),
            TestFunction::Conj(child) => child.is_real(),
            TestFunction::Sum(children) => children.iter().all(TestFunction::is_real),
            TestFunction::MultConv(l, r) => l.is_real() && r.is_real(),
            TestFunction::ThetaSmoothed { h, .. } => h.is_real(),
        }
    }

    /// Open interval (lo, hi) of Re s on which the defining integral converges.
    pub fn strip(&self) -> (f64, f64) {
        match self {
            TestFunction::LogGaussian { .. } => (f64::NEG_INFINITY, f64::INFINITY),
            TestFunction::Jw { w, child } => {
                let (lo, hi) = child.strip();
                let w = f64::from(*w);
                (w - hi, w - lo)
            }
            TestFunction::Scale { child, .. } | TestFunction::Conj(child) => child.strip(),
            TestFunction::Sum(children) => children.iter().fold(
                (f64::NEG_INFINITY, f64::INFINITY),
                |(lo, hi), c| {
                    let (a, b) = c.strip();
                    (lo.max(a), hi.min(b))
                },
            ),
            TestFunction::MultConv(l, r) => {
                let (a, b) = l.strip();
                let (c, d) = r.strip();
                (a.max(c), b.min(d))
            }
            TestFunction::ThetaSmoothed { h, .. } => {
                let (lo, hi) = h.strip();
                (lo.max(1.0), hi)
            }
        }
    }

    /// Pointwise value F(x) for x > 0.
    pub fn eval(&self, x: f64) -> Result<Complex> {
        if !(x > 0.0) {
            return Err(Error::InvalidArgument(format!("test functions live on x > 0, got {x}")));
        }
        self.eval_log_weighted(Complex::new(x.ln(), 0.0), Complex::new(0.0, 0.0))
    }
}

/// `J_w F (x) = x^{−w} F(1/x)`, with `J_w ∘ J_w` collapsed.
pub fn apply_j(f: TestFunction, w: u32) -> Result<TestFunction> {
    if !matches!(w, 1 | 2) {
        return Err(Error::InvalidArgument(format!("J_w is defined for w in {{1, 2}}, got {w}")));
    }
    Ok(match f {
        TestFunction::Jw { w: inner, child } if inner == w => *child,
        other => TestFunction::Jw { w, child: Box::new(other) },
    })
}

/// `(λ·F)(x) = F(x/λ)`, so that `M(λ·F)(s) = λ^s M(F)(s)`.
pub fn scale_action(f: TestFunction, lambda: f64) -> Result<TestFunction> {
    if !(lambda > 0.0 && lambda.is_finite()) {
        return Err(Error::InvalidArgument(format!("scaling needs lambda > 0, got {lambda}")));
    }
    Ok(match f {
        TestFunction::Scale { lambda: inner, child } => {
            let merged = lambda * inner;
            if merged == 1.0 {
                *child
            } else {
                TestFunction::Scale { lambda: merged, child }
            }
        }
        other if lambda == 1.0 => other,
        other => TestFunction::Scale { lambda, child: Box::new(other) },
    })
}

/// Multiplicative convolution; operands are stored in canonical order.
pub fn mult_convolve(f: TestFunction, g: TestFunction) -> Result<TestFunction> {
    let (a, b) = f.strip();
    let (c, d) = g.strip();
    if a.max(c) >= b.min(d) {
        return Err(Error::InvalidArgument("convolution operands have disjoint strips".into()));
    }
    if f.contains_theta() && g.contains_theta() {
        return Err(Error::InvalidArgument(
            "at most one convolution operand may contain a smoothed image".into(),
        ));
    }
    let (left, right) = if f.to_string() <= g.to_string() { (f, g) } else { (g, f) };
    Ok(TestFunction::MultConv(Box::new(left), Box::new(right)))
}

/// The θ̃-smoothed image of `h`, whose Mellin transform is
/// `completed_l_q(s) · M(h)(s)` and vanishes at every zeta zero.
pub fn smoothed_image(h: TestFunction) -> Result<TestFunction> {
    if h.contains_theta() {
        return Err(Error::InvalidArgument("smoothed_image needs a closed-form argument".into()));
    }
    Ok(TestFunction::ThetaSmoothed { h: Box::new(h), family: FamilyTag::Riemann })
}

/// Mellin transform with the default dispatch.
pub fn mellin(f: &TestFunction, s: Complex) -> Result<Complex> {
    mellin_with(f, s, MellinMethod::Auto)
}

pub fn mellin_with(f: &TestFunction, s: Complex, method: MellinMethod) -> Result<Complex> {
    match method {
        MellinMethod::ClosedForm => f.mellin_closed(s),
        MellinMethod::Quadrature => mellin_quadrature(f, s),
        MellinMethod::Auto if f.has_closed_form() => f.mellin_closed(s),
        MellinMethod::Auto => mellin_quadrature(f, s),
    }
}

fn fmt_complex_literal(z: Complex) -> String {
    if z.im == 0.0 {
        format!("{}", z.re)
    } else if z.im < 0.0 || z.im.is_sign_negative() {
        format!("{}-{}i", z.re, -z.im)
    } else {
        format!("{}+{}i", z.re, z.im)
    }
}

/// Prints the DSL form accepted by [`parse_test_function`].
impl fmt::Display for TestFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TestFunction::LogGaussian { a, mu, amp } => {
                write!(f, "loggauss:a={a},mu={mu}")?;
                if *amp != Complex::new(1.0, 0.0) {
                    write!(f, ",amp={}", fmt_complex_literal(*amp))?;
                }
                Ok(())
            }
            TestFunction::Jw { w, child } => write!(f, "j{w}({child})"),
            TestFunction::Scale { lambda, child } => write!(f, "scale:{lambda}({child})"),
            TestFunction::Conj(child) => write!(f, "conj({child})"),
            TestFunction::Sum(children) => {
                f.write_str("sum(")?;
                for (i, c) in children.iter().enumerate() {
                    if i > 0 {
                        f.write_str(";")?;
                    }
                    write!(f, "{c}")?;
                }
                f.write_str(")")
            }
            TestFunction::MultConv(l, r) => write!(f, "conv({l},{r})"),
            TestFunction::ThetaSmoothed { h, .. } => write!(f, "smooth({h})"),
        }
    }
}
