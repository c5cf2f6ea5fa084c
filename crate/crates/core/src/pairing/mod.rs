//! Spectral vectors over a zero catalog and the pairings between them.
//!
//! A test function `F` becomes the vector of its Mellin values at the
//! cataloged zeros `ρ = c + iγ` (γ > 0) and at their partners `w − ρ`. The
//! antisymmetric weight-1 pairing, the symmetric weight-2 pairing and the
//! Hermitian form are finite sums over the catalog; tail bounds come from the
//! closed-form decay of the transforms.

mod gram;
mod linalg;
mod report;
mod suspension;

use std::sync::Arc;

pub use gram::{gram_matrix, numeric_rank, psd_check, Gram};
pub use linalg::{hermitian_eigenvalues, singular_values};
pub use report::PairingReport;
pub use suspension::{
    base_change, suspend, suspend_catalog, suspend_exact, suspension_twist_check, SuspendedEntry,
    SuspendedSpectrum, SuspensionBase, TwistVerdict,
};

use crate::error::{Error, Result};
use crate::mellin::{mellin, mult_convolve, apply_j, scale_action, TestFunction};
use crate::specfun::Complex;
use crate::zerofind::ZeroCatalog;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Which pairing a computation uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Form {
    Antisym,
    Sym,
    Hermitian,
}

impl Form {
    pub fn name(self) -> &'static str {
        match self {
            Form::Antisym => "antisym",
            Form::Sym => "sym",
            Form::Hermitian => "hermitian",
        }
    }
}

impl std::fmt::Display for Form {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for Form {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "antisym" => Ok(Form::Antisym),
            "sym" => Ok(Form::Sym),
            "hermitian" => Ok(Form::Hermitian),
            other => Err(Error::Parse {
                token: other.to_string(),
                message: "form must be antisym, sym or hermitian".into(),
            }),
        }
    }
}

/// Conditions a pairing value was computed under.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PairingFlag {
    /// The catalog has zeros on the real axis; the symmetric form was
    /// evaluated on the quotient that ignores them.
    RealZerosIgnored,
    /// Some zero is stored off the center line.
    OffLineZeros,
    /// No closed-form source was available for a tail bound.
    UnboundedTail,
}

impl PairingFlag {
    pub fn name(self) -> &'static str {
        match self {
            PairingFlag::RealZerosIgnored => "real-zeros-ignored",
            PairingFlag::OffLineZeros => "off-line-zeros",
            PairingFlag::UnboundedTail => "unbounded-tail",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PairingValue {
    pub value: Complex,
    /// Equivariance exponent: ψ(λ·u, λ·v) = λ^twist ψ(u, v).
    pub twist: u32,
    pub truncation_bound: f64,
    pub flags: Vec<PairingFlag>,
}

/// Mellin values of one test function at the zeros of a catalog.
#[derive(Debug, Clone)]
pub struct SpectralVector {
    pub catalog: Arc<ZeroCatalog>,
    /// `M(F)(c + iγ_k)` in catalog order.
    pub plus: Vec<Complex>,
    /// `M(F)(w − c − iγ_k)`.
    pub minus: Vec<Complex>,
    /// `M(F)(σ)` at the real zeros.
    pub zero: Vec<Complex>,
    pub source: Option<TestFunction>,
}

impl SpectralVector {
    /// Euclidean norm of all coefficients.
    pub fn norm(&self) -> f64 {
        self.plus
            .iter()
            .chain(&self.minus)
            .chain(&self.zero)
            .map(|z| z.norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    fn shares_catalog(&self, other: &SpectralVector) -> Result<()> {
        if Arc::ptr_eq(&self.catalog, &other.catalog) || self.catalog == other.catalog {
            Ok(())
        } else {
            Err(Error::CatalogMismatch(format!(
                "{} up to {} vs {} up to {}",
                self.catalog.family, self.catalog.t_max, other.catalog.family, other.catalog.t_max
            )))
        }
    }
}

/// Evaluates `F` at every cataloged zero and its functional-equation partner.
pub fn spectralize(f: &TestFunction, catalog: Arc<ZeroCatalog>) -> Result<SpectralVector> {
    let c = catalog.center;
    let w = f64::from(catalog.weight);
    let at = |gamma: &f64| -> Result<(Complex, Complex)> {
        let rho = Complex::new(c, *gamma);
        Ok((mellin(f, rho)?, mellin(f, w - rho)?))
    };
    let gammas: Vec<f64> = catalog.zeros.iter().map(|z| z.gamma).collect();
    #[cfg(feature = "parallel")]
    let pairs: Vec<(Complex, Complex)> = gammas.par_iter().map(at).collect::<Result<_>>()?;
    #[cfg(not(feature = "parallel"))]
    let pairs: Vec<(Complex, Complex)> = gammas.iter().map(at).collect::<Result<_>>()?;
    let zero = catalog
        .real_zeros
        .iter()
        .map(|r| mellin(f, Complex::new(r.sigma, 0.0)))
        .collect::<Result<Vec<_>>>()?;
    let (plus, minus) = pairs.into_iter().unzip();
    Ok(SpectralVector { catalog, plus, minus, zero, source: Some(f.clone()) })
}

/// `x · conj(y)` written so that swapping the arguments conjugates the
/// result exactly.
fn mul_conj(x: Complex, y: Complex) -> Complex {
    Complex::new(x.re * y.re + x.im * y.im, x.im * y.re - x.re * y.im)
}

fn require_weight(u: &SpectralVector, w: u32, what: &str) -> Result<()> {
    if u.catalog.weight != w {
        return Err(Error::InvalidArgument(format!(
            "{what} needs a weight-{w} catalog, got weight {}",
            u.catalog.weight
        )));
    }
    Ok(())
}

fn finish(u: &SpectralVector, v: &SpectralVector, value: Complex, twist: u32, mut flags: Vec<PairingFlag>) -> PairingValue {
    let truncation_bound = truncation_estimate(u, v);
    if truncation_bound.is_infinite() {
        flags.push(PairingFlag::UnboundedTail);
    }
    PairingValue { value, twist, truncation_bound, flags }
}

/// ψ(u, v) = Σ_k m_k [u⁺_k v⁻_k − v⁺_k u⁻_k] on a weight-1 catalog.
///
/// Each summand changes sign exactly under u ↔ v, so ψ(u, v) + ψ(v, u) is
/// exactly zero in floating point.
pub fn pair_antisym(u: &SpectralVector, v: &SpectralVector) -> Result<PairingValue> {
    u.shares_catalog(v)?;
    require_weight(u, 1, "the antisymmetric pairing")?;
    let mut acc = Complex::new(0.0, 0.0);
    for (k, z) in u.catalog.zeros.iter().enumerate() {
        let term = u.plus[k] * v.minus[k] - v.plus[k] * u.minus[k];
        acc += f64::from(z.mult) * term;
    }
    Ok(finish(u, v, acc, 1, Vec::new()))
}

/// ψ(u, v) = Σ_k m_k [u⁺_k v⁻_k + v⁺_k u⁻_k] on a weight-2 catalog. Real
/// zeros are left out and flagged.
pub fn pair_sym(u: &SpectralVector, v: &SpectralVector) -> Result<PairingValue> {
    u.shares_catalog(v)?;
    require_weight(u, 2, "the symmetric pairing")?;
    let mut acc = Complex::new(0.0, 0.0);
    for (k, z) in u.catalog.zeros.iter().enumerate() {
        let term = u.plus[k] * v.minus[k] + v.plus[k] * u.minus[k];
        acc += f64::from(z.mult) * term;
    }
    let flags = if u.catalog.real_zeros.is_empty() {
        Vec::new()
    } else {
        vec![PairingFlag::RealZerosIgnored]
    };
    Ok(finish(u, v, acc, 2, flags))
}

/// Σ_k m_k [u⁺_k conj(v⁺_k) + u⁻_k conj(v⁻_k)].
///
/// For real test functions on a line-located catalog the second term is the
/// contribution of the conjugate zero c − iγ, so the sum runs over all zeros
/// with both signs of ordinate. Swapping `u` and `v` conjugates the value
/// exactly.
pub fn hermitian_form(u: &SpectralVector, v: &SpectralVector) -> Result<Complex> {
    u.shares_catalog(v)?;
    let mut acc = Complex::new(0.0, 0.0);
    for (k, z) in u.catalog.zeros.iter().enumerate() {
        let term = mul_conj(u.plus[k], v.plus[k]) + mul_conj(u.minus[k], v.minus[k]);
        acc += f64::from(z.mult) * term;
    }
    Ok(acc)
}

/// Dispatches on `form`; the Hermitian form reports twist 0.
pub fn pair(form: Form, u: &SpectralVector, v: &SpectralVector) -> Result<PairingValue> {
    match form {
        Form::Antisym => pair_antisym(u, v),
        Form::Sym => pair_sym(u, v),
        Form::Hermitian => {
            let value = hermitian_form(u, v)?;
            Ok(finish(u, v, value, 0, Vec::new()))
        }
    }
}

/// Bound on what the zeros above the catalog height can add to any of the
/// pairings of `u` and `v`, from the closed-form decay of their transforms
/// and the family's zero-density bound. Infinite when a source function is
/// missing or the family has no density bound.
pub fn truncation_estimate(u: &SpectralVector, v: &SpectralVector) -> f64 {
    let (Some(f), Some(g)) = (&u.source, &v.source) else {
        return f64::INFINITY;
    };
    let cat = &u.catalog;
    let c = cat.center;
    let w = f64::from(cat.weight);
    let mut acc = 0.0;
    let mut previous = f64::INFINITY;
    for k in 0..1_000_000u32 {
        let lo = cat.t_max + f64::from(k);
        let hi = lo + 1.0;
        let Some(density) = cat.family.zero_density_bound(lo) else {
            return f64::INFINITY;
        };
        let per_zero = f.envelope(c, lo, hi) * g.envelope(w - c, lo, hi)
            + g.envelope(c, lo, hi) * f.envelope(w - c, lo, hi)
            + f.envelope(c, lo, hi) * g.envelope(c, lo, hi)
            + f.envelope(w - c, lo, hi) * g.envelope(w - c, lo, hi);
        let term = density * per_zero;
        if !term.is_finite() {
            return f64::INFINITY;
        }
        acc += term;
        if term == 0.0 || (term < previous && term <= 1e-20 * acc) {
            return acc;
        }
        previous = term;
    }
    f64::INFINITY
}

/// |A − B| + |A − C| for the trace identity Tr(u * J v | H⁻) = Tr(v * J u | H⁺).
/// A sums the H⁻ side u⁻v⁺, B the H⁺ side v⁺u⁻, and C evaluates the
/// transform of the convolution `v * J_w u` at each zero from its tree
/// (falling back to the conjugate-partner sum when no source is attached).
/// All three accumulate in catalog order, so u = v gives exactly 0.
pub fn funceq_identity_residual(u: &SpectralVector, v: &SpectralVector) -> Result<f64> {
    u.shares_catalog(v)?;
    let cat = &u.catalog;
    let n = cat.zeros.len();
    let mult = |k: usize| f64::from(cat.zeros[k].mult);

    let mut forward = Complex::new(0.0, 0.0);
    for k in 0..n {
        forward += mult(k) * (u.minus[k] * v.plus[k]);
    }
    let mut backward = Complex::new(0.0, 0.0);
    for (k, (vp, um)) in v.plus.iter().zip(&u.minus).enumerate() {
        backward += mult(k) * (vp * um);
    }

    let cross = match (&u.source, &v.source) {
        (Some(f), Some(g)) => {
            let tree = mult_convolve(g.clone(), apply_j(f.clone(), cat.weight)?)?;
            let mut acc = Complex::new(0.0, 0.0);
            for k in 0..n {
                let rho = Complex::new(cat.center, cat.zeros[k].gamma);
                acc += mult(k) * mellin(&tree, rho)?;
            }
            acc
        }
        _ => {
            let mut acc = Complex::new(0.0, 0.0);
            for k in 0..n {
                acc += mult(k) * (u.minus[k].conj() * v.plus[k].conj()).conj();
            }
            acc
        }
    };
    Ok((forward - backward).norm() + (forward - cross).norm())
}

/// Relative deviation |ψ(λF, λG) − λ^w ψ(F, G)| / max(|λ^w ψ(F, G)|, floor)
/// with the antisymmetric form at w = 1 and the symmetric one at w = 2.
pub fn equivariance_check(
    f: &TestFunction,
    g: &TestFunction,
    lambda: f64,
    w: u32,
    catalog: Arc<ZeroCatalog>,
) -> Result<f64> {
    if catalog.weight != w {
        return Err(Error::InvalidArgument(format!(
            "weight {w} does not match the catalog's weight {}",
            catalog.weight
        )));
    }
    let pairing = |a: &TestFunction, b: &TestFunction| -> Result<Complex> {
        let u = spectralize(a, catalog.clone())?;
        let v = spectralize(b, catalog.clone())?;
        Ok(match w {
            1 => pair_antisym(&u, &v)?.value,
            _ => pair_sym(&u, &v)?.value,
        })
    };
    let base = pairing(f, g)?;
    let moved = pairing(&scale_action(f.clone(), lambda)?, &scale_action(g.clone(), lambda)?)?;
    let expected = lambda.powi(w as i32) * base;
    Ok((moved - expected).norm() / expected.norm().max(f64::MIN_POSITIVE))
}
