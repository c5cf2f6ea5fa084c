//! Suspension of a discrete spectrum: an eigenvalue α of Frobenius over 𝔽_q
//! becomes the exponent s0 with q^{s0} = α, defined modulo 2πi/ln q.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::specfun::Complex;
use crate::surd::QuadSurd;
use crate::zerofind::ZeroCatalog;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SuspensionBase {
    Archimedean,
    Finite { q: u64 },
}

#[derive(Debug, Clone, PartialEq)]
pub struct SuspendedEntry {
    /// Exponent reduced to 0 ≤ Im s0 < period (any Im s0 when archimedean).
    pub s0: Complex,
    pub mult: u32,
    /// The eigenvalue q^{s0}; for archimedean spectra, s0 itself.
    pub alpha: Complex,
    pub exact: Option<QuadSurd>,
}

impl SuspendedEntry {
    pub fn is_real(&self) -> bool {
        self.s0.im == 0.0
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SuspendedSpectrum {
    pub base: SuspensionBase,
    pub entries: Vec<SuspendedEntry>,
    /// 2π/ln q, or 0 for archimedean spectra.
    pub period: f64,
}

/// Outcome of [`suspension_twist_check`].
#[derive(Debug, Clone, PartialEq)]
pub struct TwistVerdict {
    pub m: i32,
    /// max over entries of |q^{m s0} − α^m| / |α|^m.
    pub eigen_deviation: f64,
    /// max over partner pairs of |α^m (q/α)^m − q^m| / q^m.
    pub pairing_deviation: f64,
    /// Exact verdict when every eigenvalue is a quadratic surd.
    pub exact: Option<bool>,
    pub passed: bool,
}

pub(crate) fn is_prime_power(q: u64) -> bool {
    if q < 2 {
        return false;
    }
    let mut p = 2;
    let mut n = q;
    while p * p <= n {
        if n % p == 0 {
            while n % p == 0 {
                n /= p;
            }
            return n == 1;
        }
        p += 1;
    }
    true
}

fn reduce(s0: Complex, period: f64) -> Complex {
    let mut im = s0.im.rem_euclid(period);
    if im >= period {
        im = 0.0;
    }
    Complex::new(s0.re, im)
}

fn exponent(q: u64, alpha: Complex) -> Result<Complex> {
    if alpha.norm() == 0.0 {
        return Err(Error::ZeroEigenvalue);
    }
    let lq = (q as f64).ln();
    Ok(Complex::new(alpha.norm().ln() / lq, alpha.arg() / lq))
}

pub fn suspend(q: u64, eigenvalues: &[(Complex, u32)]) -> Result<SuspendedSpectrum> {
    if !is_prime_power(q) {
        return Err(Error::InvalidArgument(format!("{q} is not a prime power")));
    }
    let period = 2.0 * PI / (q as f64).ln();
    let mut entries = Vec::with_capacity(eigenvalues.len());
    for &(alpha, mult) in eigenvalues {
        if mult == 0 {
            return Err(Error::InvalidArgument("multiplicities must be positive".into()));
        }
        entries.push(SuspendedEntry { s0: reduce(exponent(q, alpha)?, period), mult, alpha, exact: None });
    }
    Ok(SuspendedSpectrum { base: SuspensionBase::Finite { q }, entries, period })
}

/// As [`suspend`], keeping exact eigenvalues for the twist check.
pub fn suspend_exact(q: u64, eigenvalues: &[(QuadSurd, u32)]) -> Result<SuspendedSpectrum> {
    let numeric: Vec<(Complex, u32)> = eigenvalues.iter().map(|(a, m)| (a.to_complex(), *m)).collect();
    let mut s = suspend(q, &numeric)?;
    for (entry, (alpha, _)) in s.entries.iter_mut().zip(eigenvalues) {
        entry.exact = Some(*alpha);
    }
    Ok(s)
}

/// The archimedean spectrum of a zero catalog: no reduction, period 0.
pub fn suspend_catalog(catalog: &ZeroCatalog) -> SuspendedSpectrum {
    let entries = catalog
        .zeros
        .iter()
        .map(|z| {
            let s0 = Complex::new(catalog.center, z.gamma);
            SuspendedEntry { s0, mult: z.mult, alpha: s0, exact: None }
        })
        .chain(catalog.real_zeros.iter().map(|r| {
            let s0 = Complex::new(r.sigma, 0.0);
            SuspendedEntry { s0, mult: r.mult, alpha: s0, exact: None }
        }))
        .collect();
    SuspendedSpectrum { base: SuspensionBase::Archimedean, entries, period: 0.0 }
}

/// Base change to 𝔽_{q^r}: α ↦ α^r, q ↦ q^r, with exponents re-reduced.
pub fn base_change(s: &SuspendedSpectrum, r: u32) -> Result<SuspendedSpectrum> {
    let SuspensionBase::Finite { q } = s.base else {
        return Err(Error::InvalidArgument("base change needs a finite base".into()));
    };
    if r == 0 {
        return Err(Error::InvalidArgument("base-change degree must be positive".into()));
    }
    let qr = q.checked_pow(r).ok_or_else(|| Error::SizeCap(format!("{q}^{r}")))?;
    let period = s.period / f64::from(r);
    let entries = s
        .entries
        .iter()
        .map(|e| {
            Ok(SuspendedEntry {
                s0: reduce(e.s0, period),
                mult: e.mult,
                alpha: e.alpha.powu(r),
                exact: e.exact.map(|a| a.checked_pow(r as i32)).transpose()?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(SuspendedSpectrum { base: SuspensionBase::Finite { q: qr }, entries, period })
}

/// Acting by t = q^m multiplies the component at s0 by q^{m s0} = α^m, and
/// the pairing of the components at α and q/α by q^m, the twist of 𝕃(1).
pub fn suspension_twist_check(s: &SuspendedSpectrum, m: i32) -> Result<TwistVerdict> {
    let SuspensionBase::Finite { q } = s.base else {
        return Err(Error::InvalidArgument("the twist check needs a finite base".into()));
    };
    let lq = (q as f64).ln();
    let qm = (q as f64).powi(m);

    let mut eigen_deviation: f64 = 0.0;
    for e in &s.entries {
        let acted = (e.s0 * (f64::from(m) * lq)).exp();
        let direct = e.alpha.powi(m);
        eigen_deviation = eigen_deviation.max((acted - direct).norm() / direct.norm());
    }

    let mut pairing_deviation: f64 = 0.0;
    let all_exact = s.entries.iter().all(|e| e.exact.is_some());
    let mut exact_ok = true;
    let q_exact = QuadSurd::integer(i128::from(q));
    let qm_exact = if all_exact { Some(q_exact.checked_pow(m)?) } else { None };
    for e in &s.entries {
        let target = Complex::new(q as f64, 0.0) / e.alpha;
        let partner = s
            .entries
            .iter()
            .find(|p| (p.alpha - target).norm() <= 1e-9 * target.norm())
            .ok_or_else(|| Error::UnpairedEigenvalue(e.alpha.to_string()))?;
        let twisted = e.alpha.powi(m) * partner.alpha.powi(m);
        pairing_deviation = pairing_deviation.max((twisted - qm).norm() / qm);
        if let (Some(a), Some(b), Some(qm_exact)) = (e.exact, partner.exact, qm_exact) {
            if a.checked_mul(&b)? != q_exact {
                return Err(Error::UnpairedEigenvalue(a.to_string()));
            }
            let product = a.checked_pow(m)?.checked_mul(&b.checked_pow(m)?)?;
            exact_ok &= product == qm_exact;
        }
    }
    let exact = all_exact.then_some(exact_ok);
    let passed = eigen_deviation <= 1e-12 && pairing_deviation <= 1e-12 && exact.unwrap_or(true);
    Ok(TwistVerdict { m, eigen_deviation, pairing_deviation, exact, passed })
}
