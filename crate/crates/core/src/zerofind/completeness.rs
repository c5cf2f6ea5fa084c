use std::f64::consts::PI;

use super::{FamilyTag, ZeroCatalog};
use crate::error::{Error, Result};
use crate::specfun::{hardy_theta, riemann_zeta, Complex};

/// Outcome of [`completeness_check`].
#[derive(Debug, Clone, PartialEq)]
pub struct Certificate {
    pub height: f64,
    pub found: usize,
    /// θ(T)/π + 1.
    pub smooth_count: f64,
    /// N(T) from the argument principle, θ(T)/π + 1 + S(T), rounded.
    pub exact_count: usize,
    /// |found − smooth_count|.
    pub slack: f64,
    pub passed: bool,
    /// First interval between cataloged heights where the count disagrees.
    pub flagged_interval: Option<(f64, f64)>,
}

/// S(T) = arg ζ(1/2 + iT) / π, the argument followed continuously along the
/// horizontal segment from 2 + iT, where ζ has positive real part.
pub fn argument_s(t: f64) -> Result<f64> {
    let zeta = |sigma: f64| riemann_zeta(Complex::new(sigma, t));
    let mut arg = zeta(2.0)?.arg();
    let mut sigma: f64 = 2.0;
    let mut previous = zeta(2.0)?;
    let mut step: f64 = 0.02;
    while sigma > 0.5 {
        let next_sigma = (sigma - step).max(0.5);
        let next = zeta(next_sigma)?;
        let delta = (next / previous).arg();
        if delta.abs() > PI / 8.0 && step > 1e-6 {
            step *= 0.5;
            continue;
        }
        arg += delta;
        previous = next;
        sigma = next_sigma;
        step = (step * 1.5).min(0.02);
    }
    Ok(arg / PI)
}

/// Number of zeros of ζ with ordinate in (0, T] (T not an ordinate).
pub fn riemann_zero_count(t: f64) -> Result<usize> {
    let n = hardy_theta(t)? / PI + 1.0 + argument_s(t)?;
    if (n - n.round()).abs() > 0.25 {
        return Err(Error::NonConvergence { what: "argument-principle zero count", iterations: 0 });
    }
    Ok(n.round().max(0.0) as usize)
}

/// Checks that a Riemann catalog holds every zero below its height.
///
/// The smooth count θ(T)/π + 1 must be within 1 of the number found, and the
/// argument-principle count N(T) must match it exactly. On a mismatch the
/// first offending interval between consecutive cataloged zeros is located.
pub fn completeness_check(catalog: &ZeroCatalog) -> Result<Certificate> {
    if catalog.family != FamilyTag::Riemann {
        return Err(Error::InvalidArgument(format!(
            "completeness check is implemented for the riemann family, not {}",
            catalog.family
        )));
    }
    let height = catalog.t_max;
    let found = catalog.zeros.iter().map(|z| z.mult as usize).sum::<usize>();
    let smooth_count = hardy_theta(height)? / PI + 1.0;
    let exact_count = riemann_zero_count(height)?;
    let slack = (found as f64 - smooth_count).abs();
    let passed = slack <= 1.0 && exact_count == found;
    let flagged_interval = if exact_count == found { None } else { Some(locate(catalog)?) };
    Ok(Certificate {
        height,
        found,
        smooth_count,
        exact_count,
        slack,
        passed,
        flagged_interval,
    })
}

// Binary search over the midpoints between cataloged zeros for the first
// height where the catalog and the argument-principle count disagree.
fn locate(catalog: &ZeroCatalog) -> Result<(f64, f64)> {
    let gammas: Vec<f64> = catalog.zeros.iter().map(|z| z.gamma).collect();
    let mut heights = Vec::with_capacity(gammas.len() + 1);
    for k in 0..gammas.len() {
        heights.push(if k + 1 < gammas.len() {
            0.5 * (gammas[k] + gammas[k + 1])
        } else {
            catalog.t_max
        });
    }
    if heights.is_empty() {
        return Ok((0.0, catalog.t_max));
    }
    // the catalog has k + 1 zeros below heights[k]
    let mismatch = |k: usize| -> Result<bool> { Ok(riemann_zero_count(heights[k])? != k + 1) };
    let (mut lo, mut hi) = (0usize, heights.len() - 1);
    if mismatch(0)? {
        return Ok((0.0, heights[0]));
    }
    while hi - lo > 1 {
        let mid = (lo + hi) / 2;
        if mismatch(mid)? {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok((heights[lo], heights[hi]))
}
