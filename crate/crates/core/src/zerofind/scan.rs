use super::{CompletedL, RealZero, Zero, ZeroCatalog};
use crate::error::{Error, Result};
use crate::report::round12;
use crate::specfun::Complex;

/// Largest scan step accepted by [`scan_zeros`].
pub const MAX_STEP: f64 = 0.05;
/// Default scan step.
pub const DEFAULT_STEP: f64 = 0.01;
/// Bisection runs until the bracket is at most this wide.
pub const BISECTION_WIDTH: f64 = 1e-9;
/// Every cataloged ordinate must satisfy |L(center + iγ)| below this.
pub const ZERO_CHECK: f64 = 1e-8;

const MAX_REFINE_ITER: usize = 200;

/// Result of refining one sign-change bracket.
#[derive(Debug, Clone, PartialEq)]
pub struct Refinement {
    pub root: f64,
    /// Bracket widths after each bisection step.
    pub bisection_widths: Vec<f64>,
    pub secant_steps: usize,
}

/// Bisection down to [`BISECTION_WIDTH`], then a bracketed secant
/// (Illinois) phase to full precision.
pub fn refine_root<F>(f: F, lo: f64, hi: f64) -> Result<Refinement>
where
    F: Fn(f64) -> Result<f64>,
{
    let (mut a, mut b) = (lo, hi);
    let (mut fa, mut fb) = (f(a)?, f(b)?);
    if fa == 0.0 {
        return Ok(Refinement { root: a, bisection_widths: vec![], secant_steps: 0 });
    }
    if fb == 0.0 {
        return Ok(Refinement { root: b, bisection_widths: vec![], secant_steps: 0 });
    }
    if fa.signum() == fb.signum() {
        return Err(Error::InvalidArgument(format!("[{lo}, {hi}] is not a sign-change bracket")));
    }
    let mut widths = Vec::new();
    let mut iterations = 0;
    while b - a > BISECTION_WIDTH {
        iterations += 1;
        if iterations > MAX_REFINE_ITER {
            return Err(Error::NonConvergence { what: "zero refinement", iterations });
        }
        let m = 0.5 * (a + b);
        let fm = f(m)?;
        if fm == 0.0 {
            return Ok(Refinement { root: m, bisection_widths: widths, secant_steps: 0 });
        }
        if fm.signum() == fa.signum() {
            a = m;
            fa = fm;
        } else {
            b = m;
            fb = fm;
        }
        widths.push(b - a);
    }

    // Illinois variant of regula falsi; stays inside [a, b].
    let mut side = 0i8;
    let mut secant_steps = 0;
    let mut root = 0.5 * (a + b);
    loop {
        iterations += 1;
        if iterations > MAX_REFINE_ITER {
            return Err(Error::NonConvergence { what: "zero refinement", iterations });
        }
        let c = (a * fb - b * fa) / (fb - fa);
        if !(c > a && c < b) {
            break;
        }
        secant_steps += 1;
        let fc = f(c)?;
        root = c;
        if fc == 0.0 {
            break;
        }
        if fc.signum() == fb.signum() {
            b = c;
            fb = fc;
            if side == -1 {
                fa *= 0.5;
            }
            side = -1;
        } else {
            a = c;
            fa = fc;
            if side == 1 {
                fb *= 0.5;
            }
            side = 1;
        }
        if b - a <= 4.0 * f64::EPSILON * c.abs().max(1.0) {
            break;
        }
    }
    Ok(Refinement { root, bisection_widths: widths, secant_steps })
}

#[cfg(feature = "parallel")]
fn sample_grid<F>(grid: &[f64], f: F) -> Result<Vec<f64>>
where
    F: Fn(f64) -> Result<f64> + Sync,
{
    use rayon::prelude::*;
    grid.par_iter().map(|&t| f(t)).collect()
}

#[cfg(not(feature = "parallel"))]
fn sample_grid<F>(grid: &[f64], f: F) -> Result<Vec<f64>>
where
    F: Fn(f64) -> Result<f64> + Sync,
{
    grid.iter().map(|&t| f(t)).collect()
}

/// Sign-change brackets of `f` on a grid, with exact grid zeros reported as
/// degenerate brackets.
fn brackets(grid: &[f64], values: &[f64]) -> Vec<(f64, f64)> {
    let mut out = Vec::new();
    for i in 0..grid.len() {
        if values[i] == 0.0 {
            out.push((grid[i], grid[i]));
            continue;
        }
        if i + 1 < grid.len() && values[i + 1] != 0.0 && values[i].signum() != values[i + 1].signum() {
            out.push((grid[i], grid[i + 1]));
        }
    }
    out
}

fn roots_in(
    lo: f64,
    hi: f64,
    step: f64,
    f: &(dyn Fn(f64) -> Result<f64> + Sync),
) -> Result<Vec<f64>> {
    let n = ((hi - lo) / step).ceil().max(1.0) as usize;
    let grid: Vec<f64> = (0..=n).map(|i| (lo + i as f64 * step).min(hi)).collect();
    let values = sample_grid(&grid, f)?;
    let mut roots = Vec::new();
    for (a, b) in brackets(&grid, &values) {
        let root = if a == b { a } else { refine_root(f, a, b)?.root };
        roots.push(root);
    }
    Ok(roots)
}

/// Zeros of `l` on its center line with ordinate in (0, t_max].
pub fn scan_zeros(l: &dyn CompletedL, t_max: f64, step: f64) -> Result<ZeroCatalog> {
    if !(step > 0.0) || step > MAX_STEP {
        return Err(Error::StepTooCoarse { step, max: MAX_STEP });
    }
    if !(t_max > 0.0) {
        return Err(Error::InvalidArgument(format!("t_max must be positive, got {t_max}")));
    }
    let line = |t: f64| l.line_value(t);
    let roots: Vec<f64> = roots_in(step.min(t_max), t_max, step, &line)?
        .into_iter()
        .filter(|&t| t > 0.0 && t <= t_max)
        .collect();
    build_catalog(l, &roots, t_max)
}

/// The first `count` zeros of `l`; `t_max` is set midway to the next zero.
pub fn scan_zero_count(l: &dyn CompletedL, count: usize, step: f64) -> Result<ZeroCatalog> {
    if !(step > 0.0) || step > MAX_STEP {
        return Err(Error::StepTooCoarse { step, max: MAX_STEP });
    }
    let line = |t: f64| l.line_value(t);
    let mut roots = Vec::new();
    let mut lo = step;
    let mut window = 20.0;
    while roots.len() <= count {
        let hi = lo + window;
        roots.extend(roots_in(lo, hi, step, &line)?);
        // A zero exactly at `hi` is found again from the next window.
        roots.dedup();
        lo = hi;
        window *= 1.5;
        if lo > 1e4 {
            return Err(Error::SizeCap(format!("fewer than {count} zeros below height 10^4")));
        }
    }
    let t_max = if count == 0 {
        0.5 * roots[0]
    } else {
        0.5 * (roots[count - 1] + roots[count])
    };
    roots.truncate(count);
    build_catalog(l, &roots, t_max)
}

fn build_catalog(l: &dyn CompletedL, roots: &[f64], t_max: f64) -> Result<ZeroCatalog> {
    let mut zeros: Vec<Zero> = Vec::with_capacity(roots.len());
    for &gamma in roots {
        let gamma = round12(gamma);
        if let Some(last) = zeros.last() {
            if gamma <= last.gamma {
                return Err(Error::OverlappingBrackets { near: gamma });
            }
        }
        let value = l.eval(Complex::new(l.center(), gamma))?;
        if value.norm() > ZERO_CHECK {
            return Err(Error::InvalidArgument(format!(
                "sign change at t = {gamma} is not a zero (|L| = {:e})",
                value.norm()
            )));
        }
        zeros.push(Zero { gamma, mult: 1 });
    }
    let (a, b) = l.real_zero_interval();
    let real_zeros = super::detect_real_zeros(l, a, b)?
        .into_iter()
        .map(|z| RealZero { sigma: z.sigma, mult: z.mult })
        .collect();
    let mut catalog = ZeroCatalog::new(l.family(), l.weight(), t_max, 1e-10, zeros, real_zeros)?;
    if catalog.family == super::FamilyTag::Riemann {
        catalog.certified = super::completeness_check(&catalog)?.passed;
    }
    Ok(catalog)
}

/// A real zero found by [`detect_real_zeros`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RealZeroReport {
    pub sigma: f64,
    pub mult: u32,
    /// The zero is forced by the sign of the functional equation; its order
    /// is odd and at least `mult`, but not resolved further.
    pub parity_forced: bool,
}

/// Sign changes of `l` on the real segment [a, b], plus the parity-forced
/// central zero when the functional equation has sign −1.
pub fn detect_real_zeros(l: &dyn CompletedL, a: f64, b: f64) -> Result<Vec<RealZeroReport>> {
    if !(a < b) {
        return Err(Error::InvalidArgument(format!("empty interval [{a}, {b}]")));
    }
    let f = |s: f64| l.real_axis_value(s);
    let center = l.center();
    let forced = l.parity_forced_center_zero() && a <= center && center <= b;
    let mut out: Vec<RealZeroReport> = roots_in(a, b, 0.01, &f)?
        .into_iter()
        .filter(|&s| !(forced && (s - center).abs() < 1e-6))
        .map(|sigma| RealZeroReport { sigma, mult: 1, parity_forced: false })
        .collect();
    if forced {
        out.push(RealZeroReport { sigma: center, mult: 1, parity_forced: true });
        out.sort_by(|x, y| x.sigma.total_cmp(&y.sigma));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bisection_halves_then_secant_converges() {
        let r = refine_root(|x| Ok(x.cos()), 1.0, 2.0).unwrap();
        assert!((r.root - std::f64::consts::FRAC_PI_2).abs() < 1e-15);
        let mut previous = 1.0;
        for &w in &r.bisection_widths {
            assert_eq!(w, previous / 2.0);
            previous = w;
        }
        assert!(*r.bisection_widths.last().unwrap() <= BISECTION_WIDTH);
    }

    #[test]
    fn rejects_non_bracket() {
        assert!(refine_root(|x| Ok(x * x + 1.0), -1.0, 1.0).is_err());
    }

    #[test]
    fn grid_zero_is_a_bracket() {
        let grid = [0.0, 1.0, 2.0, 3.0];
        let values = [1.0, 0.0, -1.0, 1.0];
        assert_eq!(brackets(&grid, &values), vec![(1.0, 1.0), (2.0, 3.0)]);
    }
}
