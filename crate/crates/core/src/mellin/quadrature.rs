//! Trapezoid quadrature of `∫ F(e^u) e^{su} du`.
//!
//! Atom-expandable functions are integrated along `Im u = τ` near the saddle
//! point `t/(2a)`, which turns the oscillatory integrand into a positive
//! Gaussian bump; the trapezoid rule is then spectrally accurate.

use super::{Atom, TestFunction};
use crate::error::{Error, Result};
use crate::specfun::Complex;

/// Squared Gaussian half-width of the window, in units of 1/√a.
const WINDOW_EXPONENT: f64 = 40.0;
/// Aliasing margin `4a·ln(1/ε)` in the step formula.
const ALIAS_EXPONENT: f64 = 160.0;
/// Longest real-line window tried for smoothed images.
const MAX_SPAN: f64 = 4000.0;

pub fn mellin_quadrature(f: &TestFunction, s: Complex) -> Result<Complex> {
    let (lo, hi) = f.strip();
    if !(s.re > lo && s.re < hi) {
        return Err(Error::OutsideStrip { s: s.to_string(), strip: format!("({lo}, {hi})") });
    }
    if let TestFunction::Sum(children) = f {
        let mut acc = Complex::new(0.0, 0.0);
        for c in children {
            acc += mellin_quadrature(c, s)?;
        }
        return Ok(acc);
    }
    match f.atoms() {
        Some(atoms) => shifted_contour(f, &atoms, s),
        None => real_line(f, s),
    }
}

/// Contour height minimizing the worst Gaussian overshoot `a_j (τ − τ_j)²`.
fn contour_height(atoms: &[Atom], t: f64) -> f64 {
    let worst = |tau: f64| {
        atoms
            .iter()
            .map(|at| at.a * (tau - t / (2.0 * at.a)).powi(2))
            .fold(0.0, f64::max)
    };
    let (mut lo, mut hi) = atoms.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(l, h), at| {
        let tj = t / (2.0 * at.a);
        (l.min(tj), h.max(tj))
    });
    for _ in 0..200 {
        let m1 = lo + (hi - lo) / 3.0;
        let m2 = hi - (hi - lo) / 3.0;
        if worst(m1) <= worst(m2) {
            hi = m2;
        } else {
            lo = m1;
        }
    }
    0.5 * (lo + hi)
}

fn shifted_contour(f: &TestFunction, atoms: &[Atom], s: Complex) -> Result<Complex> {
    let (sigma, t) = (s.re, s.im);
    let tau = contour_height(atoms, t);
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    let mut omega: f64 = 0.0;
    let mut a_max: f64 = 0.0;
    for at in atoms {
        let excess = at.a * (tau - t / (2.0 * at.a)).powi(2);
        let centre = at.mu + sigma / (2.0 * at.a);
        let half = (WINDOW_EXPONENT + excess).sqrt() / at.a.sqrt();
        lo = lo.min(centre - half);
        hi = hi.max(centre + half);
        omega = omega.max((t - 2.0 * at.a * tau).abs());
        a_max = a_max.max(at.a);
    }
    let step = 2.0 * std::f64::consts::PI / (omega + (omega * omega + ALIAS_EXPONENT * a_max).sqrt());
    let n = ((hi - lo) / step).ceil().max(1.0) as usize;
    let step = (hi - lo) / n as f64;
    let mut acc = Complex::new(0.0, 0.0);
    for k in 0..=n {
        let u = Complex::new(lo + k as f64 * step, tau);
        let w = if k == 0 || k == n { 0.5 } else { 1.0 };
        acc += w * f.eval_log_weighted(u, s * u)?;
    }
    Ok(acc * step)
}

/// Largest log-Gaussian width anywhere in the tree.
fn widest(f: &TestFunction) -> f64 {
    match f {
        TestFunction::LogGaussian { a, .. } => *a,
        TestFunction::Jw { child, .. } | TestFunction::Scale { child, .. } => widest(child),
        TestFunction::Conj(child) => widest(child),
        TestFunction::Sum(children) => children.iter().map(widest).fold(0.0, f64::max),
        TestFunction::MultConv(l, r) => widest(l).max(widest(r)),
        TestFunction::ThetaSmoothed { h, .. } => widest(h),
    }
}

/// Real-line trapezoid with a window grown until the integrand is negligible.
/// Used for trees containing smoothed images, whose integrands are smooth on
/// the unit scale but decay only exponentially on one side.
fn real_line(f: &TestFunction, s: Complex) -> Result<Complex> {
    let step = (0.05_f64)
        .min(0.25 / widest(f).sqrt())
        .min(std::f64::consts::PI / (4.0 * (s.im.abs() + 1.0)));
    let per_chunk = (1.0 / step).ceil() as i64;
    let step = 1.0 / per_chunk as f64;
    let g = |k: i64| -> Result<Complex> {
        let u = Complex::new(k as f64 * step, 0.0);
        f.eval_log_weighted(u, s * u)
    };

    let mut acc = g(0)?;
    let mut peak = acc.norm();
    let chunks_max = (MAX_SPAN / 2.0) as i64;
    for dir in [1i64, -1] {
        let mut quiet = 0;
        let mut chunk = 0;
        while quiet < 2 {
            if chunk >= chunks_max {
                return Err(Error::NonConvergence {
                    what: "Mellin quadrature window",
                    iterations: chunk as usize,
                });
            }
            let mut chunk_max: f64 = 0.0;
            for j in 1..=per_chunk {
                let v = g(dir * (chunk * per_chunk + j))?;
                chunk_max = chunk_max.max(v.norm());
                acc += v;
            }
            peak = peak.max(chunk_max);
            quiet = if chunk_max <= 1e-18 * peak { quiet + 1 } else { 0 };
            chunk += 1;
        }
    }
    Ok(acc * step)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mellin::{apply_j, mult_convolve, scale_action, smoothed_image};

    fn rel(a: Complex, b: Complex) -> f64 {
        (a - b).norm() / b.norm()
    }

    #[test]
    fn matches_closed_form_at_first_zero() {
        let f = TestFunction::real_log_gaussian(100.0, 0.5).unwrap();
        let s = Complex::new(0.5, 14.134725);
        let q = mellin_quadrature(&f, s).unwrap();
        let c = f.mellin_closed(s).unwrap();
        assert!(rel(q, c) < 1e-12, "{q} vs {c}");
    }

    #[test]
    fn composite_trees() {
        let f = TestFunction::real_log_gaussian(30.0, -0.3).unwrap();
        let g = TestFunction::log_gaussian(80.0, 0.7, Complex::new(0.0, 2.0)).unwrap();
        let tree = TestFunction::sum(vec![
            scale_action(apply_j(f.clone(), 1).unwrap(), 1.7).unwrap(),
            mult_convolve(f, g.clone().conj()).unwrap(),
            apply_j(g, 2).unwrap(),
        ])
        .unwrap();
        for s in [Complex::new(0.5, 3.0), Complex::new(1.2, -20.0), Complex::new(-0.4, 40.0)] {
            let q = mellin_quadrature(&tree, s).unwrap();
            let c = tree.mellin_closed(s).unwrap();
            assert!(rel(q, c) < 1e-10, "s={s}: {q} vs {c}");
        }
    }

    #[test]
    fn smoothed_image_on_line_two() {
        let h = TestFunction::real_log_gaussian(100.0, 0.0).unwrap();
        let sm = smoothed_image(h).unwrap();
        for t in [0.0, 1.0, 5.0] {
            let s = Complex::new(2.0, t);
            let q = mellin_quadrature(&sm, s).unwrap();
            let c = sm.mellin_closed(s).unwrap();
            assert!(rel(q, c) < 1e-8, "t={t}: {q} vs {c}");
        }
    }

    #[test]
    fn strip_is_enforced() {
        let sm = smoothed_image(TestFunction::real_log_gaussian(10.0, 0.0).unwrap()).unwrap();
        assert!(matches!(
            mellin_quadrature(&sm, Complex::new(0.5, 14.0)),
            Err(Error::OutsideStrip { .. })
        ));
    }
}
