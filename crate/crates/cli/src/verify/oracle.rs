//! Reference computations for the acceptance suite. None of this calls into
//! the library; it exists so the suite compares against something other
//! than the code under test.

use std::f64::consts::PI;

use zsl_core::Complex;

/// ζ(s) from the Borwein alternating-series acceleration of η(s); `n` terms
/// give error about (3 + √8)^{−n} e^{π|t|/2}.
pub fn zeta_borwein(s: Complex, n: usize) -> Complex {
    let mut d = vec![0.0f64; n + 1];
    let mut term = 1.0 / n as f64;
    let mut acc = 0.0;
    for (i, slot) in d.iter_mut().enumerate() {
        if i > 0 {
            let (nf, i_f) = (n as f64, i as f64);
            term *= 4.0 * (nf + i_f - 1.0) * (nf - i_f + 1.0) / ((2.0 * i_f - 1.0) * (2.0 * i_f));
        }
        acc += term;
        *slot = acc;
    }
    let dn = d[n];
    let mut eta = Complex::new(0.0, 0.0);
    for k in 0..n {
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        eta += sign * (dn - d[k]) / dn * (-s * ((k + 1) as f64).ln()).exp();
    }
    eta / (1.0 - (Complex::new(2f64.ln(), 0.0) * (1.0 - s)).exp())
}

/// Riemann–Siegel θ(t) from its asymptotic series, good to 1e−12 for t ≥ 10.
pub fn theta(t: f64) -> f64 {
    t / 2.0 * (t / (2.0 * PI)).ln() - t / 2.0 - PI / 8.0
        + 1.0 / (48.0 * t)
        + 7.0 / (5760.0 * t.powi(3))
        + 31.0 / (80640.0 * t.powi(5))
        + 127.0 / (430080.0 * t.powi(7))
}

pub fn hardy_z(t: f64) -> f64 {
    let n = 60 + (1.8 * t) as usize;
    (Complex::new(0.0, theta(t)).exp() * zeta_borwein(Complex::new(0.5, t), n)).re
}

/// Sign changes of `f` on a grid of width `step` over [lo, hi], each
/// bisected to machine resolution.
pub fn bisect_sign_changes(f: impl Fn(f64) -> f64, lo: f64, hi: f64, step: f64) -> Vec<f64> {
    let mut out = Vec::new();
    let mut a = lo;
    let mut fa = f(a);
    while a < hi {
        let b = (a + step).min(hi);
        let fb = f(b);
        if fa.signum() != fb.signum() {
            let (mut x, mut y, mut fx) = (a, b, fa);
            for _ in 0..60 {
                let m = 0.5 * (x + y);
                let fm = f(m);
                if fm.signum() == fx.signum() {
                    x = m;
                    fx = fm;
                } else {
                    y = m;
                }
            }
            out.push(0.5 * (x + y));
        }
        a = b;
        fa = fb;
    }
    out
}

/// Transform of amp·exp(−a(ln x − μ)²): amp·√(π/a)·e^{μs + s²/(4a)}.
pub fn log_gaussian_transform(a: f64, mu: f64, amp: Complex, s: Complex) -> Complex {
    amp * (PI / a).sqrt() * (s * mu + s * s / (4.0 * a)).exp()
}
