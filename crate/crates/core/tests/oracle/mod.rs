//! Reference implementations that share no code with the library.
#![allow(dead_code)]

use num_complex::Complex64 as C;
use std::f64::consts::PI;

/// ζ(s) from the Borwein alternating-series algorithm for η(s).
/// `n` terms give error about (3 + √8)^{−n} e^{π|t|}.
pub fn zeta_borwein(s: C, n: usize) -> C {
    let mut d = vec![0.0f64; n + 1];
    let mut term = 1.0 / n as f64;
    let mut acc = 0.0;
    for i in 0..=n {
        if i > 0 {
            let (nf, i_f) = (n as f64, i as f64);
            term *= 4.0 * (nf + i_f - 1.0) * (nf - i_f + 1.0) / ((2.0 * i_f - 1.0) * (2.0 * i_f));
        }
        acc += term;
        d[i] = acc;
    }
    let dn = d[n];
    let mut eta = C::new(0.0, 0.0);
    for k in 0..n {
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        let weight = (dn - d[k]) / dn;
        eta += sign * weight * (-s * ((k + 1) as f64).ln()).exp();
    }
    eta / (1.0 - (C::new(2.0f64.ln(), 0.0) * (1.0 - s)).exp())
}

const STIRLING: [f64; 8] = [
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
    -691.0 / 360360.0,
    1.0 / 156.0,
    -3617.0 / 122400.0,
];

/// Principal-branch ln Γ by upward recurrence into the Stirling region.
pub fn log_gamma_stirling(z: C) -> C {
    let mut shift = C::new(0.0, 0.0);
    let mut w = z;
    while w.norm() < 20.0 || w.re < 5.0 {
        shift += w.ln();
        w += 1.0;
    }
    let mut series = C::new(0.0, 0.0);
    let inv = 1.0 / w;
    let inv2 = inv * inv;
    let mut p = inv;
    for c in STIRLING {
        series += c * p;
        p *= inv2;
    }
    (w - 0.5) * w.ln() - w + 0.5 * (2.0 * PI).ln() + series - shift
}

/// Riemann–Siegel θ(t) by its asymptotic series, accurate for t ≥ 10.
pub fn theta_asymptotic(t: f64) -> f64 {
    t / 2.0 * (t / (2.0 * PI)).ln() - t / 2.0 - PI / 8.0
        + 1.0 / (48.0 * t)
        + 7.0 / (5760.0 * t.powi(3))
        + 31.0 / (80640.0 * t.powi(5))
        + 127.0 / (430080.0 * t.powi(7))
}

/// Hardy Z from the two functions above.
pub fn hardy_z(t: f64) -> f64 {
    let n = 60 + (1.8 * t) as usize;
    (C::new(0.0, theta_asymptotic(t)).exp() * zeta_borwein(C::new(0.5, t), n)).re
}

/// Zeros of `hardy_z` on [lo, hi] by sign changes on a grid and bisection.
pub fn hardy_zeros(lo: f64, hi: f64, step: f64) -> Vec<f64> {
    let mut out = Vec::new();
    let mut a = lo;
    let mut fa = hardy_z(a);
    while a < hi {
        let b = (a + step).min(hi);
        let fb = hardy_z(b);
        if fa.signum() != fb.signum() {
            let (mut x, mut y, mut fx) = (a, b, fa);
            for _ in 0..60 {
                let m = 0.5 * (x + y);
                let fm = hardy_z(m);
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

/// Trapezoid rule for ∫_x^∞ t^{s−1} e^{−t} dt after t = x + e^v.
pub fn upper_gamma_quadrature(s: C, x: f64) -> C {
    let (lo, hi, h) = (-60.0f64, 6.0f64, 0.004f64);
    let n = ((hi - lo) / h) as usize;
    let mut acc = C::new(0.0, 0.0);
    for k in 0..=n {
        let v = lo + k as f64 * h;
        let t = x + v.exp();
        let w = if k == 0 || k == n { 0.5 } else { 1.0 };
        acc += w * ((s - 1.0) * t.ln() - t + v).exp();
    }
    acc * h
}
