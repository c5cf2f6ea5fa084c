use std::f64::consts::PI;

use super::{near_nonpositive_integer, Complex};
use crate::error::{Error, Result};

const LANCZOS_G: f64 = 7.0;
const LANCZOS_COEF: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];

/// Principal branch of log Γ(z).
///
/// The branch is the one continuous on ℂ minus the non-positive real axis
/// that satisfies `log_gamma(z + 1) = log_gamma(z) + ln z` with the
/// principal logarithm; its imaginary part on the line Re z = 1/4 is the
/// continuous argument used by the Riemann–Siegel theta function.
pub fn log_gamma(z: Complex) -> Result<Complex> {
    if let Some(n) = near_nonpositive_integer(z) {
        return Err(Error::pole("log_gamma", n));
    }
    if !(z.re.is_finite() && z.im.is_finite()) {
        return Err(Error::InvalidArgument(format!("non-finite argument {z}")));
    }
    if z.re >= 0.5 {
        return Ok(lanczos(z));
    }
    // Shift into the right half-plane; each step subtracts a principal log.
    let steps = (0.5 - z.re).ceil() as usize;
    let mut shift = Complex::new(0.0, 0.0);
    let mut w = z;
    for _ in 0..steps {
        shift += w.ln();
        w += 1.0;
    }
    Ok(lanczos(w) - shift)
}

/// Γ(z) as `exp(log_gamma(z))`.
pub fn gamma(z: Complex) -> Result<Complex> {
    log_gamma(z).map(|l| l.exp())
}

fn lanczos(z: Complex) -> Complex {
    let zm1 = z - 1.0;
    let mut series = Complex::new(LANCZOS_COEF[0], 0.0);
    for (i, &c) in LANCZOS_COEF.iter().enumerate().skip(1) {
        series += c / (zm1 + i as f64);
    }
    let t = zm1 + LANCZOS_G + 0.5;
    0.5 * (2.0 * PI).ln() + (zm1 + 0.5) * t.ln() - t + series.ln()
}
