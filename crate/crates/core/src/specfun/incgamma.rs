use super::{gamma, near_nonpositive_integer, Complex};
use crate::error::{Error, Result};

const MAX_ITER: usize = 20_000;
const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

/// Upper incomplete Gamma Γ(s, x) = ∫_x^∞ t^{s−1} e^{−t} dt for real x > 0.
pub fn incomplete_gamma_upper(s: Complex, x: f64) -> Result<Complex> {
    if !(x > 0.0) {
        return Err(Error::InvalidArgument(format!(
            "incomplete_gamma_upper needs x > 0, got {x}"
        )));
    }
    incomplete_gamma_upper_complex(s, Complex::new(x, 0.0))
}

/// Γ(s, z) for complex z with Re z > 0, integrated along the ray from z.
///
/// Continued fraction when |z| ≥ |s| + 1, otherwise Γ(s) − γ(s, z) with the
/// lower function from its power series.
pub fn incomplete_gamma_upper_complex(s: Complex, z: Complex) -> Result<Complex> {
    if !(z.re > 0.0) {
        return Err(Error::InvalidArgument(format!(
            "incomplete Gamma needs Re z > 0, got {z}"
        )));
    }
    if z.norm() >= s.norm() + 1.0 {
        return continued_fraction(s, z);
    }
    if let Some(n) = near_nonpositive_integer(s) {
        return nonpositive_integer_order(n, z);
    }
    Ok(gamma(s)? - lower_gamma_series(s, z)?)
}

/// Lower incomplete Gamma γ(s, z) = z^s e^{−z} Σ_k z^k / (s(s+1)…(s+k)).
pub fn lower_gamma_series(s: Complex, z: Complex) -> Result<Complex> {
    if let Some(n) = near_nonpositive_integer(s) {
        return Err(Error::pole("lower_gamma_series", n));
    }
    let mut term = 1.0 / s;
    let mut sum = term;
    let mut denom = s;
    for _ in 0..MAX_ITER {
        denom += 1.0;
        term *= z / denom;
        sum += term;
        if term.norm() <= 1e-17 * sum.norm() {
            return Ok(sum * (s * z.ln() - z).exp());
        }
    }
    Err(Error::NonConvergence {
        what: "lower incomplete Gamma series",
        iterations: MAX_ITER,
    })
}

// Modified Lentz evaluation of
// Γ(s,z) = e^{−z} z^s / (z+1−s− 1(1−s)/(z+3−s− 2(2−s)/(z+5−s− …)))
fn continued_fraction(s: Complex, z: Complex) -> Result<Complex> {
    const TINY: f64 = 1e-300;
    let mut b = z + 1.0 - s;
    let mut c = Complex::new(1.0 / TINY, 0.0);
    let mut d = 1.0 / b;
    let mut h = d;
    for i in 1..MAX_ITER {
        let fi = i as f64;
        let an = -fi * (fi - s);
        b += 2.0;
        d = an * d + b;
        if d.norm() < TINY {
            d = Complex::new(TINY, 0.0);
        }
        c = b + an / c;
        if c.norm() < TINY {
            c = Complex::new(TINY, 0.0);
        }
        d = 1.0 / d;
        let delta = d * c;
        h *= delta;
        if (delta - 1.0).norm() < 1e-16 {
            return Ok((s * z.ln() - z).exp() * h);
        }
    }
    Err(Error::NonConvergence {
        what: "incomplete Gamma continued fraction",
        iterations: MAX_ITER,
    })
}

// Γ(−n, z) from Γ(0, z) = E₁(z) and Γ(a, z) = (Γ(a+1, z) − z^a e^{−z}) / a.
fn nonpositive_integer_order(n: i64, z: Complex) -> Result<Complex> {
    let mut value = exponential_integral_e1(z)?;
    let mut a = 0i64;
    while a > n {
        a -= 1;
        let af = a as f64;
        value = (value - (af * z.ln() - z).exp()) / af;
    }
    Ok(value)
}

fn exponential_integral_e1(z: Complex) -> Result<Complex> {
    // E₁(z) = −γ − ln z − Σ_{k≥1} (−z)^k / (k·k!)
    let mut term = Complex::new(1.0, 0.0);
    let mut sum = Complex::new(0.0, 0.0);
    for k in 1..MAX_ITER {
        term *= -z / k as f64;
        let contribution = term / k as f64;
        sum += contribution;
        if contribution.norm() <= 1e-17 * sum.norm().max(1e-300) {
            return Ok(-EULER_GAMMA - z.ln() - sum);
        }
    }
    Err(Error::NonConvergence {
        what: "exponential integral series",
        iterations: MAX_ITER,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn real(s: f64) -> Complex {
        Complex::new(s, 0.0)
    }

    #[test]
    fn order_one_is_exponential() {
        let v = incomplete_gamma_upper(real(1.0), 3.0).unwrap();
        assert_relative_eq!(v.re, (-3.0f64).exp(), max_relative = 1e-13);
    }

    #[test]
    fn order_two_by_parts() {
        let v = incomplete_gamma_upper(real(2.0), 1.0).unwrap();
        assert_relative_eq!(v.re, 2.0 / std::f64::consts::E, max_relative = 1e-13);
    }

    #[test]
    fn small_x_limit_is_gamma() {
        let v = incomplete_gamma_upper(real(3.0), 1e-12).unwrap();
        assert_relative_eq!(v.re, 2.0, max_relative = 1e-11);
    }

    #[test]
    fn order_zero_is_e1() {
        // E₁(1) = 0.219383934395520…
        let v = incomplete_gamma_upper(real(0.0), 1.0).unwrap();
        assert_relative_eq!(v.re, 0.219_383_934_395_520_27, max_relative = 1e-13);
        // Γ(−1, 1) = e^{−1} − E₁(1)
        let v = incomplete_gamma_upper(real(-1.0), 1.0).unwrap();
        assert_relative_eq!(v.re, (-1.0f64).exp() - 0.219_383_934_395_520_27, max_relative = 1e-12);
    }

    #[test]
    fn rejects_nonpositive_x() {
        assert!(incomplete_gamma_upper(real(1.0), 0.0).is_err());
        assert!(incomplete_gamma_upper(real(1.0), -2.0).is_err());
    }

    #[test]
    fn branches_agree_at_the_switch() {
        let s = Complex::new(2.5, 1.0);
        let z = Complex::new(s.norm() + 1.0, 0.0);
        let cf = continued_fraction(s, z).unwrap();
        let series = gamma(s).unwrap() - lower_gamma_series(s, z).unwrap();
        assert!((cf - series).norm() <= 1e-12 * cf.norm(), "{cf} {series}");
        // mpmath: gammainc(2.5+1j, |s|+1)
        let reference = Complex::new(-0.004_320_860_576_030_309, 0.250_946_625_438_484_43);
        assert!((cf - reference).norm() <= 1e-12 * reference.norm());
    }
}
