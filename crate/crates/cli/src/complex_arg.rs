//! Complex literals on the command line: `a`, `a+bi`, `a-bi`, `bi`, `i`.

use zsl_core::Complex;

pub fn parse_complex(s: &str) -> Result<Complex, String> {
    let bad = || format!("`{s}` is not a complex number (expected a, a+bi or bi)");
    let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if t.is_empty() {
        return Err(bad());
    }
    let Some(body) = t.strip_suffix('i') else {
        return t.parse::<f64>().map(|re| Complex::new(re, 0.0)).map_err(|_| bad());
    };
    // The imaginary part starts at the last sign that is not an exponent sign.
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&k| matches!(bytes[k], b'+' | b'-') && !matches!(bytes[k - 1], b'e' | b'E'));
    let (re, im) = match split {
        Some(k) => (&body[..k], &body[k..]),
        None => ("0", body),
    };
    let im = match im {
        "" | "+" => 1.0,
        "-" => -1.0,
        other => other.parse::<f64>().map_err(|_| bad())?,
    };
    let re = re.parse::<f64>().map_err(|_| bad())?;
    Ok(Complex::new(re, im))
}

/// An eigenvalue argument: exact when it is an integer.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Eigenvalue {
    Integer(i128),
    Complex(Complex),
}

pub fn parse_eigenvalue(s: &str) -> Result<(Eigenvalue, u32), String> {
    let (value, mult) = match s.rsplit_once(':') {
        Some((v, m)) => {
            let mult = m
                .trim()
                .parse::<u32>()
                .ok()
                .filter(|&m| m > 0)
                .ok_or_else(|| format!("`{m}` is not a positive multiplicity"))?;
            (v, mult)
        }
        None => (s, 1),
    };
    if let Ok(n) = value.trim().parse::<i128>() {
        return Ok((Eigenvalue::Integer(n), mult));
    }
    Ok((Eigenvalue::Complex(parse_complex(value)?), mult))
}
