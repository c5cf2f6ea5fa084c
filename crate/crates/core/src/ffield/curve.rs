//! Curves over 𝔽_q and naive point counting.

use std::fmt;
use std::str::FromStr;

use super::gf::{prime_power, GaloisField, MAX_FIELD_SIZE};
use super::zeta::{zeta_numerator, ZetaPolynomial};
use crate::error::{Error, Result};

/// Largest base field accepted for a curve.
pub const MAX_CURVE_FIELD: u64 = 1 << 16;
/// Largest genus accepted for raw counts.
pub const MAX_GENUS: u32 = 3;

/// `y² + a1·xy + a3·y = x³ + a2·x² + a4·x + a6` over 𝔽_q.
#[derive(Debug, Clone)]
pub struct WeierstrassCurve {
    field: GaloisField,
    /// a1, a2, a3, a4, a6 as field elements.
    a: [u32; 5],
    text: [String; 5],
}

#[derive(Debug, Clone)]
pub enum CurveOverFq {
    Elliptic(WeierstrassCurve),
    Counts { q: u64, g: u32, counts: Vec<u64> },
}

fn parse_error(token: &str, message: impl Into<String>) -> Error {
    Error::Parse { token: token.to_string(), message: message.into() }
}

/// Parses `c`, `c·g^e` style sums such as `2g^3+g-1` into a field element.
fn parse_element(field: &GaloisField, text: &str) -> Result<u32> {
    let cleaned: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if cleaned.is_empty() {
        return Err(parse_error(text, "empty coefficient"));
    }
    let mut terms = Vec::new();
    let mut start = 0;
    for (i, c) in cleaned.char_indices() {
        if (c == '+' || c == '-') && i > start {
            terms.push(&cleaned[start..i]);
            start = i;
        }
    }
    terms.push(&cleaned[start..]);
    let g = field.generator();
    let mut acc = 0;
    for term in terms {
        let (negative, body) = match term.as_bytes().first() {
            Some(b'-') => (true, &term[1..]),
            Some(b'+') => (false, &term[1..]),
            _ => (false, term),
        };
        let bad = || parse_error(text, format!("bad term `{term}`"));
        let (coeff, power) = match body.find('g') {
            None => (body.parse::<i64>().map_err(|_| bad())?, 0),
            Some(pos) => {
                let coeff = match body[..pos].trim_end_matches('*') {
                    "" => 1,
                    c => c.parse::<i64>().map_err(|_| bad())?,
                };
                let power = match &body[pos + 1..] {
                    "" => 1,
                    rest => rest.strip_prefix('^').and_then(|e| e.parse::<u64>().ok()).ok_or_else(bad)?,
                };
                (coeff, power)
            }
        };
        let coeff = if negative { -coeff } else { coeff };
        let value = field.mul(field.from_int(coeff), field.pow(g, power));
        acc = field.add(acc, value);
    }
    Ok(acc)
}

fn parse_q(text: &str, token: &str) -> Result<u64> {
    let q: u64 = text.parse().map_err(|_| parse_error(token, "q must be an integer"))?;
    if prime_power(q).is_none() {
        return Err(parse_error(token, format!("{q} is not a prime power")));
    }
    if q > MAX_CURVE_FIELD {
        return Err(Error::SizeCap(format!("q = {q} exceeds {MAX_CURVE_FIELD}")));
    }
    Ok(q)
}

impl WeierstrassCurve {
    /// Coefficients in the order a1, a2, a3, a4, a6, written in the generator `g`.
    pub fn new(q: u64, coeffs: [&str; 5]) -> Result<Self> {
        let (p, k) = prime_power(q).ok_or_else(|| Error::InvalidArgument(format!("{q} is not a prime power")))?;
        if q > MAX_CURVE_FIELD {
            return Err(Error::SizeCap(format!("q = {q} exceeds {MAX_CURVE_FIELD}")));
        }
        let field = GaloisField::new(p, k)?;
        let mut a = [0; 5];
        for (slot, text) in a.iter_mut().zip(coeffs) {
            *slot = parse_element(&field, text)?;
        }
        let curve = WeierstrassCurve { field, a, text: coeffs.map(|c| c.trim().to_string()) };
        if curve.discriminant() == 0 {
            return Err(Error::InvalidArgument("singular Weierstrass equation".into()));
        }
        Ok(curve)
    }

    pub fn field(&self) -> &GaloisField {
        &self.field
    }

    pub fn q(&self) -> u64 {
        u64::from(self.field.size())
    }

    pub fn discriminant(&self) -> u32 {
        let f = &self.field;
        let [a1, a2, a3, a4, a6] = self.a;
        let s = |n: i64, x: u32| f.mul(f.from_int(n), x);
        let b2 = f.add(f.mul(a1, a1), s(4, a2));
        let b4 = f.add(s(2, a4), f.mul(a1, a3));
        let b6 = f.add(f.mul(a3, a3), s(4, a6));
        let b8 = [
            f.mul(f.mul(a1, a1), a6),
            s(4, f.mul(a2, a6)),
            f.neg(f.mul(f.mul(a1, a3), a4)),
            f.mul(a2, f.mul(a3, a3)),
            f.neg(f.mul(a4, a4)),
        ]
        .into_iter()
        .fold(0, |acc, t| f.add(acc, t));
        [
            f.neg(f.mul(f.mul(b2, b2), b8)),
            s(-8, f.mul(b4, f.mul(b4, b4))),
            s(-27, f.mul(b6, b6)),
            s(9, f.mul(b2, f.mul(b4, b6))),
        ]
        .into_iter()
        .fold(0, |acc, t| f.add(acc, t))
    }

    /// Projective points over 𝔽_{q^i}.
    pub fn count_points(&self, i: u32) -> Result<u64> {
        let p = self.field.characteristic();
        let k = self.field.degree();
        let size = u64::from(p).checked_pow(k * i);
        if i == 0 || size.is_none_or(|s| s > MAX_FIELD_SIZE) {
            return Err(Error::SizeCap(format!("q^{i} exceeds {MAX_FIELD_SIZE}")));
        }
        let big = if i == 1 { self.field.clone() } else { GaloisField::new(p, k * i)? };
        let a = if i == 1 {
            self.a
        } else {
            let m = self.field.modulus();
            let root = big
                .find_root(&m)
                .ok_or_else(|| Error::InvalidArgument("no embedding of the base field".into()))?;
            self.a.map(|c| {
                let digits: Vec<u32> =
                    (0..k).scan(c, |rest, _| {
                        let d = *rest % p;
                        *rest /= p;
                        Some(d)
                    })
                    .collect();
                big.eval_poly(&digits, root)
            })
        };
        Ok(1 + affine_count(&big, a))
    }
}

/// Sums over x the number of y solving the equation.
fn affine_count(f: &GaloisField, [a1, a2, a3, a4, a6]: [u32; 5]) -> u64 {
    let two = f.characteristic() == 2;
    let four = f.from_int(4);
    let per_x = |x: u32| -> u64 {
        let b = f.add(f.mul(a1, x), a3);
        let rhs = f.eval_poly(&[a6, a4, a2, 1], x);
        if two {
            if b == 0 {
                return 1;
            }
            let b2 = f.mul(b, b);
            let c = f.mul(rhs, f.inv(b2).expect("nonzero"));
            if f.trace2(c) == 0 { 2 } else { 0 }
        } else {
            let disc = f.add(f.mul(b, b), f.mul(four, rhs));
            if disc == 0 {
                1
            } else if f.is_square(disc) {
                2
            } else {
                0
            }
        }
    };
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        (0..f.size()).into_par_iter().map(per_x).sum()
    }
    #[cfg(not(feature = "parallel"))]
    {
        (0..f.size()).map(per_x).sum()
    }
}

impl CurveOverFq {
    pub fn q(&self) -> u64 {
        match self {
            CurveOverFq::Elliptic(c) => c.q(),
            CurveOverFq::Counts { q, .. } => *q,
        }
    }

    pub fn genus(&self) -> u32 {
        match self {
            CurveOverFq::Elliptic(_) => 1,
            CurveOverFq::Counts { g, .. } => *g,
        }
    }

    /// N_1, …, N_g.
    pub fn base_counts(&self) -> Result<Vec<u64>> {
        match self {
            CurveOverFq::Elliptic(c) => Ok(vec![c.count_points(1)?]),
            CurveOverFq::Counts { counts, .. } => Ok(counts.clone()),
        }
    }

    pub fn zeta_numerator(&self) -> Result<ZetaPolynomial> {
        zeta_numerator(&self.base_counts()?, self.genus(), self.q())
    }
}

/// Number of points over 𝔽_{q^i}: enumerated for Weierstrass models, read
/// off or derived from the zeta numerator for raw counts.
pub fn count_points(curve: &CurveOverFq, i: u32) -> Result<u64> {
    match curve {
        CurveOverFq::Elliptic(c) => c.count_points(i),
        CurveOverFq::Counts { q, counts, .. } => {
            if i == 0 {
                return Err(Error::InvalidArgument("degree must be positive".into()));
            }
            if let Some(&n) = counts.get(i as usize - 1) {
                return Ok(n);
            }
            if q.checked_pow(i).is_none_or(|s| s > MAX_FIELD_SIZE) {
                return Err(Error::SizeCap(format!("{q}^{i} exceeds {MAX_FIELD_SIZE}")));
            }
            let n = curve.zeta_numerator()?.point_counts(i as usize)?[i as usize - 1];
            u64::try_from(n).map_err(|_| Error::NonIntegral(format!("negative count {n}")))
        }
    }
}

impl FromStr for CurveOverFq {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if let Some(body) = s.strip_prefix("ell:") {
            let (q_part, coeffs) = body.split_once(';').unwrap_or((body, ""));
            let q = parse_q(q_part.strip_prefix("q=").ok_or_else(|| parse_error(s, "expected q=<pk>"))?, s)?;
            let mut values = ["0"; 5];
            for item in coeffs.split([',', ';']).filter(|t| !t.trim().is_empty()) {
                let (name, value) = item.split_once('=').ok_or_else(|| parse_error(item, "expected a<i>=<value>"))?;
                let slot = match name.trim() {
                    "a1" => 0,
                    "a2" => 1,
                    "a3" => 2,
                    "a4" => 3,
                    "a6" => 4,
                    other => return Err(parse_error(other, "unknown coefficient")),
                };
                values[slot] = value;
            }
            return Ok(CurveOverFq::Elliptic(WeierstrassCurve::new(q, values)?));
        }
        if let Some(body) = s.strip_prefix("counts:") {
            let mut q = None;
            let mut g = None;
            let mut counts = None;
            for item in body.split(';') {
                let (name, value) = item.split_once('=').ok_or_else(|| parse_error(item, "expected key=value"))?;
                match name.trim() {
                    "q" => q = Some(parse_q(value.trim(), s)?),
                    "g" => g = Some(value.trim().parse::<u32>().map_err(|_| parse_error(value, "bad genus"))?),
                    "N" => {
                        counts = Some(
                            value
                                .split(',')
                                .map(|n| n.trim().parse::<u64>().map_err(|_| parse_error(n, "bad point count")))
                                .collect::<Result<Vec<_>>>()?,
                        )
                    }
                    other => return Err(parse_error(other, "unknown key")),
                }
            }
            let (q, g, counts) = match (q, g, counts) {
                (Some(q), Some(g), Some(c)) => (q, g, c),
                _ => return Err(parse_error(s, "counts need q, g and N")),
            };
            if g > MAX_GENUS {
                return Err(Error::SizeCap(format!("genus {g} exceeds {MAX_GENUS}")));
            }
            if counts.len() < g as usize {
                return Err(parse_error(s, format!("genus {g} needs {g} counts")));
            }
            return Ok(CurveOverFq::Counts { q, g, counts });
        }
        Err(parse_error(s, "expected ell:… or counts:…"))
    }
}

impl fmt::Display for CurveOverFq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CurveOverFq::Elliptic(c) => {
                let [a1, a2, a3, a4, a6] = &c.text;
                write!(f, "ell:q={};a1={a1},a2={a2},a3={a3},a4={a4},a6={a6}", c.q())
            }
            CurveOverFq::Counts { q, g, counts } => {
                let n: Vec<String> = counts.iter().map(u64::to_string).collect();
                write!(f, "counts:q={q};g={g};N={}", n.join(","))
            }
        }
    }
}
