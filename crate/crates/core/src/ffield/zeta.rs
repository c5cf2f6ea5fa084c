//! Zeta numerators P(T) of curves over 𝔽_q.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::specfun::Complex;

/// `P(T) = a_0 + a_1 T + … + a_{2g} T^{2g}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ZetaPolynomial {
    pub g: u32,
    pub q: u64,
    pub coeffs: Vec<i128>,
}

fn overflow(what: &str) -> Error {
    Error::SizeCap(format!("{what} overflowed 128 bits"))
}

fn q_pow(q: u64, n: usize) -> Result<i128> {
    i128::from(q).checked_pow(n as u32).ok_or_else(|| overflow("q^n"))
}

impl ZetaPolynomial {
    /// Checks `a_0 = 1` and the symmetry `a_{2g−i} = q^{g−i} a_i`.
    pub fn new(q: u64, coeffs: Vec<i128>) -> Result<Self> {
        if coeffs.len() % 2 == 0 {
            return Err(Error::InvalidArgument("P must have even degree 2g".into()));
        }
        let g = (coeffs.len() / 2) as u32;
        let p = ZetaPolynomial { g, q, coeffs };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        let g = self.g as usize;
        if self.coeffs.len() != 2 * g + 1 || self.coeffs[0] != 1 {
            return Err(Error::InvalidArgument("P must start with a_0 = 1".into()));
        }
        for i in 0..g {
            let expected = q_pow(self.q, g - i)?.checked_mul(self.coeffs[i]).ok_or_else(|| overflow("symmetry"))?;
            if self.coeffs[2 * g - i] != expected {
                return Err(Error::InvalidArgument(format!(
                    "a_{} = {} breaks the symmetry a_(2g-i) = q^(g-i) a_i",
                    2 * g - i,
                    self.coeffs[2 * g - i]
                )));
            }
        }
        Ok(())
    }

    pub fn eval(&self, t: Complex) -> Complex {
        self.coeffs.iter().rev().fold(Complex::new(0.0, 0.0), |acc, &c| acc * t + c as f64)
    }

    /// Power sums `S_n = Σ α^n` of the reciprocal roots, n = 1..=count.
    pub fn power_sums(&self, count: usize) -> Result<Vec<i128>> {
        let a = |k: usize| self.coeffs.get(k).copied().unwrap_or(0);
        let mut s: Vec<i128> = Vec::with_capacity(count);
        for n in 1..=count {
            let mut acc = -(n as i128).checked_mul(a(n)).ok_or_else(|| overflow("power sum"))?;
            for i in 1..n {
                let term = a(i).checked_mul(s[n - i - 1]).ok_or_else(|| overflow("power sum"))?;
                acc = acc.checked_sub(term).ok_or_else(|| overflow("power sum"))?;
            }
            s.push(acc);
        }
        Ok(s)
    }

    /// `N_i = q^i + 1 − S_i`, i = 1..=count.
    pub fn point_counts(&self, count: usize) -> Result<Vec<i128>> {
        self.power_sums(count)?
            .into_iter()
            .enumerate()
            .map(|(i, s)| {
                q_pow(self.q, i + 1)?
                    .checked_add(1 - s)
                    .ok_or_else(|| overflow("point count"))
            })
            .collect()
    }

    pub fn coeffs_i64(&self) -> Result<Vec<i64>> {
        self.coeffs
            .iter()
            .map(|&c| i64::try_from(c).map_err(|_| Error::SizeCap(format!("coefficient {c} exceeds 64 bits"))))
            .collect()
    }
}

impl fmt::Display for ZetaPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, &c) in self.coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let sign = if c < 0 { "-" } else if first { "" } else { "+" };
            let mag = c.unsigned_abs();
            let body = match (k, mag) {
                (0, m) => m.to_string(),
                (1, 1) => "T".to_string(),
                (1, m) => format!("{m}T"),
                (k, 1) => format!("T^{k}"),
                (k, m) => format!("{m}T^{k}"),
            };
            if first {
                write!(f, "{sign}{body}")?;
            } else {
                write!(f, " {sign} {body}")?;
            }
            first = false;
        }
        Ok(())
    }
}

/// P(T) from N_1..N_g via Newton's identities on
/// `log Z(T) = Σ N_i T^i / i`, `Z(T) = P(T)/((1−T)(1−qT))`.
///
/// Extra counts beyond the first g are checked against the result.
pub fn zeta_numerator(counts: &[u64], g: u32, q: u64) -> Result<ZetaPolynomial> {
    let g_us = g as usize;
    if counts.len() < g_us {
        return Err(Error::InvalidArgument(format!("genus {g} needs {g} point counts")));
    }
    // S_i = 1 + q^i − N_i, the power sums of the reciprocal roots.
    let s: Vec<i128> = counts
        .iter()
        .take(g_us)
        .enumerate()
        .map(|(i, &n)| Ok(q_pow(q, i + 1)? + 1 - i128::from(n)))
        .collect::<Result<_>>()?;
    // k e_k = Σ_{i=1}^{k} (−1)^{i−1} e_{k−i} S_i
    let mut e: Vec<i128> = vec![1];
    for k in 1..=g_us {
        let mut acc: i128 = 0;
        for i in 1..=k {
            let term = e[k - i].checked_mul(s[i - 1]).ok_or_else(|| overflow("Newton identity"))?;
            acc = if i % 2 == 1 { acc.checked_add(term) } else { acc.checked_sub(term) }
                .ok_or_else(|| overflow("Newton identity"))?;
        }
        if acc % k as i128 != 0 {
            return Err(Error::NonIntegral(format!(
                "e_{k} = {acc}/{k} is not an integer; the point counts are inconsistent"
            )));
        }
        e.push(acc / k as i128);
    }
    let mut coeffs = vec![0i128; 2 * g_us + 1];
    for k in 0..=g_us {
        coeffs[k] = if k % 2 == 0 { e[k] } else { -e[k] };
    }
    for i in 0..g_us {
        coeffs[2 * g_us - i] = q_pow(q, g_us - i)?.checked_mul(coeffs[i]).ok_or_else(|| overflow("symmetry"))?;
    }
    let p = ZetaPolynomial { g, q, coeffs };
    if counts.len() > g_us {
        let derived = p.point_counts(counts.len())?;
        for (i, (&given, &d)) in counts.iter().zip(&derived).enumerate().skip(g_us) {
            if i128::from(given) != d {
                return Err(Error::InvalidArgument(format!(
                    "N_{} = {given} disagrees with {d} implied by the first {g} counts",
                    i + 1
                )));
            }
        }
    }
    Ok(p)
}

/// P over 𝔽_{q^r}: reciprocal roots α ↦ α^r.
pub fn base_change(p: &ZetaPolynomial, r: u32) -> Result<ZetaPolynomial> {
    if r == 0 {
        return Err(Error::InvalidArgument("base-change degree must be positive".into()));
    }
    let g = p.g as usize;
    let qr = p.q.checked_pow(r).ok_or_else(|| Error::SizeCap(format!("{}^{r}", p.q)))?;
    let sums = p.power_sums(g * r as usize)?;
    let counts = (1..=g)
        .map(|i| {
            let n = q_pow(qr, i)? + 1 - sums[i * r as usize - 1];
            u64::try_from(n).map_err(|_| Error::SizeCap(format!("count {n} outside 64 bits")))
        })
        .collect::<Result<Vec<_>>>()?;
    zeta_numerator(&counts, p.g, qr)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn newton_matches_elliptic_formula() {
        for (q, n) in [(2u64, 3u64), (4, 1), (3, 4), (5, 9), (7, 1)] {
            let p = zeta_numerator(&[n], 1, q).unwrap();
            let a = q as i128 + 1 - n as i128;
            assert_eq!(p.coeffs, vec![1, -a, q as i128]);
        }
    }

    #[test]
    fn non_integral_counts_rejected() {
        // S_1 = 1, S_2 = 2 gives 2 e_2 = 1·1 − 2 = −1.
        let err = zeta_numerator(&[2, 3], 2, 2).unwrap_err();
        assert!(matches!(err, Error::NonIntegral(_)));
    }

    #[test]
    fn display() {
        let p = ZetaPolynomial::new(4, vec![1, -4, 4]).unwrap();
        assert_eq!(p.to_string(), "1 - 4T + 4T^2");
        assert!(ZetaPolynomial::new(4, vec![1, -4, 5]).is_err());
    }
}
