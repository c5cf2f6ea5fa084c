//! Exact numbers `(u + v√d)/den` with integer `u, v, d, den`.

use std::fmt;

use crate::error::{Error, Result};
use crate::specfun::Complex;

/// An element of ℚ(√d). Rationals are stored with `v = 0, d = 0`, so values
/// compare equal exactly when their normalized fields do.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct QuadSurd {
    pub u: i128,
    pub v: i128,
    pub d: i128,
    pub den: i128,
}

fn gcd(a: i128, b: i128) -> i128 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

fn overflow() -> Error {
    Error::SizeCap("exact quadratic arithmetic overflowed 128 bits".into())
}

fn mul(a: i128, b: i128) -> Result<i128> {
    a.checked_mul(b).ok_or_else(overflow)
}

fn add(a: i128, b: i128) -> Result<i128> {
    a.checked_add(b).ok_or_else(overflow)
}

/// Splits `d` as `k²·r` with `r` squarefree.
fn squarefree_part(d: i128) -> (i128, i128) {
    let sign = d.signum();
    let mut r = d.abs();
    let mut k = 1;
    let mut p = 2;
    while p * p <= r {
        while r % (p * p) == 0 {
            r /= p * p;
            k *= p;
        }
        p += 1;
    }
    (k, sign * r)
}

impl QuadSurd {
    pub fn integer(n: i128) -> Self {
        QuadSurd { u: n, v: 0, d: 0, den: 1 }
    }

    pub fn rational(num: i128, den: i128) -> Result<Self> {
        Self::new(num, 0, 0, den)
    }

    pub fn new(u: i128, v: i128, d: i128, den: i128) -> Result<Self> {
        if den == 0 {
            return Err(Error::InvalidArgument("zero denominator".into()));
        }
        let (k, r) = if d == 0 || v == 0 { (1, 0) } else { squarefree_part(d) };
        let (mut u, mut v, mut d) = (u, mul(v, k)?, r);
        if d == 1 {
            u = add(u, v)?;
            v = 0;
            d = 0;
        }
        if v == 0 {
            d = 0;
        }
        let mut den = den;
        if den < 0 {
            u = -u;
            v = -v;
            den = -den;
        }
        let g = gcd(gcd(u, v), den);
        Ok(QuadSurd { u: u / g, v: v / g, d, den: den / g })
    }

    pub fn is_rational(&self) -> bool {
        self.v == 0
    }

    fn common_d(&self, other: &Self) -> Result<i128> {
        match (self.v, other.v) {
            (0, _) => Ok(other.d),
            (_, 0) => Ok(self.d),
            _ if self.d == other.d => Ok(self.d),
            _ => Err(Error::InvalidArgument(format!(
                "cannot combine √{} and √{}",
                self.d, other.d
            ))),
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        let d = self.common_d(other)?;
        Self::new(
            add(mul(self.u, other.den)?, mul(other.u, self.den)?)?,
            add(mul(self.v, other.den)?, mul(other.v, self.den)?)?,
            d,
            mul(self.den, other.den)?,
        )
    }

    pub fn neg(&self) -> Self {
        QuadSurd { u: -self.u, v: -self.v, ..*self }
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.checked_add(&other.neg())
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        let d = self.common_d(other)?;
        let u = add(mul(self.u, other.u)?, mul(mul(self.v, other.v)?, d)?)?;
        let v = add(mul(self.u, other.v)?, mul(self.v, other.u)?)?;
        Self::new(u, v, d, mul(self.den, other.den)?)
    }

    /// The Galois conjugate `(u − v√d)/den`; complex conjugation when d < 0.
    pub fn conjugate(&self) -> Self {
        QuadSurd { v: -self.v, ..*self }
    }

    /// `x · conjugate(x)`, a rational number.
    pub fn norm(&self) -> Result<Self> {
        self.checked_mul(&self.conjugate())
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self> {
        let n = other.norm()?;
        if n.u == 0 {
            return Err(Error::InvalidArgument("division by zero".into()));
        }
        let num = self.checked_mul(&other.conjugate())?;
        Self::new(mul(num.u, n.den)?, mul(num.v, n.den)?, num.d, mul(num.den, n.u)?)
    }

    pub fn checked_pow(&self, m: i32) -> Result<Self> {
        let base = if m < 0 { Self::integer(1).checked_div(self)? } else { *self };
        let mut acc = Self::integer(1);
        for _ in 0..m.unsigned_abs() {
            acc = acc.checked_mul(&base)?;
        }
        Ok(acc)
    }

    pub fn to_complex(&self) -> Complex {
        let den = self.den as f64;
        let (u, v) = (self.u as f64 / den, self.v as f64 / den);
        if self.d >= 0 {
            Complex::new(u + v * (self.d as f64).sqrt(), 0.0)
        } else {
            Complex::new(u, v * (-(self.d as f64)).sqrt())
        }
    }
}

impl fmt::Display for QuadSurd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let body = if self.v == 0 {
            format!("{}", self.u)
        } else if self.u == 0 {
            format!("{}√{}", self.v, self.d)
        } else {
            let sign = if self.v < 0 { '-' } else { '+' };
            format!("{}{}{}√{}", self.u, sign, self.v.abs(), self.d)
        };
        match (self.den, self.v != 0 && self.u != 0) {
            (1, _) => f.write_str(&body),
            (den, true) => write!(f, "({body})/{den}"),
            (den, false) => write!(f, "{body}/{den}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normalizes() {
        let x = QuadSurd::new(2, 4, 8, 4).unwrap();
        assert_eq!(x, QuadSurd::new(1, 4, 2, 2).unwrap());
        assert_eq!(QuadSurd::new(3, 2, 4, 1).unwrap(), QuadSurd::integer(7));
        assert_eq!(QuadSurd::new(1, 1, -4, 2).unwrap(), QuadSurd::new(1, 2, -1, 2).unwrap());
    }

    #[test]
    fn field_operations() {
        // α = i√2 over 𝔽₂: α·ᾱ = 2, α² = −2.
        let a = QuadSurd::new(0, 1, -2, 1).unwrap();
        assert_eq!(a.norm().unwrap(), QuadSurd::integer(2));
        assert_eq!(a.checked_pow(2).unwrap(), QuadSurd::integer(-2));
        let partner = QuadSurd::integer(2).checked_div(&a).unwrap();
        assert_eq!(partner, a.conjugate());
        assert_eq!(a.checked_mul(&partner).unwrap(), QuadSurd::integer(2));
        assert_eq!(a.checked_pow(-2).unwrap(), QuadSurd::rational(-1, 2).unwrap());
        assert!(a.checked_add(&QuadSurd::new(0, 1, 3, 1).unwrap()).is_err());
    }

    #[test]
    fn displays() {
        assert_eq!(QuadSurd::new(1, 1, -7, 2).unwrap().to_string(), "(1+1√-7)/2");
        assert_eq!(QuadSurd::integer(-2).to_string(), "-2");
        assert_eq!(QuadSurd::new(0, -1, -2, 1).unwrap().to_string(), "-1√-2");
    }

    #[test]
    fn overflow_is_reported() {
        let big = QuadSurd::integer(i128::MAX / 2);
        assert!(matches!(big.checked_mul(&big), Err(Error::SizeCap(_))));
    }
}
