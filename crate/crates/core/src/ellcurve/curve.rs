//! Elliptic curves over ℚ and their Hecke coefficients.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};

/// Largest prime accepted by [`EllipticCurveQ::ap`].
pub const MAX_AP_PRIME: u64 = 100_000;
/// Largest `n_max` accepted by [`EllipticCurveQ::hecke_coefficients`].
pub const MAX_COEFFICIENTS: usize = 1_000_000;

/// `y² + a1·xy + a3·y = x³ + a2·x² + a4·x + a6` with supplied conductor.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EllipticCurveQ {
    pub a: [i64; 5],
    pub conductor: u64,
    /// a_p at the primes dividing the conductor.
    pub bad_ap: BTreeMap<u64, i64>,
    pub sign_hint: Option<i8>,
    label: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DirichletCoefficients {
    pub n_max: usize,
    /// a_1, …, a_{n_max}.
    pub a: Vec<i64>,
}

impl DirichletCoefficients {
    pub fn get(&self, n: usize) -> i64 {
        self.a[n - 1]
    }
}

pub(crate) fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            out.push(p);
            while n % p == 0 {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

fn is_prime(n: u64) -> bool {
    n >= 2 && prime_factors(n) == [n]
}

fn parse_error(token: &str, message: impl Into<String>) -> Error {
    Error::Parse { token: token.to_string(), message: message.into() }
}

impl EllipticCurveQ {
    /// Builds a curve; bad a_p missing from `bad_ap` are read off the
    /// reduction of the given model.
    pub fn new(a: [i64; 5], conductor: u64, bad_ap: BTreeMap<u64, i64>, label: impl Into<String>) -> Result<Self> {
        let mut curve = EllipticCurveQ { a, conductor, bad_ap: BTreeMap::new(), sign_hint: None, label: label.into() };
        let disc = curve.discriminant()?;
        if disc == 0 {
            return Err(Error::Singular(format!("discriminant of {:?} vanishes", a)));
        }
        if conductor == 0 {
            return Err(Error::InvalidArgument("conductor must be positive".into()));
        }
        let bad = prime_factors(conductor);
        for p in bad_ap.keys() {
            if !bad.contains(p) {
                return Err(Error::InvalidArgument(format!("a_{p} given but {p} does not divide N = {conductor}")));
            }
        }
        for &p in &bad {
            if disc % i128::from(p) != 0 {
                return Err(Error::InvalidArgument(format!("{p} divides N but not the discriminant {disc}")));
            }
            let ap = match bad_ap.get(&p) {
                Some(&v) => v,
                None => curve.reduction_trace(p)?,
            };
            if !(-1..=1).contains(&ap) {
                return Err(Error::InvalidArgument(format!("bad a_{p} = {ap} is not in {{-1, 0, 1}}")));
            }
            curve.bad_ap.insert(p, ap);
        }
        Ok(curve)
    }

    /// 11a1: y² + y = x³ − x² − 10x − 20, split multiplicative at 11.
    pub fn preset(name: &str) -> Result<Self> {
        let (a, n, ap) = match name {
            "11a1" => ([0, -1, 1, -10, -20], 11, 1),
            "37a1" => ([0, 0, 1, -1, 0], 37, -1),
            other => return Err(parse_error(other, "unknown preset; known: 11a1, 37a1")),
        };
        Self::new(a, n, BTreeMap::from([(n, ap)]), name)
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn discriminant(&self) -> Result<i128> {
        let [a1, a2, a3, a4, a6] = self.a.map(i128::from);
        let overflow = || Error::SizeCap("discriminant overflowed 128 bits".into());
        let b2 = a1 * a1 + 4 * a2;
        let b4 = 2 * a4 + a1 * a3;
        let b6 = a3 * a3 + 4 * a6;
        let b8 = a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4;
        let terms = [
            b2.checked_mul(b2).and_then(|v| v.checked_mul(b8)).map(|v| -v),
            b4.checked_pow(3).and_then(|v| v.checked_mul(-8)),
            b6.checked_mul(b6).and_then(|v| v.checked_mul(-27)),
            b2.checked_mul(b4).and_then(|v| v.checked_mul(b6)).and_then(|v| v.checked_mul(9)),
        ];
        terms.into_iter().try_fold(0i128, |acc, t| acc.checked_add(t?)).ok_or_else(overflow)
    }

    /// p + 1 − #Ẽ(𝔽_p), counting every point of the reduced cubic.
    fn reduction_trace(&self, p: u64) -> Result<i64> {
        if p > MAX_AP_PRIME {
            return Err(Error::SizeCap(format!("p = {p} exceeds {MAX_AP_PRIME}")));
        }
        let r = |c: i64| c.rem_euclid(p as i64) as u64;
        let [a1, a2, a3, a4, a6] = self.a.map(r);
        let rhs = |x: u64| (((x + a2) % p * x + a4) % p * x + a6) % p;
        let affine: u64 = if p == 2 {
            let mut n = 0;
            for x in 0..2 {
                for y in 0..2 {
                    if (y * y + a1 * x * y + a3 * y) % 2 == rhs(x) {
                        n += 1;
                    }
                }
            }
            n
        } else {
            let mut square = vec![false; p as usize];
            for y in 0..p {
                square[(y * y % p) as usize] = true;
            }
            (0..p)
                .map(|x| {
                    let b = (a1 * x + a3) % p;
                    let d = (b * b + 4 * rhs(x)) % p;
                    if d == 0 {
                        1
                    } else if square[d as usize] {
                        2
                    } else {
                        0
                    }
                })
                .sum()
        };
        Ok(p as i64 + 1 - (affine as i64 + 1))
    }

    /// a_p = p + 1 − #E(𝔽_p) at a prime of good reduction.
    pub fn ap_good(&self, p: u64) -> Result<i64> {
        if !is_prime(p) {
            return Err(Error::InvalidArgument(format!("{p} is not prime")));
        }
        if self.conductor % p == 0 {
            return Err(Error::InvalidArgument(format!("{p} divides the conductor {}", self.conductor)));
        }
        if self.discriminant()? % i128::from(p) == 0 {
            return Err(Error::InvalidArgument(format!("model is not minimal at {p}")));
        }
        self.reduction_trace(p)
    }

    /// a_p at any prime.
    pub fn ap(&self, p: u64) -> Result<i64> {
        match self.bad_ap.get(&p) {
            Some(&v) => Ok(v),
            None => self.ap_good(p),
        }
    }

    /// a_1..a_{n_max} from a_p, the Hecke recursion at prime powers and
    /// multiplicativity.
    pub fn hecke_coefficients(&self, n_max: usize) -> Result<DirichletCoefficients> {
        if n_max > MAX_COEFFICIENTS {
            return Err(Error::SizeCap(format!("n_max = {n_max} exceeds {MAX_COEFFICIENTS}")));
        }
        let mut spf = vec![0usize; n_max + 1];
        for i in 2..=n_max {
            if spf[i] == 0 {
                for j in (i..=n_max).step_by(i) {
                    if spf[j] == 0 {
                        spf[j] = i;
                    }
                }
            }
        }
        let mut a = vec![0i64; n_max + 1];
        if n_max >= 1 {
            a[1] = 1;
        }
        for n in 2..=n_max {
            let p = spf[n];
            let mut pk = p;
            while n % (pk * p) == 0 {
                pk *= p;
            }
            if pk != n {
                a[n] = a[pk] * a[n / pk];
            } else if pk == p {
                a[n] = self.ap(p as u64)?;
            } else if self.bad_ap.contains_key(&(p as u64)) {
                a[n] = a[p] * a[n / p];
            } else {
                a[n] = a[p] * a[n / p] - p as i64 * a[n / p / p];
            }
        }
        a.remove(0);
        Ok(DirichletCoefficients { n_max, a })
    }
}

impl FromStr for EllipticCurveQ {
    type Err = Error;

    /// A preset name or `ec:<a1>,<a2>,<a3>,<a4>,<a6>@N=<N>[;ap:<p>=<v>…]`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let Some(body) = s.strip_prefix("ec:") else {
            return Self::preset(s);
        };
        let mut parts = body.split(';');
        let head = parts.next().unwrap_or_default();
        let (coeffs, n) = head.split_once("@N=").ok_or_else(|| parse_error(s, "expected @N=<conductor>"))?;
        let a: Vec<i64> = coeffs
            .split(',')
            .map(|c| c.trim().parse::<i64>().map_err(|_| parse_error(c, "bad Weierstrass coefficient")))
            .collect::<Result<_>>()?;
        let a: [i64; 5] = a.try_into().map_err(|_| parse_error(coeffs, "expected five coefficients"))?;
        let conductor = n.trim().parse::<u64>().map_err(|_| parse_error(n, "bad conductor"))?;
        let mut bad_ap = BTreeMap::new();
        let mut sign_hint = None;
        for part in parts {
            let part = part.trim();
            if let Some(list) = part.strip_prefix("ap:") {
                for item in list.split(',') {
                    let (p, v) = item.split_once('=').ok_or_else(|| parse_error(item, "expected <p>=<v>"))?;
                    let p = p.trim().parse::<u64>().map_err(|_| parse_error(p, "bad prime"))?;
                    let v = v.trim().parse::<i64>().map_err(|_| parse_error(v, "bad a_p"))?;
                    bad_ap.insert(p, v);
                }
            } else if let Some(e) = part.strip_prefix("eps=") {
                sign_hint = Some(match e.trim() {
                    "1" | "+1" => 1,
                    "-1" => -1,
                    other => return Err(parse_error(other, "sign must be +1 or -1")),
                });
            } else if !part.is_empty() {
                return Err(parse_error(part, "expected ap:<p>=<v> or eps=±1"));
            }
        }
        let mut curve = Self::new(a, conductor, bad_ap, s)?;
        curve.sign_hint = sign_hint;
        Ok(curve)
    }
}

impl fmt::Display for EllipticCurveQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label)
    }
}
