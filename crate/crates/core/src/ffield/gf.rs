//! Finite fields 𝔽_{p^k} with log/antilog tables.
//!
//! Elements are encoded as integers `Σ c_j p^j` standing for `Σ c_j x^j`
//! modulo a fixed monic primitive polynomial, so `x` generates the
//! multiplicative group.

use crate::error::{Error, Result};

/// Largest field the tables are built for.
pub const MAX_FIELD_SIZE: u64 = 1 << 20;

/// Conway polynomials, low-degree coefficients first, leading 1 omitted.
const CONWAY: &[(u32, u32, &[u32])] = &[
    (2, 1, &[1]),
    (2, 2, &[1, 1]),
    (2, 3, &[1, 1, 0]),
    (2, 4, &[1, 1, 0, 0]),
    (3, 1, &[1]),
    (3, 2, &[2, 2]),
    (3, 3, &[1, 2, 0]),
    (3, 4, &[2, 0, 0, 2]),
    (5, 1, &[3]),
    (5, 2, &[2, 4]),
    (5, 3, &[3, 3, 0]),
    (5, 4, &[2, 4, 4, 0]),
    (7, 1, &[4]),
    (7, 2, &[3, 6]),
    (7, 3, &[4, 0, 6]),
    (7, 4, &[3, 4, 5, 0]),
];

fn is_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| n % d != 0)
}

/// Splits a prime power `q = p^k`.
pub fn prime_power(q: u64) -> Option<(u32, u32)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|d| q % d == 0)?;
    let (mut n, mut k) = (q, 0);
    while n % p == 0 {
        n /= p;
        k += 1;
    }
    (n == 1 && is_prime(p)).then_some((p as u32, k))
}

#[derive(Debug, Clone)]
pub struct GaloisField {
    p: u32,
    k: u32,
    q: u32,
    /// Monic modulus, low-degree coefficients first, leading 1 omitted.
    modulus: Vec<u32>,
    exp: Vec<u32>,
    log: Vec<u32>,
    /// For p = 2: bit j set when Tr(x^j) = 1.
    trace_mask: u32,
}

impl GaloisField {
    pub fn new(p: u32, k: u32) -> Result<Self> {
        if !is_prime(u64::from(p)) || k == 0 {
            return Err(Error::InvalidArgument(format!("no field with p = {p}, k = {k}")));
        }
        let q = u64::from(p).checked_pow(k).filter(|&q| q <= MAX_FIELD_SIZE).ok_or_else(|| {
            Error::SizeCap(format!("field of size {p}^{k} exceeds {MAX_FIELD_SIZE}"))
        })?;
        if let Some((_, _, m)) = CONWAY.iter().find(|(pp, kk, _)| *pp == p && *kk == k) {
            let field = Self::with_modulus(p, k, q as u32, m.to_vec())
                .ok_or_else(|| Error::InvalidArgument(format!("tabulated modulus for {p}^{k} is not primitive")))?;
            return Ok(field);
        }
        // Lexicographically first primitive polynomial.
        let count = q as usize;
        for code in 0..count {
            let mut m = Vec::with_capacity(k as usize);
            let mut c = code as u32;
            for _ in 0..k {
                m.push(c % p);
                c /= p;
            }
            if m[0] == 0 {
                continue;
            }
            if let Some(field) = Self::with_modulus(p, k, q as u32, m) {
                return Ok(field);
            }
        }
        Err(Error::InvalidArgument(format!("no primitive polynomial found for {p}^{k}")))
    }

    /// Builds tables when `x` has order q − 1 modulo the polynomial, which
    /// also proves the polynomial irreducible.
    fn with_modulus(p: u32, k: u32, q: u32, modulus: Vec<u32>) -> Option<Self> {
        let mut field = GaloisField { p, k, q, modulus, exp: Vec::new(), log: vec![0; q as usize], trace_mask: 0 };
        let order = q as usize - 1;
        let mut exp = Vec::with_capacity(2 * order);
        let mut e = 1u32;
        for i in 0..order {
            if i > 0 && e == 1 {
                return None;
            }
            exp.push(e);
            field.log[e as usize] = i as u32;
            e = field.times_x(e);
        }
        if e != 1 {
            return None;
        }
        let doubled: Vec<u32> = exp.iter().chain(exp.iter()).copied().collect();
        field.exp = doubled;
        if p == 2 {
            for j in 0..k {
                if field.absolute_trace_slow(1 << j) == 1 {
                    field.trace_mask |= 1 << j;
                }
            }
        }
        Some(field)
    }

    fn digits(&self, mut a: u32) -> Vec<u32> {
        (0..self.k)
            .map(|_| {
                let d = a % self.p;
                a /= self.p;
                d
            })
            .collect()
    }

    fn undigits(&self, d: &[u32]) -> u32 {
        d.iter().rev().fold(0, |acc, &c| acc * self.p + c)
    }

    fn times_x(&self, a: u32) -> u32 {
        let d = self.digits(a);
        let top = d[self.k as usize - 1];
        let mut out = vec![0u32; self.k as usize];
        for j in (1..self.k as usize).rev() {
            out[j] = d[j - 1];
        }
        for (j, m) in self.modulus.iter().enumerate() {
            out[j] = (out[j] + (self.p - m) * top) % self.p;
        }
        self.undigits(&out)
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.k
    }

    pub fn size(&self) -> u32 {
        self.q
    }

    /// Monic modulus, low-degree coefficients first, leading 1 included.
    pub fn modulus(&self) -> Vec<u32> {
        let mut m = self.modulus.clone();
        m.push(1);
        m
    }

    /// The class of `x`, a generator of the multiplicative group.
    pub fn generator(&self) -> u32 {
        self.exp[1]
    }

    pub fn add(&self, a: u32, b: u32) -> u32 {
        if self.p == 2 {
            return a ^ b;
        }
        let (mut a, mut b, mut out, mut place) = (a, b, 0, 1);
        while a > 0 || b > 0 {
            out += ((a % self.p + b % self.p) % self.p) * place;
            a /= self.p;
            b /= self.p;
            place *= self.p;
        }
        out
    }

    pub fn neg(&self, a: u32) -> u32 {
        if self.p == 2 {
            return a;
        }
        let (mut a, mut out, mut place) = (a, 0, 1);
        while a > 0 {
            out += ((self.p - a % self.p) % self.p) * place;
            a /= self.p;
            place *= self.p;
        }
        out
    }

    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: u32, b: u32) -> u32 {
        if a == 0 || b == 0 {
            return 0;
        }
        self.exp[(self.log[a as usize] + self.log[b as usize]) as usize]
    }

    pub fn inv(&self, a: u32) -> Result<u32> {
        if a == 0 {
            return Err(Error::InvalidArgument("inverse of zero".into()));
        }
        let order = self.q - 1;
        Ok(self.exp[((order - self.log[a as usize]) % order) as usize])
    }

    pub fn pow(&self, a: u32, n: u64) -> u32 {
        if n == 0 {
            return 1;
        }
        if a == 0 {
            return 0;
        }
        let order = u64::from(self.q - 1);
        self.exp[((u64::from(self.log[a as usize]) * (n % order)) % order) as usize]
    }

    /// The prime-field element `n mod p`.
    pub fn from_int(&self, n: i64) -> u32 {
        n.rem_euclid(i64::from(self.p)) as u32
    }

    /// Squares are zero or have even discrete log (odd p).
    pub fn is_square(&self, a: u32) -> bool {
        a == 0 || self.log[a as usize] % 2 == 0
    }

    fn absolute_trace_slow(&self, a: u32) -> u32 {
        let (mut t, mut power) = (0, a);
        for _ in 0..self.k {
            t = self.add(t, power);
            power = self.mul(power, power);
        }
        t
    }

    /// Tr_{𝔽_q/𝔽_2}(a) for p = 2.
    pub fn trace2(&self, a: u32) -> u32 {
        (a & self.trace_mask).count_ones() % 2
    }

    /// Evaluates a polynomial with prime-field coefficients (low first).
    pub fn eval_prime_poly(&self, coeffs: &[u32], at: u32) -> u32 {
        coeffs.iter().rev().fold(0, |acc, &c| self.add(self.mul(acc, at), c % self.p))
    }

    /// Evaluates a polynomial with coefficients in this field.
    pub fn eval_poly(&self, coeffs: &[u32], at: u32) -> u32 {
        coeffs.iter().rev().fold(0, |acc, &c| self.add(self.mul(acc, at), c))
    }

    /// Some root of `poly` (prime-field coefficients), smallest encoding first.
    pub fn find_root(&self, poly: &[u32]) -> Option<u32> {
        (0..self.q).find(|&a| self.eval_prime_poly(poly, a) == 0)
    }
}
