//! `GF(p^k)` with elements encoded as integers `sum d_i p^i`, the base-`p`
//! digits being polynomial coefficients modulo a fixed irreducible.

use crate::error::{Error, Result};

/// Default cap on `q = p^k`.
pub const ENUMERATION_BOUND: u64 = 1 << 14;

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Polynomial helpers over `F_p`, coefficients low degree first.
mod poly {
    pub fn trim(mut a: Vec<u32>) -> Vec<u32> {
        while a.last() == Some(&0) {
            a.pop();
        }
        a
    }

    /// Remainder of `a` modulo monic `m`.
    pub fn rem(a: &[u32], m: &[u32], p: u32) -> Vec<u32> {
        let mut r = a.to_vec();
        let dm = m.len() - 1;
        while r.len() > dm {
            let lead = *r.last().unwrap();
            let shift = r.len() - 1 - dm;
            if lead != 0 {
                for (i, c) in m.iter().enumerate() {
                    let t = (r[shift + i] + p - (lead * c) % p) % p;
                    r[shift + i] = t;
                }
            }
            r.pop();
        }
        trim(r)
    }

    pub fn mul(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![0u32; a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            for (j, y) in b.iter().enumerate() {
                out[i + j] = (out[i + j] + x * y) % p;
            }
        }
        trim(out)
    }
}

fn digits(mut v: u64, p: u32, k: u32) -> Vec<u32> {
    let mut out = Vec::with_capacity(k as usize);
    for _ in 0..k {
        out.push((v % p as u64) as u32);
        v /= p as u64;
    }
    out
}

fn monic_of_degree(d: u32, index: u64, p: u32) -> Vec<u32> {
    let mut m = digits(index, p, d);
    m.push(1);
    m
}

/// Irreducible by trial division by every monic polynomial of degree
/// `1..=k/2`.
fn is_irreducible(m: &[u32], p: u32) -> bool {
    let k = (m.len() - 1) as u32;
    for d in 1..=k / 2 {
        for idx in 0..(p as u64).pow(d) {
            let f = monic_of_degree(d, idx, p);
            if poly::rem(m, &f, p).is_empty() {
                return false;
            }
        }
    }
    true
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteField {
    p: u32,
    k: u32,
    q: u32,
    modulus: Vec<u32>,
    exp: Vec<u32>,
    log: Vec<u32>,
}

impl FiniteField {
    pub fn new(p: u64, k: u32) -> Result<Self> {
        Self::with_bound(p, k, ENUMERATION_BOUND)
    }

    pub fn with_bound(p: u64, k: u32, bound: u64) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::Invalid(format!("{p} is not prime")));
        }
        if k == 0 {
            return Err(Error::Invalid("extension degree must be positive".into()));
        }
        let q = p.checked_pow(k).filter(|&q| q <= bound).ok_or_else(|| {
            Error::Bound(format!("{p}^{k} exceeds the enumeration bound {bound}; use a smaller field"))
        })?;
        let p = p as u32;
        let modulus = (0..(p as u64).pow(k))
            .map(|idx| monic_of_degree(k, idx, p))
            .find(|m| is_irreducible(m, p))
            .ok_or_else(|| Error::Invalid(format!("no irreducible of degree {k} over F_{p}")))?;
        let mut field = Self {
            p,
            k,
            q: q as u32,
            modulus,
            exp: Vec::new(),
            log: Vec::new(),
        };
        field.build_tables()?;
        Ok(field)
    }

    fn poly_of(&self, a: u32) -> Vec<u32> {
        poly::trim(digits(a as u64, self.p, self.k))
    }

    fn encode(&self, poly: &[u32]) -> u32 {
        poly.iter().rev().fold(0u32, |acc, d| acc * self.p + d)
    }

    fn slow_mul(&self, a: u32, b: u32) -> u32 {
        let prod = poly::mul(&self.poly_of(a), &self.poly_of(b), self.p);
        self.encode(&poly::rem(&prod, &self.modulus, self.p))
    }

    fn slow_pow(&self, a: u32, mut e: u64) -> u32 {
        let (mut base, mut acc) = (a, 1u32);
        while e > 0 {
            if e & 1 == 1 {
                acc = self.slow_mul(acc, base);
            }
            base = self.slow_mul(base, base);
            e >>= 1;
        }
        acc
    }

    fn build_tables(&mut self) -> Result<()> {
        let order = (self.q - 1) as u64;
        let factors = prime_factors(order);
        let g = (1..self.q)
            .find(|&g| factors.iter().all(|r| self.slow_pow(g, order / r) != 1))
            .ok_or_else(|| Error::Invalid("no primitive element found".into()))?;
        let mut exp = Vec::with_capacity(order as usize);
        let mut log = vec![0u32; self.q as usize];
        let mut x = 1u32;
        for i in 0..order as u32 {
            exp.push(x);
            log[x as usize] = i;
            x = self.slow_mul(x, g);
        }
        self.exp = exp;
        self.log = log;
        Ok(())
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    /// Monic irreducible defining polynomial, constant term first.
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    /// All elements in encoding order.
    pub fn elements(&self) -> impl Iterator<Item = u32> {
        0..self.q
    }

    /// The element of the prime field with integer value `n mod p`.
    pub fn from_int(&self, n: i64) -> u32 {
        n.rem_euclid(self.p as i64) as u32
    }

    pub fn add(&self, a: u32, b: u32) -> u32 {
        if self.p == 2 {
            return a ^ b;
        }
        let (mut a, mut b) = (a, b);
        let (mut out, mut place) = (0u32, 1u32);
        while a > 0 || b > 0 {
            out += ((a % self.p + b % self.p) % self.p) * place;
            a /= self.p;
            b /= self.p;
            place *= self.p;
        }
        out
    }

    pub fn neg(&self, a: u32) -> u32 {
        let mut a = a;
        let (mut out, mut place) = (0u32, 1u32);
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
        let order = self.q - 1;
        let l = (self.log[a as usize] + self.log[b as usize]) % order;
        self.exp[l as usize]
    }

    pub fn pow(&self, a: u32, e: u64) -> u32 {
        if e == 0 {
            return 1;
        }
        if a == 0 {
            return 0;
        }
        let order = (self.q - 1) as u64;
        let l = (self.log[a as usize] as u64 * (e % order)) % order;
        self.exp[l as usize]
    }

    pub fn inv(&self, a: u32) -> Result<u32> {
        if a == 0 {
            return Err(Error::Domain("0 has no inverse".into()));
        }
        let order = self.q - 1;
        Ok(self.exp[((order - self.log[a as usize]) % order) as usize])
    }

    pub fn frobenius(&self, a: u32) -> u32 {
        self.pow(a, self.p as u64)
    }
}
