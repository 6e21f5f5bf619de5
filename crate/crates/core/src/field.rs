//! Arithmetic for GF(p^r) with a deterministic choice of modulus.
//!
//! Elements are indices into a canonical order: an element with prime-field
//! coefficients (c_0, ..., c_{r-1}) (low degree first) has index
//! sum c_i * p^i. Index 0 is the additive identity, index 1 the
//! multiplicative identity. The modulus is the lexicographically smallest
//! monic irreducible of degree r, comparing coefficient vectors
//! low-degree-first.

use crate::error::{Error, Result};

/// Largest supported field order.
pub const MAX_ORDER: u128 = 1 << 16;

/// Orders up to this get dense k*k add/mul tables; larger fields compute
/// products on the fly from the polynomial representation.
const TABLE_CAP: usize = 1024;

/// An element of a [`Field`], identified by its canonical index.
#[derive(Copy, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct FieldElement(pub u16);

impl FieldElement {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// GF(p^r), immutable after construction.
#[derive(Clone, Debug)]
pub struct Field {
    p: u64,
    r: u32,
    k: usize,
    /// Monic modulus, length r+1, coefficients low-to-high. For r = 1 this
    /// is x, i.e. [0, 1]: the prime field reduces indices mod p directly.
    modulus: Vec<u16>,
    add_table: Vec<u16>,
    mul_table: Vec<u16>,
    neg_table: Vec<u16>,
    inv_table: Vec<u16>,
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Factors k as p^r when k is a prime power.
pub fn prime_power(k: u64) -> Result<(u64, u32)> {
    if k < 2 {
        return Err(Error::NotPrimePower(k));
    }
    let mut p = 2u64;
    while p * p <= k {
        if k.is_multiple_of(p) {
            let mut m = k;
            let mut r = 0u32;
            while m.is_multiple_of(p) {
                m /= p;
                r += 1;
            }
            if m == 1 {
                return Ok((p, r));
            }
            return Err(Error::NotPrimePower(k));
        }
        p += 1;
    }
    Ok((k, 1))
}

// Polynomial helpers over the prime field, coefficients low-to-high.

fn poly_rem(dividend: &[u64], divisor: &[u64], p: u64) -> Vec<u64> {
    let mut rem: Vec<u64> = dividend.to_vec();
    let dd = divisor.len() - 1;
    let lead_inv = mod_inv(divisor[dd], p);
    for pos in (dd..rem.len()).rev() {
        let c = rem[pos] % p;
        if c != 0 {
            let f = c * lead_inv % p;
            let shift = pos - dd;
            for (i, &dc) in divisor.iter().enumerate() {
                rem[shift + i] = (rem[shift + i] + p - f * dc % p) % p;
            }
        }
    }
    rem.truncate(dd);
    if rem.is_empty() {
        rem.push(0);
    }
    rem
}

fn mod_inv(a: u64, p: u64) -> u64 {
    // Fermat; p is prime and a != 0 mod p.
    mod_pow(a % p, p - 2, p)
}

fn mod_pow(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    acc
}

fn is_irreducible(f: &[u64], p: u64) -> bool {
    let r = f.len() - 1;
    if f[0] == 0 {
        // divisible by x
        return r == 1;
    }
    // Trial division by every monic polynomial of degree 1..=r/2.
    for d in 1..=r / 2 {
        let count = p.pow(d as u32);
        for t in 0..count {
            let mut g = vec![0u64; d + 1];
            let mut tt = t;
            for c in g.iter_mut().take(d) {
                *c = tt % p;
                tt /= p;
            }
            g[d] = 1;
            let rem = poly_rem(f, &g, p);
            if rem.iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

fn smallest_irreducible(p: u64, r: u32) -> Vec<u16> {
    if r == 1 {
        return vec![0, 1];
    }
    let count = p.pow(r);
    // Enumerate constant..high coefficient vectors in lexicographic order
    // (the vector is read low-degree-first, first entry most significant).
    for t in 0..count {
        let mut f = vec![0u64; r as usize + 1];
        let mut tt = t;
        for i in (0..r as usize).rev() {
            f[i] = tt % p;
            tt /= p;
        }
        f[r as usize] = 1;
        if is_irreducible(&f, p) {
            return f.iter().map(|&c| c as u16).collect();
        }
    }
    unreachable!("an irreducible monic polynomial of each degree exists over GF(p)")
}

impl Field {
    /// Builds GF(p^r). Fails if p is not prime, r < 1, or p^r > 2^16.
    pub fn new(p: u64, r: u32) -> Result<Field> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if r < 1 {
            return Err(Error::BadExtensionDegree);
        }
        let order = (p as u128).checked_pow(r).ok_or(Error::OrderOverflow(u128::MAX))?;
        if order > MAX_ORDER {
            return Err(Error::OrderOverflow(order));
        }
        let k = order as usize;
        let modulus = smallest_irreducible(p, r);
        let mut field = Field {
            p,
            r,
            k,
            modulus,
            add_table: Vec::new(),
            mul_table: Vec::new(),
            neg_table: Vec::new(),
            inv_table: Vec::new(),
        };
        field.neg_table = (0..k).map(|a| field.neg_raw(a) as u16).collect();
        if k <= TABLE_CAP {
            let mut add_t = vec![0u16; k * k];
            let mut mul_t = vec![0u16; k * k];
            for a in 0..k {
                for b in 0..k {
                    add_t[a * k + b] = field.add_raw(a, b) as u16;
                    mul_t[a * k + b] = field.mul_raw(a, b) as u16;
                }
            }
            field.add_table = add_t;
            field.mul_table = mul_t;
        }
        let mut inv_t = vec![0u16; k];
        for a in 1..k {
            inv_t[a] = field.pow_raw(a, (k - 1) as u64 - 1) as u16;
        }
        field.inv_table = inv_t;
        Ok(field)
    }

    /// Builds GF(k), factoring k as a prime power.
    pub fn of_order(k: u64) -> Result<Field> {
        let (p, r) = prime_power(k)?;
        Field::new(p, r)
    }

    pub fn order(&self) -> usize {
        self.k
    }

    pub fn characteristic(&self) -> u64 {
        self.p
    }

    pub fn extension_degree(&self) -> u32 {
        self.r
    }

    pub fn modulus(&self) -> &[u16] {
        &self.modulus
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement(0)
    }

    pub fn one(&self) -> FieldElement {
        FieldElement(1)
    }

    pub fn element(&self, index: usize) -> Result<FieldElement> {
        if index < self.k {
            Ok(FieldElement(index as u16))
        } else {
            Err(Error::ElementOutOfRange { index, order: self.k })
        }
    }

    pub fn elements(&self) -> impl Iterator<Item = FieldElement> {
        (0..self.k as u16).map(FieldElement)
    }

    fn digits(&self, a: usize) -> Vec<u64> {
        let mut v = vec![0u64; self.r as usize];
        let mut a = a as u64;
        for d in v.iter_mut() {
            *d = a % self.p;
            a /= self.p;
        }
        v
    }

    fn undigits(&self, v: &[u64]) -> usize {
        let mut acc = 0u64;
        for &d in v.iter().rev() {
            acc = acc * self.p + d % self.p;
        }
        acc as usize
    }

    fn add_raw(&self, a: usize, b: usize) -> usize {
        if self.r == 1 {
            return ((a as u64 + b as u64) % self.p) as usize;
        }
        let (da, db) = (self.digits(a), self.digits(b));
        let sum: Vec<u64> = da.iter().zip(&db).map(|(&x, &y)| (x + y) % self.p).collect();
        self.undigits(&sum)
    }

    fn neg_raw(&self, a: usize) -> usize {
        if self.r == 1 {
            return ((self.p - a as u64 % self.p) % self.p) as usize;
        }
        let da = self.digits(a);
        let neg: Vec<u64> = da.iter().map(|&x| (self.p - x) % self.p).collect();
        self.undigits(&neg)
    }

    fn mul_raw(&self, a: usize, b: usize) -> usize {
        if self.r == 1 {
            return (a as u64 * b as u64 % self.p) as usize;
        }
        let (da, db) = (self.digits(a), self.digits(b));
        let mut prod = vec![0u64; 2 * self.r as usize - 1];
        for (i, &x) in da.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in db.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x * y) % self.p;
            }
        }
        let modulus: Vec<u64> = self.modulus.iter().map(|&c| c as u64).collect();
        let rem = poly_rem(&prod, &modulus, self.p);
        let mut padded = vec![0u64; self.r as usize];
        padded[..rem.len()].copy_from_slice(&rem);
        self.undigits(&padded)
    }

    fn pow_raw(&self, a: usize, mut e: u64) -> usize {
        let mut base = a;
        let mut acc = 1usize;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul_raw(acc, base);
            }
            base = self.mul_raw(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn add(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        if !self.add_table.is_empty() {
            FieldElement(self.add_table[a.index() * self.k + b.index()])
        } else {
            FieldElement(self.add_raw(a.index(), b.index()) as u16)
        }
    }

    pub fn neg(&self, a: FieldElement) -> FieldElement {
        FieldElement(self.neg_table[a.index()])
    }

    pub fn sub(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        if !self.mul_table.is_empty() {
            FieldElement(self.mul_table[a.index() * self.k + b.index()])
        } else {
            FieldElement(self.mul_raw(a.index(), b.index()) as u16)
        }
    }

    pub fn inv(&self, a: FieldElement) -> Result<FieldElement> {
        if a.index() == 0 {
            return Err(Error::DivisionByZero);
        }
        Ok(FieldElement(self.inv_table[a.index()]))
    }

    pub fn pow(&self, a: FieldElement, e: u64) -> FieldElement {
        FieldElement(self.pow_raw(a.index(), e) as u16)
    }

    /// Serialized view of every table; two fields of the same (p, r) must
    /// compare byte-identical here.
    pub fn table_bytes(&self) -> Vec<u8> {
        let mut out = Vec::new();
        for t in [&self.modulus, &self.add_table, &self.mul_table, &self.neg_table, &self.inv_table] {
            for &v in t.iter() {
                out.extend_from_slice(&v.to_le_bytes());
            }
        }
        out
    }
}
