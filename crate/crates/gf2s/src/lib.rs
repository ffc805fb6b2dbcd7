//! Arithmetic in GF(2^s), 1 ≤ s ≤ 16.
//!
//! Elements are plain `u16` values in `[0, 2^s)`; the polynomial basis is
//! used, so bit `i` is the coefficient of `x^i`. A [`Field`] carries
//! log/antilog tables built once from its [`FieldSpec`].

use rand::Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub type FieldElement = u16;

pub const MAX_S: u32 = 16;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FieldError {
    #[error("field width s={0} outside 1..=16")]
    BadWidth(u32),
    #[error("polynomial {poly:#x} does not have degree {s}")]
    DegreeMismatch { s: u32, poly: u32 },
    #[error("polynomial {0:#x} is reducible over GF(2)")]
    Reducible(u32),
    #[error("zero has no multiplicative inverse")]
    ZeroInverse,
    #[error("value {value:#x} is not an element of GF(2^{s})")]
    OutOfRange { s: u32, value: u32 },
}

/// Field description. `reduction_poly` includes the leading `x^s` term, so
/// x^4+x+1 is `0x13`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldSpec {
    pub s: u32,
    #[serde(with = "hex_poly")]
    pub reduction_poly: u32,
}

mod hex_poly {
    use serde::{de::Error, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &u32, ser: S) -> Result<S::Ok, S::Error> {
        ser.serialize_str(&format!("{v:#x}"))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(de: D) -> Result<u32, D::Error> {
        let s = String::deserialize(de)?;
        let digits = s.trim_start_matches("0x").trim_start_matches("0X");
        u32::from_str_radix(digits, 16).map_err(D::Error::custom)
    }
}

fn degree(p: u32) -> u32 {
    31 - p.leading_zeros()
}

/// Remainder of carry-less division `a mod b` (b ≠ 0).
fn poly_rem(mut a: u32, b: u32) -> u32 {
    let db = degree(b);
    while a != 0 && degree(a) >= db {
        a ^= b << (degree(a) - db);
    }
    a
}

/// Exhaustive trial division by every polynomial of degree 1..=deg/2.
pub fn is_irreducible(poly: u32) -> bool {
    if poly < 2 {
        return false;
    }
    let d = degree(poly);
    for div in 2u32..(1 << (d / 2 + 1)) {
        if poly_rem(poly, div) == 0 {
            return false;
        }
    }
    true
}

/// The numerically smallest irreducible polynomial of degree `s`.
pub fn smallest_irreducible(s: u32) -> Result<u32, FieldError> {
    if !(1..=MAX_S).contains(&s) {
        return Err(FieldError::BadWidth(s));
    }
    // At least one irreducible polynomial exists in every degree.
    Ok(((1u32 << s)..(1u32 << (s + 1)))
        .find(|&p| is_irreducible(p))
        .expect("irreducible polynomial exists in every degree"))
}

impl FieldSpec {
    pub fn new(s: u32, reduction_poly: u32) -> Result<Self, FieldError> {
        if !(1..=MAX_S).contains(&s) {
            return Err(FieldError::BadWidth(s));
        }
        if reduction_poly == 0 || degree(reduction_poly) != s {
            return Err(FieldError::DegreeMismatch { s, poly: reduction_poly });
        }
        if !is_irreducible(reduction_poly) {
            return Err(FieldError::Reducible(reduction_poly));
        }
        Ok(FieldSpec { s, reduction_poly })
    }

    pub fn default_for(s: u32) -> Result<Self, FieldError> {
        let p = smallest_irreducible(s)?;
        Ok(FieldSpec { s, reduction_poly: p })
    }

    pub fn order(&self) -> u32 {
        1 << self.s
    }
}

/// Shift-and-add multiply, reducing as it goes. Used to build the tables.
fn slow_mul(a: u32, b: u32, spec: &FieldSpec) -> u32 {
    let top = 1u32 << spec.s;
    let (mut a, mut b, mut acc) = (a, b, 0u32);
    while b != 0 {
        if b & 1 == 1 {
            acc ^= a;
        }
        b >>= 1;
        a <<= 1;
        if a & top != 0 {
            a ^= spec.reduction_poly;
        }
    }
    acc
}

fn slow_pow(mut a: u32, mut e: u64, spec: &FieldSpec) -> u32 {
    let mut r = 1;
    while e > 0 {
        if e & 1 == 1 {
            r = slow_mul(r, a, spec);
        }
        a = slow_mul(a, a, spec);
        e >>= 1;
    }
    r
}

fn prime_factors(mut n: u64) -> Vec<u64> {
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

#[derive(Debug, Clone)]
pub struct Field {
    spec: FieldSpec,
    generator: u16,
    // exp has 2(q-1) entries so log a + log b never needs a modulo.
    exp: Vec<u16>,
    log: Vec<u16>,
}

impl Field {
    pub fn new(spec: FieldSpec) -> Field {
        let q = spec.order() as u64;
        let n = q - 1;
        let factors = prime_factors(n);
        let generator = (1..q as u32)
            .find(|&g| factors.iter().all(|&p| n == 1 || slow_pow(g, n / p, &spec) != 1))
            .expect("multiplicative group is cyclic") as u16;

        let mut exp = vec![0u16; 2 * n as usize];
        let mut log = vec![0u16; q as usize];
        let mut x = 1u32;
        for i in 0..n as usize {
            exp[i] = x as u16;
            exp[i + n as usize] = x as u16;
            log[x as usize] = i as u16;
            x = slow_mul(x, generator as u32, &spec);
        }
        Field { spec, generator, exp, log }
    }

    /// GF(2^s) with the default (smallest irreducible) polynomial.
    pub fn with_width(s: u32) -> Result<Field, FieldError> {
        Ok(Field::new(FieldSpec::default_for(s)?))
    }

    pub fn spec(&self) -> FieldSpec {
        self.spec
    }

    pub fn s(&self) -> u32 {
        self.spec.s
    }

    pub fn order(&self) -> u32 {
        self.spec.order()
    }

    pub fn generator(&self) -> FieldElement {
        self.generator
    }

    pub fn element(&self, value: u32) -> Result<FieldElement, FieldError> {
        if value >= self.order() {
            return Err(FieldError::OutOfRange { s: self.spec.s, value });
        }
        Ok(value as FieldElement)
    }

    #[inline]
    pub fn add(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        a ^ b
    }

    #[inline]
    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        if a == 0 || b == 0 {
            return 0;
        }
        self.exp[self.log[a as usize] as usize + self.log[b as usize] as usize]
    }

    pub fn pow(&self, mut a: FieldElement, mut e: u64) -> FieldElement {
        let mut r = 1;
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul(r, a);
            }
            a = self.mul(a, a);
            e >>= 1;
        }
        r
    }

    /// a^(2^s - 2).
    pub fn inv(&self, a: FieldElement) -> Result<FieldElement, FieldError> {
        if a == 0 {
            return Err(FieldError::ZeroInverse);
        }
        Ok(self.pow(a, self.order() as u64 - 2))
    }

    pub fn sample_nonzero<R: Rng + ?Sized>(&self, rng: &mut R) -> FieldElement {
        rng.gen_range(1..self.order()) as FieldElement
    }

    /// dst[i] ^= c * src[i]
    pub fn axpy(&self, dst: &mut [FieldElement], c: FieldElement, src: &[FieldElement]) {
        if c == 0 {
            return;
        }
        if c == 1 {
            for (d, s) in dst.iter_mut().zip(src) {
                *d ^= *s;
            }
            return;
        }
        let lc = self.log[c as usize] as usize;
        for (d, &s) in dst.iter_mut().zip(src) {
            if s != 0 {
                *d ^= self.exp[lc + self.log[s as usize] as usize];
            }
        }
    }

    pub fn scale_in_place(&self, v: &mut [FieldElement], c: FieldElement) {
        if c == 1 {
            return;
        }
        for x in v.iter_mut() {
            *x = self.mul(*x, c);
        }
    }
}
