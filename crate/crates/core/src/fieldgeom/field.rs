//! Prime-field arithmetic over `F_q`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Serialize, Serializer};

use super::FieldGeomError;

/// Largest supported modulus. Products are formed in `u128`, so this only
/// keeps enumeration-based checks from being asked for absurd fields.
pub const MAX_MODULUS: u64 = 1 << 31;

pub fn is_prime(q: u64) -> bool {
    if q < 2 {
        return false;
    }
    if q < 4 {
        return true;
    }
    if q.is_multiple_of(2) {
        return false;
    }
    let mut d = 3;
    while d * d <= q {
        if q.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// The field `F_q`. Primality of `q` is checked once, here; every
/// [`FieldElement`] is minted by a `PrimeField`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PrimeField {
    q: u64,
}

impl PrimeField {
    pub fn new(q: u64) -> Result<Self, FieldGeomError> {
        if q > MAX_MODULUS {
            return Err(FieldGeomError::ModulusTooLarge(q));
        }
        if !is_prime(q) {
            return Err(FieldGeomError::NotPrime(q));
        }
        Ok(PrimeField { q })
    }

    pub fn modulus(&self) -> u64 {
        self.q
    }

    pub fn element(&self, value: u64) -> FieldElement {
        FieldElement {
            value: value % self.q,
            modulus: self.q,
        }
    }

    /// Reduces a signed integer into the field.
    pub fn from_i64(&self, value: i64) -> FieldElement {
        self.element(value.rem_euclid(self.q as i64) as u64)
    }

    pub fn zero(&self) -> FieldElement {
        self.element(0)
    }

    pub fn one(&self) -> FieldElement {
        self.element(1)
    }

    /// All elements `0..q` in increasing order.
    pub fn elements(self) -> impl Iterator<Item = FieldElement> {
        (0..self.q).map(move |v| self.element(v))
    }

    /// Nonzero elements in increasing order.
    pub fn units(self) -> impl Iterator<Item = FieldElement> {
        (1..self.q).map(move |v| self.element(v))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldElement {
    value: u64,
    modulus: u64,
}

impl FieldElement {
    pub fn value(&self) -> u64 {
        self.value
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub(crate) fn one_like(self) -> Self {
        FieldElement {
            value: 1,
            modulus: self.modulus,
        }
    }

    pub(crate) fn zero_like(self) -> Self {
        FieldElement {
            value: 0,
            modulus: self.modulus,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.value == 0
    }

    pub fn is_one(&self) -> bool {
        self.value == 1
    }

    pub fn pow(self, mut exp: u64) -> Self {
        let mut base = self;
        let mut acc = FieldElement {
            value: 1 % self.modulus,
            modulus: self.modulus,
        };
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * base;
            }
            base = base * base;
            exp >>= 1;
        }
        acc
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(self.pow(self.modulus - 2))
        }
    }

    /// Exact multiplicative order of a nonzero element.
    pub fn multiplicative_order(self) -> Option<u64> {
        if self.is_zero() {
            return None;
        }
        let mut acc = self;
        let mut k = 1;
        while !acc.is_one() {
            acc = acc * self;
            k += 1;
        }
        Some(k)
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

impl Serialize for FieldElement {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_u64(self.value)
    }
}

impl Add for FieldElement {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        debug_assert_eq!(self.modulus, rhs.modulus);
        let s = (self.value as u128 + rhs.value as u128) % self.modulus as u128;
        FieldElement {
            value: s as u64,
            modulus: self.modulus,
        }
    }
}

impl Sub for FieldElement {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl Neg for FieldElement {
    type Output = Self;
    fn neg(self) -> Self {
        FieldElement {
            value: (self.modulus - self.value) % self.modulus,
            modulus: self.modulus,
        }
    }
}

impl Mul for FieldElement {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        debug_assert_eq!(self.modulus, rhs.modulus);
        let p = (self.value as u128 * rhs.value as u128) % self.modulus as u128;
        FieldElement {
            value: p as u64,
            modulus: self.modulus,
        }
    }
}

/// Smallest element of exact multiplicative order `n` in `F_q^*`.
pub fn primitive_nth_root(q: u64, n: u64) -> Result<FieldElement, FieldGeomError> {
    if n < 2 {
        return Err(FieldGeomError::OrderTooSmall(n));
    }
    let field = PrimeField::new(q)?;
    if !(q - 1).is_multiple_of(n) {
        return Err(FieldGeomError::NDoesNotDivide { n, q });
    }
    field
        .units()
        .find(|x| x.pow(n).is_one() && x.multiplicative_order() == Some(n))
        .ok_or(FieldGeomError::NDoesNotDivide { n, q })
}
