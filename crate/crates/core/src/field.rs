//! Arithmetic in `GF(p^m)`.
//!
//! Elements are identified by their canonical index: the base-`p` digits of
//! the index are the coefficients of the element's polynomial representative
//! over `GF(p)`, lowest degree first. Index 0 is zero and index 1 is one.
//!
//! For `q <= 2^16` multiplication goes through exp/log tables built from the
//! least-index primitive element. Larger fields (up to `2^20`) fall back to
//! schoolbook polynomial multiplication modulo the defining polynomial.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::poly::Poly;

/// Largest field order for which exp/log tables are precomputed.
pub const TABLE_LIMIT: u32 = 1 << 16;
/// Largest field order accepted at all.
pub const MAX_ORDER: u32 = 1 << 20;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("{0} is not prime")]
    NotPrime(u32),
    #[error("modulus {0:?} is reducible over GF({1})")]
    ReducibleModulus(Vec<u32>, u32),
    #[error("modulus {modulus:?} is not a monic polynomial of degree {expected}")]
    DegreeMismatch { modulus: Vec<u32>, expected: u32 },
    #[error("modulus coefficient {0} is out of range for GF({1})")]
    CoefficientOutOfRange(u32, u32),
    #[error("extension degree must be at least 1")]
    ZeroDegree,
    #[error("field order {p}^{m} exceeds the supported maximum {MAX_ORDER}")]
    TooLarge { p: u32, m: u32 },
    #[error("division by zero")]
    DivisionByZero,
    #[error("argument must be nonzero")]
    ZeroArgument,
    #[error("quadratic character is undefined in characteristic 2")]
    EvenCharacteristic,
}

/// An element of a finite field, stored as its canonical index.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct FieldElement(u32);

impl FieldElement {
    pub const ZERO: FieldElement = FieldElement(0);
    pub const ONE: FieldElement = FieldElement(1);

    pub const fn from_index(index: u32) -> Self {
        FieldElement(index)
    }

    pub const fn index(self) -> u32 {
        self.0
    }

    pub const fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// JSON form of a field: `{p, m, modulus: [c0..cm]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldDescriptor {
    pub p: u32,
    pub m: u32,
    #[serde(default)]
    pub modulus: Option<Vec<u32>>,
}

struct Tables {
    // exp has length 2(q-1) so a product of two logs never needs reducing.
    exp: Vec<u32>,
    log: Vec<u32>,
}

struct Inner {
    p: u32,
    m: u32,
    q: u32,
    modulus: Vec<u32>,
    pow_p: Vec<u32>,
    primitive: FieldElement,
    tables: Option<Tables>,
}

/// A finite field `GF(p^m)`. Cheap to clone; all clones share one set of tables.
#[derive(Clone)]
pub struct Field(Arc<Inner>);

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Field")
            .field("p", &self.0.p)
            .field("m", &self.0.m)
            .field("modulus", &self.0.modulus)
            .finish()
    }
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.p == other.0.p && self.0.m == other.0.m && self.0.modulus == other.0.modulus)
    }
}

impl Eq for Field {}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// Distinct prime factors of `n`, ascending.
pub fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Writes `target` as `p^m` with `p` an odd prime, if possible.
pub fn find_odd_prime_power(target: u64) -> Option<(u32, u32)> {
    if target < 3 || target.is_multiple_of(2) {
        return None;
    }
    let factors = prime_factors(target);
    if factors.len() != 1 {
        return None;
    }
    let p = factors[0];
    let mut m = 0;
    let mut t = target;
    while t > 1 {
        t /= p;
        m += 1;
    }
    Some((u32::try_from(p).ok()?, m))
}

impl Field {
    /// The prime field `GF(p)`.
    pub fn prime(p: u32) -> Result<Field, FieldError> {
        Field::new(p, 1, None)
    }

    /// Builds `GF(p^m)`. Without an explicit modulus, the lexicographically least
    /// monic irreducible of degree `m` is used (coefficients compared from the
    /// constant term upward).
    pub fn new(p: u32, m: u32, modulus: Option<Vec<u32>>) -> Result<Field, FieldError> {
        if !is_prime(p as u64) {
            return Err(FieldError::NotPrime(p));
        }
        if m == 0 {
            return Err(FieldError::ZeroDegree);
        }
        let q = (p as u64)
            .checked_pow(m)
            .filter(|&q| q <= MAX_ORDER as u64)
            .ok_or(FieldError::TooLarge { p, m })? as u32;

        let modulus = match modulus {
            Some(coeffs) => {
                if coeffs.len() != m as usize + 1 || coeffs[m as usize] != 1 {
                    return Err(FieldError::DegreeMismatch {
                        modulus: coeffs,
                        expected: m,
                    });
                }
                if let Some(&c) = coeffs.iter().find(|&&c| c >= p) {
                    return Err(FieldError::CoefficientOutOfRange(c, p));
                }
                if m > 1 {
                    let base = Field::prime(p)?;
                    let poly = Poly::from_indices(&base, &coeffs)
                        .map_err(|_| FieldError::CoefficientOutOfRange(0, p))?;
                    if !poly.is_irreducible().unwrap_or(false) {
                        return Err(FieldError::ReducibleModulus(coeffs, p));
                    }
                }
                coeffs
            }
            None if m == 1 => vec![0, 1],
            None => {
                let base = Field::prime(p)?;
                let least = crate::poly::enumerate_monic_irreducibles(&base, m as usize, 1)
                    .expect("every degree has at least one monic irreducible");
                least[0].coefficient_indices()
            }
        };

        let pow_p = (0..m).map(|i| p.pow(i)).collect();
        let mut inner = Inner {
            p,
            m,
            q,
            modulus,
            pow_p,
            primitive: FieldElement::ONE,
            tables: None,
        };
        inner.primitive = find_primitive(&inner);
        if q <= TABLE_LIMIT {
            inner.tables = Some(build_tables(&inner));
        }
        Ok(Field(Arc::new(inner)))
    }

    pub fn from_descriptor(desc: &FieldDescriptor) -> Result<Field, FieldError> {
        let modulus = if desc.m == 1 {
            None
        } else {
            desc.modulus.clone()
        };
        Field::new(desc.p, desc.m, modulus)
    }

    pub fn descriptor(&self) -> FieldDescriptor {
        FieldDescriptor {
            p: self.0.p,
            m: self.0.m,
            modulus: Some(self.0.modulus.clone()),
        }
    }

    pub fn characteristic(&self) -> u32 {
        self.0.p
    }

    pub fn degree(&self) -> u32 {
        self.0.m
    }

    pub fn order(&self) -> u32 {
        self.0.q
    }

    /// Coefficients of the defining polynomial, constant term first.
    pub fn modulus(&self) -> &[u32] {
        &self.0.modulus
    }

    pub fn is_odd(&self) -> bool {
        self.0.p != 2
    }

    pub fn has_tables(&self) -> bool {
        self.0.tables.is_some()
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement::ZERO
    }

    pub fn one(&self) -> FieldElement {
        FieldElement::ONE
    }

    /// Element with the given canonical index, or `None` if out of range.
    pub fn element(&self, index: u32) -> Option<FieldElement> {
        (index < self.0.q).then_some(FieldElement(index))
    }

    /// The image of the integer `n` under `Z -> GF(p) -> GF(q)`.
    pub fn from_int(&self, n: i64) -> FieldElement {
        FieldElement(n.rem_euclid(self.0.p as i64) as u32)
    }

    /// All elements in canonical order.
    pub fn elements(&self) -> impl Iterator<Item = FieldElement> {
        (0..self.0.q).map(FieldElement)
    }

    /// Coefficients over `GF(p)` of an element, constant term first.
    pub fn digits(&self, a: FieldElement) -> Vec<u32> {
        let p = self.0.p;
        let mut idx = a.0;
        (0..self.0.m)
            .map(|_| {
                let d = idx % p;
                idx /= p;
                d
            })
            .collect()
    }

    pub fn from_digits(&self, digits: &[u32]) -> FieldElement {
        let p = self.0.p;
        FieldElement(digits.iter().rev().fold(0, |acc, &d| acc * p + d % p))
    }

    pub fn add(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        let inner = &*self.0;
        if inner.p == 2 {
            return FieldElement(a.0 ^ b.0);
        }
        if inner.m == 1 {
            return FieldElement((a.0 + b.0) % inner.p);
        }
        let p = inner.p;
        let (mut x, mut y) = (a.0, b.0);
        let mut out = 0;
        for &w in &inner.pow_p {
            out += ((x % p + y % p) % p) * w;
            x /= p;
            y /= p;
        }
        FieldElement(out)
    }

    pub fn neg(&self, a: FieldElement) -> FieldElement {
        let inner = &*self.0;
        if inner.p == 2 {
            return a;
        }
        if inner.m == 1 {
            return FieldElement((inner.p - a.0) % inner.p);
        }
        let p = inner.p;
        let mut x = a.0;
        let mut out = 0;
        for &w in &inner.pow_p {
            out += ((p - x % p) % p) * w;
            x /= p;
        }
        FieldElement(out)
    }

    pub fn sub(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        if a.0 == 0 || b.0 == 0 {
            return FieldElement::ZERO;
        }
        match &self.0.tables {
            Some(t) => FieldElement(t.exp[(t.log[a.0 as usize] + t.log[b.0 as usize]) as usize]),
            None => mul_slow(&self.0, a, b),
        }
    }

    pub fn inv(&self, a: FieldElement) -> Result<FieldElement, FieldError> {
        if a.0 == 0 {
            return Err(FieldError::DivisionByZero);
        }
        let q1 = self.0.q - 1;
        match &self.0.tables {
            Some(t) => {
                let l = t.log[a.0 as usize];
                Ok(FieldElement(t.exp[((q1 - l) % q1) as usize]))
            }
            None => Ok(self.pow(a, (q1 - 1) as u64)),
        }
    }

    pub fn div(&self, a: FieldElement, b: FieldElement) -> Result<FieldElement, FieldError> {
        Ok(self.mul(a, self.inv(b)?))
    }

    pub fn pow(&self, a: FieldElement, e: u64) -> FieldElement {
        if e == 0 {
            return FieldElement::ONE;
        }
        if a.0 == 0 {
            return FieldElement::ZERO;
        }
        let q1 = (self.0.q - 1) as u64;
        match &self.0.tables {
            Some(t) => {
                let l = t.log[a.0 as usize] as u64;
                FieldElement(t.exp[((l * (e % q1)) % q1) as usize])
            }
            None => pow_slow(&self.0, a, e),
        }
    }

    /// Least-index element of multiplicative order `q - 1`.
    pub fn primitive_element(&self) -> FieldElement {
        self.0.primitive
    }

    /// Multiplicative order of a nonzero element.
    pub fn multiplicative_order(&self, a: FieldElement) -> Result<u64, FieldError> {
        if a.is_zero() {
            return Err(FieldError::ZeroArgument);
        }
        let mut order = (self.0.q - 1) as u64;
        for r in prime_factors(order) {
            while order.is_multiple_of(r) && self.pow(a, order / r) == FieldElement::ONE {
                order /= r;
            }
        }
        Ok(order)
    }

    /// Euler's criterion: `a^((q-1)/2) = 1`.
    pub fn is_square(&self, a: FieldElement) -> Result<bool, FieldError> {
        if !self.is_odd() {
            return Err(FieldError::EvenCharacteristic);
        }
        if a.is_zero() {
            return Err(FieldError::ZeroArgument);
        }
        Ok(self.pow(a, ((self.0.q - 1) / 2) as u64) == FieldElement::ONE)
    }

    /// The quadratic-character parity `lg: GF(q)* -> GF(2)`; zero exactly on squares.
    pub fn lg_parity(&self, a: FieldElement) -> Result<u8, FieldError> {
        if !self.is_odd() {
            return Err(FieldError::EvenCharacteristic);
        }
        if a.is_zero() {
            return Err(FieldError::ZeroArgument);
        }
        match &self.0.tables {
            Some(t) => Ok((t.log[a.0 as usize] & 1) as u8),
            None => Ok(u8::from(!self.is_square(a)?)),
        }
    }
}

fn mul_slow(f: &Inner, a: FieldElement, b: FieldElement) -> FieldElement {
    let (p, m) = (f.p as u64, f.m as usize);
    if m == 1 {
        return FieldElement(((a.0 as u64 * b.0 as u64) % p) as u32);
    }
    let da = digits_of(f, a);
    let db = digits_of(f, b);
    let mut prod = vec![0u64; 2 * m - 1];
    for (i, &x) in da.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in db.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x * y) % p;
        }
    }
    // reduce by the monic modulus, highest degree first
    for deg in (m..prod.len()).rev() {
        let c = prod[deg];
        if c == 0 {
            continue;
        }
        prod[deg] = 0;
        for (i, &mc) in f.modulus[..m].iter().enumerate() {
            let k = deg - m + i;
            prod[k] = (prod[k] + (p - c) * mc as u64) % p;
        }
    }
    let mut idx = 0u64;
    for &d in prod[..m].iter().rev() {
        idx = idx * p + d;
    }
    FieldElement(idx as u32)
}

fn pow_slow(f: &Inner, a: FieldElement, mut e: u64) -> FieldElement {
    let mut base = a;
    let mut acc = FieldElement::ONE;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_slow(f, acc, base);
        }
        base = mul_slow(f, base, base);
        e >>= 1;
    }
    acc
}

fn digits_of(f: &Inner, a: FieldElement) -> Vec<u64> {
    let mut idx = a.0;
    (0..f.m)
        .map(|_| {
            let d = idx % f.p;
            idx /= f.p;
            d as u64
        })
        .collect()
}

fn find_primitive(f: &Inner) -> FieldElement {
    let order = (f.q - 1) as u64;
    let factors = prime_factors(order);
    (1..f.q)
        .map(FieldElement)
        .find(|&g| {
            factors
                .iter()
                .all(|&r| pow_slow(f, g, order / r) != FieldElement::ONE)
        })
        .expect("the multiplicative group of a finite field is cyclic")
}

fn build_tables(f: &Inner) -> Tables {
    let q = f.q as usize;
    let mut exp = vec![0u32; 2 * (q - 1)];
    let mut log = vec![0u32; q];
    let mut x = FieldElement::ONE;
    for i in 0..q - 1 {
        exp[i] = x.0;
        exp[i + q - 1] = x.0;
        log[x.0 as usize] = i as u32;
        x = mul_slow(f, x, f.primitive);
    }
    Tables { exp, log }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fe(i: u32) -> FieldElement {
        FieldElement::from_index(i)
    }

    #[test]
    fn construction_errors() {
        assert_eq!(Field::new(9, 1, None).unwrap_err(), FieldError::NotPrime(9));
        assert!(matches!(
            Field::new(3, 2, Some(vec![2, 0, 1])),
            Err(FieldError::ReducibleModulus(..))
        ));
        assert!(matches!(
            Field::new(3, 2, Some(vec![1, 1])),
            Err(FieldError::DegreeMismatch { .. })
        ));
        assert!(matches!(
            Field::new(3, 2, Some(vec![1, 0, 2])),
            Err(FieldError::DegreeMismatch { .. })
        ));
        assert!(matches!(
            Field::new(2, 21, None),
            Err(FieldError::TooLarge { .. })
        ));
    }

    #[test]
    fn small_fields() {
        let f3 = Field::prime(3).unwrap();
        assert_eq!(f3.order(), 3);
        assert_eq!(f3.primitive_element(), fe(2));

        let f9 = Field::new(3, 2, None).unwrap();
        assert_eq!(f9.modulus(), &[1, 0, 1]);

        let f8 = Field::new(2, 3, None).unwrap();
        assert_eq!(f8.order(), 8);
        // (1,0,1) < (1,1,0) comparing from the constant term up
        assert_eq!(f8.modulus(), &[1, 0, 1, 1]);
    }

    #[test]
    fn prime_field_products() {
        let f7 = Field::prime(7).unwrap();
        assert_eq!(f7.mul(fe(3), fe(5)), fe(1));
        assert_eq!(f7.primitive_element(), fe(3));
        assert_eq!(f7.inv(fe(0)), Err(FieldError::DivisionByZero));
        for a in 1..7 {
            assert_eq!(f7.mul(fe(a), f7.inv(fe(a)).unwrap()), fe(1));
        }
    }

    #[test]
    fn minus_one_is_fourth_power_of_primitive_in_gf9() {
        let f9 = Field::new(3, 2, None).unwrap();
        let alpha = f9.primitive_element();
        let minus_one = f9.neg(f9.one());
        assert_eq!(f9.pow(alpha, 4), minus_one);
        // hence x^2 + y^2 = (x - a^2 y)(x + a^2 y): a^4 = -1
        let a2 = f9.pow(alpha, 2);
        assert_eq!(f9.neg(f9.mul(a2, a2)), f9.one());
    }

    #[test]
    fn quadratic_character_gf7() {
        let f7 = Field::prime(7).unwrap();
        assert_eq!(f7.is_square(fe(2)), Ok(true));
        assert_eq!(f7.is_square(fe(3)), Ok(false));
        assert_eq!(f7.is_square(fe(1)), Ok(true));
        assert_eq!(f7.lg_parity(fe(4)), Ok(0));
        assert_eq!(f7.lg_parity(fe(3)), Ok(1));
        assert_eq!(f7.is_square(fe(0)), Err(FieldError::ZeroArgument));
        let f8 = Field::new(2, 3, None).unwrap();
        assert_eq!(f8.lg_parity(fe(3)), Err(FieldError::EvenCharacteristic));
    }

    #[test]
    fn odd_prime_powers() {
        assert_eq!(find_odd_prime_power(121), Some((11, 2)));
        assert_eq!(find_odd_prime_power(1024), None);
        assert_eq!(find_odd_prime_power(113), Some((113, 1)));
        assert_eq!(find_odd_prime_power(1029), None);
        assert_eq!(find_odd_prime_power(343), Some((7, 3)));
        assert_eq!(find_odd_prime_power(1), None);
    }

    #[test]
    fn table_free_path_matches_tables() {
        // GF(3^11) = 177147 is above the table limit.
        let big = Field::new(3, 11, None).unwrap();
        assert!(!big.has_tables());
        let g = big.primitive_element();
        let q1 = (big.order() - 1) as u64;
        assert_eq!(big.pow(g, q1), big.one());
        for r in prime_factors(q1) {
            assert_ne!(big.pow(g, q1 / r), big.one());
        }
        let a = big.element(12345).unwrap();
        assert_eq!(big.mul(a, big.inv(a).unwrap()), big.one());
        assert_eq!(
            big.lg_parity(big.mul(a, a)).unwrap(),
            0,
            "a square has even parity"
        );
    }

    #[test]
    fn descriptor_round_trip() {
        let f = Field::new(5, 2, None).unwrap();
        let json = serde_json::to_string(&f.descriptor()).unwrap();
        let back: FieldDescriptor = serde_json::from_str(&json).unwrap();
        assert_eq!(Field::from_descriptor(&back).unwrap(), f);
        let prime: FieldDescriptor = serde_json::from_str(r#"{"p":7,"m":1}"#).unwrap();
        assert_eq!(Field::from_descriptor(&prime).unwrap().order(), 7);
    }
}
