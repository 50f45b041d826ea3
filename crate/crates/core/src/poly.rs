//! Univariate polynomials over a [`Field`].

use std::fmt;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::field::{prime_factors, Field, FieldElement};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("polynomials are defined over different fields")]
    FieldMismatch,
    #[error("operation requires a non-constant polynomial")]
    ConstantInput,
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("requested {requested} monic irreducibles of degree {degree}, only {available} exist")]
    ExhaustedSupply {
        requested: usize,
        degree: usize,
        available: u64,
    },
    #[error("coefficient {0} is not an element of the field")]
    CoefficientOutOfRange(u32),
    #[error("cannot parse polynomial text {0:?}")]
    Parse(String),
    #[error("empty polynomial list")]
    Empty,
}

/// Polynomial with coefficients stored lowest degree first and no trailing zeros.
#[derive(Clone, PartialEq, Eq)]
pub struct Poly {
    field: Field,
    coeffs: Vec<FieldElement>,
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly[{}]", self.to_text())
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match (i, c.index()) {
                (0, v) => write!(f, "{v}")?,
                (1, 1) => write!(f, "x")?,
                (1, v) => write!(f, "{v}x")?,
                (e, 1) => write!(f, "x^{e}")?,
                (e, v) => write!(f, "{v}x^{e}")?,
            }
        }
        Ok(())
    }
}

impl Poly {
    pub fn new(field: &Field, mut coeffs: Vec<FieldElement>) -> Poly {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly {
            field: field.clone(),
            coeffs,
        }
    }

    pub fn from_indices(field: &Field, indices: &[u32]) -> Result<Poly, PolyError> {
        let coeffs = indices
            .iter()
            .map(|&i| field.element(i).ok_or(PolyError::CoefficientOutOfRange(i)))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Poly::new(field, coeffs))
    }

    /// Parses the comma-separated, constant-term-first text form, e.g. `"1,0,1"`.
    pub fn parse(field: &Field, text: &str) -> Result<Poly, PolyError> {
        let text = text.trim();
        if text.is_empty() {
            return Err(PolyError::Parse(text.to_string()));
        }
        let indices = text
            .split(',')
            .map(|t| t.trim().parse::<u32>())
            .collect::<Result<Vec<_>, _>>()
            .map_err(|_| PolyError::Parse(text.to_string()))?;
        Poly::from_indices(field, &indices)
    }

    /// Inverse of [`Poly::parse`]. The zero polynomial renders as `"0"`.
    pub fn to_text(&self) -> String {
        if self.coeffs.is_empty() {
            return "0".to_string();
        }
        self.coeffs
            .iter()
            .map(|c| c.index().to_string())
            .collect::<Vec<_>>()
            .join(",")
    }

    pub fn zero(field: &Field) -> Poly {
        Poly::new(field, Vec::new())
    }

    pub fn constant(field: &Field, c: FieldElement) -> Poly {
        Poly::new(field, vec![c])
    }

    pub fn one(field: &Field) -> Poly {
        Poly::constant(field, FieldElement::ONE)
    }

    pub fn x(field: &Field) -> Poly {
        Poly::new(field, vec![FieldElement::ZERO, FieldElement::ONE])
    }

    /// The monic linear polynomial `x - root`.
    pub fn linear(field: &Field, root: FieldElement) -> Poly {
        Poly::new(field, vec![field.neg(root), FieldElement::ONE])
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn coeffs(&self) -> &[FieldElement] {
        &self.coeffs
    }

    pub fn coefficient_indices(&self) -> Vec<u32> {
        self.coeffs.iter().map(|c| c.index()).collect()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn leading(&self) -> FieldElement {
        self.coeffs.last().copied().unwrap_or(FieldElement::ZERO)
    }

    pub fn is_monic(&self) -> bool {
        self.leading() == FieldElement::ONE
    }

    fn check_field(&self, other: &Poly) -> Result<(), PolyError> {
        if self.field == other.field {
            Ok(())
        } else {
            Err(PolyError::FieldMismatch)
        }
    }

    /// Horner evaluation.
    pub fn eval(&self, x: FieldElement) -> FieldElement {
        let f = &self.field;
        self.coeffs
            .iter()
            .rev()
            .fold(FieldElement::ZERO, |acc, &c| f.add(f.mul(acc, x), c))
    }

    pub fn add(&self, other: &Poly) -> Result<Poly, PolyError> {
        self.check_field(other)?;
        Ok(self.add_unchecked(other))
    }

    fn add_unchecked(&self, other: &Poly) -> Poly {
        let f = &self.field;
        let len = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..len)
            .map(|i| {
                let a = self.coeffs.get(i).copied().unwrap_or_default();
                let b = other.coeffs.get(i).copied().unwrap_or_default();
                f.add(a, b)
            })
            .collect();
        Poly::new(f, coeffs)
    }

    pub fn neg(&self) -> Poly {
        let f = &self.field;
        Poly::new(f, self.coeffs.iter().map(|&c| f.neg(c)).collect())
    }

    pub fn sub(&self, other: &Poly) -> Result<Poly, PolyError> {
        self.check_field(other)?;
        Ok(self.add_unchecked(&other.neg()))
    }

    pub fn mul(&self, other: &Poly) -> Result<Poly, PolyError> {
        self.check_field(other)?;
        Ok(self.mul_unchecked(other))
    }

    fn mul_unchecked(&self, other: &Poly) -> Poly {
        let f = &self.field;
        if self.is_zero() || other.is_zero() {
            return Poly::zero(f);
        }
        let mut out = vec![FieldElement::ZERO; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = f.add(out[i + j], f.mul(a, b));
            }
        }
        Poly::new(f, out)
    }

    pub fn scale(&self, c: FieldElement) -> Poly {
        let f = &self.field;
        Poly::new(f, self.coeffs.iter().map(|&a| f.mul(a, c)).collect())
    }

    /// Scales to leading coefficient one. The zero polynomial is returned as is.
    pub fn monic(&self) -> Poly {
        match self.field.inv(self.leading()) {
            Ok(inv) => self.scale(inv),
            Err(_) => self.clone(),
        }
    }

    pub fn div_rem(&self, divisor: &Poly) -> Result<(Poly, Poly), PolyError> {
        self.check_field(divisor)?;
        let f = &self.field;
        let dd = divisor.degree().ok_or(PolyError::DivisionByZero)?;
        let lead_inv = f
            .inv(divisor.leading())
            .expect("nonzero leading coefficient");
        let mut rem = self.coeffs.clone();
        let Some(nd) = self.degree().filter(|&nd| nd >= dd) else {
            return Ok((Poly::zero(f), self.clone()));
        };
        let mut quot = vec![FieldElement::ZERO; nd - dd + 1];
        for k in (0..=nd - dd).rev() {
            let c = f.mul(rem[k + dd], lead_inv);
            if c.is_zero() {
                continue;
            }
            quot[k] = c;
            for (j, &d) in divisor.coeffs.iter().enumerate() {
                rem[k + j] = f.sub(rem[k + j], f.mul(c, d));
            }
        }
        rem.truncate(dd);
        Ok((Poly::new(f, quot), Poly::new(f, rem)))
    }

    pub fn rem(&self, divisor: &Poly) -> Result<Poly, PolyError> {
        Ok(self.div_rem(divisor)?.1)
    }

    /// Monic greatest common divisor; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &Poly) -> Result<Poly, PolyError> {
        self.check_field(other)?;
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b)?;
            a = b;
            b = r;
        }
        Ok(a.monic())
    }

    /// `self^e mod modulus` by square and multiply.
    pub fn pow_mod(&self, mut e: u64, modulus: &Poly) -> Result<Poly, PolyError> {
        let mut base = self.rem(modulus)?;
        let mut acc = Poly::one(&self.field).rem(modulus)?;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_unchecked(&base).rem(modulus)?;
            }
            base = base.mul_unchecked(&base).rem(modulus)?;
            e >>= 1;
        }
        Ok(acc)
    }

    /// Rabin's test: `f` of degree `d` is irreducible iff `x^(q^d) = x mod f` and
    /// `gcd(x^(q^(d/l)) - x, f) = 1` for each prime `l | d`.
    pub fn is_irreducible(&self) -> Result<bool, PolyError> {
        let d = match self.degree() {
            Some(d) if d >= 1 => d,
            _ => return Err(PolyError::ConstantInput),
        };
        if d == 1 {
            return Ok(true);
        }
        let f = self.monic();
        let x = Poly::x(&self.field);
        let q = self.field.order() as u64;
        let frobenius = |times: usize| -> Result<Poly, PolyError> {
            let mut r = x.rem(&f)?;
            for _ in 0..times {
                r = r.pow_mod(q, &f)?;
            }
            Ok(r)
        };
        for l in prime_factors(d as u64) {
            let h = frobenius(d / l as usize)?.sub(&x)?;
            if h.gcd(&f)?.degree() != Some(0) {
                return Ok(false);
            }
        }
        Ok(frobenius(d)?.sub(&x)?.rem(&f)?.is_zero())
    }
}

/// Number of monic irreducibles of degree `d` over `GF(q)`: `(1/d) sum_{e|d} mu(e) q^(d/e)`.
pub fn monic_irreducible_count(q: u64, d: usize) -> u64 {
    if d == 0 {
        return 0;
    }
    let d64 = d as u64;
    let mut total: i128 = 0;
    for e in 1..=d64 {
        if !d64.is_multiple_of(e) {
            continue;
        }
        let mu = mobius(e);
        if mu != 0 {
            total += mu as i128 * (q as i128).pow((d64 / e) as u32);
        }
    }
    (total / d as i128) as u64
}

fn mobius(n: u64) -> i32 {
    let factors = prime_factors(n);
    let squarefree = factors.iter().product::<u64>() == n;
    match (squarefree, factors.len() % 2) {
        (false, _) => 0,
        (true, 0) => 1,
        (true, _) => -1,
    }
}

/// Monic polynomial of degree `d` whose lower coefficients are given by `rank`
/// in lexicographic order, constant term as the most significant key.
fn monic_from_rank(field: &Field, d: usize, mut rank: u64) -> Poly {
    let q = field.order() as u64;
    let mut coeffs = vec![FieldElement::ZERO; d + 1];
    for i in (0..d).rev() {
        coeffs[i] = FieldElement::from_index((rank % q) as u32);
        rank /= q;
    }
    coeffs[d] = FieldElement::ONE;
    Poly::new(field, coeffs)
}

/// The first `count` monic irreducibles of degree `d`, ordered lexicographically by
/// coefficient index starting from the constant term.
pub fn enumerate_monic_irreducibles(
    field: &Field,
    d: usize,
    count: usize,
) -> Result<Vec<Poly>, PolyError> {
    if d == 0 {
        return Err(PolyError::ConstantInput);
    }
    let q = field.order() as u64;
    let available = monic_irreducible_count(q, d);
    if count as u64 > available {
        return Err(PolyError::ExhaustedSupply {
            requested: count,
            degree: d,
            available,
        });
    }
    let total = q.checked_pow(d as u32).unwrap_or(u64::MAX);
    let mut out = Vec::with_capacity(count);
    let mut rank = 0;
    while out.len() < count && rank < total {
        let p = monic_from_rank(field, d, rank);
        if p.is_irreducible()? {
            out.push(p);
        }
        rank += 1;
    }
    Ok(out)
}

/// `count` distinct monic irreducibles of degree `d` drawn uniformly with a seeded RNG,
/// returned in lexicographic order.
pub fn random_monic_irreducibles(
    field: &Field,
    d: usize,
    count: usize,
    seed: u64,
) -> Result<Vec<Poly>, PolyError> {
    if d == 0 {
        return Err(PolyError::ConstantInput);
    }
    let q = field.order() as u64;
    let available = monic_irreducible_count(q, d);
    if count as u64 > available {
        return Err(PolyError::ExhaustedSupply {
            requested: count,
            degree: d,
            available,
        });
    }
    let total = q.checked_pow(d as u32).unwrap_or(u64::MAX);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut ranks = std::collections::BTreeSet::new();
    while ranks.len() < count {
        let rank = rng.gen_range(0..total);
        if !ranks.contains(&rank) && monic_from_rank(field, d, rank).is_irreducible()? {
            ranks.insert(rank);
        }
    }
    Ok(ranks
        .into_iter()
        .map(|r| monic_from_rank(field, d, r))
        .collect())
}

/// Product of the polynomials and its degree. Constants contribute degree zero.
pub fn product_and_degree(polys: &[Poly]) -> Result<(Poly, usize), PolyError> {
    let first = polys.first().ok_or(PolyError::Empty)?;
    let mut acc = Poly::one(first.field());
    for p in polys {
        acc = acc.mul(p)?;
    }
    let degree = acc.degree().unwrap_or(0);
    Ok((acc, degree))
}

/// For monic irreducibles and unit constants: true iff the non-constant entries are
/// pairwise distinct, i.e. their product has no repeated root in the algebraic closure.
pub fn is_squarefree_product(polys: &[Poly]) -> bool {
    let nonconst: Vec<&Poly> = polys.iter().filter(|p| !p.is_constant()).collect();
    nonconst
        .iter()
        .enumerate()
        .all(|(i, p)| nonconst[i + 1..].iter().all(|r| r != p))
}
