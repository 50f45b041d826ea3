//! Reed-Solomon outer code over `GF(2^(m+1))` concatenated with the binary
//! first-order Reed-Muller code `RM(1, m)`.
//!
//! Encoder pipeline for a `K(m+1)`-bit message:
//! 1. split into `K` chunks of `m+1` bits,
//! 2. map each chunk to a field symbol with `theta(v) = sum v_i alpha^i`,
//! 3. RS-encode by evaluation at `N` distinct points,
//! 4. map each RS symbol back to `m+1` bits,
//! 5. RM-encode each chunk to `2^m` bits and concatenate.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::binary::{BinaryCode, BitMatrix};
use crate::field::{Field, FieldElement, FieldError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConcatError {
    #[error("invalid parameters m={m}, N={n}, K={k}: need m >= 1 and 1 <= K <= N <= 2^(m+1)")]
    InvalidParams { m: u32, n: usize, k: usize },
    #[error("message has length {got}, expected {expected}")]
    LengthMismatch { expected: usize, got: usize },
    #[error(transparent)]
    Field(#[from] FieldError),
}

/// Coordinate-vector isomorphism `GF(2)^(m+1) -> GF(2^(m+1))` on the power basis
/// `1, alpha, ..., alpha^m` of the least-index primitive element.
#[derive(Debug, Clone)]
pub struct ThetaMap {
    field: Field,
    basis: Vec<FieldElement>,
    // inverse[element index] = coordinate bits packed little-endian
    inverse: Vec<u32>,
}

impl ThetaMap {
    pub fn new(field: &Field) -> ThetaMap {
        let width = field.degree() as usize;
        let alpha = field.primitive_element();
        let basis: Vec<FieldElement> = (0..width as u64).map(|i| field.pow(alpha, i)).collect();
        let mut inverse = vec![u32::MAX; field.order() as usize];
        for v in 0..field.order() {
            let x = basis
                .iter()
                .enumerate()
                .filter(|(i, _)| (v >> i) & 1 == 1)
                .fold(FieldElement::ZERO, |acc, (_, &b)| field.add(acc, b));
            inverse[x.index() as usize] = v;
        }
        debug_assert!(
            inverse.iter().all(|&v| v != u32::MAX),
            "power basis is a basis"
        );
        ThetaMap {
            field: field.clone(),
            basis,
            inverse,
        }
    }

    pub fn basis(&self) -> &[FieldElement] {
        &self.basis
    }

    pub fn width(&self) -> usize {
        self.basis.len()
    }

    pub fn apply(&self, bits: &[bool]) -> FieldElement {
        bits.iter()
            .zip(&self.basis)
            .filter(|(&b, _)| b)
            .fold(FieldElement::ZERO, |acc, (_, &x)| self.field.add(acc, x))
    }

    pub fn invert(&self, x: FieldElement) -> Vec<bool> {
        let v = self.inverse[x.index() as usize];
        (0..self.width()).map(|i| (v >> i) & 1 == 1).collect()
    }
}

/// `(N, K, m)` concatenation parameters and the field `GF(2^(m+1))`.
#[derive(Debug, Clone)]
pub struct ConcatSpec {
    m: u32,
    n: usize,
    k: usize,
    field: Field,
    theta: ThetaMap,
    points: Vec<FieldElement>,
}

/// Parameter record of a concatenated code.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConcatParams {
    pub m: u32,
    #[serde(rename = "N")]
    pub outer_length: usize,
    #[serde(rename = "K")]
    pub outer_dim: usize,
    pub n: usize,
    pub k: usize,
    pub dmin_lb: usize,
    /// `(K/N)(m+1)/2^m`
    pub rate: f64,
    pub rate_num: u64,
    pub rate_den: u64,
    /// `dmin_lb / n`
    pub relative_distance_lb: f64,
    /// `(1 - K/N)/2`
    pub relative_distance_rs_bound: f64,
}

impl ConcatSpec {
    pub fn new(m: u32, outer_length: usize, outer_dim: usize) -> Result<ConcatSpec, ConcatError> {
        let bad = ConcatError::InvalidParams {
            m,
            n: outer_length,
            k: outer_dim,
        };
        if m == 0 || m > 19 {
            return Err(bad);
        }
        let q = 1usize << (m + 1);
        if outer_dim == 0 || outer_dim > outer_length || outer_length > q {
            return Err(bad);
        }
        let field = Field::new(2, m + 1, None)?;
        // first N nonzero elements; zero is appended only when N = q
        let mut points: Vec<FieldElement> = (1..q as u32)
            .take(outer_length)
            .map(FieldElement::from_index)
            .collect();
        if outer_length == q {
            points.push(FieldElement::ZERO);
        }
        Ok(ConcatSpec {
            m,
            n: outer_length,
            k: outer_dim,
            theta: ThetaMap::new(&field),
            field,
            points,
        })
    }

    /// The `N = 2^m` preset, where outer and inner lengths agree over their fields.
    pub fn balanced(m: u32, outer_dim: usize) -> Result<ConcatSpec, ConcatError> {
        ConcatSpec::new(m, 1usize << m, outer_dim)
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn outer_length(&self) -> usize {
        self.n
    }

    pub fn outer_dim(&self) -> usize {
        self.k
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn theta(&self) -> &ThetaMap {
        &self.theta
    }

    pub fn evaluation_points(&self) -> &[FieldElement] {
        &self.points
    }

    pub fn length(&self) -> usize {
        self.n << self.m
    }

    pub fn dimension(&self) -> usize {
        self.k * (self.m as usize + 1)
    }

    pub fn params(&self) -> ConcatParams {
        let n = self.length();
        let dmin_lb = (self.n - self.k + 1) << (self.m - 1);
        let rate_num = self.dimension() as u64;
        let rate_den = n as u64;
        ConcatParams {
            m: self.m,
            outer_length: self.n,
            outer_dim: self.k,
            n,
            k: self.dimension(),
            dmin_lb,
            rate: rate_num as f64 / rate_den as f64,
            rate_num,
            rate_den,
            relative_distance_lb: dmin_lb as f64 / n as f64,
            relative_distance_rs_bound: (1.0 - self.k as f64 / self.n as f64) / 2.0,
        }
    }

    /// `c_i = sum_j msg_j * beta_i^j` over the evaluation points.
    pub fn rs_encode(&self, message: &[FieldElement]) -> Result<Vec<FieldElement>, ConcatError> {
        if message.len() != self.k {
            return Err(ConcatError::LengthMismatch {
                expected: self.k,
                got: message.len(),
            });
        }
        let f = &self.field;
        Ok(self
            .points
            .iter()
            .map(|&beta| {
                message
                    .iter()
                    .rev()
                    .fold(FieldElement::ZERO, |acc, &c| f.add(f.mul(acc, beta), c))
            })
            .collect())
    }

    pub fn concat_encode(&self, message: &[bool]) -> Result<Vec<bool>, ConcatError> {
        let width = self.m as usize + 1;
        if message.len() != self.dimension() {
            return Err(ConcatError::LengthMismatch {
                expected: self.dimension(),
                got: message.len(),
            });
        }
        let symbols: Vec<FieldElement> = message
            .chunks(width)
            .map(|chunk| self.theta.apply(chunk))
            .collect();
        let outer = self.rs_encode(&symbols)?;
        let mut out = Vec::with_capacity(self.length());
        for s in outer {
            out.extend(rm1_encode(self.m, &self.theta.invert(s))?);
        }
        Ok(out)
    }

    /// Generator matrix obtained by encoding the unit messages.
    pub fn generator(&self) -> Result<BitMatrix, ConcatError> {
        let k = self.dimension();
        let mut rows = Vec::with_capacity(k);
        for i in 0..k {
            let mut msg = vec![false; k];
            msg[i] = true;
            rows.push(self.concat_encode(&msg)?);
        }
        Ok(BitMatrix::from_rows(&rows))
    }

    pub fn binary_code(&self) -> Result<BinaryCode, ConcatError> {
        Ok(BinaryCode::from_generator(&self.generator()?))
    }
}

/// `RM(1, m)` encoding: bit `t` is `msg_0 + sum_{i>=1} msg_i * bit_{i-1}(t)`.
pub fn rm1_encode(m: u32, message: &[bool]) -> Result<Vec<bool>, ConcatError> {
    let width = m as usize + 1;
    if message.len() != width {
        return Err(ConcatError::LengthMismatch {
            expected: width,
            got: message.len(),
        });
    }
    Ok((0..1usize << m)
        .map(|t| {
            message[1..]
                .iter()
                .enumerate()
                .fold(message[0], |acc, (i, &b)| acc ^ (b && (t >> i) & 1 == 1))
        })
        .collect())
}
