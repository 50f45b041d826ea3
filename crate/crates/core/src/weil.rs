//! Brute-force point counts on `y^2 = gamma * prod P_i(x)` and the Weil-type
//! bound `||V| - q| <= (d - 1) sqrt(q)` they must satisfy.

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::field::{Field, FieldElement, FieldError};
use crate::poly::{Poly, PolyError};
use crate::shadow::{ShadowCode, ShadowError};
use crate::surd;

/// Largest field order the `q^2` point scan will accept.
pub const POINT_BUDGET_Q: u32 = 1 << 14;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WeilError {
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Shadow(#[from] ShadowError),
    #[error("field order {0} exceeds the point-count budget {POINT_BUDGET_Q}")]
    BudgetExceeded(u32),
    #[error("curves need a field of odd order")]
    EvenField,
    #[error("gamma must be nonzero")]
    ZeroGamma,
    #[error("factor {0} is not monic and irreducible")]
    BadFactor(String),
    #[error("factor {0} appears twice")]
    DuplicateFactor(String),
    #[error("at least one factor is required")]
    NoFactors,
    #[error("message has {got} bits, code has {expected} basic polynomials")]
    MessageLength { expected: usize, got: usize },
    #[error("message is zero")]
    ZeroMessage,
}

/// `Q(x, y) = y^2 - gamma * prod P_i(x)` with distinct monic irreducible `P_i`.
#[derive(Debug, Clone)]
pub struct CurveSpec {
    field: Field,
    gamma: FieldElement,
    factors: Vec<Poly>,
    ell: usize,
}

impl CurveSpec {
    pub fn new(
        field: &Field,
        gamma: FieldElement,
        factors: Vec<Poly>,
    ) -> Result<CurveSpec, WeilError> {
        if !field.is_odd() {
            return Err(WeilError::EvenField);
        }
        if gamma.is_zero() || gamma.index() >= field.order() {
            return Err(WeilError::ZeroGamma);
        }
        for (i, p) in factors.iter().enumerate() {
            if p.field() != field {
                return Err(PolyError::FieldMismatch.into());
            }
            if p.is_constant() || !p.is_monic() || !p.is_irreducible()? {
                return Err(WeilError::BadFactor(p.to_text()));
            }
            if factors[..i].contains(p) {
                return Err(WeilError::DuplicateFactor(p.to_text()));
            }
        }
        let ell = factors.iter().filter_map(Poly::degree).sum();
        Ok(CurveSpec {
            field: field.clone(),
            gamma,
            factors,
            ell,
        })
    }

    /// Text form: factors separated by `;`, each in comma form.
    pub fn parse(field: &Field, gamma: u32, factors: &str) -> Result<CurveSpec, WeilError> {
        let gamma = field.element(gamma).ok_or(WeilError::ZeroGamma)?;
        let polys = factors
            .split(';')
            .filter(|s| !s.trim().is_empty())
            .map(|s| Poly::parse(field, s))
            .collect::<Result<Vec<_>, _>>()?;
        CurveSpec::new(field, gamma, polys)
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn gamma(&self) -> FieldElement {
        self.gamma
    }

    pub fn factors(&self) -> &[Poly] {
        &self.factors
    }

    /// Number of distinct roots of the product in the algebraic closure, `sum deg P_i`.
    pub fn ell(&self) -> usize {
        self.ell
    }

    /// `gamma * prod P_i(x)`.
    pub fn rhs(&self, x: FieldElement) -> FieldElement {
        let f = &self.field;
        self.factors
            .iter()
            .fold(self.gamma, |acc, p| f.mul(acc, p.eval(x)))
    }

    /// Points `(x, y)` above `x`: 2 for a nonzero square, 1 for zero, 0 otherwise.
    pub fn points_above(&self, x: FieldElement) -> u64 {
        let v = self.rhs(x);
        if v.is_zero() {
            1
        } else if self.field.is_square(v).expect("odd field, nonzero value") {
            2
        } else {
            0
        }
    }

    /// `|V_q(Q)|` by scanning every `x`.
    pub fn count_zeros(&self) -> Result<u64, WeilError> {
        let q = self.field.order();
        if q > POINT_BUDGET_Q {
            return Err(WeilError::BudgetExceeded(q));
        }
        Ok((0..q)
            .into_par_iter()
            .map(|x| self.points_above(FieldElement::from_index(x)))
            .sum())
    }

    pub fn check_point_bound(&self) -> Result<PointBoundReport, WeilError> {
        if self.factors.is_empty() {
            return Err(WeilError::NoFactors);
        }
        let count = self.count_zeros()?;
        let q = self.field.order() as u64;
        let d = self.ell as u64;
        // |count - q| <= (d - 1) sqrt(q)  <=>  (count - q)^2 <= (d - 1)^2 q
        let diff = count as i128 - q as i128;
        let ok = diff * diff <= ((d - 1) * (d - 1) * q) as i128;
        Ok(PointBoundReport {
            count,
            q,
            d,
            bound: (d - 1) as f64 * (q as f64).sqrt(),
            ok,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PointBoundReport {
    pub count: u64,
    pub q: u64,
    pub d: u64,
    /// `(d - 1) sqrt(q)`, for display; `ok` is decided in exact integers.
    pub bound: f64,
    pub ok: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WeightArgumentReport {
    pub count: u64,
    /// zero entries of the codeword
    pub zeros: u64,
    pub weight: u64,
    /// `count >= 2 * zeros`
    pub count_ok: bool,
    /// `zeros <= q/2 + (sqrt(q)/2)(d_B - 1)`
    pub zeros_ok: bool,
    pub zeros_bound: f64,
}

impl WeightArgumentReport {
    pub fn ok(&self) -> bool {
        self.count_ok && self.zeros_ok
    }
}

/// Replays the distance proof for one codeword: the curve built from the selected
/// basic polynomials has at least `2 m_v` points, and `m_v` obeys the Weil bound.
pub fn check_weight_argument(
    code: &ShadowCode,
    message: &[bool],
) -> Result<WeightArgumentReport, WeilError> {
    let basic = code.basic_set();
    if message.len() != basic.len() {
        return Err(WeilError::MessageLength {
            expected: basic.len(),
            got: message.len(),
        });
    }
    if !message.iter().any(|&b| b) {
        return Err(WeilError::ZeroMessage);
    }
    let field = code.field();
    let q = field.order();
    if q > POINT_BUDGET_Q {
        return Err(WeilError::BudgetExceeded(q));
    }
    let mut gamma = field.one();
    let mut factors = Vec::new();
    for (p, _) in basic.polys().iter().zip(message).filter(|(_, &b)| b) {
        if p.is_constant() {
            gamma = field.mul(gamma, p.leading());
        } else {
            factors.push(p.clone());
        }
    }
    let curve = CurveSpec::new(field, gamma, factors)?;
    let count = curve.count_zeros()?;

    // encode straight from G so degenerate codes with dependent rows work too
    let g = code.generator();
    let mut word = vec![false; g.ncols()];
    for (i, _) in message.iter().enumerate().filter(|(_, &b)| b) {
        for (a, b) in word.iter_mut().zip(g.row_bits(i)) {
            *a ^= b;
        }
    }
    let weight = word.iter().filter(|&&b| b).count() as u64;
    let zeros = code.length() as u64 - weight;
    let d_b = basic.total_degree() as i128;
    // 2 m_v - q <= (d_B - 1) sqrt(q)
    let zeros_ok = surd::le_sqrt(2 * zeros as i128 - q as i128, d_b - 1, q as u128);
    Ok(WeightArgumentReport {
        count,
        zeros,
        weight,
        count_ok: count >= 2 * zeros,
        zeros_ok,
        zeros_bound: q as f64 / 2.0 + (q as f64).sqrt() / 2.0 * (d_b - 1) as f64,
    })
}
