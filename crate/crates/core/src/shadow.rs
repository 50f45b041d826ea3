//! Binary shadow codes `C(E, B)`.
//!
//! A basic set `B` holds monic irreducible polynomials that do not vanish on the
//! evaluation set `E`, plus optionally one primitive constant. Each basic
//! polynomial `P` contributes the generator row `(lg(P(b)) : b in E)`, where `lg`
//! is the quadratic-character parity. Products of basic polynomials map to sums
//! of rows, so the row space is the whole code.
//!
//! Two presets are provided:
//! - degree at most one: `B = {x - l : l not in E} + {alpha}`,
//! - degree two: the first `k` monic irreducible quadratics, with `E = GF(q)`.

use std::cmp::Ordering;
use std::fmt;

use rayon::prelude::*;
use thiserror::Error;

use crate::binary::{BinaryCode, BitMatrix};
use crate::field::{find_odd_prime_power, Field, FieldElement, FieldError};
use crate::poly::{enumerate_monic_irreducibles, random_monic_irreducibles, Poly, PolyError};
use crate::surd;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ShadowError {
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error("shadow codes need a field of odd order, got q = {0}")]
    EvenField(u32),
    #[error("evaluation set is empty")]
    EmptyEvaluationSet,
    #[error("evaluation point {0} is not in GF({1})")]
    PointOutOfRange(u32, u32),
    #[error("evaluation point {0} appears twice")]
    DuplicatePoint(u32),
    #[error("evaluation set of size {size} does not fit in GF({q})")]
    EvaluationSetTooLarge { size: usize, q: u32 },
    #[error("basic set is empty")]
    EmptyBasicSet,
    #[error("basic polynomial {0} is not monic")]
    NotMonic(String),
    #[error("basic polynomial {0} is not irreducible")]
    NotIrreducible(String),
    #[error("basic polynomial {0} appears twice")]
    DuplicateBasic(String),
    #[error("constant basic polynomial {0} is not a primitive element")]
    NonPrimitiveConstant(u32),
    #[error("basic set holds more than one constant")]
    MultipleConstants,
    #[error("basic polynomial {poly} vanishes at evaluation point {beta}")]
    VanishesOnE { poly: String, beta: u32 },
    #[error("polynomial belongs to a different field than the evaluation set")]
    FieldMismatch,
    #[error("the evaluation set is the whole field, so no linear basic polynomial exists")]
    EvaluationSetIsFullField,
    #[error("q = n + k - 1 = {q} is not an odd prime power (nearest admissible: {nearest})")]
    NoAdmissibleField { q: u64, nearest: u64 },
    #[error("distance bound is not positive ({0})")]
    NonpositiveDelta(Delta),
    #[error("generator rank {rank} differs from |B| = {expected} although the bound is positive")]
    DimensionDefect { rank: usize, expected: usize },
    #[error("bound mismatch: generic {generic} vs degree-one closed form {closed}")]
    BoundMismatch { generic: Delta, closed: Delta },
}

/// Ordered subset of an odd-order field.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EvaluationSet {
    field: Field,
    points: Vec<FieldElement>,
}

impl EvaluationSet {
    /// Sorts the points; rejects duplicates, empty sets and even-order fields.
    pub fn new(field: &Field, mut points: Vec<FieldElement>) -> Result<EvaluationSet, ShadowError> {
        if !field.is_odd() {
            return Err(ShadowError::EvenField(field.order()));
        }
        if points.is_empty() {
            return Err(ShadowError::EmptyEvaluationSet);
        }
        points.sort();
        if let Some(w) = points.windows(2).find(|w| w[0] == w[1]) {
            return Err(ShadowError::DuplicatePoint(w[0].index()));
        }
        if let Some(last) = points.last().filter(|p| p.index() >= field.order()) {
            return Err(ShadowError::PointOutOfRange(last.index(), field.order()));
        }
        Ok(EvaluationSet {
            field: field.clone(),
            points,
        })
    }

    /// The first `n` elements in canonical order.
    pub fn first_n(field: &Field, n: usize) -> Result<EvaluationSet, ShadowError> {
        if n > field.order() as usize {
            return Err(ShadowError::EvaluationSetTooLarge {
                size: n,
                q: field.order(),
            });
        }
        EvaluationSet::new(field, field.elements().take(n).collect())
    }

    pub fn full(field: &Field) -> Result<EvaluationSet, ShadowError> {
        EvaluationSet::new(field, field.elements().collect())
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn points(&self) -> &[FieldElement] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn contains(&self, x: FieldElement) -> bool {
        self.points.binary_search(&x).is_ok()
    }

    /// Field elements outside the set, in canonical order.
    pub fn complement(&self) -> Vec<FieldElement> {
        self.field
            .elements()
            .filter(|&x| !self.contains(x))
            .collect()
    }
}

/// Validated set of basic polynomials for an evaluation set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BasicSet {
    polys: Vec<Poly>,
    total_degree: usize,
    has_constant: bool,
}

impl BasicSet {
    pub fn new(eval: &EvaluationSet, polys: Vec<Poly>) -> Result<BasicSet, ShadowError> {
        if polys.is_empty() {
            return Err(ShadowError::EmptyBasicSet);
        }
        let field = eval.field();
        let mut has_constant = false;
        let mut total_degree = 0;
        for (i, p) in polys.iter().enumerate() {
            if p.field() != field {
                return Err(ShadowError::FieldMismatch);
            }
            if polys[..i].contains(p) {
                return Err(ShadowError::DuplicateBasic(p.to_text()));
            }
            match p.degree() {
                None | Some(0) => {
                    if has_constant {
                        return Err(ShadowError::MultipleConstants);
                    }
                    let c = p.leading();
                    if c.is_zero() || field.multiplicative_order(c)? != (field.order() - 1) as u64 {
                        return Err(ShadowError::NonPrimitiveConstant(c.index()));
                    }
                    has_constant = true;
                }
                Some(d) => {
                    if !p.is_monic() {
                        return Err(ShadowError::NotMonic(p.to_text()));
                    }
                    if !p.is_irreducible()? {
                        return Err(ShadowError::NotIrreducible(p.to_text()));
                    }
                    total_degree += d;
                }
            }
            if let Some(&beta) = eval.points().iter().find(|&&b| p.eval(b).is_zero()) {
                return Err(ShadowError::VanishesOnE {
                    poly: p.to_text(),
                    beta: beta.index(),
                });
            }
        }
        Ok(BasicSet {
            polys,
            total_degree,
            has_constant,
        })
    }

    pub fn polys(&self) -> &[Poly] {
        &self.polys
    }

    pub fn len(&self) -> usize {
        self.polys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.polys.is_empty()
    }

    /// Degree of the product of all members.
    pub fn total_degree(&self) -> usize {
        self.total_degree
    }

    pub fn has_constant(&self) -> bool {
        self.has_constant
    }
}

/// `(lg(P(b)) : b in E)`. Fails if `P` vanishes somewhere on `E`.
pub fn lambda_map(p: &Poly, eval: &EvaluationSet) -> Result<Vec<bool>, ShadowError> {
    let field = eval.field();
    if p.field() != field {
        return Err(ShadowError::FieldMismatch);
    }
    eval.points()
        .iter()
        .map(|&b| {
            let v = p.eval(b);
            if v.is_zero() {
                return Err(ShadowError::VanishesOnE {
                    poly: p.to_text(),
                    beta: b.index(),
                });
            }
            Ok(field.lg_parity(v)? == 1)
        })
        .collect()
}

/// One linear factor `x - l` per point outside `E`, plus the primitive constant.
pub fn build_b1(eval: &EvaluationSet) -> Result<BasicSet, ShadowError> {
    let field = eval.field();
    let excluded = eval.complement();
    if excluded.is_empty() {
        return Err(ShadowError::EvaluationSetIsFullField);
    }
    let mut polys: Vec<Poly> = excluded
        .into_iter()
        .map(|l| Poly::linear(field, l))
        .collect();
    polys.push(Poly::constant(field, field.primitive_element()));
    BasicSet::new(eval, polys)
}

/// How degree-2 basic polynomials are picked.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Selection {
    /// The first `k` in lexicographic order.
    #[default]
    Lexicographic,
    /// `k` distinct ones drawn with a seeded RNG.
    Random { seed: u64 },
}

/// `k` monic irreducible quadratics over the full field.
pub fn build_b2(
    field: &Field,
    k: usize,
    selection: Selection,
) -> Result<(EvaluationSet, BasicSet), ShadowError> {
    let eval = EvaluationSet::full(field)?;
    let polys = match selection {
        Selection::Lexicographic => enumerate_monic_irreducibles(field, 2, k)?,
        Selection::Random { seed } => random_monic_irreducibles(field, 2, k, seed)?,
    };
    let basic = BasicSet::new(&eval, polys)?;
    Ok((eval, basic))
}

/// The distance bound `|E| - q/2 - (sqrt(q)/2)(d_B - 1)`, kept as
/// `(a + b*sqrt(q)) / 2` with integer `a`, `b`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Delta {
    pub q: u64,
    /// `2|E| - q`
    pub a: i64,
    /// `1 - d_B`
    pub b: i64,
}

impl Delta {
    pub fn new(q: u64, eval_size: usize, total_degree: usize) -> Delta {
        Delta {
            q,
            a: 2 * eval_size as i64 - q as i64,
            b: 1 - total_degree as i64,
        }
    }

    /// Closed form for degree-at-most-one codes:
    /// `(n - k + 1)/2 - (sqrt(n + k - 1)/2)(k - 2)`.
    pub fn degree_one(n: usize, k: usize) -> Delta {
        Delta {
            q: (n + k - 1) as u64,
            a: n as i64 - k as i64 + 1,
            b: 2 - k as i64,
        }
    }

    pub fn value(&self) -> f64 {
        (self.a as f64 + self.b as f64 * (self.q as f64).sqrt()) / 2.0
    }

    /// `2 * Delta` as an integer when `sqrt(q)` is rational or the root term vanishes.
    pub fn twice_exact(&self) -> Option<i64> {
        if self.b == 0 {
            return Some(self.a);
        }
        surd::exact_sqrt(self.q).map(|r| self.a + self.b * r as i64)
    }

    pub fn is_exact(&self) -> bool {
        self.twice_exact().is_some()
    }

    pub fn sign(&self) -> Ordering {
        surd::sign(self.a as i128, self.b as i128, self.q as u128)
    }

    pub fn is_positive(&self) -> bool {
        self.sign() == Ordering::Greater
    }

    /// Smallest integer `>= Delta`.
    pub fn ceil(&self) -> i64 {
        surd::ceil_half(self.a as i128, self.b as i128, self.q as u128) as i64
    }

    /// Exact rendering: `"14"`, `"29/2"`, or `"(a + b*sqrt(q))/2"`.
    pub fn exact_string(&self) -> String {
        match self.twice_exact() {
            Some(t) if t % 2 == 0 => format!("{}", t / 2),
            Some(t) => format!("{t}/2"),
            None => format!("({} + {}*sqrt({}))/2", self.a, self.b, self.q),
        }
    }
}

impl fmt::Display for Delta {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_exact() {
            write!(f, "{}", self.exact_string())
        } else {
            write!(f, "{} ~ {:.6}", self.exact_string(), self.value())
        }
    }
}

pub fn delta(eval: &EvaluationSet, basic: &BasicSet) -> Delta {
    Delta::new(
        eval.field().order() as u64,
        eval.len(),
        basic.total_degree(),
    )
}

/// A constructed shadow code and its bound record.
#[derive(Debug, Clone)]
pub struct ShadowCode {
    eval: EvaluationSet,
    basic: BasicSet,
    generator: BitMatrix,
    delta: Delta,
    rank: usize,
}

impl ShadowCode {
    /// Builds the generator row by row. A nonpositive bound is allowed; the rank is
    /// then reported as computed and [`ShadowCode::bound_warning`] is set.
    pub fn construct(eval: EvaluationSet, basic: BasicSet) -> Result<ShadowCode, ShadowError> {
        let rows = basic
            .polys()
            .par_iter()
            .map(|p| lambda_map(p, &eval))
            .collect::<Result<Vec<_>, _>>()?;
        let generator = BitMatrix::from_rows(&rows);
        let rank = generator.rank();
        let delta = delta(&eval, &basic);
        if delta.is_positive() && rank != basic.len() {
            return Err(ShadowError::DimensionDefect {
                rank,
                expected: basic.len(),
            });
        }
        Ok(ShadowCode {
            eval,
            basic,
            generator,
            delta,
            rank,
        })
    }

    pub fn eval_set(&self) -> &EvaluationSet {
        &self.eval
    }

    pub fn basic_set(&self) -> &BasicSet {
        &self.basic
    }

    pub fn field(&self) -> &Field {
        self.eval.field()
    }

    /// `|B| x |E|` matrix whose rows are the images of the basic polynomials.
    pub fn generator(&self) -> &BitMatrix {
        &self.generator
    }

    pub fn length(&self) -> usize {
        self.eval.len()
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// `|B|` when the bound is positive, the computed rank otherwise.
    pub fn claimed_dim(&self) -> usize {
        if self.delta.is_positive() {
            self.basic.len()
        } else {
            self.rank
        }
    }

    pub fn delta(&self) -> Delta {
        self.delta
    }

    /// Set when the bound is not positive, so neither dimension nor distance is guaranteed.
    pub fn bound_warning(&self) -> bool {
        !self.delta.is_positive()
    }

    pub fn binary_code(&self) -> BinaryCode {
        BinaryCode::from_generator(&self.generator)
    }

    /// True when `B` is exactly the degree-at-most-one preset for `E`.
    pub fn is_degree_one_preset(&self) -> bool {
        if !self.basic.has_constant() {
            return false;
        }
        let roots: Vec<FieldElement> = self
            .basic
            .polys()
            .iter()
            .filter(|p| p.degree() == Some(1))
            .map(|p| self.field().neg(p.coeffs()[0]))
            .collect();
        roots.len() + 1 == self.basic.len() && {
            let mut r = roots;
            r.sort();
            r == self.eval.complement()
        }
    }

    /// The guaranteed minimum distance. For the degree-one preset the generic bound
    /// is checked against the `(n, k)` closed form.
    pub fn distance_lower_bound(&self) -> Result<Delta, ShadowError> {
        if !self.delta.is_positive() {
            return Err(ShadowError::NonpositiveDelta(self.delta));
        }
        if self.is_degree_one_preset() {
            let closed = Delta::degree_one(self.length(), self.basic.len());
            if closed != self.delta {
                return Err(ShadowError::BoundMismatch {
                    generic: self.delta,
                    closed,
                });
            }
        }
        Ok(self.delta)
    }
}

/// Degree-at-most-one code over `GF(p^m)` with `E` the first `eval_size` elements.
pub fn degree_one_code(field: &Field, eval_size: usize) -> Result<ShadowCode, ShadowError> {
    let eval = EvaluationSet::first_n(field, eval_size)?;
    let basic = build_b1(&eval)?;
    ShadowCode::construct(eval, basic)
}

/// Nearest odd prime power to `target` (ties go to the smaller one).
pub fn nearest_odd_prime_power(target: u64) -> Option<u64> {
    (0..target.max(64))
        .flat_map(|d| [target.checked_sub(d), target.checked_add(d)])
        .flatten()
        .find(|&q| find_odd_prime_power(q).is_some())
}

/// Degree-at-most-one `(n, k)` code: requires `q = n + k - 1` to be an odd prime power.
pub fn degree_one_code_for(n: usize, k: usize) -> Result<ShadowCode, ShadowError> {
    if n == 0 {
        return Err(ShadowError::EmptyEvaluationSet);
    }
    if k < 2 {
        // B1 always holds alpha plus at least one linear factor
        return Err(ShadowError::EvaluationSetIsFullField);
    }
    let q = (n + k - 1) as u64;
    let (p, m) = find_odd_prime_power(q).ok_or(ShadowError::NoAdmissibleField {
        q,
        nearest: nearest_odd_prime_power(q).unwrap_or(3),
    })?;
    let field = Field::new(p, m, None)?;
    degree_one_code(&field, n)
}

/// Degree-2 code over the full field with `k` basic quadratics.
pub fn degree_two_code(
    field: &Field,
    k: usize,
    selection: Selection,
) -> Result<ShadowCode, ShadowError> {
    let (eval, basic) = build_b2(field, k, selection)?;
    ShadowCode::construct(eval, basic)
}
