//! JSON code descriptors.
//!
//! ```json
//! {"kind": "shadow", "field": {"p": 11, "m": 2, "modulus": [1, 0, 1]},
//!  "E": [0, 1, ...], "B": ["1,1", ..., "2"], "G": ["ff80...", ...],
//!  "n": 113, "k": 9, "delta": 14.0, "delta_exact": "14"}
//! ```
//!
//! `G` rows are MSB-first hex (see [`crate::binary::bits_to_hex`]). Shadow-specific
//! fields are omitted for other kinds of code.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::binary::{BinaryCode, BinaryCodeError, BitMatrix};
use crate::concat::{ConcatParams, ConcatSpec};
use crate::field::{Field, FieldDescriptor, FieldError};
use crate::poly::{Poly, PolyError};
use crate::shadow::{BasicSet, EvaluationSet, ShadowCode, ShadowError};

#[derive(Debug, Error)]
pub enum DescriptorError {
    #[error("malformed descriptor: {0}")]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Matrix(#[from] BinaryCodeError),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Shadow(#[from] ShadowError),
    #[error("descriptor says k = {claimed} but G has {rows} rows")]
    RowCount { claimed: usize, rows: usize },
    #[error("shadow descriptor is missing {0}")]
    Missing(&'static str),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CodeKind {
    Shadow,
    Rsrm,
    Random,
    Generic,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CodeDescriptor {
    pub kind: CodeKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub field: Option<FieldDescriptor>,
    #[serde(rename = "E", default, skip_serializing_if = "Option::is_none")]
    pub eval_set: Option<Vec<u32>>,
    #[serde(rename = "B", default, skip_serializing_if = "Option::is_none")]
    pub basic_set: Option<Vec<String>>,
    #[serde(rename = "G")]
    pub generator: Vec<String>,
    pub n: usize,
    pub k: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub delta: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub delta_exact: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub concat: Option<ConcatParams>,
}

fn hex_rows(g: &BitMatrix) -> Vec<String> {
    (0..g.nrows()).map(|i| g.row_hex(i)).collect()
}

impl CodeDescriptor {
    pub fn from_shadow(code: &ShadowCode) -> CodeDescriptor {
        CodeDescriptor {
            kind: CodeKind::Shadow,
            field: Some(code.field().descriptor()),
            eval_set: Some(code.eval_set().points().iter().map(|p| p.index()).collect()),
            basic_set: Some(code.basic_set().polys().iter().map(Poly::to_text).collect()),
            generator: hex_rows(code.generator()),
            n: code.length(),
            k: code.claimed_dim(),
            delta: Some(code.delta().value()),
            delta_exact: Some(code.delta().exact_string()),
            concat: None,
        }
    }

    pub fn from_concat(spec: &ConcatSpec, code: &BinaryCode) -> CodeDescriptor {
        CodeDescriptor {
            kind: CodeKind::Rsrm,
            field: Some(spec.field().descriptor()),
            eval_set: None,
            basic_set: None,
            generator: hex_rows(code.generator()),
            n: code.length(),
            k: code.dimension(),
            delta: None,
            delta_exact: None,
            concat: Some(spec.params()),
        }
    }

    pub fn from_binary(kind: CodeKind, code: &BinaryCode) -> CodeDescriptor {
        CodeDescriptor {
            kind,
            field: None,
            eval_set: None,
            basic_set: None,
            generator: hex_rows(code.generator()),
            n: code.length(),
            k: code.dimension(),
            delta: None,
            delta_exact: None,
            concat: None,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("descriptor serializes")
    }

    pub fn from_json(text: &str) -> Result<CodeDescriptor, DescriptorError> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn generator_matrix(&self) -> Result<BitMatrix, DescriptorError> {
        Ok(BitMatrix::from_hex_rows(&self.generator, self.n)?)
    }

    /// The code spanned by `G`. Its dimension is the rank of `G`.
    pub fn binary_code(&self) -> Result<BinaryCode, DescriptorError> {
        Ok(BinaryCode::from_generator(&self.generator_matrix()?))
    }

    /// Rebuilds and revalidates a shadow code from its field, `E` and `B`.
    pub fn shadow_code(&self) -> Result<ShadowCode, DescriptorError> {
        let field = Field::from_descriptor(
            self.field
                .as_ref()
                .ok_or(DescriptorError::Missing("field"))?,
        )?;
        let points = self
            .eval_set
            .as_ref()
            .ok_or(DescriptorError::Missing("E"))?
            .iter()
            .map(|&i| {
                field
                    .element(i)
                    .ok_or(ShadowError::PointOutOfRange(i, field.order()))
            })
            .collect::<Result<Vec<_>, _>>()?;
        let eval = EvaluationSet::new(&field, points)?;
        let polys = self
            .basic_set
            .as_ref()
            .ok_or(DescriptorError::Missing("B"))?
            .iter()
            .map(|t| Poly::parse(&field, t))
            .collect::<Result<Vec<_>, _>>()?;
        let basic = BasicSet::new(&eval, polys)?;
        let code = ShadowCode::construct(eval, basic)?;
        if code.generator().nrows() != self.generator.len() {
            return Err(DescriptorError::RowCount {
                claimed: self.generator.len(),
                rows: code.generator().nrows(),
            });
        }
        Ok(code)
    }
}
