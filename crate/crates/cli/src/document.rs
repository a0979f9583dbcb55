//! JSON documents for complexes and cells.
//!
//! ```json
//! {
//!   "basis": [["0", "1"], ["01"]],
//!   "boundary": {"01": {"0": -1, "1": 1}},
//!   "augmentation": {"0": 1, "1": 1}
//! }
//! ```
//!
//! `basis[n]` lists the ids of degree `n`. Integers are JSON numbers while
//! they fit in an IEEE double exactly and decimal strings otherwise; both forms
//! are accepted on input.

use std::collections::BTreeMap;
use std::str::FromStr;

use adc_core::{validate_cell, AugmentedComplex, BasisElement, BasisId, Cell, ChainVector, Sign};
use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::de::{self, Deserializer, Visitor};
use serde::ser::Serializer;
use serde::{Deserialize, Serialize};

use crate::CliError;

const SAFE: i64 = (1 << 53) - 1;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JsonInt(pub BigInt);

impl Serialize for JsonInt {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self.0.to_i64() {
            Some(v) if (-SAFE..=SAFE).contains(&v) => s.serialize_i64(v),
            _ => s.serialize_str(&self.0.to_string()),
        }
    }
}

struct IntVisitor;

impl Visitor<'_> for IntVisitor {
    type Value = JsonInt;

    fn expecting(&self, f: &mut std::fmt::Formatter) -> std::fmt::Result {
        f.write_str("an integer or a decimal string")
    }

    fn visit_i64<E: de::Error>(self, v: i64) -> Result<JsonInt, E> {
        Ok(JsonInt(v.into()))
    }

    fn visit_u64<E: de::Error>(self, v: u64) -> Result<JsonInt, E> {
        Ok(JsonInt(v.into()))
    }

    fn visit_str<E: de::Error>(self, v: &str) -> Result<JsonInt, E> {
        BigInt::from_str(v.trim())
            .map(JsonInt)
            .map_err(|_| E::custom(format!("{v:?} is not an integer")))
    }
}

impl<'de> Deserialize<'de> for JsonInt {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<JsonInt, D::Error> {
        d.deserialize_any(IntVisitor)
    }
}

pub(crate) type Coeffs = BTreeMap<String, JsonInt>;

pub(crate) fn coeffs_of(v: &ChainVector) -> Coeffs {
    v.iter().map(|(id, c)| (id.to_string(), JsonInt(c.clone()))).collect()
}

fn vector_of(degree: usize, c: &Coeffs) -> ChainVector {
    ChainVector::from_terms(
        degree,
        c.iter().map(|(id, x)| (BasisId::from(id.as_str()), x.0.clone())),
    )
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComplexDocument {
    pub basis: Vec<Vec<String>>,
    #[serde(default)]
    pub boundary: BTreeMap<String, Coeffs>,
    #[serde(default)]
    pub augmentation: BTreeMap<String, JsonInt>,
}

impl ComplexDocument {
    pub fn from_complex(k: &AugmentedComplex) -> ComplexDocument {
        let top = k.max_degree().map_or(0, |d| d + 1);
        let basis = (0..top)
            .map(|n| k.basis_in(n).iter().map(ToString::to_string).collect())
            .collect();
        let mut boundary = BTreeMap::new();
        let mut augmentation = BTreeMap::new();
        for b in k.elements() {
            if b.degree == 0 {
                let e = k.augmentation(&b.id).cloned().unwrap_or_default();
                augmentation.insert(b.id.to_string(), JsonInt(e));
            } else if let Some(v) = k.boundary(&b.id) {
                boundary.insert(b.id.to_string(), coeffs_of(v));
            }
        }
        ComplexDocument {
            basis,
            boundary,
            augmentation,
        }
    }

    pub fn to_complex(&self) -> Result<AugmentedComplex, CliError> {
        let mut degree = BTreeMap::new();
        let mut elements = Vec::new();
        for (n, ids) in self.basis.iter().enumerate() {
            for id in ids {
                degree.insert(id.as_str(), n);
                elements.push(BasisElement::new(id.as_str(), n));
            }
        }
        let mut boundary = BTreeMap::new();
        for (id, coeffs) in &self.boundary {
            let n = *degree
                .get(id.as_str())
                .ok_or_else(|| CliError::Parse(format!("boundary given for unknown element {id}")))?;
            if n == 0 {
                return Err(CliError::Parse(format!("boundary given for vertex {id}")));
            }
            boundary.insert(BasisId::from(id.as_str()), vector_of(n - 1, coeffs));
        }
        let augmentation = self
            .augmentation
            .iter()
            .map(|(id, e)| (BasisId::from(id.as_str()), e.0.clone()))
            .collect();
        AugmentedComplex::new(elements, boundary, augmentation).map_err(|e| CliError::Parse(e.to_string()))
    }

    pub fn parse(text: &str) -> Result<ComplexDocument, CliError> {
        serde_json::from_str(text).map_err(|e| CliError::Parse(format!("complex document: {e}")))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("documents serialize")
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CellEntry {
    #[serde(default)]
    pub minus: Coeffs,
    #[serde(default)]
    pub plus: Coeffs,
}

/// `entries[n]` holds `x⁻ₙ` and `x⁺ₙ`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CellDocument {
    pub entries: Vec<CellEntry>,
}

impl CellDocument {
    pub fn from_cell(x: &Cell) -> CellDocument {
        CellDocument {
            entries: (0..x.len())
                .map(|n| CellEntry {
                    minus: coeffs_of(&x.entry(Sign::Minus, n)),
                    plus: coeffs_of(&x.entry(Sign::Plus, n)),
                })
                .collect(),
        }
    }

    /// Checks the chain identities against `k`; ν-membership is recorded on the cell.
    pub fn to_cell(&self, k: &AugmentedComplex) -> Result<Cell, CliError> {
        let side = |sign: Sign| -> Vec<ChainVector> {
            self.entries
                .iter()
                .enumerate()
                .map(|(n, e)| {
                    vector_of(
                        n,
                        match sign {
                            Sign::Minus => &e.minus,
                            Sign::Plus => &e.plus,
                        },
                    )
                })
                .collect()
        };
        validate_cell(k, side(Sign::Minus), side(Sign::Plus), false).map_err(|e| CliError::Domain(e.to_string()))
    }

    pub fn parse(text: &str) -> Result<CellDocument, CliError> {
        serde_json::from_str(text).map_err(|e| CliError::Parse(format!("cell document: {e}")))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("documents serialize")
    }
}
