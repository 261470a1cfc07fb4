//! Input record formats and JSON helpers.

/// Serialises `f64` values that may be infinite as `"inf"` / `"-inf"`
/// strings, finite values as plain numbers.
pub(crate) mod extended_f64 {
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(x: &f64, s: S) -> Result<S::Ok, S::Error> {
        if x.is_finite() {
            s.serialize_f64(*x)
        } else if x.is_nan() {
            s.serialize_str("nan")
        } else if *x > 0.0 {
            s.serialize_str("inf")
        } else {
            s.serialize_str("-inf")
        }
    }

    #[derive(Deserialize)]
    #[serde(untagged)]
    enum Repr {
        Num(f64),
        Text(String),
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<f64, D::Error> {
        match Repr::deserialize(d)? {
            Repr::Num(x) => Ok(x),
            Repr::Text(t) => match t.as_str() {
                "inf" | "+inf" => Ok(f64::INFINITY),
                "-inf" => Ok(f64::NEG_INFINITY),
                "nan" => Ok(f64::NAN),
                other => Err(serde::de::Error::custom(format!("expected a number, got {other:?}"))),
            },
        }
    }
}

use std::collections::BTreeMap;
use std::path::Path;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::compat::{CollectiveMoments, CorrelatorVector, ProbabilityTable, Scenario};
use crate::error::{Error, Result};
use crate::operator::{HermitianOperator, SystemShape};
use crate::C64;

/// Reads a whole file and parses it as JSON.
pub fn load_json<T: DeserializeOwned>(path: &Path) -> Result<T> {
    let text = std::fs::read_to_string(path)?;
    serde_json::from_str(&text).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

/// Row-major real array, flat or nested by rows.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum RealArray {
    Flat(Vec<f64>),
    Nested(Vec<Vec<f64>>),
}

impl RealArray {
    fn flatten(self, dim: usize, field: &str) -> Result<Vec<f64>> {
        match self {
            RealArray::Flat(v) => Ok(v),
            RealArray::Nested(rows) => {
                if rows.len() != dim || rows.iter().any(|r| r.len() != dim) {
                    return Err(Error::DimensionMismatch(format!("`{field}` is not a {dim}x{dim} array")));
                }
                Ok(rows.into_iter().flatten().collect())
            }
        }
    }
}

/// `{shape: {local_dims}, re, im}`; `im` may be omitted for real operators.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OperatorRecord {
    pub shape: SystemShape,
    pub re: RealArray,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub im: Option<RealArray>,
}

impl OperatorRecord {
    pub fn from_operator(op: &HermitianOperator) -> Self {
        let m = op.matrix();
        let dim = op.dim();
        let part = |f: fn(&C64) -> f64| {
            RealArray::Nested((0..dim).map(|r| (0..dim).map(|c| f(&m[(r, c)])).collect()).collect())
        };
        OperatorRecord { shape: op.shape().clone(), re: part(|z| z.re), im: Some(part(|z| z.im)) }
    }

    pub fn into_operator(self) -> Result<HermitianOperator> {
        let dim = self.shape.dim();
        let re = self.re.flatten(dim, "re")?;
        let im = match self.im {
            Some(a) => a.flatten(dim, "im")?,
            None => vec![0.0; re.len()],
        };
        HermitianOperator::from_parts(self.shape, &re, &im)
    }
}

pub fn read_operator(path: &Path) -> Result<HermitianOperator> {
    load_json::<OperatorRecord>(path)?.into_operator()
}

pub fn write_operator(op: &HermitianOperator, path: &Path) -> Result<()> {
    let text = serde_json::to_string_pretty(&OperatorRecord::from_operator(op))?;
    std::fs::write(path, text + "\n")?;
    Ok(())
}

/// `{N, Jx, Jy, Jz, Jx2, Jy2, Jz2}`; first moments default to zero.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MomentsRecord {
    #[serde(rename = "N")]
    pub n: usize,
    #[serde(rename = "Jx", default)]
    pub jx: f64,
    #[serde(rename = "Jy", default)]
    pub jy: f64,
    #[serde(rename = "Jz", default)]
    pub jz: f64,
    #[serde(rename = "Jx2")]
    pub jx2: f64,
    #[serde(rename = "Jy2")]
    pub jy2: f64,
    #[serde(rename = "Jz2")]
    pub jz2: f64,
}

impl MomentsRecord {
    pub fn into_moments(self) -> Result<CollectiveMoments> {
        CollectiveMoments::new(self.n, [self.jx, self.jy, self.jz], [self.jx2, self.jy2, self.jz2])
    }
}

/// A real number or a `[re, im]` pair.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ComplexValue {
    Real(f64),
    Pair([f64; 2]),
}

impl From<ComplexValue> for C64 {
    fn from(v: ComplexValue) -> Self {
        match v {
            ComplexValue::Real(x) => C64::new(x, 0.0),
            ComplexValue::Pair([re, im]) => C64::new(re, im),
        }
    }
}

impl From<C64> for ComplexValue {
    fn from(z: C64) -> Self {
        if z.im == 0.0 {
            ComplexValue::Real(z.re)
        } else {
            ComplexValue::Pair([z.re, z.im])
        }
    }
}

/// `{scenario: {parties, settings, outcomes}, entries: {key: value}}` with
/// keys as produced by [`Scenario::key`].
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CorrelatorRecord {
    pub scenario: Scenario,
    pub entries: BTreeMap<String, ComplexValue>,
}

impl CorrelatorRecord {
    pub fn from_vector(v: &CorrelatorVector) -> Self {
        CorrelatorRecord {
            scenario: v.scenario(),
            entries: v.keyed().into_iter().map(|(k, z)| (k, z.into())).collect(),
        }
    }

    pub fn into_vector(self) -> Result<CorrelatorVector> {
        let entries = self.entries.into_iter().map(|(k, v)| (k, v.into())).collect();
        CorrelatorVector::from_keys(self.scenario, &entries)
    }
}

/// `{scenario, values}`, see [`ProbabilityTable`] for the layout.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProbabilityRecord {
    pub scenario: Scenario,
    pub values: Vec<f64>,
}

impl ProbabilityRecord {
    pub fn into_table(self, tol: f64) -> Result<ProbabilityTable> {
        ProbabilityTable::new(self.scenario, self.values, tol)
    }
}
