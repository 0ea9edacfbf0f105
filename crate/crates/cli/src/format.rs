//! File formats: the tensor JSON document and exponent tokens.

use std::fs;
use std::path::Path;

use blocksum_core::{CoefficientTensor, Exponent, ExponentVector, FormInstance};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{CliError, CliResult};

/// An exponent as it appears in JSON: a number, or a string such as `"inf"` or `"4/3"`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExponentToken(pub Exponent);

impl Serialize for ExponentToken {
    fn serialize<S: Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        if self.0.is_infinite() {
            ser.serialize_str("inf")
        } else {
            ser.serialize_f64(self.0.value())
        }
    }
}

impl<'de> Deserialize<'de> for ExponentToken {
    fn deserialize<D: Deserializer<'de>>(de: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Num(f64),
            Text(String),
        }
        let e = match Raw::deserialize(de)? {
            Raw::Num(v) => Exponent::new(v),
            Raw::Text(s) => s.parse(),
        };
        e.map(ExponentToken).map_err(serde::de::Error::custom)
    }
}

pub fn to_vector(tokens: &[ExponentToken]) -> CliResult<ExponentVector> {
    Ok(ExponentVector::new(tokens.iter().map(|t| t.0).collect())?)
}

pub fn to_tokens(v: &ExponentVector) -> Vec<ExponentToken> {
    v.iter().copied().map(ExponentToken).collect()
}

/// `{"order": m, "dims": [...], "entries": [...], "p": [...]}`; `p` is optional.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TensorDoc {
    pub order: usize,
    pub dims: Vec<usize>,
    pub entries: Vec<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p: Option<Vec<ExponentToken>>,
}

impl TensorDoc {
    pub fn from_tensor(t: &CoefficientTensor) -> Self {
        TensorDoc {
            order: t.order(),
            dims: t.dims().to_vec(),
            entries: t.entries().to_vec(),
            p: None,
        }
    }

    pub fn from_instance(inst: &FormInstance) -> Self {
        TensorDoc {
            p: Some(to_tokens(inst.exponents())),
            ..Self::from_tensor(inst.tensor())
        }
    }

    pub fn tensor(&self) -> CliResult<CoefficientTensor> {
        if self.order != self.dims.len() {
            return Err(CliError::Invalid(format!(
                "order {} does not match {} dims",
                self.order,
                self.dims.len()
            )));
        }
        Ok(CoefficientTensor::new(
            self.dims.clone(),
            self.entries.clone(),
        )?)
    }

    /// Domain exponents: `override_p` wins over the document's `p`.
    pub fn instance(&self, override_p: Option<&ExponentVector>) -> CliResult<FormInstance> {
        let p = match (override_p, &self.p) {
            (Some(p), _) => p.clone(),
            (None, Some(tokens)) => to_vector(tokens)?,
            (None, None) => {
                return Err(CliError::Invalid(
                    "no exponents: pass --p or add \"p\" to the tensor file".into(),
                ))
            }
        };
        Ok(FormInstance::new(self.tensor()?, p)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("tensor documents always serialize")
    }

    pub fn from_json(text: &str) -> CliResult<Self> {
        serde_json::from_str(text).map_err(|e| CliError::Invalid(format!("tensor JSON: {e}")))
    }

    pub fn read(path: &Path) -> CliResult<Self> {
        let text = fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
        Self::from_json(&text).map_err(|e| CliError::Invalid(format!("{}: {e}", path.display())))
    }
}

pub fn parse_exponents(s: &str) -> CliResult<ExponentVector> {
    Ok(s.parse()?)
}

/// Six significant digits, for human-readable summaries.
pub fn human(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return format!("{x}");
    }
    let mag = x.abs().log10().floor() as i32;
    if (-4..6).contains(&mag) {
        format!("{:.*}", (5 - mag).max(0) as usize, x)
    } else {
        format!("{x:.5e}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tensor_doc_with_inf_exponents() {
        let text = r#"{"order":2,"dims":[2,2],"entries":[1,0,0,1],"p":["inf",2,"4/3"]}"#;
        let doc = TensorDoc::from_json(text).unwrap();
        assert!(doc.p.as_ref().unwrap()[0].0.is_infinite());
        assert_eq!(doc.p.as_ref().unwrap()[2].0.recip(), 0.75);
        assert!(doc.instance(None).is_err());
        let two = parse_exponents("inf,inf").unwrap();
        assert_eq!(doc.instance(Some(&two)).unwrap().order(), 2);
    }

    #[test]
    fn tensor_doc_rejects_bad_shapes() {
        let doc = TensorDoc::from_json(r#"{"order":3,"dims":[2,2],"entries":[1,0,0,1]}"#).unwrap();
        assert!(doc.tensor().is_err());
        assert!(TensorDoc::from_json(r#"{"order":1,"dims":[1],"entries":[1],"x":0}"#).is_err());
    }

    #[test]
    fn human_digits() {
        assert_eq!(human(2.0), "2.00000");
        assert_eq!(human(1.0 / 3.0), "0.333333");
        assert_eq!(human(123456.7), "123457");
        assert_eq!(human(1234567.0), "1.23457e6");
        assert_eq!(human(0.0), "0");
    }
}
