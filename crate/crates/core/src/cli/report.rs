//! Certificate reports and stdout formatting.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::Value;
use sha2::{Digest, Sha256};

/// Machine-readable record of one certification run.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CertificateReport {
    /// SHA-256 of the input files, or of the parameters when no file is read.
    pub input_digest: String,
    pub command: String,
    pub parameters: BTreeMap<String, Value>,
    pub verdict: Value,
    pub witness: Value,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub theorem: Option<String>,
    pub version: String,
    pub timestamp: String,
}

impl CertificateReport {
    /// The report with the timestamp cleared, for reproducibility checks.
    pub fn without_timestamp(&self) -> Self {
        CertificateReport { timestamp: String::new(), ..self.clone() }
    }
}

/// Result of one input record before it is stamped into a report.
#[derive(Clone, Debug)]
pub(crate) struct Outcome {
    pub positive: bool,
    pub parameters: BTreeMap<String, Value>,
    pub verdict: Value,
    pub witness: Value,
    pub theorem: Option<String>,
    /// Bytes hashed into the input digest.
    pub digest_source: Vec<u8>,
    pub text: Vec<String>,
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Outcome {
    pub fn new(positive: bool, verdict: Value, witness: Value) -> Self {
        Outcome {
            positive,
            parameters: BTreeMap::new(),
            verdict,
            witness,
            theorem: None,
            digest_source: Vec::new(),
            text: Vec::new(),
            header: Vec::new(),
            rows: Vec::new(),
        }
    }

    pub fn param(mut self, name: &str, value: impl Serialize) -> Self {
        self.parameters.insert(name.to_string(), serde_json::to_value(value).unwrap_or(Value::Null));
        self
    }

    pub fn theorem(mut self, tag: impl Into<String>) -> Self {
        self.theorem = Some(tag.into());
        self
    }

    pub fn digest(mut self, bytes: &[u8]) -> Self {
        self.digest_source.extend_from_slice(bytes);
        self
    }

    pub fn line(mut self, line: impl Into<String>) -> Self {
        self.text.push(line.into());
        self
    }

    pub fn table(mut self, header: &[&str], rows: Vec<Vec<String>>) -> Self {
        self.header = header.iter().map(|h| h.to_string()).collect();
        self.rows = rows;
        self
    }

    pub fn into_report(self, command: &str, timestamp: &str) -> CertificateReport {
        let source = if self.digest_source.is_empty() {
            serde_json::to_vec(&self.parameters).unwrap_or_default()
        } else {
            self.digest_source
        };
        CertificateReport {
            input_digest: hex::encode(Sha256::digest(&source)),
            command: command.to_string(),
            parameters: self.parameters,
            verdict: self.verdict,
            witness: self.witness,
            theorem: self.theorem,
            version: env!("CARGO_PKG_VERSION").to_string(),
            timestamp: timestamp.to_string(),
        }
    }
}

/// Nine significant digits, `inf`/`-inf`/`nan` for non-finite values.
pub fn fmt_sig(x: f64) -> String {
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if x == 0.0 {
        return "0".into();
    }
    let exp = x.abs().log10().floor() as i32;
    if (-5..15).contains(&exp) {
        let decimals = (8 - exp).max(0) as usize;
        format!("{x:.decimals$}")
    } else {
        format!("{x:.8e}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nine_significant_digits() {
        assert_eq!(fmt_sig(-0.75), "-0.750000000");
        assert_eq!(fmt_sig(1.0), "1.00000000");
        assert_eq!(fmt_sig(123.456), "123.456000");
        assert_eq!(fmt_sig(0.0037762118), "0.00377621180");
        assert_eq!(fmt_sig(1e-9), "1.00000000e-9");
        assert_eq!(fmt_sig(f64::NEG_INFINITY), "-inf");
        assert_eq!(fmt_sig(0.0), "0");
    }

    #[test]
    fn report_roundtrip_and_digest() {
        let a = Outcome::new(true, Value::from("ok"), Value::Null)
            .param("alpha", 2.0)
            .digest(b"abc")
            .into_report("depth", "t0");
        assert_eq!(a.input_digest, "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
        let s = serde_json::to_string(&a).unwrap();
        assert_eq!(serde_json::from_str::<CertificateReport>(&s).unwrap(), a);
        let b = Outcome::new(true, Value::from("ok"), Value::Null)
            .param("alpha", 2.0)
            .digest(b"abc")
            .into_report("depth", "t1");
        assert_eq!(a.without_timestamp(), b.without_timestamp());
    }
}
