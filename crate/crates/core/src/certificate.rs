//! Verdicts and the witnesses that back them.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::operator::PartySubset;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "class", rename_all = "snake_case")]
pub enum Verdict {
    /// Entanglement depth at most `depth`.
    CertifiedDepthAtMost {
        depth: usize,
    },
    /// Bi-separable across the cut `cut : rest`.
    CertifiedBiseparableCut {
        cut: PartySubset,
    },
    CertifiedSeparable,
    /// No claim either way.
    Inconclusive,
}

impl Verdict {
    pub fn is_certified(&self) -> bool {
        !matches!(self, Verdict::Inconclusive)
    }
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Verdict::CertifiedDepthAtMost { depth } => write!(f, "certified: entanglement depth <= {depth}"),
            Verdict::CertifiedBiseparableCut { cut } => write!(f, "certified: bi-separable in cut {cut}"),
            Verdict::CertifiedSeparable => write!(f, "certified: separable"),
            Verdict::Inconclusive => write!(f, "inconclusive"),
        }
    }
}

/// Evidence attached to a verdict.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Witness {
    /// Map parameters by name (`alpha`, `beta`, ...).
    pub parameters: BTreeMap<String, f64>,
    /// Smallest eigenvalue of the operator whose positivity was tested.
    pub min_eigenvalue: f64,
    /// Which criterion produced the verdict.
    pub theorem: String,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl Witness {
    pub fn new(theorem: impl Into<String>, min_eigenvalue: f64) -> Self {
        Witness { parameters: BTreeMap::new(), min_eigenvalue, theorem: theorem.into(), notes: Vec::new() }
    }

    pub fn param(mut self, name: &str, value: f64) -> Self {
        self.parameters.insert(name.to_string(), value);
        self
    }

    pub fn note(mut self, note: impl Into<String>) -> Self {
        self.notes.push(note.into());
        self
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DepthCertificate {
    pub verdict: Verdict,
    pub witness: Witness,
}

impl DepthCertificate {
    /// Builds a certificate, enforcing `1 ≤ depth ≤ N − 1` and a witness
    /// eigenvalue of at least `−tol` for every positive verdict.
    pub fn new(verdict: Verdict, witness: Witness, num_parties: usize, tol: f64) -> Result<Self> {
        if let Verdict::CertifiedDepthAtMost { depth } = verdict {
            if depth == 0 || depth + 1 > num_parties {
                return Err(Error::InvalidArgument(format!(
                    "depth bound {depth} outside 1..={} for {num_parties} parties",
                    num_parties.saturating_sub(1)
                )));
            }
        }
        if verdict.is_certified() && !(witness.min_eigenvalue >= -tol) {
            return Err(Error::Numerical(format!(
                "positive verdict with witness eigenvalue {}",
                witness.min_eigenvalue
            )));
        }
        Ok(DepthCertificate { verdict, witness })
    }

    pub(crate) fn inconclusive(witness: Witness) -> Self {
        DepthCertificate { verdict: Verdict::Inconclusive, witness }
    }

    pub fn is_certified(&self) -> bool {
        self.verdict.is_certified()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn verdict_serde_roundtrip() {
        for v in [
            Verdict::CertifiedDepthAtMost { depth: 2 },
            Verdict::CertifiedBiseparableCut { cut: PartySubset::single(1) },
            Verdict::CertifiedSeparable,
            Verdict::Inconclusive,
        ] {
            let s = serde_json::to_string(&v).unwrap();
            assert_eq!(serde_json::from_str::<Verdict>(&s).unwrap(), v);
        }
    }

    #[test]
    fn depth_bounds_enforced() {
        let w = || Witness::new("t", 0.1);
        assert!(DepthCertificate::new(Verdict::CertifiedDepthAtMost { depth: 0 }, w(), 3, 1e-9).is_err());
        assert!(DepthCertificate::new(Verdict::CertifiedDepthAtMost { depth: 3 }, w(), 3, 1e-9).is_err());
        assert!(DepthCertificate::new(Verdict::CertifiedDepthAtMost { depth: 2 }, w(), 3, 1e-9).is_ok());
    }

    #[test]
    fn negative_witness_rejected_for_positive_verdict() {
        let w = Witness::new("t", -0.5);
        assert!(DepthCertificate::new(Verdict::CertifiedSeparable, w.clone(), 2, 1e-9).is_err());
        assert!(DepthCertificate::new(Verdict::Inconclusive, w, 2, 1e-9).is_ok());
    }
}
