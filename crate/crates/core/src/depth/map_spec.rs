use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::operator::{tilde, HermitianOperator, PartySubset, SystemShape};

/// One summand of a map.
#[derive(Clone, Debug, PartialEq)]
pub enum TermKind {
    /// `ρ ↦ Tr(ρ)·𝟙`
    TraceIdentity,
    /// `ρ ↦ ρ`
    Identity,
    /// `ρ ↦ ρ̃_S`
    Tilde(PartySubset),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "TermRepr", into = "TermRepr")]
pub struct MapTerm {
    pub coeff: f64,
    pub kind: TermKind,
}

#[derive(Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
enum KindName {
    TraceIdentity,
    Identity,
    Tilde,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct TermRepr {
    coeff: f64,
    kind: KindName,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    subset: Option<PartySubset>,
}

impl TryFrom<TermRepr> for MapTerm {
    type Error = Error;

    fn try_from(r: TermRepr) -> Result<Self> {
        let kind = match (r.kind, r.subset) {
            (KindName::TraceIdentity, None) => TermKind::TraceIdentity,
            (KindName::Identity, None) => TermKind::Identity,
            (KindName::Tilde, Some(s)) => TermKind::Tilde(s),
            (KindName::Tilde, None) => {
                return Err(Error::Parse("tilde term needs a subset".into()));
            }
            (_, Some(_)) => {
                return Err(Error::Parse("only tilde terms take a subset".into()));
            }
        };
        Ok(MapTerm { coeff: r.coeff, kind })
    }
}

impl From<MapTerm> for TermRepr {
    fn from(t: MapTerm) -> Self {
        let (kind, subset) = match t.kind {
            TermKind::TraceIdentity => (KindName::TraceIdentity, None),
            TermKind::Identity => (KindName::Identity, None),
            TermKind::Tilde(s) => (KindName::Tilde, Some(s)),
        };
        TermRepr { coeff: t.coeff, kind, subset }
    }
}

impl MapTerm {
    pub fn new(coeff: f64, kind: TermKind) -> Self {
        MapTerm { coeff, kind }
    }
}

/// A linear map `Λ(ρ) = Σ_t c_t · K_t(ρ)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "SpecRepr", into = "SpecRepr")]
pub struct MapSpec {
    terms: Vec<MapTerm>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SpecRepr {
    terms: Vec<MapTerm>,
}

impl TryFrom<SpecRepr> for MapSpec {
    type Error = Error;

    fn try_from(r: SpecRepr) -> Result<Self> {
        MapSpec::new(r.terms)
    }
}

impl From<MapSpec> for SpecRepr {
    fn from(m: MapSpec) -> Self {
        SpecRepr { terms: m.terms }
    }
}

impl MapSpec {
    pub fn new(terms: Vec<MapTerm>) -> Result<Self> {
        if let Some(t) = terms.iter().find(|t| !t.coeff.is_finite()) {
            return Err(Error::InvalidArgument(format!("map coefficient {} is not finite", t.coeff)));
        }
        Ok(MapSpec { terms })
    }

    /// `Tr(ρ)𝟙 + αρ`.
    pub fn reduction(alpha: f64) -> Self {
        MapSpec { terms: vec![MapTerm::new(1.0, TermKind::TraceIdentity), MapTerm::new(alpha, TermKind::Identity)] }
    }

    /// `Tr(ρ)𝟙 + αρ + βρ̃_A`.
    pub fn breuer_hall(alpha: f64, beta: f64, a: &PartySubset) -> Self {
        let mut m = Self::reduction(alpha);
        m.terms.push(MapTerm::new(beta, TermKind::Tilde(a.clone())));
        m
    }

    /// `Tr(ρ)𝟙 + αρ + βρ̃_A + γρ̃_{Aᶜ} + δρ̃_{all}` on `n` parties.
    pub fn four_term(alpha: f64, beta: f64, gamma: f64, delta: f64, a: &PartySubset, n: usize) -> Self {
        let mut m = Self::breuer_hall(alpha, beta, a);
        m.terms.push(MapTerm::new(gamma, TermKind::Tilde(a.complement(n))));
        m.terms.push(MapTerm::new(delta, TermKind::Tilde(PartySubset::all(n))));
        m
    }

    pub fn terms(&self) -> &[MapTerm] {
        &self.terms
    }

    /// `a·self + b·other`.
    pub fn combined(&self, a: f64, other: &MapSpec, b: f64) -> Self {
        let scale = |m: &MapSpec, s: f64| {
            m.terms.iter().map(move |t| MapTerm::new(s * t.coeff, t.kind.clone())).collect::<Vec<_>>()
        };
        let mut terms = scale(self, a);
        terms.extend(scale(other, b));
        MapSpec { terms }
    }

    /// Checks that every tilde subset is valid and made of qubits.
    pub fn validate(&self, shape: &SystemShape) -> Result<()> {
        for t in &self.terms {
            if let TermKind::Tilde(s) = &t.kind {
                s.validate(shape)?;
                shape.require_qubits(s)?;
            }
        }
        Ok(())
    }

    /// `Tr Λ(ρ) / Tr ρ`; every term preserves or scales the trace.
    pub fn trace_factor(&self, shape: &SystemShape) -> f64 {
        let dim = shape.dim() as f64;
        self.terms
            .iter()
            .map(|t| match t.kind {
                TermKind::TraceIdentity => t.coeff * dim,
                _ => t.coeff,
            })
            .sum()
    }

    pub fn apply(&self, rho: &HermitianOperator) -> Result<HermitianOperator> {
        let tr = rho.trace();
        let mut out = HermitianOperator::zeros(rho.shape().clone());
        for t in &self.terms {
            out = match &t.kind {
                TermKind::TraceIdentity => out.shifted(t.coeff * tr),
                TermKind::Identity => out.add_scaled(t.coeff, rho)?,
                TermKind::Tilde(s) => out.add_scaled(t.coeff, &tilde(rho, s)?)?,
            };
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testutil::{random_hermitian, rng};

    #[test]
    fn serde_roundtrip() {
        let m = MapSpec::four_term(1.0, 0.5, 0.25, -0.5, &PartySubset::single(0), 3);
        let s = serde_json::to_string(&m).unwrap();
        assert!(s.contains("\"kind\":\"trace_identity\""));
        assert_eq!(serde_json::from_str::<MapSpec>(&s).unwrap(), m);
    }

    #[test]
    fn serde_rejects_malformed_terms() {
        for bad in [
            r#"{"terms":[{"coeff":1.0,"kind":"tilde"}]}"#,
            r#"{"terms":[{"coeff":1.0,"kind":"identity","subset":[0]}]}"#,
            r#"{"terms":[{"coeff":1.0,"kind":"other"}]}"#,
        ] {
            assert!(serde_json::from_str::<MapSpec>(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn rejects_non_finite() {
        assert!(MapSpec::new(vec![MapTerm::new(f64::NAN, TermKind::Identity)]).is_err());
    }

    #[test]
    fn validate_requires_qubit_subsets() {
        let shape = SystemShape::new(vec![2, 3]).unwrap();
        assert!(MapSpec::breuer_hall(1.0, 1.0, &PartySubset::single(0)).validate(&shape).is_ok());
        assert!(MapSpec::breuer_hall(1.0, 1.0, &PartySubset::single(1)).validate(&shape).is_err());
        assert!(MapSpec::breuer_hall(1.0, 1.0, &PartySubset::single(2)).validate(&shape).is_err());
    }

    #[test]
    fn trace_factor_matches_application() {
        let shape = SystemShape::qubits(3).unwrap();
        let m = MapSpec::four_term(1.0, 0.5, 0.25, -0.5, &PartySubset::single(1), 3);
        let rho = random_hermitian(&shape, &mut rng(1));
        let out = m.apply(&rho).unwrap();
        assert!((out.trace() - m.trace_factor(&shape) * rho.trace()).abs() < 1e-12);
    }
}
