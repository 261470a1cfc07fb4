use serde::{Deserialize, Serialize};

use super::MapSpec;
use crate::certificate::{DepthCertificate, Verdict, Witness};
use crate::error::{Error, Result};
use crate::operator::{spectrum, superop_invert, HermitianOperator, Inversion, PartySubset, SystemShape};

/// Parameters of `Tr(ρ)𝟙 + αρ + βρ̃_A + γρ̃_{Aᶜ} + δρ̃` together with the
/// split `(a, b)` that witnesses admissibility.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct BhRegion {
    pub alpha: f64,
    pub beta: f64,
    pub gamma: f64,
    pub delta: f64,
    pub a: f64,
    pub b: f64,
}

impl BhRegion {
    pub fn new(alpha: f64, beta: f64, gamma: f64, delta: f64, a: f64, b: f64) -> Self {
        BhRegion { alpha, beta, gamma, delta, a, b }
    }

    /// Uses the smallest split `a = max(0, β/2 − α, α/2 − β)` (and likewise
    /// for `b`); any admissible split exists iff this one is admissible.
    pub fn with_minimal_split(alpha: f64, beta: f64, gamma: f64, delta: f64) -> Self {
        let split = |x: f64, y: f64| 0.0f64.max(y / 2.0 - x).max(x / 2.0 - y);
        Self::new(alpha, beta, gamma, delta, split(alpha, beta), split(gamma, delta))
    }

    /// Lists every violated condition.
    pub fn violations(&self) -> Vec<String> {
        let BhRegion { alpha, beta, gamma, delta, a, b } = *self;
        let mut failed = Vec::new();
        if [alpha, beta, gamma, delta, a, b].iter().any(|x| !x.is_finite()) {
            failed.push("parameters must be finite".to_string());
            return failed;
        }
        if !(0.0..=1.0).contains(&a) {
            failed.push(format!("0 <= a <= 1 (a = {a})"));
        }
        if !(0.0..=1.0).contains(&b) {
            failed.push(format!("0 <= b <= 1 (b = {b})"));
        }
        if a + b > 1.0 + 1e-12 {
            failed.push(format!("a + b <= 1 (a + b = {})", a + b));
        }
        // Absorbs rounding in splits computed from the parameters themselves.
        let slack = 1e-12;
        let mut check = |ok: bool, text: String| {
            if !ok {
                failed.push(text);
            }
        };
        check(alpha >= beta / 2.0 - a - slack, format!("alpha >= beta/2 - a ({alpha} vs {})", beta / 2.0 - a));
        check(beta >= alpha / 2.0 - a - slack, format!("beta >= alpha/2 - a ({beta} vs {})", alpha / 2.0 - a));
        check(gamma >= delta / 2.0 - b - slack, format!("gamma >= delta/2 - b ({gamma} vs {})", delta / 2.0 - b));
        check(delta >= gamma / 2.0 - b - slack, format!("delta >= gamma/2 - b ({delta} vs {})", gamma / 2.0 - b));
        for (name, v) in [("alpha", alpha), ("beta", beta), ("gamma", gamma), ("delta", delta)] {
            check(v >= -1.0, format!("{name} >= -1 ({name} = {v})"));
        }
        failed
    }

    pub fn validate(&self) -> Result<()> {
        let failed = self.violations();
        if failed.is_empty() {
            Ok(())
        } else {
            Err(Error::Region { failed })
        }
    }

    pub fn map(&self, a: &PartySubset, n: usize) -> MapSpec {
        MapSpec::four_term(self.alpha, self.beta, self.gamma, self.delta, a, n)
    }
}

fn require_all_qubits(shape: &SystemShape, a: &PartySubset) -> Result<()> {
    a.validate(shape)?;
    shape.require_qubits(&PartySubset::all(shape.num_parties()))
}

/// Four-term map with tildes over `A`, its complement, and all parties.
pub fn bh4_apply(rho: &HermitianOperator, region: &BhRegion, a: &PartySubset) -> Result<HermitianOperator> {
    region.validate()?;
    require_all_qubits(rho.shape(), a)?;
    region.map(a, rho.num_parties()).apply(rho)
}

/// Separability from positivity of the generic preimage under the
/// four-term map.
pub fn certify_bh4(
    sigma: &HermitianOperator,
    region: &BhRegion,
    a: &PartySubset,
    tol: f64,
) -> Result<DepthCertificate> {
    region.validate()?;
    require_all_qubits(sigma.shape(), a)?;
    let inv = superop_invert(&region.map(a, sigma.num_parties()), sigma)?;
    let min = spectrum(&inv.preimage).min();
    let witness = Witness::new("four-term-breuer-hall-inverse", min)
        .param("alpha", region.alpha)
        .param("beta", region.beta)
        .param("gamma", region.gamma)
        .param("delta", region.delta)
        .param("a", region.a)
        .param("b", region.b)
        .param("residual", inv.residual)
        .param("condition", inv.condition);
    if min >= -tol {
        DepthCertificate::new(Verdict::CertifiedSeparable, witness, sigma.num_parties(), tol)
    } else {
        Ok(DepthCertificate::inconclusive(witness))
    }
}

/// Parameters of the component attached to one party.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PartyParams {
    pub alpha: f64,
    pub beta: f64,
    pub gamma: f64,
    pub delta: f64,
}

/// Convex mixture over parties `i` of four-term maps with `A = {i}`:
/// `Tr(ρ)𝟙 + Σ_i p_i[α_i ρ + β_i ρ̃_i + γ_i ρ̃_{iᶜ} + δ_i ρ̃]`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MixtureParams {
    pub weights: Vec<f64>,
    pub params: Vec<PartyParams>,
}

impl MixtureParams {
    pub fn validate(&self, shape: &SystemShape) -> Result<()> {
        let n = shape.num_parties();
        if self.weights.len() != n || self.params.len() != n {
            return Err(Error::DimensionMismatch(format!(
                "{n} parties need {n} weights and parameter sets, got {} and {}",
                self.weights.len(),
                self.params.len()
            )));
        }
        if self.weights.iter().any(|&p| !(p >= 0.0) || !p.is_finite()) {
            return Err(Error::InvalidArgument("mixture weights must be nonnegative".into()));
        }
        let total: f64 = self.weights.iter().sum();
        if (total - 1.0).abs() > 1e-9 {
            return Err(Error::InvalidArgument(format!("mixture weights sum to {total}, expected 1")));
        }
        shape.require_qubits(&PartySubset::all(n))
    }

    /// Every component with nonzero weight must be admissible.
    pub fn validate_regions(&self) -> Result<()> {
        let mut failed = Vec::new();
        for (i, (p, q)) in self.weights.iter().zip(&self.params).enumerate() {
            if *p > 0.0 {
                let r = BhRegion::with_minimal_split(q.alpha, q.beta, q.gamma, q.delta);
                failed.extend(r.violations().into_iter().map(|v| format!("party {i}: {v}")));
            }
        }
        if failed.is_empty() {
            Ok(())
        } else {
            Err(Error::Region { failed })
        }
    }

    pub fn map(&self, n: usize) -> MapSpec {
        let mut spec = MapSpec::reduction(0.0);
        for (i, (p, q)) in self.weights.iter().zip(&self.params).enumerate() {
            let component = MapSpec::four_term(q.alpha, q.beta, q.gamma, q.delta, &PartySubset::single(i), n);
            // Drop the component's trace term: the mixture carries a single one.
            let body = MapSpec::new(component.terms()[1..].to_vec()).expect("finite coefficients");
            spec = spec.combined(1.0, &body, *p);
        }
        spec
    }
}

pub fn mixture_apply(rho: &HermitianOperator, mix: &MixtureParams) -> Result<HermitianOperator> {
    mix.validate(rho.shape())?;
    mix.map(rho.num_parties()).apply(rho)
}

/// Generic inversion of the mixture map.
pub fn mixture_invert(sigma: &HermitianOperator, mix: &MixtureParams) -> Result<Inversion> {
    mix.validate(sigma.shape())?;
    superop_invert(&mix.map(sigma.num_parties()), sigma)
}

/// Depth at most `N − 1` (no genuine `N`-party entanglement) when both `σ`
/// and its mixture preimage are positive.
pub fn certify_mixture(sigma: &HermitianOperator, mix: &MixtureParams, tol: f64) -> Result<DepthCertificate> {
    mix.validate(sigma.shape())?;
    mix.validate_regions()?;
    let n = sigma.num_parties();
    if n < 2 {
        return Err(Error::InvalidArgument("a depth bound needs at least two parties".into()));
    }
    let sigma_min = spectrum(sigma).min();
    let inv = mixture_invert(sigma, mix)?;
    let min = spectrum(&inv.preimage).min();
    let mut witness = Witness::new("breuer-hall-mixture-inverse", min.min(sigma_min))
        .param("residual", inv.residual)
        .param("condition", inv.condition)
        .param("sigma_min_eigenvalue", sigma_min)
        .param("preimage_min_eigenvalue", min);
    for (i, (p, q)) in mix.weights.iter().zip(&mix.params).enumerate() {
        witness = witness
            .param(&format!("p{i}"), *p)
            .param(&format!("alpha{i}"), q.alpha)
            .param(&format!("beta{i}"), q.beta)
            .param(&format!("gamma{i}"), q.gamma)
            .param(&format!("delta{i}"), q.delta);
    }
    if min >= -tol && sigma_min >= -tol {
        DepthCertificate::new(Verdict::CertifiedDepthAtMost { depth: n - 1 }, witness, n, tol)
    } else {
        Ok(DepthCertificate::inconclusive(witness))
    }
}
