use crate::certificate::{DepthCertificate, Verdict, Witness};
use crate::error::{Error, Result};
use crate::operator::{spectrum, HermitianOperator};

/// `Λ_α(ρ) = Tr(ρ)𝟙 + αρ`.
pub fn reduction_apply(rho: &HermitianOperator, alpha: f64) -> HermitianOperator {
    rho.scaled(alpha).shifted(rho.trace())
}

/// `Λ_α⁻¹(σ) = [σ − Tr(σ)𝟙/(D + α)]/α`; singular at `α = 0` and `α = −D`.
pub fn reduction_inverse(sigma: &HermitianOperator, alpha: f64) -> Result<HermitianOperator> {
    let dim = sigma.dim() as f64;
    if alpha == 0.0 || (dim + alpha).abs() <= f64::EPSILON * dim {
        return Err(Error::NonInvertibleMap { condition: f64::INFINITY });
    }
    Ok(sigma.shifted(-sigma.trace() / (dim + alpha)).scaled(1.0 / alpha))
}

/// Certifies entanglement depth at most `N − n`.
///
/// For `α ∈ [−1, 2] \ {0}` the preimage `Λ_α⁻¹(σ)` is positive iff
/// `λ_min(σ) ≥ Tr σ/(D+α)` (α > 0) or `λ_max(σ) ≤ Tr σ/(D+α)` (α < 0), and
/// both thresholds are loosest at the endpoints, so only `α = 2` and `α = −1`
/// are tested.
pub fn certify_depth_reduction(sigma: &HermitianOperator, n: usize, tol: f64) -> Result<DepthCertificate> {
    sigma.validate_state(tol)?;
    let parties = sigma.num_parties();
    if n == 0 || n >= parties {
        return Err(Error::InvalidArgument(format!(
            "n = {n} must lie in 1..={} for {parties} parties",
            parties.saturating_sub(1)
        )));
    }
    let dim = sigma.dim() as f64;
    let tr = sigma.trace();
    let spec = spectrum(sigma);
    // Smallest eigenvalue of Λ_α⁻¹(σ) on each branch.
    let upper = (spec.min() - tr / (dim + 2.0)) / 2.0;
    let lower = tr / (dim - 1.0) - spec.max();
    let (alpha, witness_min) = if upper >= lower { (2.0, upper) } else { (-1.0, lower) };
    let witness = Witness::new("reduction-inverse", witness_min)
        .param("alpha", alpha)
        .param("n", n as f64)
        .param("lambda_min", spec.min())
        .param("lambda_max", spec.max());
    if witness_min >= -tol {
        DepthCertificate::new(Verdict::CertifiedDepthAtMost { depth: parties - n }, witness, parties, tol)
    } else {
        Ok(DepthCertificate::inconclusive(witness))
    }
}
