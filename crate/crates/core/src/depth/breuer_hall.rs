use super::{require_single_qubit, MapSpec};
use crate::certificate::{DepthCertificate, Verdict, Witness};
use crate::error::{Error, Result};
use crate::operator::{operator_norm, partial_transpose, spectrum, tilde, HermitianOperator, PartySubset};
use crate::tolerance;

/// `Λ^A_{α,β}(ρ) = Tr(ρ)𝟙 + αρ + βρ̃_A` for a single qubit `A`.
pub fn bh_apply(rho: &HermitianOperator, alpha: f64, beta: f64, a: &PartySubset) -> Result<HermitianOperator> {
    require_single_qubit(rho.shape(), a)?;
    MapSpec::breuer_hall(alpha, beta, a).apply(rho)
}

/// `[ασ − βσ̃_A − (α−β)/(D+α+β)·Tr(σ)𝟙] / (α² − β²)`.
pub fn bh_inverse(sigma: &HermitianOperator, alpha: f64, beta: f64, a: &PartySubset) -> Result<HermitianOperator> {
    require_single_qubit(sigma.shape(), a)?;
    let dim = sigma.dim() as f64;
    let det = alpha * alpha - beta * beta;
    let denom = dim + alpha + beta;
    let scale = alpha.abs().max(beta.abs()).max(1.0);
    if det.abs() <= 1e-12 * scale * scale || denom.abs() <= 1e-12 * dim {
        return Err(Error::NonInvertibleMap { condition: f64::INFINITY });
    }
    let st = tilde(sigma, a)?;
    let out =
        sigma.scaled(alpha).add_scaled(-beta, &st)?.shifted(-(alpha - beta) / denom * sigma.trace()).scaled(1.0 / det);
    Ok(out)
}

/// Region on which `Λ^A_{α,β}` maps states to bi-separable operators:
/// `α ≥ max(−1, β/2 − 1)` and `β ≥ max(−1, α/2 − 1)`.
pub fn validate_bh_region(alpha: f64, beta: f64) -> Result<()> {
    let mut failed = Vec::new();
    if !alpha.is_finite() || !beta.is_finite() {
        failed.push("parameters must be finite".to_string());
    }
    if alpha < -1.0 {
        failed.push(format!("alpha >= -1 (alpha = {alpha})"));
    }
    if beta < -1.0 {
        failed.push(format!("beta >= -1 (beta = {beta})"));
    }
    if alpha < beta / 2.0 - 1.0 {
        failed.push(format!("alpha >= beta/2 - 1 (alpha = {alpha}, beta = {beta})"));
    }
    if beta < alpha / 2.0 - 1.0 {
        failed.push(format!("beta >= alpha/2 - 1 (alpha = {alpha}, beta = {beta})"));
    }
    if failed.is_empty() {
        Ok(())
    } else {
        Err(Error::Region { failed })
    }
}

/// Bi-separability in the cut `A : rest` from positivity of `Λ^A_{α,β}⁻¹(σ)`.
pub fn certify_bh(
    sigma: &HermitianOperator,
    alpha: f64,
    beta: f64,
    a: &PartySubset,
    tol: f64,
) -> Result<DepthCertificate> {
    validate_bh_region(alpha, beta)?;
    let rho = bh_inverse(sigma, alpha, beta, a)?;
    let min = spectrum(&rho).min();
    let witness = Witness::new("breuer-hall-inverse", min).param("alpha", alpha).param("beta", beta);
    cut_verdict(sigma, a, min, witness, tol)
}

fn cut_verdict(
    sigma: &HermitianOperator,
    a: &PartySubset,
    min: f64,
    witness: Witness,
    tol: f64,
) -> Result<DepthCertificate> {
    if min >= -tol {
        DepthCertificate::new(Verdict::CertifiedBiseparableCut { cut: a.clone() }, witness, sigma.num_parties(), tol)
    } else {
        Ok(DepthCertificate::inconclusive(witness))
    }
}

/// Boundary of the two-parameter region.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BoundaryVariant {
    /// `β = α/2 − 1`
    BetaOnBoundary,
    /// `α = β/2 − 1`
    AlphaOnBoundary,
}

/// Positivity test on the boundary of the region.
///
/// With `t` the free parameter, tests
/// `t·X − (t/2 − 1)·Y − (1 + t/2)/(D + 3t/2 − 1)·Tr(σ)𝟙 ⪰ 0` where
/// `(X, Y) = (σ, σ̃_A)` for [`BoundaryVariant::BetaOnBoundary`] and
/// `(σ̃_A, σ)` otherwise. This operator is `(1 + t/2)(3t/2 − 1)` times the
/// two-parameter preimage, so `t > 2/3` is required for its positivity to
/// carry over.
pub fn criterion_boundary_check(
    sigma: &HermitianOperator,
    t: f64,
    a: &PartySubset,
    variant: BoundaryVariant,
    tol: f64,
) -> Result<DepthCertificate> {
    require_single_qubit(sigma.shape(), a)?;
    if !(t > 2.0 / 3.0) || !t.is_finite() {
        return Err(Error::Region { failed: vec![format!("boundary parameter must exceed 2/3 (got {t})")] });
    }
    let dim = sigma.dim() as f64;
    let st = tilde(sigma, a)?;
    let (x, y) = match variant {
        BoundaryVariant::BetaOnBoundary => (sigma, &st),
        BoundaryVariant::AlphaOnBoundary => (&st, sigma),
    };
    let shift = (1.0 + t / 2.0) / (dim + 1.5 * t - 1.0) * sigma.trace();
    let op = x.scaled(t).add_scaled(-(t / 2.0 - 1.0), y)?.shifted(-shift);
    let min = spectrum(&op).min();
    let (alpha, beta) = match variant {
        BoundaryVariant::BetaOnBoundary => (t, t / 2.0 - 1.0),
        BoundaryVariant::AlphaOnBoundary => (t / 2.0 - 1.0, t),
    };
    let witness = Witness::new("breuer-hall-boundary", min).param("alpha", alpha).param("beta", beta);
    cut_verdict(sigma, a, min, witness, tol)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AsymptoticVariant {
    /// `σ − σ̃_A/2 ≻ 0`
    Direct,
    /// `σ̃_A − σ/2 ≻ 0`
    Tilde,
}

/// Large-parameter limit of the boundary test; requires strict positivity
/// with margin [`tolerance::STRICT_POSITIVITY`].
pub fn criterion_asymptotic_check(
    sigma: &HermitianOperator,
    a: &PartySubset,
    variant: AsymptoticVariant,
) -> Result<DepthCertificate> {
    require_single_qubit(sigma.shape(), a)?;
    let st = tilde(sigma, a)?;
    let op = match variant {
        AsymptoticVariant::Direct => sigma.add_scaled(-0.5, &st)?,
        AsymptoticVariant::Tilde => st.add_scaled(-0.5, sigma)?,
    };
    let min = spectrum(&op).min();
    let witness = Witness::new("breuer-hall-asymptotic", min);
    if min > tolerance::STRICT_POSITIVITY {
        DepthCertificate::new(Verdict::CertifiedBiseparableCut { cut: a.clone() }, witness, sigma.num_parties(), 0.0)
    } else {
        Ok(DepthCertificate::inconclusive(witness))
    }
}

/// Bi-separability of a state with a qubit `A` from (near) invariance
/// under partial transposition on `A`.
///
/// Certified if `‖σ − σ^{T_A}‖ ≤ tol`, or if `σ + σ^{T_A}` is invertible and
/// `‖(σ + σ^{T_A})⁻¹‖·‖σ − σ^{T_A}‖ ≤ 1` (operator norms).
pub fn kraus_check(sigma: &HermitianOperator, a: &PartySubset, tol: f64) -> Result<DepthCertificate> {
    require_single_qubit(sigma.shape(), a)?;
    let spec = spectrum(sigma);
    if spec.min() < -tol {
        return Err(Error::Validation(format!("operator is not positive semidefinite (λ_min = {:.3e})", spec.min())));
    }
    let pt = partial_transpose(sigma, a)?;
    let diff = operator_norm(&sigma.add_scaled(-1.0, &pt)?);
    if diff <= tol {
        let witness = Witness::new("pt-invariant", spec.min()).param("difference_norm", diff);
        return DepthCertificate::new(
            Verdict::CertifiedBiseparableCut { cut: a.clone() },
            witness,
            sigma.num_parties(),
            tol,
        );
    }
    let sum = spectrum(&sigma.add_scaled(1.0, &pt)?);
    let smallest = sum.eigenvalues().iter().fold(f64::INFINITY, |acc, x| acc.min(x.abs()));
    if smallest <= tol {
        let witness = Witness::new("pt-near-invariant", spec.min())
            .param("difference_norm", diff)
            .note(format!("sigma + partial transpose is rank deficient (smallest |eigenvalue| {smallest:.3e})"));
        return Ok(DepthCertificate::inconclusive(witness));
    }
    let product = diff / smallest;
    let witness = Witness::new("pt-near-invariant", spec.min())
        .param("difference_norm", diff)
        .param("inverse_sum_norm", 1.0 / smallest)
        .param("norm_product", product);
    if product <= 1.0 {
        DepthCertificate::new(Verdict::CertifiedBiseparableCut { cut: a.clone() }, witness, sigma.num_parties(), tol)
    } else {
        Ok(DepthCertificate::inconclusive(witness))
    }
}
