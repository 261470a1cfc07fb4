use super::dicke::{dicke_basis, dicke_projector_sum};
use crate::certificate::{DepthCertificate, Verdict, Witness};
use crate::error::{Error, Result};
use crate::operator::{partial_transpose, spectrum, HermitianOperator, PartySubset, Spectrum, SystemShape};
use crate::tolerance;
use crate::C64;
use nalgebra::DMatrix;

/// Spectrum of `(𝟙_S)^{T_0}` for the `n`-qubit symmetric projector `𝟙_S`,
/// taken on its natural support `ℂ² ⊗ Sym^{n−1}` (dimension `2n`). Outside
/// that subspace the operator vanishes identically.
pub fn sym_identity_pt_spectrum(n: usize) -> Result<Spectrum> {
    if n < 2 {
        return Err(Error::InvalidArgument(format!("need at least two qubits, got {n}")));
    }
    let proj = dicke_projector_sum(n, 2)?;
    let pt = partial_transpose(&proj, &PartySubset::single(0))?;
    let support = DMatrix::<C64>::identity(2, 2).kronecker(&dicke_basis(n - 1, 2)?);
    let restricted = support.adjoint() * pt.matrix() * &support;
    Ok(spectrum(&HermitianOperator::new(SystemShape::new(vec![2 * n])?, restricted)?))
}

/// Smallest eigenvalue of `(𝟙_S)^{T_0}`; equals `1/n`.
pub fn sym_identity_pt_min_eig(n: usize) -> Result<f64> {
    Ok(sym_identity_pt_spectrum(n)?.min())
}

/// Admissible α for the symmetric-sector map `Tr(ρ)𝟙_S + αρ`, available
/// for two and three qubits.
pub fn symmetric_alpha_range(n: usize) -> Result<(f64, f64)> {
    match n {
        2 => Ok((-0.75, 1.0)),
        3 => Ok((-1.0 / 3.0, 2.0 / 3.0)),
        _ => Err(Error::InvalidArgument(format!("symmetric-sector range is available for 2 or 3 qubits, got {n}"))),
    }
}

pub fn validate_symmetric_alpha(n: usize, alpha: f64) -> Result<()> {
    let (min, max) = symmetric_alpha_range(n)?;
    if alpha >= min && alpha <= max {
        Ok(())
    } else {
        Err(Error::OutOfRange { alpha, min, max })
    }
}

/// Separability of a state supported on the symmetric sector of two or
/// three qubits.
///
/// On the sector the preimage is `[σ − Tr(σ)𝟙_S/(N+1+α)]/α`; as in the
/// full-space reduction test only the range endpoints need checking.
pub fn certify_symmetric_small(sigma: &HermitianOperator, tol: f64) -> Result<DepthCertificate> {
    let n = sigma.num_parties();
    let (amin, amax) = symmetric_alpha_range(n)?;
    sigma.shape().require_qubits(&PartySubset::all(n))?;
    sigma.validate_state(tol)?;
    let b = dicke_basis(n, 2)?;
    let restricted = b.adjoint() * sigma.matrix() * &b;
    let back = &b * &restricted * b.adjoint();
    let residual = (sigma.matrix() - back).norm();
    if residual > tolerance::SUBSPACE_RESIDUAL * sigma.frobenius_norm().max(1.0) {
        return Err(Error::Validation(format!(
            "operator is not supported on the symmetric sector (residual {residual:.3e})"
        )));
    }
    let sector_shape = SystemShape::new(vec![n + 1])?;
    let spec = spectrum(&HermitianOperator::new(sector_shape, restricted)?);
    let tr = sigma.trace();
    let levels = (n + 1) as f64;
    let upper = (spec.min() - tr / (levels + amax)) / amax;
    let lower = (tr / (levels + amin) - spec.max()) / -amin;
    let (alpha, witness_min) = if upper >= lower { (amax, upper) } else { (amin, lower) };
    let witness = Witness::new("symmetric-sector-reduction", witness_min)
        .param("alpha", alpha)
        .param("lambda_min", spec.min())
        .param("lambda_max", spec.max())
        .param("sector_residual", residual);
    if witness_min >= -tol {
        DepthCertificate::new(Verdict::CertifiedSeparable, witness, n, tol)
    } else {
        Ok(DepthCertificate::inconclusive(witness))
    }
}
