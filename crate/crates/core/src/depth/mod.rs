//! Reduction-type and Breuer–Hall-type map families, their inverses and the
//! certificates derived from them.
//!
//! A map `Λ` that sends every state into a class `C` certifies `σ ∈ C`
//! whenever `Λ⁻¹(σ) ⪰ 0`.

mod bh4;
mod breuer_hall;
mod map_spec;
mod reduction;

pub use bh4::{
    bh4_apply, certify_bh4, certify_mixture, mixture_apply, mixture_invert, BhRegion, MixtureParams, PartyParams,
};
pub use breuer_hall::{
    bh_apply, bh_inverse, certify_bh, criterion_asymptotic_check, criterion_boundary_check, kraus_check,
    validate_bh_region, AsymptoticVariant, BoundaryVariant,
};
pub use map_spec::{MapSpec, MapTerm, TermKind};
pub use reduction::{certify_depth_reduction, reduction_apply, reduction_inverse};

use crate::error::{Error, Result};
use crate::operator::{PartySubset, SystemShape};

/// Checks that `subset` names exactly one qubit of `shape`.
pub(crate) fn require_single_qubit(shape: &SystemShape, subset: &PartySubset) -> Result<usize> {
    subset.validate(shape)?;
    if subset.len() != 1 {
        return Err(Error::InvalidArgument(format!("expected a single party, got {subset}")));
    }
    shape.require_qubits(subset)?;
    Ok(subset.as_slice()[0])
}
