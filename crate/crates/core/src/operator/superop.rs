//! Matrix representation of linear maps on the operator space and generic
//! inversion through it.

use nalgebra::DMatrix;
use rayon::prelude::*;

use super::{HermitianOperator, OperatorBasis, SystemShape};
use crate::depth::MapSpec;
use crate::error::{Error, Result};
use crate::tolerance;

/// Real `D² × D²` matrix `M_ab = Tr(G_a Λ(G_b))` in the product Gell-Mann
/// basis of [`OperatorBasis`].
pub fn superop_matrix(map: &MapSpec, shape: &SystemShape) -> Result<DMatrix<f64>> {
    map.validate(shape)?;
    let dim = shape.dim();
    if dim > tolerance::SUPEROP_MAX_DIM {
        return Err(Error::Capacity { requested: dim as u128, cap: tolerance::SUPEROP_MAX_DIM as u128 });
    }
    let basis = OperatorBasis::new(shape);
    let columns: Vec<Vec<f64>> = (0..basis.len())
        .into_par_iter()
        .map(|b| {
            let image = map.apply(&basis.element(b))?;
            Ok(basis.coordinates(&image).iter().copied().collect())
        })
        .collect::<Result<_>>()?;
    let n = basis.len();
    Ok(DMatrix::from_fn(n, n, |a, b| columns[b][a]))
}

/// Result of a generic inversion.
#[derive(Clone, Debug)]
pub struct Inversion {
    pub preimage: HermitianOperator,
    /// Frobenius norm of `Λ(preimage) − σ`.
    pub residual: f64,
    /// 2-norm condition number of the superoperator matrix.
    pub condition: f64,
}

/// Solves `Λ(ρ) = σ` for `ρ`, refusing maps whose condition number exceeds
/// [`tolerance::CONDITION_MAX`].
pub fn superop_invert(map: &MapSpec, sigma: &HermitianOperator) -> Result<Inversion> {
    let shape = sigma.shape();
    let m = superop_matrix(map, shape)?;
    let sv = m.clone().singular_values();
    let smax = sv.max();
    let smin = sv.min();
    let condition = if smin > 0.0 { smax / smin } else { f64::INFINITY };
    if !(condition <= tolerance::CONDITION_MAX) {
        return Err(Error::NonInvertibleMap { condition });
    }
    let basis = OperatorBasis::new(shape);
    let rhs = basis.coordinates(sigma);
    let x = m.lu().solve(&rhs).ok_or(Error::NonInvertibleMap { condition })?;
    let preimage = basis.from_coordinates(&x);
    let residual = (map.apply(&preimage)?.matrix() - sigma.matrix()).norm();
    Ok(Inversion { preimage, residual, condition })
}
