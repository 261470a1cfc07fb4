//! Univariate moment relaxation `Γ₀ + α Σᵢ Sᵢ Γᵢ ⪰ 0`.

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use super::{AlphaResult, Extreme};
use crate::error::{Error, Result};
use crate::optim::{bisect_boundary, BisectionSpec, Direction};

/// Real symmetric matrices of a common dimension; index 0 is the constant
/// block.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "GammaRecord", into = "GammaRecord")]
pub struct GammaFamily {
    matrices: Vec<DMatrix<f64>>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct GammaRecord {
    dimension: usize,
    matrices: Vec<Vec<Vec<f64>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    label: Option<String>,
}

impl TryFrom<GammaRecord> for GammaFamily {
    type Error = Error;

    fn try_from(r: GammaRecord) -> Result<Self> {
        let mats = r
            .matrices
            .iter()
            .enumerate()
            .map(|(i, rows)| {
                if rows.len() != r.dimension || rows.iter().any(|row| row.len() != r.dimension) {
                    return Err(Error::DimensionMismatch(format!("matrix {i} is not {0}×{0}", r.dimension)));
                }
                Ok(DMatrix::from_fn(r.dimension, r.dimension, |a, b| rows[a][b]))
            })
            .collect::<Result<Vec<_>>>()?;
        GammaFamily::new(mats)
    }
}

impl From<GammaFamily> for GammaRecord {
    fn from(g: GammaFamily) -> Self {
        GammaRecord {
            dimension: g.dimension(),
            matrices: g
                .matrices
                .iter()
                .map(|m| (0..m.nrows()).map(|a| m.row(a).iter().copied().collect()).collect())
                .collect(),
            label: None,
        }
    }
}

impl GammaFamily {
    pub fn new(matrices: Vec<DMatrix<f64>>) -> Result<Self> {
        let first = matrices.first().ok_or_else(|| Error::Validation("empty matrix family".into()))?;
        let dim = first.nrows();
        if dim == 0 {
            return Err(Error::Validation("matrix family has dimension 0".into()));
        }
        for (i, m) in matrices.iter().enumerate() {
            if m.nrows() != dim || m.ncols() != dim {
                return Err(Error::DimensionMismatch(format!(
                    "matrix {i} is {}×{}, expected {dim}×{dim}",
                    m.nrows(),
                    m.ncols()
                )));
            }
            if m.iter().any(|v| !v.is_finite()) {
                return Err(Error::Validation(format!("matrix {i} has non-finite entries")));
            }
            let scale = m.amax().max(1.0);
            if (m - m.transpose()).amax() > 1e-12 * scale {
                return Err(Error::Validation(format!("matrix {i} is not symmetric")));
            }
        }
        Ok(GammaFamily { matrices })
    }

    pub fn dimension(&self) -> usize {
        self.matrices[0].nrows()
    }

    pub fn len(&self) -> usize {
        self.matrices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.matrices.is_empty()
    }

    pub fn matrices(&self) -> &[DMatrix<f64>] {
        &self.matrices
    }
}

fn min_eigenvalue(m: &DMatrix<f64>) -> f64 {
    m.clone().symmetric_eigenvalues().min()
}

/// Extreme `α` with `Γ₀ + α Σᵢ Sᵢ Γᵢ ⪰ 0`, by bracketed bisection.
pub fn sdp_relax_alpha(s: &[f64], gamma: &GammaFamily, extreme: Extreme, tol: f64) -> Result<AlphaResult> {
    if gamma.len() != s.len() + 1 {
        return Err(Error::DimensionMismatch(format!(
            "{} matrices for {} correlators; expected {}",
            gamma.len(),
            s.len(),
            s.len() + 1
        )));
    }
    if s.iter().any(|v| !v.is_finite()) {
        return Err(Error::Validation("non-finite correlator".into()));
    }
    let g0 = &gamma.matrices()[0];
    let mut slope = DMatrix::zeros(g0.nrows(), g0.ncols());
    for (si, gi) in s.iter().zip(&gamma.matrices()[1..]) {
        slope += gi * *si;
    }
    let scale = g0.amax().max(1.0);
    if min_eigenvalue(g0) < -tol * scale {
        return Ok(AlphaResult::infeasible());
    }
    if slope.amax() <= 1e-14 * scale {
        return Ok(AlphaResult::unbounded(extreme));
    }
    let slope_scale = slope.amax();
    let predicate = |a: f64| min_eigenvalue(&(g0 + &slope * a)) >= -tol * (scale + a.abs() * slope_scale);
    let spec = BisectionSpec::new(predicate).tolerance(1e-12);
    let dir = match extreme {
        Extreme::Max => Direction::Up,
        Extreme::Min => Direction::Down,
    };
    let edge = bisect_boundary(&spec, 0.0, dir)?;
    Ok(if edge.is_infinite() { AlphaResult::unbounded(extreme) } else { AlphaResult::optimal(edge) })
}
