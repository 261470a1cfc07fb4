use serde::{Deserialize, Serialize};

use super::HermitianOperator;

/// Eigenvalues in ascending order.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Spectrum {
    eigenvalues: Vec<f64>,
}

impl Spectrum {
    pub(crate) fn from_unsorted(mut eigenvalues: Vec<f64>) -> Self {
        eigenvalues.sort_by(f64::total_cmp);
        Spectrum { eigenvalues }
    }

    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    /// Smallest eigenvalue (`+∞` for an empty spectrum).
    pub fn min(&self) -> f64 {
        self.eigenvalues.first().copied().unwrap_or(f64::INFINITY)
    }

    /// Largest eigenvalue (`−∞` for an empty spectrum).
    pub fn max(&self) -> f64 {
        self.eigenvalues.last().copied().unwrap_or(f64::NEG_INFINITY)
    }

    pub fn len(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn is_empty(&self) -> bool {
        self.eigenvalues.is_empty()
    }
}

/// Ascending eigenvalues from a backward-stable Hermitian eigensolver.
pub fn spectrum(op: &HermitianOperator) -> Spectrum {
    let ev = op.matrix().clone().symmetric_eigenvalues();
    Spectrum::from_unsorted(ev.iter().copied().collect())
}

/// `λ_min(op) ≥ −tol`.
pub fn is_psd(op: &HermitianOperator, tol: f64) -> bool {
    spectrum(op).min() >= -tol
}

/// Largest absolute eigenvalue.
pub fn operator_norm(op: &HermitianOperator) -> f64 {
    spectrum(op).eigenvalues().iter().fold(0.0, |acc, x| acc.max(x.abs()))
}
