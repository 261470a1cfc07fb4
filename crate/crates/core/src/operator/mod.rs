//! Dense Hermitian operators on multipartite tensor spaces.

mod basis;
mod shape;
mod spectral;
pub mod superop;
mod transpose;

pub use basis::OperatorBasis;
pub use shape::{PartySubset, SystemShape};
pub use spectral::{is_psd, operator_norm, spectrum, Spectrum};
pub use superop::{superop_invert, superop_matrix, Inversion};
pub use transpose::{partial_transpose, sigma2_conjugate, tilde};

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};
use crate::tolerance;
use crate::C64;

/// Dense complex Hermitian matrix tagged with its tensor-factor layout.
#[derive(Clone, Debug, PartialEq)]
pub struct HermitianOperator {
    shape: SystemShape,
    matrix: DMatrix<C64>,
}

impl HermitianOperator {
    /// Validates dimensions and Hermiticity, then stores the Hermitian part.
    pub fn new(shape: SystemShape, matrix: DMatrix<C64>) -> Result<Self> {
        let dim = shape.dim();
        if matrix.nrows() != dim || matrix.ncols() != dim {
            return Err(Error::DimensionMismatch(format!(
                "shape {:?} needs a {dim}x{dim} matrix, got {}x{}",
                shape.local_dims(),
                matrix.nrows(),
                matrix.ncols()
            )));
        }
        if matrix.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::Validation("operator has non-finite entries".into()));
        }
        let adjoint = matrix.adjoint();
        let skew = (&matrix - &adjoint).norm();
        let scale = matrix.norm();
        if skew > tolerance::HERMITICITY_REL * scale {
            return Err(Error::Validation(format!(
                "operator is not Hermitian: ‖A − A†‖ = {skew:.3e} vs ‖A‖ = {scale:.3e}"
            )));
        }
        let matrix = (matrix + adjoint) * C64::new(0.5, 0.0);
        Ok(HermitianOperator { shape, matrix })
    }

    /// Builds from real and imaginary parts given row-major.
    pub fn from_parts(shape: SystemShape, re: &[f64], im: &[f64]) -> Result<Self> {
        let dim = shape.dim();
        if re.len() != dim * dim || im.len() != dim * dim {
            return Err(Error::DimensionMismatch(format!(
                "expected {} entries for a {dim}x{dim} operator, got re={} im={}",
                dim * dim,
                re.len(),
                im.len()
            )));
        }
        let matrix = DMatrix::from_fn(dim, dim, |r, c| C64::new(re[r * dim + c], im[r * dim + c]));
        Self::new(shape, matrix)
    }

    /// Caller guarantees Hermiticity and matching dimensions.
    pub(crate) fn from_matrix_unchecked(shape: SystemShape, matrix: DMatrix<C64>) -> Self {
        debug_assert_eq!(matrix.nrows(), shape.dim());
        HermitianOperator { shape, matrix }
    }

    pub fn identity(shape: SystemShape) -> Self {
        let d = shape.dim();
        HermitianOperator { shape, matrix: DMatrix::identity(d, d) }
    }

    pub fn zeros(shape: SystemShape) -> Self {
        let d = shape.dim();
        HermitianOperator { shape, matrix: DMatrix::zeros(d, d) }
    }

    /// `I / D`.
    pub fn maximally_mixed(shape: SystemShape) -> Self {
        let d = shape.dim() as f64;
        Self::identity(shape).scaled(1.0 / d)
    }

    pub fn from_real_diagonal(shape: SystemShape, diag: &[f64]) -> Result<Self> {
        if diag.len() != shape.dim() {
            return Err(Error::DimensionMismatch(format!(
                "diagonal of length {} for dimension {}",
                diag.len(),
                shape.dim()
            )));
        }
        let d = shape.dim();
        let mut m = DMatrix::zeros(d, d);
        for (i, &x) in diag.iter().enumerate() {
            m[(i, i)] = C64::new(x, 0.0);
        }
        Ok(HermitianOperator { shape, matrix: m })
    }

    /// `|ψ⟩⟨ψ|` (no normalisation is applied).
    pub fn projector(shape: SystemShape, psi: &DVector<C64>) -> Result<Self> {
        if psi.len() != shape.dim() {
            return Err(Error::DimensionMismatch(format!(
                "vector of length {} for dimension {}",
                psi.len(),
                shape.dim()
            )));
        }
        let matrix = psi * psi.adjoint();
        Ok(HermitianOperator { shape, matrix })
    }

    pub fn shape(&self) -> &SystemShape {
        &self.shape
    }

    pub fn matrix(&self) -> &DMatrix<C64> {
        &self.matrix
    }

    pub fn into_matrix(self) -> DMatrix<C64> {
        self.matrix
    }

    pub fn dim(&self) -> usize {
        self.shape.dim()
    }

    pub fn num_parties(&self) -> usize {
        self.shape.num_parties()
    }

    pub fn trace(&self) -> f64 {
        self.matrix.diagonal().iter().map(|z| z.re).sum()
    }

    /// Frobenius norm.
    pub fn frobenius_norm(&self) -> f64 {
        self.matrix.norm()
    }

    pub fn scaled(&self, factor: f64) -> Self {
        HermitianOperator { shape: self.shape.clone(), matrix: &self.matrix * C64::new(factor, 0.0) }
    }

    /// `self + coeff · other`.
    pub fn add_scaled(&self, coeff: f64, other: &HermitianOperator) -> Result<Self> {
        self.require_same_shape(other)?;
        Ok(HermitianOperator { shape: self.shape.clone(), matrix: &self.matrix + &other.matrix * C64::new(coeff, 0.0) })
    }

    /// `self + c · I`.
    pub fn shifted(&self, c: f64) -> Self {
        let mut m = self.matrix.clone();
        for i in 0..m.nrows() {
            m[(i, i)].re += c;
        }
        HermitianOperator { shape: self.shape.clone(), matrix: m }
    }

    pub(crate) fn require_same_shape(&self, other: &HermitianOperator) -> Result<()> {
        if self.shape != other.shape {
            return Err(Error::DimensionMismatch(format!(
                "shapes {:?} and {:?} differ",
                self.shape.local_dims(),
                other.shape.local_dims()
            )));
        }
        Ok(())
    }

    /// Largest absolute entry difference.
    pub fn max_abs_diff(&self, other: &HermitianOperator) -> f64 {
        self.matrix.iter().zip(other.matrix.iter()).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max)
    }

    /// Checks `Tr ρ = 1` and `ρ ≥ −tol`.
    pub fn validate_state(&self, tol: f64) -> Result<()> {
        let tr = self.trace();
        if (tr - 1.0).abs() > tolerance::TRACE {
            return Err(Error::Validation(format!("state has trace {tr}, expected 1")));
        }
        let min = spectrum(self).min();
        if min < -tol {
            return Err(Error::Validation(format!("state is not positive semidefinite (λ_min = {min:.3e})")));
        }
        Ok(())
    }
}
