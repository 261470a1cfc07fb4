use nalgebra::{DMatrix, DVector};

use super::{HermitianOperator, SystemShape};
use crate::C64;

type Sparse = Vec<(usize, usize, C64)>;

/// Orthonormal Hermitian basis of the operator space, built as tensor
/// products of normalised generalised Gell-Mann matrices
/// (`Tr(G_a G_b) = δ_ab`). Elements are stored sparsely.
#[derive(Clone, Debug)]
pub struct OperatorBasis {
    shape: SystemShape,
    elements: Vec<Sparse>,
}

fn local_gell_mann(d: usize) -> Vec<Sparse> {
    let mut out = Vec::with_capacity(d * d);
    out.push((0..d).map(|j| (j, j, C64::new(1.0 / (d as f64).sqrt(), 0.0))).collect());
    let h = std::f64::consts::FRAC_1_SQRT_2;
    for j in 0..d {
        for k in j + 1..d {
            out.push(vec![(j, k, C64::new(h, 0.0)), (k, j, C64::new(h, 0.0))]);
            out.push(vec![(j, k, C64::new(0.0, -h)), (k, j, C64::new(0.0, h))]);
        }
    }
    for l in 1..d {
        let norm = 1.0 / ((l * (l + 1)) as f64).sqrt();
        let mut e: Sparse = (0..l).map(|j| (j, j, C64::new(norm, 0.0))).collect();
        e.push((l, l, C64::new(-(l as f64) * norm, 0.0)));
        out.push(e);
    }
    out
}

impl OperatorBasis {
    pub fn new(shape: &SystemShape) -> Self {
        let mut elements: Vec<Sparse> = vec![vec![(0, 0, C64::new(1.0, 0.0))]];
        for &d in shape.local_dims() {
            let local = local_gell_mann(d);
            let mut next = Vec::with_capacity(elements.len() * local.len());
            for big in &elements {
                for small in &local {
                    let mut e = Vec::with_capacity(big.len() * small.len());
                    for &(r1, c1, v1) in big {
                        for &(r2, c2, v2) in small {
                            e.push((r1 * d + r2, c1 * d + c2, v1 * v2));
                        }
                    }
                    next.push(e);
                }
            }
            elements = next;
        }
        OperatorBasis { shape: shape.clone(), elements }
    }

    pub fn shape(&self) -> &SystemShape {
        &self.shape
    }

    /// Number of elements, `D²`.
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// Element `a` as a dense operator.
    pub fn element(&self, a: usize) -> HermitianOperator {
        let d = self.shape.dim();
        let mut m = DMatrix::zeros(d, d);
        for &(r, c, v) in &self.elements[a] {
            m[(r, c)] += v;
        }
        HermitianOperator::from_matrix_unchecked(self.shape.clone(), m)
    }

    /// Real coordinates `c_a = Tr(G_a X)` of a Hermitian `X`.
    pub fn coordinates(&self, op: &HermitianOperator) -> DVector<f64> {
        self.coordinates_of(op.matrix())
    }

    pub(crate) fn coordinates_of(&self, m: &DMatrix<C64>) -> DVector<f64> {
        DVector::from_iterator(
            self.elements.len(),
            self.elements.iter().map(|e| e.iter().map(|&(r, c, v)| (v * m[(c, r)]).re).sum::<f64>()),
        )
    }

    /// `Σ_a c_a G_a`.
    pub fn from_coordinates(&self, coords: &DVector<f64>) -> HermitianOperator {
        let d = self.shape.dim();
        let mut m = DMatrix::zeros(d, d);
        for (e, &x) in self.elements.iter().zip(coords.iter()) {
            for &(r, c, v) in e {
                m[(r, c)] += v * x;
            }
        }
        HermitianOperator::from_matrix_unchecked(self.shape.clone(), m)
    }
}
