use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};
use crate::operator::{HermitianOperator, SystemShape};
use crate::C64;

/// Largest full-space dimension for which Dicke vectors are materialised.
const MAX_DENSE_DIM: usize = 1 << 16;

/// Generalised Dicke state `|D_k⟩` of `n` parties with local dimension `d`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DickeIndex {
    pub n: usize,
    pub d: usize,
    pub k: usize,
}

impl DickeIndex {
    pub fn new(n: usize, d: usize, k: usize) -> Result<Self> {
        if n == 0 || d < 2 {
            return Err(Error::InvalidArgument(format!("need n >= 1 and d >= 2 (n = {n}, d = {d})")));
        }
        if k > n * (d - 1) {
            return Err(Error::InvalidArgument(format!("excitation {k} exceeds n(d-1) = {}", n * (d - 1))));
        }
        Ok(DickeIndex { n, d, k })
    }
}

/// Number of strings in `{0..d−1}^n` with digit sum `k`.
pub fn dicke_count(n: usize, d: usize, k: usize) -> f64 {
    if d < 2 || k > n * d.saturating_sub(1) {
        return 0.0;
    }
    // counts[s] = number of prefixes with digit sum s
    let mut counts = vec![0.0f64; k + 1];
    counts[0] = 1.0;
    for _ in 0..n {
        let mut next = vec![0.0f64; k + 1];
        for (s, &c) in counts.iter().enumerate() {
            if c == 0.0 {
                continue;
            }
            for digit in 0..d.min(k - s + 1) {
                next[s + digit] += c;
            }
        }
        counts = next;
    }
    counts[k]
}

fn checked_dim(n: usize, d: usize) -> Result<usize> {
    let dim = (d as u128).checked_pow(n as u32).unwrap_or(u128::MAX);
    if dim > MAX_DENSE_DIM as u128 {
        return Err(Error::Capacity { requested: dim, cap: MAX_DENSE_DIM as u128 });
    }
    Ok(dim as usize)
}

fn digit_sum(mut index: usize, d: usize, n: usize) -> usize {
    let mut s = 0;
    for _ in 0..n {
        s += index % d;
        index /= d;
    }
    s
}

/// Unit vector in `(ℂ^d)^{⊗n}`: uniform superposition of all basis strings
/// with digit sum `k`.
pub fn dicke_vector(idx: DickeIndex) -> Result<DVector<C64>> {
    let dim = checked_dim(idx.n, idx.d)?;
    let amp = C64::new(1.0 / dicke_count(idx.n, idx.d, idx.k).sqrt(), 0.0);
    Ok(DVector::from_fn(dim, |i, _| if digit_sum(i, idx.d, idx.n) == idx.k { amp } else { C64::new(0.0, 0.0) }))
}

/// Columns are `|D_0⟩, …, |D_{n(d−1)}⟩`.
pub(crate) fn dicke_basis(n: usize, d: usize) -> Result<DMatrix<C64>> {
    let dim = checked_dim(n, d)?;
    let levels = n * (d - 1) + 1;
    let amps: Vec<f64> = (0..levels).map(|k| 1.0 / dicke_count(n, d, k).sqrt()).collect();
    let mut b = DMatrix::zeros(dim, levels);
    for i in 0..dim {
        let k = digit_sum(i, d, n);
        b[(i, k)] = C64::new(amps[k], 0.0);
    }
    Ok(b)
}

/// `Σ_k |D_k⟩⟨D_k|` on the full space; for qubits this is the projector
/// onto the symmetric subspace.
pub fn dicke_projector_sum(n: usize, d: usize) -> Result<HermitianOperator> {
    let b = dicke_basis(n, d)?;
    let shape = SystemShape::uniform(n, d)?;
    HermitianOperator::new(shape, &b * b.adjoint())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute_count(n: usize, d: usize, k: usize) -> usize {
        (0..d.pow(n as u32)).filter(|&i| digit_sum(i, d, n) == k).count()
    }

    #[test]
    fn counts_match_enumeration() {
        assert_eq!(dicke_count(2, 3, 2), 3.0);
        for n in 1..=5 {
            for d in 2..=4 {
                for k in 0..=n * (d - 1) {
                    assert_eq!(dicke_count(n, d, k), brute_count(n, d, k) as f64, "n={n} d={d} k={k}");
                }
            }
        }
        assert_eq!(dicke_count(3, 2, 4), 0.0);
    }

    #[test]
    fn binomial_for_qubits() {
        assert_eq!(dicke_count(10, 2, 5), 252.0);
        assert_eq!(dicke_count(40, 2, 20), 137_846_528_820.0);
    }

    #[test]
    fn two_qubit_single_excitation() {
        let v = dicke_vector(DickeIndex::new(2, 2, 1).unwrap()).unwrap();
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let expected = [0.0, h, h, 0.0];
        for (a, b) in v.iter().zip(expected) {
            assert!((a.re - b).abs() < 1e-15 && a.im == 0.0);
        }
    }

    #[test]
    fn orthonormal() {
        for (n, d) in [(3, 2), (2, 3), (3, 3), (4, 2)] {
            let b = dicke_basis(n, d).unwrap();
            let gram = b.adjoint() * &b;
            let id = DMatrix::<C64>::identity(gram.nrows(), gram.ncols());
            assert!((gram - id).norm() < 1e-12);
        }
    }

    #[test]
    fn index_validation() {
        assert!(DickeIndex::new(2, 2, 3).is_err());
        assert!(DickeIndex::new(2, 1, 0).is_err());
        assert!(dicke_vector(DickeIndex::new(20, 2, 1).unwrap()).is_err());
    }
}
