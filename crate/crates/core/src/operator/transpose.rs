use nalgebra::DMatrix;

use super::{HermitianOperator, PartySubset, SystemShape};
use crate::error::Result;
use crate::C64;

/// Transposes the tensor factors of the parties in `subset`.
pub fn partial_transpose(op: &HermitianOperator, subset: &PartySubset) -> Result<HermitianOperator> {
    subset.validate(op.shape())?;
    let matrix = pt_matrix(op.matrix(), op.shape(), subset);
    Ok(HermitianOperator::from_matrix_unchecked(op.shape().clone(), matrix))
}

pub(crate) fn pt_matrix(m: &DMatrix<C64>, shape: &SystemShape, subset: &PartySubset) -> DMatrix<C64> {
    if subset.is_empty() {
        return m.clone();
    }
    let dim = shape.dim();
    let mut out = DMatrix::zeros(dim, dim);
    for c in 0..dim {
        for r in 0..dim {
            let (mut nr, mut nc) = (r, c);
            for &p in subset.iter() {
                let s = shape.stride(p);
                let rp = shape.digit(r, p);
                let cp = shape.digit(c, p);
                nr = nr - rp * s + cp * s;
                nc = nc - cp * s + rp * s;
            }
            out[(nr, nc)] = m[(r, c)];
        }
    }
    out
}

/// `(⊗_{i∈S} σ₂) op (⊗_{i∈S} σ₂)`; every party in `subset` must be a qubit.
pub fn sigma2_conjugate(op: &HermitianOperator, subset: &PartySubset) -> Result<HermitianOperator> {
    op.shape().require_qubits(subset)?;
    let matrix = sigma2_matrix(op.matrix(), op.shape(), subset);
    Ok(HermitianOperator::from_matrix_unchecked(op.shape().clone(), matrix))
}

// σ₂|b⟩ = f(1−b)|1−b⟩ up to the convention below, so
// (UAU)[r][c] = f(r) conj(f(c)) A[flip r][flip c] with f(0) = −i, f(1) = i.
fn sigma2_matrix(m: &DMatrix<C64>, shape: &SystemShape, subset: &PartySubset) -> DMatrix<C64> {
    if subset.is_empty() {
        return m.clone();
    }
    let dim = shape.dim();
    let flip_phase = |i: usize| -> (usize, C64) {
        let mut j = i;
        let mut phase = C64::new(1.0, 0.0);
        for &p in subset.iter() {
            let s = shape.stride(p);
            if shape.digit(i, p) == 0 {
                j += s;
                phase *= C64::new(0.0, -1.0);
            } else {
                j -= s;
                phase *= C64::new(0.0, 1.0);
            }
        }
        (j, phase)
    };
    let table: Vec<(usize, C64)> = (0..dim).map(flip_phase).collect();
    DMatrix::from_fn(dim, dim, |r, c| {
        let (fr, pr) = table[r];
        let (fc, pc) = table[c];
        pr * pc.conj() * m[(fr, fc)]
    })
}

/// `ρ̃_S = σ₂^S ρ^{T_S} σ₂^S`.
pub fn tilde(op: &HermitianOperator, subset: &PartySubset) -> Result<HermitianOperator> {
    op.shape().require_qubits(subset)?;
    let pt = pt_matrix(op.matrix(), op.shape(), subset);
    let matrix = sigma2_matrix(&pt, op.shape(), subset);
    Ok(HermitianOperator::from_matrix_unchecked(op.shape().clone(), matrix))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;
    use crate::operator::spectrum;
    use crate::testutil::{bell_phi_plus, random_hermitian, rng};
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;

    fn ket(shape: &SystemShape, index: usize) -> HermitianOperator {
        let mut diag = vec![0.0; shape.dim()];
        diag[index] = 1.0;
        HermitianOperator::from_real_diagonal(shape.clone(), &diag).unwrap()
    }

    #[test]
    fn diagonal_is_transpose_invariant() {
        let shape = SystemShape::new(vec![2, 3]).unwrap();
        let d = HermitianOperator::from_real_diagonal(shape, &[1.0, -2.0, 3.0, 0.5, 0.0, 7.0]).unwrap();
        for s in [PartySubset::single(0), PartySubset::single(1), PartySubset::all(2)] {
            assert_eq!(partial_transpose(&d, &s).unwrap(), d);
        }
    }

    #[test]
    fn bell_projector_partial_transpose_spectrum() {
        let phi = bell_phi_plus();
        let pt = partial_transpose(&phi, &PartySubset::single(0)).unwrap();
        let ev = spectrum(&pt).eigenvalues().to_vec();
        let expected = [-0.5, 0.5, 0.5, 0.5];
        for (a, b) in ev.iter().zip(expected) {
            assert_abs_diff_eq!(*a, b, epsilon = 1e-12);
        }
    }

    #[test]
    fn partial_transpose_out_of_range() {
        let phi = bell_phi_plus();
        assert!(matches!(partial_transpose(&phi, &PartySubset::single(2)), Err(Error::PartyOutOfRange { .. })));
    }

    #[test]
    fn sigma2_maps_zero_to_one() {
        let shape = SystemShape::qubits(1).unwrap();
        let out = sigma2_conjugate(&ket(&shape, 0), &PartySubset::single(0)).unwrap();
        assert!(out.max_abs_diff(&ket(&shape, 1)) < 1e-15);
    }

    #[test]
    fn sigma2_requires_qubits() {
        let shape = SystemShape::new(vec![2, 3]).unwrap();
        let op = HermitianOperator::identity(shape);
        assert!(matches!(
            sigma2_conjugate(&op, &PartySubset::single(1)),
            Err(Error::UnsupportedDimension { party: 1, dim: 3 })
        ));
        assert!(matches!(tilde(&op, &PartySubset::single(1)), Err(Error::UnsupportedDimension { .. })));
    }

    #[test]
    fn identity_fixed_by_sigma2_and_tilde() {
        let shape = SystemShape::qubits(3).unwrap();
        let id = HermitianOperator::identity(shape);
        for s in [PartySubset::single(1), PartySubset::new([0, 2]), PartySubset::all(3)] {
            assert!(sigma2_conjugate(&id, &s).unwrap().max_abs_diff(&id) < 1e-15);
            assert!(tilde(&id, &s).unwrap().max_abs_diff(&id) < 1e-15);
        }
    }

    #[test]
    fn tilde_of_product_state_flips_first_qubit() {
        let shape = SystemShape::qubits(2).unwrap();
        // |00⟩⟨00| ↦ |10⟩⟨10|
        let out = tilde(&ket(&shape, 0), &PartySubset::single(0)).unwrap();
        assert!(out.max_abs_diff(&ket(&shape, 2)) < 1e-15);
    }

    /// Independent dense oracle: explicit Kronecker products and an
    /// elementwise transpose of 2x2 blocks, built without index arithmetic
    /// shared with the implementation.
    fn tilde_oracle_qubit0(rho: &DMatrix<C64>, n: usize) -> DMatrix<C64> {
        let rest = 1usize << (n - 1);
        // partial transpose on party 0 swaps blocks (i, j) ↔ (j, i)
        let mut pt = DMatrix::zeros(2 * rest, 2 * rest);
        for i in 0..2 {
            for j in 0..2 {
                let block = rho.view((i * rest, j * rest), (rest, rest)).clone_owned();
                pt.view_mut((j * rest, i * rest), (rest, rest)).copy_from(&block);
            }
        }
        let i = C64::new(0.0, 1.0);
        let z = C64::new(0.0, 0.0);
        let s2 = DMatrix::from_row_slice(2, 2, &[z, -i, i, z]);
        let u = s2.kronecker(&DMatrix::<C64>::identity(rest, rest));
        &u * pt * &u
    }

    #[test]
    fn tilde_matches_dense_oracle_and_is_involution() {
        let mut r = rng(11);
        for n in [2, 3] {
            let shape = SystemShape::qubits(n).unwrap();
            for _ in 0..10 {
                let rho = random_hermitian(&shape, &mut r);
                let t = tilde(&rho, &PartySubset::single(0)).unwrap();
                let oracle = tilde_oracle_qubit0(rho.matrix(), n);
                assert!((t.matrix() - &oracle).norm() < 1e-12);
                for s in [PartySubset::single(n - 1), PartySubset::all(n)] {
                    let back = tilde(&tilde(&rho, &s).unwrap(), &s).unwrap();
                    assert!(back.max_abs_diff(&rho) < 1e-12);
                }
            }
        }
    }

    fn shape_and_subset() -> impl Strategy<Value = (SystemShape, PartySubset, u64)> {
        (1usize..=4, any::<u64>(), any::<u64>()).prop_map(|(n, mask, seed)| {
            let shape = SystemShape::qubits(n).unwrap();
            let subset = PartySubset::new((0..n).filter(|p| mask >> p & 1 == 1));
            (shape, subset, seed)
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn partial_transpose_is_trace_preserving_involution((shape, subset, seed) in shape_and_subset()) {
            let rho = random_hermitian(&shape, &mut rng(seed));
            let pt = partial_transpose(&rho, &subset).unwrap();
            prop_assert!((pt.trace() - rho.trace()).abs() < 1e-12);
            prop_assert!((pt.matrix() - pt.matrix().adjoint()).norm() < 1e-12);
            let back = partial_transpose(&pt, &subset).unwrap();
            prop_assert!(back.max_abs_diff(&rho) < 1e-15);
        }

        #[test]
        fn tilde_preserves_trace_and_pt_spectrum((shape, subset, seed) in shape_and_subset()) {
            let rho = random_hermitian(&shape, &mut rng(seed));
            let t = tilde(&rho, &subset).unwrap();
            prop_assert!((t.trace() - rho.trace()).abs() < 1e-12);
            let a = spectrum(&t);
            let b = spectrum(&partial_transpose(&rho, &subset).unwrap());
            for (x, y) in a.eigenvalues().iter().zip(b.eigenvalues()) {
                prop_assert!((x - y).abs() < 1e-10);
            }
        }
    }
}
