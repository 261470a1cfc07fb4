//! Random and named operators shared by unit tests.

use nalgebra::{DMatrix, DVector};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::operator::{HermitianOperator, SystemShape};
use crate::C64;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn gaussian(r: &mut ChaCha8Rng) -> C64 {
    C64::new(StandardNormal.sample(r), StandardNormal.sample(r))
}

pub fn random_hermitian(shape: &SystemShape, r: &mut ChaCha8Rng) -> HermitianOperator {
    let d = shape.dim();
    let g = DMatrix::from_fn(d, d, |_, _| gaussian(r));
    HermitianOperator::new(shape.clone(), &g + g.adjoint()).unwrap()
}

pub fn haar_vector(dim: usize, r: &mut ChaCha8Rng) -> DVector<C64> {
    let v = DVector::from_fn(dim, |_, _| gaussian(r));
    let n = v.norm();
    v / C64::new(n, 0.0)
}

pub fn haar_state(shape: &SystemShape, r: &mut ChaCha8Rng) -> HermitianOperator {
    HermitianOperator::projector(shape.clone(), &haar_vector(shape.dim(), r)).unwrap()
}

/// Normalised `G G†` with `G` a `D × rank` Gaussian matrix.
pub fn random_state(shape: &SystemShape, rank: usize, r: &mut ChaCha8Rng) -> HermitianOperator {
    let d = shape.dim();
    let g = DMatrix::from_fn(d, rank, |_, _| gaussian(r));
    let m = &g * g.adjoint();
    let tr: f64 = m.diagonal().iter().map(|z| z.re).sum();
    HermitianOperator::new(shape.clone(), m / C64::new(tr, 0.0)).unwrap()
}

/// Haar unitary of dimension `d` via QR of a Gaussian matrix.
pub fn haar_unitary(d: usize, r: &mut ChaCha8Rng) -> DMatrix<C64> {
    let g = DMatrix::from_fn(d, d, |_, _| gaussian(r));
    let qr = g.qr();
    let q = qr.q();
    let rr = qr.r();
    let phases = DMatrix::from_diagonal(&DVector::from_fn(d, |i, _| {
        let z = rr[(i, i)];
        z / C64::new(z.norm(), 0.0)
    }));
    q * phases
}

/// Tensor product of independent Haar unitaries, party 0 leftmost.
pub fn local_unitary(shape: &SystemShape, r: &mut ChaCha8Rng) -> DMatrix<C64> {
    let mut u = DMatrix::from_element(1, 1, C64::new(1.0, 0.0));
    for &d in shape.local_dims() {
        u = u.kronecker(&haar_unitary(d, r));
    }
    u
}

/// `|Φ+⟩⟨Φ+|` on two qubits.
pub fn bell_phi_plus() -> HermitianOperator {
    ghz(2)
}

/// `|GHZ⟩⟨GHZ|` on `n` qubits.
pub fn ghz(n: usize) -> HermitianOperator {
    let shape = SystemShape::qubits(n).unwrap();
    let d = shape.dim();
    let mut v = DVector::zeros(d);
    let h = C64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
    v[0] = h;
    v[d - 1] = h;
    HermitianOperator::projector(shape, &v).unwrap()
}
