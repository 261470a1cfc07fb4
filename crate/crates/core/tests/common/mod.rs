//! Random states and fixtures shared by the integration tests.
#![allow(dead_code)]

use entcert::{HermitianOperator, SystemShape, C64};
use nalgebra::{DMatrix, DVector};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn gaussian(r: &mut ChaCha8Rng) -> C64 {
    C64::new(StandardNormal.sample(r), StandardNormal.sample(r))
}

pub fn haar_vector(dim: usize, r: &mut ChaCha8Rng) -> DVector<C64> {
    let v = DVector::from_fn(dim, |_, _| gaussian(r));
    let n = v.norm();
    v / C64::new(n, 0.0)
}

pub fn haar_state(shape: &SystemShape, r: &mut ChaCha8Rng) -> HermitianOperator {
    HermitianOperator::projector(shape.clone(), &haar_vector(shape.dim(), r)).unwrap()
}

pub fn random_hermitian(shape: &SystemShape, r: &mut ChaCha8Rng) -> HermitianOperator {
    let d = shape.dim();
    let g = DMatrix::from_fn(d, d, |_, _| gaussian(r));
    HermitianOperator::new(shape.clone(), &g + g.adjoint()).unwrap()
}

/// Normalised `G G†` with `G` a `D × rank` Gaussian matrix.
pub fn random_state(shape: &SystemShape, rank: usize, r: &mut ChaCha8Rng) -> HermitianOperator {
    let d = shape.dim();
    let g = DMatrix::from_fn(d, rank, |_, _| gaussian(r));
    let m = &g * g.adjoint();
    let tr: f64 = m.diagonal().iter().map(|z| z.re).sum();
    HermitianOperator::new(shape.clone(), m / C64::new(tr, 0.0)).unwrap()
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

/// `|Φ+⟩` on parties 0 and 1, all other qubits in `|0⟩`.
pub fn bell_on_first_pair(n: usize) -> HermitianOperator {
    let shape = SystemShape::qubits(n).unwrap();
    let d = shape.dim();
    let mut v = DVector::zeros(d);
    let h = C64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
    v[0] = h;
    v[3 << (n - 2)] = h;
    HermitianOperator::projector(shape, &v).unwrap()
}

/// `(1 − p)𝟙/D + pσ`
pub fn noisy(sigma: &HermitianOperator, p: f64) -> HermitianOperator {
    HermitianOperator::maximally_mixed(sigma.shape().clone()).scaled(1.0 - p).add_scaled(p, sigma).unwrap()
}

pub fn binomial(n: u64, k: u64) -> u64 {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// Root of `f` in `[lo, hi]` by plain bisection; `f(lo)` and `f(hi)` must
/// differ in sign.
pub fn bisect_root(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64) -> f64 {
    let flo = f(lo);
    assert!(flo * f(hi) < 0.0, "no sign change on [{lo}, {hi}]");
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if (f(mid) < 0.0) == (flo < 0.0) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}
