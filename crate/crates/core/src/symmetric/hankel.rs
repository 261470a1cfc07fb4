use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use super::dicke::dicke_count;
use super::range::{ds_alpha_range, AlphaRange};
use crate::certificate::{DepthCertificate, Verdict, Witness};
use crate::error::{Error, Result};

/// `Σ_k p_k |D_k⟩⟨D_k|` stored through its weights.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "StateRepr", into = "StateRepr")]
pub struct DiagonalSymmetricState {
    n: usize,
    d: usize,
    p: Vec<f64>,
    normalized: bool,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct StateRepr {
    #[serde(rename = "N")]
    n: usize,
    d: usize,
    p: Vec<f64>,
}

impl TryFrom<StateRepr> for DiagonalSymmetricState {
    type Error = Error;

    fn try_from(r: StateRepr) -> Result<Self> {
        DiagonalSymmetricState::new(r.n, r.d, r.p)
    }
}

impl From<DiagonalSymmetricState> for StateRepr {
    fn from(s: DiagonalSymmetricState) -> Self {
        StateRepr { n: s.n, d: s.d, p: s.p }
    }
}

impl DiagonalSymmetricState {
    /// Accepts any nonnegative weight vector of length `n(d−1)+1`;
    /// normalisation is recorded, not required.
    pub fn new(n: usize, d: usize, p: Vec<f64>) -> Result<Self> {
        if n < 2 || d < 2 {
            return Err(Error::InvalidArgument(format!("need n >= 2 and d >= 2 (n = {n}, d = {d})")));
        }
        let levels = n * (d - 1) + 1;
        if p.len() != levels {
            return Err(Error::DimensionMismatch(format!(
                "{levels} weights expected for n = {n}, d = {d}, got {}",
                p.len()
            )));
        }
        if let Some(x) = p.iter().find(|x| !x.is_finite() || **x < -1e-9) {
            return Err(Error::Validation(format!("weight {x} is negative or not finite")));
        }
        let total: f64 = p.iter().sum();
        Ok(DiagonalSymmetricState { n, d, normalized: (total - 1.0).abs() <= 1e-9, p })
    }

    /// Uniform weights (the normalised sector identity).
    pub fn uniform(n: usize, d: usize) -> Result<Self> {
        let levels = n * (d.max(2) - 1) + 1;
        Self::new(n, d, vec![1.0 / levels as f64; levels])
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn weights(&self) -> &[f64] {
        &self.p
    }

    pub fn is_normalized(&self) -> bool {
        self.normalized
    }

    pub fn levels(&self) -> usize {
        self.p.len()
    }

    pub fn total(&self) -> f64 {
        self.p.iter().sum()
    }

    /// `p_k / 𝒩_k`.
    fn scaled_weights(&self) -> Vec<f64> {
        self.p.iter().enumerate().map(|(k, &x)| x / dicke_count(self.n, self.d, k)).collect()
    }
}

/// The two Hankel matrices `M_0`, `M_1` with entries `p_{i+j+l}/𝒩_{i+j+l}`.
#[derive(Clone, Debug, PartialEq)]
pub struct HankelPair {
    pub m0: DMatrix<f64>,
    pub m1: DMatrix<f64>,
}

fn hankel(w: &[f64], offset: usize, size: usize) -> DMatrix<f64> {
    DMatrix::from_fn(size, size, |i, j| w[i + j + offset])
}

/// Sizes `n_l + 1` with `n_l = ⌊(n(d−1) − l)/2⌋`.
pub fn hankel_matrices(s: &DiagonalSymmetricState) -> HankelPair {
    let w = s.scaled_weights();
    let top = s.levels() - 1;
    HankelPair { m0: hankel(&w, 0, top / 2 + 1), m1: hankel(&w, 1, (top - 1) / 2 + 1) }
}

/// Diagonal blocks of the half-chain partial transpose, up to a positive
/// diagonal congruence.
///
/// With `A` the first `⌊n/2⌋` parties, the transpose is block diagonal in
/// `δ = i − j`, where `i` is the excitation count of `A` and `j` that of the
/// rest; block `δ` has entries `p_{i+i'−δ}/𝒩_{i+i'−δ}`. For qubits and for
/// even `n` the two largest blocks are `M_0` and `M_1` and all others are
/// principal submatrices of them.
pub fn half_chain_blocks(s: &DiagonalSymmetricState) -> Vec<DMatrix<f64>> {
    blocks(s.n, s.d, &s.scaled_weights())
}

fn blocks(n: usize, d: usize, w: &[f64]) -> Vec<DMatrix<f64>> {
    let ca = (n / 2) * (d - 1);
    let cb = (n - n / 2) * (d - 1);
    (-(cb as isize)..=ca as isize)
        .map(|delta| {
            let lo = delta.max(0) as usize;
            let hi = (ca as isize).min(cb as isize + delta) as usize;
            let offset = (2 * lo as isize - delta) as usize;
            hankel(w, offset, hi - lo + 1)
        })
        .collect()
}

fn min_eigenvalue(m: &DMatrix<f64>) -> f64 {
    m.clone().symmetric_eigenvalues().iter().copied().fold(f64::INFINITY, f64::min)
}

/// Smallest eigenvalue over all half-chain blocks for arbitrary real
/// weights `p` (not necessarily a state).
pub(crate) fn half_chain_min_eigenvalue(n: usize, d: usize, p: &[f64]) -> f64 {
    let w: Vec<f64> = p.iter().enumerate().map(|(k, &x)| x / dicke_count(n, d, k)).collect();
    blocks(n, d, &w).iter().map(min_eigenvalue).fold(f64::INFINITY, f64::min)
}

/// Whether the state has positive partial transpose across the half-chain
/// cut `⌊n/2⌋ : n − ⌊n/2⌋`.
pub fn ds_ppt_check(s: &DiagonalSymmetricState, tol: f64) -> bool {
    half_chain_min_eigenvalue(s.n, s.d, &s.p) >= -tol
}

/// Separability from positivity of the preimage weights
/// `q_k = [σ_k − Tr σ/(L + α)]/α`, `L = n(d−1) + 1`, under
/// `Λ_α(ρ) = Tr(ρ)𝟙_D + αρ`.
pub fn ds_certify(sigma: &DiagonalSymmetricState, alpha: f64, tol: f64) -> Result<DepthCertificate> {
    ds_certify_in_range(sigma, alpha, &ds_alpha_range(sigma.n, sigma.d)?, tol)
}

/// [`ds_certify`] with the admissible range supplied by the caller, for
/// batches sharing `(n, d)`.
pub fn ds_certify_in_range(
    sigma: &DiagonalSymmetricState,
    alpha: f64,
    range: &AlphaRange,
    tol: f64,
) -> Result<DepthCertificate> {
    if alpha == 0.0 || !range.contains(alpha) {
        return Err(Error::OutOfRange { alpha, min: range.min, max: range.max });
    }
    let levels = sigma.levels() as f64;
    let tr = sigma.total();
    let q: Vec<f64> = sigma.p.iter().map(|&x| (x - tr / (levels + alpha)) / alpha).collect();
    let min = q.iter().copied().fold(f64::INFINITY, f64::min);
    let mut witness = Witness::new("diagonal-symmetric-hankel", min)
        .param("alpha", alpha)
        .param("alpha_min", range.min)
        .param("alpha_max", range.max);
    if sigma.d > 2 && sigma.n % 2 == 1 {
        witness =
            witness.note("odd number of qudits: half-chain PPT of the preimage is not known to imply separability");
    }
    if min < -tol * tr.abs().max(1.0) {
        return Ok(DepthCertificate::inconclusive(witness));
    }
    if sigma.d > 2 && sigma.n % 2 == 1 {
        return Ok(DepthCertificate::inconclusive(witness));
    }
    DepthCertificate::new(Verdict::CertifiedSeparable, witness, sigma.n, tol * tr.abs().max(1.0))
}
