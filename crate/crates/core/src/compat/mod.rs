//! Compatibility of measured statistics with separable states or local
//! hidden-variable models.
//!
//! The reduction map `Λ_α(ρ) = Tr(ρ)𝟙 + αρ` rescales every traceless
//! correlator by `α`. The largest `α*` for which the rescaled statistics
//! remain compatible with the target model fixes the interval of inverse-map
//! parameters `β ∈ [Dᴺ/(α* − 1), ∞)` for which `Λ_β⁻¹(ρ)` is compatible
//! with the same observables.

mod bell;
mod pi;
mod sdp;
mod toth;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::io::extended_f64;

pub use bell::{
    correlators_to_probabilities, enumerate_vertices, lhvm_alpha, lhvm_membership, CorrelatorVector, ProbabilityTable,
    Scenario, VERTEX_CAP,
};
pub use pi::{pi_alpha, pi_vertices, symmetrize, PICorrelators};
pub use sdp::{sdp_relax_alpha, GammaFamily};
pub use toth::{
    toth_alpha, toth_alpha_simplex, toth_check, toth_constraints, CollectiveMoments, CorrelationFns, TothViolation,
};

/// Which end of the admissible scaling interval to compute.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Extreme {
    Max,
    Min,
}

impl Extreme {
    fn sign(self) -> f64 {
        match self {
            Extreme::Max => 1.0,
            Extreme::Min => -1.0,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AlphaStatus {
    Optimal,
    Unbounded,
    Infeasible,
}

/// Extreme scaling factor of a correlation vector inside a convex set.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct AlphaResult {
    /// `±∞` when unbounded, NaN when infeasible.
    #[serde(with = "extended_f64")]
    pub alpha_star: f64,
    pub status: AlphaStatus,
}

impl AlphaResult {
    pub fn optimal(alpha: f64) -> Self {
        AlphaResult { alpha_star: alpha, status: AlphaStatus::Optimal }
    }

    pub fn unbounded(extreme: Extreme) -> Self {
        AlphaResult { alpha_star: extreme.sign() * f64::INFINITY, status: AlphaStatus::Unbounded }
    }

    pub fn infeasible() -> Self {
        AlphaResult { alpha_star: f64::NAN, status: AlphaStatus::Infeasible }
    }
}

/// Half-line `[lower, ∞)`, or `(0, ∞)` when `α*` is unbounded.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct BetaInterval {
    pub lower: f64,
    pub lower_inclusive: bool,
}

impl BetaInterval {
    /// `[base/(α* − 1), ∞)` for `α* > 1`; `None` otherwise.
    pub fn from_alpha(base: f64, alpha_star: f64) -> Option<Self> {
        if alpha_star.is_nan() || alpha_star <= 1.0 {
            None
        } else if alpha_star.is_infinite() {
            Some(BetaInterval { lower: 0.0, lower_inclusive: false })
        } else {
            Some(BetaInterval { lower: base / (alpha_star - 1.0), lower_inclusive: true })
        }
    }

    pub fn contains(&self, beta: f64) -> bool {
        if self.lower_inclusive {
            beta >= self.lower
        } else {
            beta > self.lower
        }
    }
}

impl std::fmt::Display for BetaInterval {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let open = if self.lower_inclusive { '[' } else { '(' };
        write!(f, "{open}{}, inf)", self.lower)
    }
}

/// Model that the inverted statistics are compatible with.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CompatModel {
    /// Global separable state reproducing the collective-spin moments.
    Separable,
    /// Local hidden-variable model for the full correlator vector.
    Lhvm,
    /// Local hidden-variable model for the symmetrized one- and two-body
    /// correlators.
    SymmetrizedLhvm,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "class", rename_all = "snake_case")]
pub enum CompatVerdict {
    Compatible { model: CompatModel },
    Inconclusive,
}

impl CompatVerdict {
    pub fn is_certified(&self) -> bool {
        matches!(self, CompatVerdict::Compatible { .. })
    }
}

impl std::fmt::Display for CompatVerdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CompatVerdict::Compatible { model } => {
                let what = match model {
                    CompatModel::Separable => "separable description",
                    CompatModel::Lhvm => "local hidden-variable model",
                    CompatModel::SymmetrizedLhvm => "symmetrized local hidden-variable model",
                };
                write!(f, "certified: {what} for the same observables")
            }
            CompatVerdict::Inconclusive => write!(f, "inconclusive"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CompatCertificate {
    pub verdict: CompatVerdict,
    /// Scaling factor the certificate was derived from.
    #[serde(with = "extended_f64")]
    pub alpha_star: f64,
    /// Inverse-map parameters for which compatibility holds.
    pub beta: Option<BetaInterval>,
    pub theorem: String,
    /// The separability criterion is exact only as `N → ∞`.
    pub thermodynamic_limit_caveat: bool,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl CompatCertificate {
    pub fn is_certified(&self) -> bool {
        self.verdict.is_certified()
    }
}

fn local_dim_power(d: usize, n: usize) -> Result<f64> {
    if d < 2 || n == 0 {
        return Err(Error::InvalidArgument(format!("need d ≥ 2 and N ≥ 1, got d = {d}, N = {n}")));
    }
    Ok((d as f64).powi(n as i32))
}

fn certify(model: CompatModel, theorem: &str, alpha_star: f64, base: f64) -> Result<CompatCertificate> {
    if alpha_star.is_nan() {
        return Err(Error::InvalidArgument("alpha_star is NaN".into()));
    }
    let beta = BetaInterval::from_alpha(base, alpha_star);
    let verdict = match beta {
        Some(_) => CompatVerdict::Compatible { model },
        None => CompatVerdict::Inconclusive,
    };
    let mut notes = Vec::new();
    if alpha_star.is_infinite() && alpha_star > 0.0 {
        notes.push("alpha_star is unbounded; every beta > 0 certifies".to_string());
    }
    if beta.is_none() {
        notes.push(format!("alpha_star = {alpha_star} does not exceed 1"));
    }
    Ok(CompatCertificate {
        verdict,
        alpha_star,
        beta,
        theorem: theorem.to_string(),
        thermodynamic_limit_caveat: model == CompatModel::Separable,
        notes,
    })
}

/// Separable-compatibility certificate for `N` qubits from the collective
/// spin scaling factor.
pub fn sep_compat_certify(alpha_star: f64, n: usize) -> Result<CompatCertificate> {
    certify(CompatModel::Separable, "collective-spin-separable", alpha_star, local_dim_power(2, n)?)
}

/// LHVM-compatibility certificate for `N` parties of local dimension `d`.
pub fn lhvm_certify(alpha_star: f64, d: usize, n: usize) -> Result<CompatCertificate> {
    certify(CompatModel::Lhvm, "correlator-lhvm", alpha_star, local_dim_power(d, n)?)
}

/// Symmetrized LHVM certificate from the permutationally invariant scaling
/// factor.
pub fn pi_certify(alpha_star: f64, d: usize, n: usize) -> Result<CompatCertificate> {
    certify(CompatModel::SymmetrizedLhvm, "symmetrized-lhvm", alpha_star, local_dim_power(d, n)?)
}

/// Symmetrized LHVM certificate from a relaxation value `α̂` and a uniform
/// upper bound `Δ ≥ 0` on the relaxation gap.
pub fn theta_body_certify(alpha_hat: f64, delta: f64, d: usize, n: usize) -> Result<CompatCertificate> {
    if !(delta >= 0.0) || delta.is_infinite() {
        return Err(Error::InvalidArgument(format!(
            "relaxation gap bound must be finite and nonnegative, got {delta}"
        )));
    }
    let mut cert = certify(
        CompatModel::SymmetrizedLhvm,
        "relaxation-symmetrized-lhvm",
        alpha_hat - delta,
        local_dim_power(d, n)?,
    )?;
    cert.notes.push(format!("alpha_hat = {alpha_hat}, gap bound = {delta}"));
    Ok(cert)
}
