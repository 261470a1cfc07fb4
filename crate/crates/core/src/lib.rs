//! Certification of bounded entanglement depth, structured separability and
//! compatibility of measured statistics with separable or local-hidden-variable
//! models.
//!
//! Every certifier follows the same pattern: a family of linear maps
//! `Λ_p` is known to send *all* positive operators into a target class for
//! parameters `p` in some region. If the preimage `Λ_p⁻¹(σ)` of an operator
//! is itself positive, then `σ = Λ_p(Λ_p⁻¹(σ))` lies in the target class.
//! Negative answers never assert entanglement or nonlocality; they are
//! reported as [`Verdict::Inconclusive`].
//!
//! Module map:
//!
//! * [`operator`]: dense Hermitian operators on multipartite spaces, partial
//!   transposes, σ₂ conjugations, spectra, superoperator matrices.
//! * [`depth`]: reduction-type and Breuer–Hall-type map families, their
//!   inverses, and depth / bi-separability certificates.
//! * [`symmetric`]: Dicke bases, symmetric-sector maps, Hankel PPT tests for
//!   diagonal symmetric states and the admissible α ranges.
//! * [`compat`]: collective-spin, Bell-correlator, permutationally invariant
//!   and moment-relaxation compatibility certifiers.
//! * [`optim`]: dense two-phase simplex and monotone bisection.
//! * [`cli`]: the `entcert` command-line front end.

// `!(x >= 0.0)` is used on purpose: it rejects NaN too.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod certificate;
pub mod cli;
pub mod compat;
pub mod depth;
pub mod error;
pub mod io;
pub mod operator;
pub mod optim;
pub mod symmetric;
pub mod tolerance;

pub use certificate::{DepthCertificate, Verdict, Witness};
pub use error::{Error, Result};
pub use operator::{HermitianOperator, PartySubset, Spectrum, SystemShape};

/// Complex scalar used throughout.
pub type C64 = nalgebra::Complex<f64>;

#[cfg(test)]
pub(crate) mod testutil;
