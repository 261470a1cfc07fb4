//! Numerical tolerances shared by the certifiers.

/// Relative Hermiticity tolerance: `‖A − A†‖_F ≤ HERMITICITY_REL · ‖A‖_F`.
pub const HERMITICITY_REL: f64 = 1e-10;

/// Default absolute tolerance of PSD decisions (`λ_min ≥ −tol`).
pub const PSD: f64 = 1e-9;

/// Margin for criteria that demand strict positivity.
pub const STRICT_POSITIVITY: f64 = 1e-9;

/// Absolute tolerance on `Tr ρ = 1` when validating states.
pub const TRACE: f64 = 1e-9;

/// Largest condition number for which a superoperator is treated as invertible.
pub const CONDITION_MAX: f64 = 1e12;

/// Relative tolerance for a map's support lying inside a subspace.
pub const SUBSPACE_RESIDUAL: f64 = 1e-9;

/// Largest operator dimension for which dense superoperator matrices are built.
pub const SUPEROP_MAX_DIM: usize = 32;
