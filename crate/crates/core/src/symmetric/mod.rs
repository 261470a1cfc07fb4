//! Dicke bases, symmetric-sector reduction maps and the Hankel positivity
//! tests for diagonal symmetric states.

mod dicke;
mod hankel;
mod range;
mod sector;

pub use dicke::{dicke_count, dicke_projector_sum, dicke_vector, DickeIndex};
pub use hankel::{
    ds_certify, ds_certify_in_range, ds_ppt_check, half_chain_blocks, hankel_matrices, DiagonalSymmetricState,
    HankelPair,
};
pub use range::{ds_alpha_range, table1, AlphaRange};
pub use sector::{
    certify_symmetric_small, sym_identity_pt_min_eig, sym_identity_pt_spectrum, symmetric_alpha_range,
    validate_symmetric_alpha,
};
