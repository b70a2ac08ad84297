//! Skew-hermitian forms over the group ring `Z[Z/r]` with involution
//! `g -> g^{-1}`: multisignature and the Arf invariant of the augmentation.

pub mod arf;
pub mod group_ring;
pub mod matrix;
pub mod multisig;

pub use arf::{arf, augment_form, Z2QuadraticForm};
pub use group_ring::{gr_add, gr_augment, gr_involute, gr_mul, gr_pc, GroupRingElement};
pub use matrix::{hyperbolic, LambdaMatrix, MatrixFile};
pub use multisig::{
    character_signatures, multisignature, multisignature_with_inner_product, Multisignature,
};
