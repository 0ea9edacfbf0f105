//! Exponent calculus, block-restricted mixed norms and norm estimation for
//! multilinear forms on finite-dimensional `ℓ_p` spaces.
//!
//! The crate is `no_std` and needs only `alloc`. All randomness is drawn from
//! explicitly seeded ChaCha streams.

#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod calculus;
pub mod error;
pub mod exponent;
pub mod form;
pub mod harness;
pub mod mixed;
pub mod numeric;
pub mod partition;
pub mod tensor;

pub use calculus::{
    corollary_exponents, harmonic_sum, hl_block_exponents, inclusion_exponents,
    isotropic_hl_exponent, triviality_check, Calculus, IsotropicRegime, DEFAULT_SLACK,
};
pub use error::{Error, Result, Violation};
pub use exponent::{Exponent, ExponentVector};
pub use form::{
    evaluate, exact_norm_signs, holder_argmax, norm_ascent, AscentConfig, FormInstance, HolderMax,
    Method, NormEstimate, DEFAULT_SIGN_BUDGET,
};
pub use harness::{
    anisotropy_gain, estimate_norm, hl_lhs, hl_ratio, sweep, triviality_probe, ExponentRule,
    FamilyKind, NormConfig, SweepConfig, SweepReport, SweepRow, WitnessFamily,
};
pub use mixed::{
    block_restrict, mixed_norm, weak_norm, BlockTensor, VectorSequence, WeakNormConfig,
};
pub use partition::BlockPartition;
pub use tensor::CoefficientTensor;
