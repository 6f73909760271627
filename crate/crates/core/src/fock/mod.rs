//! Truncated Fock-space operator algebra.
//!
//! Everything here is dense and explicit: ladder operators, displacement
//! matrices, the s-ordered kernel and its two-mode tensor product. This layer
//! is the brute-force reference the closed-form phase-space expressions in
//! [`crate::qpdf`] are checked against.

mod kernel;
mod operator;
mod state;
mod truncation;

pub use kernel::{
    displacement, displacement_block, kernel, kernel_block, kernel_expectation_pure,
    sordered_displacement, transiting, transiting_restricted, OrderParameter,
};
pub use operator::{
    amplitude_matrix, amplitude_vector, annihilation, creation, hermiticity_residual, max_abs_diff,
    normal_ordered_monomial, number, split_two_mode_index, two_mode_index, CMatrix, CVector,
    TruncatedOperator, TwoModeOperator,
};
pub use state::{
    coherent_vector, expectation, expectation_product, two_mode_coherent_density, SingleModeState,
    TwoModeState,
};
pub use truncation::{
    check_dim, min_dim_for_tail, poisson_tail, required_dim, MAX_DIM, TAIL_TOLERANCE,
};
