//! Phase-space quasi-probability distributions for polarized two-mode light.
//!
//! The crate evaluates Cahill–Glauber s-ordered distributions `W(α, s)` of
//! two transverse field modes, restricted to the polarization manifold
//! `α_y = p α_x` fixed by an index of polarization `p`. Two independent
//! routes are provided:
//!
//! * [`qpdf::qpdf_trace`] builds the kernel operators as explicit truncated
//!   Fock-space matrices and traces them against a density operator;
//! * [`qpdf::qpdf_coherent_closed`] is the Gaussian closed form for two-mode
//!   coherent states.
//!
//! Supporting modules cover the classical Poincaré-sphere parametrization
//! ([`poincare`]) and Glauber coherence functions with the polarization
//! condition `a_y ρ = p a_x ρ` ([`coherence`]).

pub mod coherence;
pub mod error;
pub mod fock;
pub mod poincare;
pub mod qpdf;
pub mod quadrature;

pub use coherence::{CoherenceOrder, Factorization};
pub use error::{Error, Result};
pub use fock::{OrderParameter, SingleModeState, TruncatedOperator, TwoModeOperator, TwoModeState};
pub use num_complex::Complex64;
pub use poincare::{BasisPair, JonesVector, PoincareParams, PolarizationIndex};
pub use qpdf::{AxisKind, GridMeta, Method, QpdfGrid, SectionParams};
