//! Symmetries and monotones of Markovian quantum evolutions.
//!
//! A generator `L` of a quantum dynamical semigroup is represented as a dense
//! `d² x d²` superoperator acting on column-stacked operators. Superoperators
//! commuting with `L` yield, through the Lesniewski–Ruskai quadratic form,
//! functions of the state that can only decrease in time; comparing such
//! functions between two states can prove that one is unreachable from the
//! other.
//!
//! - [`linalg`]: dense complex linear algebra (spectral functions, `exp`, null spaces).
//! - [`superop`]: states, superoperators, generators, channels.
//! - [`symmetry`]: commutants, conserved quantities, fixed points.
//! - [`monotone`]: quadratic forms, monotone families, exclusion certificates.
//! - [`models`]: qubit dephasing, commuting dephasing, qubit Davies generators.

// `!(x >= 0.0)` is used on purpose: it also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod error;
pub mod linalg;
pub mod models;
pub mod monotone;
pub mod superop;
pub mod symmetry;

pub use error::{Error, Result};
pub use linalg::{CMatrix, CVector, HermitianMatrix, C64};
pub use monotone::{
    exclusion_certificate, lr_quadratic_form, monotone_value, ExclusionSlack, ExclusionVerdict, MonotoneSpec,
    Normalizer, Verdict,
};
pub use superop::{DensityMatrix, FullRankState, Lindbladian, PositiveDefinite, Superoperator};
