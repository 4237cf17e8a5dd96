//! Numerical toolkit for conical 2-designs, the entanglement tests they induce,
//! and composites of Euclidean Jordan algebras embedded in complex matrices.
//!
//! Layout:
//! - [`linalg`]: dense complex matrices, block-diagonal operators, canonical
//!   operators, bases, eigen/rank helpers, seeded randomness.
//! - [`bloch`]: Bloch vectors under the normalized trace-form metric.
//! - [`designs`]: conical 2-design construction and verification.
//! - [`entanglement`]: concurrence, witnesses, Werner/isotropic families.
//! - [`jordan`]: embedded EJAs, closures, identification, tensor products,
//!   universal envelopes, reversibility and compact-closure checks.
#![forbid(unsafe_code)]
// `!(x < tol)` is used on purpose so NaN fails the check.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod bloch;
pub mod designs;
pub mod entanglement;
pub mod error;
pub mod jordan;
pub mod linalg;

pub use error::{Error, Result};
