//! Exact hyperdeterminants and F-determinants of hypermatrices whose
//! entries depend only on the meet of their indices in a finite
//! meet-semilattice.
//!
//! The crate pairs every closed-form factorization with a brute-force
//! evaluator so that each can be checked against the other.

pub mod bench;
pub mod closedform;
pub mod error;
pub mod eval;
pub mod hyperdet;
pub mod lattice;
pub mod numth;
pub mod random;
pub mod reproduce;
pub mod scalar;
pub mod verify;

pub use error::{Error, Result};
pub use scalar::Scalar;
