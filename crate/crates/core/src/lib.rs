//! Exact-arithmetic toolkit for heights over Q and F_p(t): canonical
//! and twisted heights, Grassmann coordinates, small bases with
//! certified height products, a constructive disconnected-pair lemma,
//! and symplectic bases of bounded height with exact verification of
//! every stated bound.
//!
//! All computation is exact; no floating point enters any verdict.

pub mod error;
pub mod field;
pub mod graph;
pub mod harness;
pub mod heights;
pub mod linalg;
pub mod siegel;
pub mod symplectic;

pub use error::{Error, Result};
pub use field::{ExactPositive, GroundField, Place, Scalar};
pub use linalg::{Matrix, Subspace};
