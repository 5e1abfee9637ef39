//! Scalar and vector linear network codes for generalized combination networks.
//!
//! The crate builds coding coefficients from MDS, rank-metric and subspace
//! codes, verifies them receiver by receiver, and compares the field sizes
//! scalar and vector solutions need.

pub mod analyze;
pub mod arith;
pub mod error;
pub mod gf;
pub mod linalg;
pub mod network;
pub mod rankmetric;
pub mod search;
pub mod solver;
pub mod subspace;
pub mod verify;

pub use error::{Error, Result};
pub use gf::{FieldCtx, FieldElement};
pub use linalg::Mat;
pub use network::{Classification, NetworkFile, NetworkSpec};
pub use solver::{Assignment, DirectLinks, Method};
pub use subspace::{CoverCode, Subspace};
pub use verify::VerifyReport;
