//! Exact enumeration and generating functions for six classical statistics
//! (asc, des, lrmax, rlmax, lrmin, rlmin) on separable permutations that
//! avoid a flat partially ordered pattern.
//!
//! The crate has two independent routes to every distribution series:
//!
//! - [`oracle`]: brute-force enumeration of the permutation class, summing
//!   one monomial per permutation;
//! - [`closed_forms`] and [`solver`]: explicit rational generating functions
//!   and a functional-equation solver that computes the same series through
//!   truncated power-series algebra.
//!
//! The [`verify`] module cross-checks the two routes coefficient by
//! coefficient; the `popdist` binary exposes everything on the command line.

pub mod closed_forms;
pub mod config;
pub mod error;
pub mod oracle;
pub mod perm;
pub mod separable;
pub mod series;
pub mod solver;
pub mod stats;
pub mod verify;

pub mod cli;

pub use error::{Error, Result};
