//! Canonical forms of matrix representations of chain and cycle quivers,
//! computed with unitary transformations only.
//!
//! * [`chain::canon_chain`] splits a chain representation into intervals.
//! * [`cycle::regularize`] splits a cycle representation into walk summands
//!   and a regular part, and reports the monodromy spectrum of the latter.

pub mod chain;
pub mod cli;
pub mod cycle;
pub mod error;
pub mod io;
pub mod linalg;
pub mod oracle;
pub mod quiver;

pub use error::{Error, Result};
pub use linalg::{ComplexMatrix, TolerancePolicy};
