//! Exact-arithmetic library for the graded structure of Veronese subrings of
//! polynomial rings in positive characteristic.
//!
//! The crate computes, with no floating point anywhere:
//!
//! * decompositions of Frobenius root modules of graded classes into graded
//!   class summands with exact multiplicities ([`frobenius`]);
//! * generator-count upper bounds, surjection-chain lower bounds, and closed
//!   forms for the dual F-signature, plus convergence tables ([`signature`]);
//! * the banded variable matrices whose maximal minors generate a power of
//!   the irrelevant ideal, with rank verdicts and explicit ideal-membership
//!   certificates ([`determinantal`]).
//!
//! The `vfsig` binary exposes every computation with table, CSV, and JSON
//! output; see the crate README.

pub mod cli;
pub mod determinantal;
pub mod error;
pub mod exactalg;
pub mod frobenius;
pub mod linalg;
pub mod signature;
pub mod veronese;

pub use error::{Error, Result};
