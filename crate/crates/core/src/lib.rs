//! Exact counting of mixed, restricted and associated set partitions.
//!
//! All counts are arbitrary-precision integers ([`Nat`]); generating
//! functions use exact rationals. The crate is `no_std` and needs only
//! `alloc`.
//!
//! - [`exact`]: binomials, Stirling, r-Stirling and Bell numbers.
//! - [`bounded`]: Stirling numbers with block sizes in a [`SizeBand`].
//! - [`mixed`]: labelled-cell counts `S_band(n, k, r)` and friends.
//! - [`egf`]: truncated exponential generating functions.
//! - [`oracle`]: brute-force enumeration used as ground truth.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod bounded;
pub mod egf;
mod error;
pub mod exact;
pub mod mixed;
pub mod oracle;

pub use bounded::SizeBand;
pub use egf::{Rat, Series};
pub use error::{Error, Result};
pub use exact::Nat;
pub use mixed::{CellSpec, MixedAlgorithm, MixedParams};
pub use oracle::OracleQuery;
