//! Exact symbolic engine for unramified local L-factors of classical groups,
//! Weyl alternating sums and the coset bookkeeping around them.

pub mod battery;
#[cfg(feature = "cli")]
pub mod cli;
pub mod error;
pub mod identity;
pub mod lfactors;
pub mod orbits;
pub mod symalg;
pub mod weyl;

pub use error::{Error, Result};
