//! Exact verification of the matching and acyclic matching properties in
//! ℤ/nℤ and ℤ.
//!
//! - [`group`]: the ambient group and its arithmetic.
//! - [`matching`]: matching existence, enumeration, multiplicity classes and
//!   exhaustive property sweeps.
//! - [`genfun`]: sparse polynomials over `c0, c1, c3`, the transfer-matrix
//!   generating function and its binomial closed forms.
//! - [`verifier`]: re-checkable certificates and the classification verdict.
//! - [`cli`], [`config`], [`report`]: the command-line surface.

pub mod cli;
pub mod config;
pub mod error;
pub mod genfun;
pub mod group;
pub mod matching;
pub mod report;
pub mod verifier;

pub use error::{Error, Result};
