//! Exact tropical (min-plus) matrix rank theory.
//!
//! Indices are 0-based throughout the API.

pub mod assignment;
pub mod error;
pub mod lift;
pub mod puiseux;
pub mod rank;
pub mod synth;
pub mod trop;
pub mod witness;

pub use error::{Error, Result};
