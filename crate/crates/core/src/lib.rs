//! Exact construction and verification of mutually unbiased bases in prime
//! and prime-power dimensions, with a small qudit state-vector simulator.

pub mod cyclo;
pub mod error;
pub mod ff;
pub mod matrix;
pub mod mub;
pub mod pauli;
pub mod ring;
pub mod sim;
pub mod verify;

pub use error::{Error, Result};
