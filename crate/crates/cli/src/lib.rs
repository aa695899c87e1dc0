//! Interchange formats and renderers behind the `mubkit` binary.

pub mod export;
pub mod pretty;
