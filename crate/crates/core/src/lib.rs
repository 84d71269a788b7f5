//! Exact prolongation engine for curve germs and the Monster tower over 3-space.

pub mod algebra;
pub mod census;
pub mod diffeo;
pub mod error;
pub mod invariants;
pub mod io;
pub mod normalize;
pub mod suite;
pub mod tower;

/// Default series truncation.
pub const DEFAULT_TRUNC: u32 = 64;
/// Default jet degree.
pub const DEFAULT_JET_DEGREE: u32 = 8;

pub use error::{Error, Result};
