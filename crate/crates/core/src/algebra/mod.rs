//! Exact truncated power-series and polynomial-jet arithmetic.

pub mod curve;
pub mod linalg;
pub mod poly;
pub mod rational;
pub mod series;

pub use curve::CurveGerm;
pub use poly::{Poly3, PolyJet3};
pub use rational::{parse_rational, q, qi, Rational};
pub use series::TruncSeries;
