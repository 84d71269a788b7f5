//! Kumpera–Rubin charts, prolongation of curves, critical hyperplanes and RVT coding.

pub mod hyperplane;
pub mod point;
pub mod prolong;
pub mod realize;
pub mod word;

use crate::algebra::Rational;

/// A direction in the rank-3 distribution, in chart-frame components.
pub type Direction = [Rational; 3];

pub use hyperplane::{classify_in, projective_normalize, CriticalHyperplane};
pub use point::{arrangement_at, classify_direction, project_point, prolong_hyperplane, ChartStep, TowerPoint};
pub use prolong::{prolong_curve, rvt_code, Prolongation};
pub use realize::{realize_point, realize_point_with, regular_direction, RealizeOptions};
pub use word::{Letter, RvtWord};
