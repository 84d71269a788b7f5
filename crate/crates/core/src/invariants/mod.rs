//! Diffeomorphism invariants of curve germs.

pub mod arnold;
pub mod planarity;
pub mod semigroup;

use num_integer::Integer;

use crate::algebra::CurveGerm;
use crate::error::{Error, Result};

pub use arnold::{arnold_symbol, ArnoldSymbol};
pub use planarity::{planarity, PlanarityVerdict};
pub use semigroup::{semigroup, Semigroup};

/// Default semigroup certification bound.
pub const DEFAULT_SEMIGROUP_BOUND: u32 = 24;
/// Default planarity bounds (polynomial degree, vanishing order).
pub const DEFAULT_PLANARITY_DEGREE: u32 = 7;
pub const DEFAULT_PLANARITY_ORDER: u32 = 40;

/// Minimum order of the components.
pub fn multiplicity(c: &CurveGerm) -> Result<u32> {
    c.comps()
        .iter()
        .filter_map(|s| s.ord())
        .min()
        .ok_or_else(|| Error::Degenerate("all components vanish up to truncation".into()))
}

/// True when the gcd of all exponents carrying a nonzero coefficient is 1.
pub fn well_parameterized(c: &CurveGerm) -> bool {
    let g = c.comps().iter().flat_map(|s| s.terms().map(|(d, _)| d)).fold(0u32, |g, d| g.gcd(&d));
    g == 1
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn multiplicities() {
        assert_eq!(multiplicity(&CurveGerm::monomial([Some(2), Some(3), None], 10)).unwrap(), 2);
        assert_eq!(multiplicity(&CurveGerm::monomial([Some(3), Some(5), Some(7)], 10)).unwrap(), 3);
        assert!(multiplicity(&CurveGerm::monomial([None, None, None], 10)).is_err());
    }

    #[test]
    fn parameterization() {
        assert!(well_parameterized(&CurveGerm::monomial([Some(2), Some(3), None], 10)));
        assert!(!well_parameterized(&CurveGerm::monomial([Some(2), Some(4), None], 10)));
        assert!(well_parameterized(&CurveGerm::monomial([Some(3), Some(5), Some(7)], 10)));
    }
}
