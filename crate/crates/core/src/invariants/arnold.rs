//! Arnol'd symbols `[m,n]`, `[m,n,p]` and `[m,(n,p)]`.

use std::fmt;

use crate::algebra::CurveGerm;
use crate::error::{Error, Result};
use crate::normalize::steps::{clean_first, sort_components, unit_lead_x};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArnoldSymbol {
    /// `(tᵐ, tⁿ, 0)`.
    Pair(u32, u32),
    /// `(tᵐ, tⁿ, tᵖ)`.
    Triple(u32, u32, u32),
    /// `(tᵐ, tⁿ + tᵖ, 0)`.
    PairWithExtra(u32, u32, u32),
}

impl fmt::Display for ArnoldSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ArnoldSymbol::Pair(m, n) => write!(f, "[{m},{n}]"),
            ArnoldSymbol::Triple(m, n, p) => write!(f, "[{m},{n},{p}]"),
            ArnoldSymbol::PairWithExtra(m, n, p) => write!(f, "[{m},({n},{p})]"),
        }
    }
}

/// Symbol of `c` after sorting components, making `x` a monomial and eliminating every
/// term that lies in the semigroup (no gap eliminations).
pub fn arnold_symbol(c: &CurveGerm) -> Result<ArnoldSymbol> {
    let (cur, mut trace) = sort_components(c)?;
    let cur = unit_lead_x(&cur, &mut trace)?;
    let (cur, _) = clean_first(&cur)?;
    let (cur, _) = sort_components(&cur)?;
    let exps: Vec<Vec<u32>> = cur.comps().iter().map(|s| s.terms().map(|(d, _)| d).collect()).collect();
    let none = || Error::OutsideCatalog(format!("no symbol detected within truncation for {cur}"));
    match (&exps[0][..], &exps[1][..], &exps[2][..]) {
        ([m], [n], []) => Ok(ArnoldSymbol::Pair(*m, *n)),
        ([m], [n, p], []) => Ok(ArnoldSymbol::PairWithExtra(*m, *n, *p)),
        ([m], [n], [p]) => Ok(ArnoldSymbol::Triple(*m, *n, *p)),
        _ => Err(none()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::qi;

    #[test]
    fn listed_shapes() {
        let c = CurveGerm::monomial([Some(3), Some(5), Some(7)], 30);
        assert_eq!(arnold_symbol(&c).unwrap(), ArnoldSymbol::Triple(3, 5, 7));
        let c = CurveGerm::monomial([Some(2), Some(3), None], 30);
        assert_eq!(arnold_symbol(&c).unwrap().to_string(), "[2,3]");
        let c = CurveGerm::from_terms([&[(3, qi(1))], &[(5, qi(1)), (7, qi(1))], &[]], 30).unwrap();
        assert_eq!(arnold_symbol(&c).unwrap().to_string(), "[3,(5,7)]");
    }

    #[test]
    fn removable_terms_do_not_count() {
        let c = CurveGerm::from_terms([&[(3, qi(1)), (8, qi(2))], &[(5, qi(1))], &[(7, qi(1)), (9, qi(1))]], 30).unwrap();
        assert_eq!(arnold_symbol(&c).unwrap(), ArnoldSymbol::Triple(3, 5, 7));
    }

    #[test]
    fn smooth_curve_has_no_symbol() {
        assert!(arnold_symbol(&CurveGerm::monomial([Some(1), None, None], 10)).is_err());
    }
}
