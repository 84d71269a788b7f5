//! The normal-form pipeline and the catalog of level ≤ 3 normal forms.

use super::steps::{clean_first, gap_reparametrization, scale_normalize, sort_components, tail_terms, unit_lead_x, zariski_at_lowest, GapStep};
use super::trace::ReductionTrace;
use crate::algebra::CurveGerm;
use crate::error::{Error, Result};
use crate::tower::{rvt_code, RvtWord};

/// Exponents of the monomial normal forms per level ≤ 3 class.
pub const CATALOG: [(&str, &[[Option<u32>; 3]]); 9] = [
    ("R", &[[Some(1), None, None]]),
    ("RR", &[[Some(1), None, None]]),
    ("RV", &[[Some(2), Some(3), None]]),
    ("RRR", &[[Some(1), None, None]]),
    ("RRV", &[[Some(2), Some(5), None]]),
    ("RVR", &[[Some(2), Some(3), None]]),
    ("RVV", &[[Some(3), Some(5), Some(7)], [Some(3), Some(5), None]]),
    ("RVT", &[[Some(3), Some(4), Some(5)], [Some(3), Some(4), None]]),
    ("RVL", &[[Some(4), Some(6), Some(7)]]),
];

/// Catalog normal forms of `code`, at truncation `trunc`; empty for codes not listed.
pub fn catalog_forms(code: &RvtWord, trunc: u32) -> Vec<CurveGerm> {
    let s = code.to_string();
    CATALOG
        .iter()
        .find(|(c, _)| *c == s)
        .map(|(_, forms)| forms.iter().map(|e| CurveGerm::monomial(*e, trunc)).collect())
        .unwrap_or_default()
}

fn lowest_tail(c: &CurveGerm) -> Option<(u32, usize)> {
    tail_terms(c).first().map(|l| (l.exponent, l.component))
}

fn improves(before: Option<(u32, usize)>, after: Option<(u32, usize)>) -> bool {
    match (before, after) {
        (_, None) => true,
        (None, Some(_)) => false,
        (Some(b), Some(a)) => a > b,
    }
}

/// Reduces `c` towards a normal form: order the components, make `x` a monomial, eliminate
/// every removable term, remove gap terms while that makes progress, then scale.
pub fn normal_form(c: &CurveGerm) -> Result<(CurveGerm, ReductionTrace)> {
    if c.is_constant() {
        return Err(Error::Degenerate("constant curve".into()));
    }
    let (mut cur, mut trace) = sort_components(c)?;
    cur = unit_lead_x(&cur, &mut trace)?;
    let (next, t) = clean_first(&cur)?;
    trace.extend(t);
    cur = next;
    loop {
        let (sorted, t) = sort_components(&cur)?;
        trace.extend(t);
        cur = sorted;
        let before = lowest_tail(&cur);
        if before.is_none() {
            break;
        }
        let step = if cur.z().is_zero() { zariski_at_lowest(&cur)? } else { gap_reparametrization(&cur)? };
        let GapStep::Applied { curve, trace: t, .. } = step else {
            break;
        };
        let (cleaned, t2) = clean_first(&curve)?;
        let (sorted, t3) = sort_components(&cleaned)?;
        if !improves(before, lowest_tail(&sorted)) {
            break;
        }
        trace.extend(t);
        trace.extend(t2);
        trace.extend(t3);
        cur = sorted;
    }
    let (out, t) = scale_normalize(&cur)?;
    trace.extend(t);
    Ok((out, trace))
}

/// A successful catalog reduction.
#[derive(Clone, Debug)]
pub struct CatalogMatch {
    pub code: RvtWord,
    pub normal_form: CurveGerm,
    pub trace: ReductionTrace,
}

/// Reduces `c` and matches the result against the catalog entry of its level-3 class.
pub fn reduce_catalog(c: &CurveGerm) -> Result<CatalogMatch> {
    let code = rvt_code(c, 3).map_err(|e| match e {
        Error::InvalidInput(msg) => Error::OutsideCatalog(msg),
        other => other,
    })?;
    let (nf, trace) = normal_form(c)?;
    let forms = catalog_forms(&code, nf.trunc());
    match forms.into_iter().find(|f| f.agrees(&nf)) {
        Some(normal_form) => Ok(CatalogMatch { code, normal_form, trace }),
        None => Err(Error::OutsideCatalog(format!("class {code} has no catalog form matching {nf}"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::qi;
    use crate::invariants::semigroup;

    fn curve(x: &[(u32, i64)], y: &[(u32, i64)], z: &[(u32, i64)], n: u32) -> CurveGerm {
        let f = |v: &[(u32, i64)]| v.iter().map(|&(d, c)| (d, qi(c))).collect::<Vec<_>>();
        CurveGerm::from_terms([&f(x), &f(y), &f(z)], n).unwrap()
    }

    #[test]
    fn case_one_reduces_to_triple() {
        let c = curve(&[(3, 1), (4, 1)], &[(5, 1)], &[(7, 1)], 32);
        let m = reduce_catalog(&c).unwrap();
        assert_eq!(m.code.to_string(), "RVV");
        assert_eq!(m.normal_form, CurveGerm::monomial([Some(3), Some(5), Some(7)], 32));
        assert!(matches!(m.trace.steps[0].mv, super::super::Move::Reparametrize(_)));
        assert!(m.trace.replay(&c).unwrap().agrees(&m.normal_form));
    }

    #[test]
    fn zariski_examples_reduce_to_planar_form() {
        for b in [1, -1, 4] {
            let c = curve(&[(3, 1)], &[(5, 1), (7, b)], &[], 32);
            let m = reduce_catalog(&c).unwrap();
            assert_eq!(m.normal_form, CurveGerm::monomial([Some(3), Some(5), None], 32));
        }
    }

    #[test]
    fn catalog_forms_are_fixed_points() {
        for (code, forms) in CATALOG {
            for e in forms {
                let c = CurveGerm::monomial(*e, 30);
                let m = reduce_catalog(&c).unwrap();
                assert_eq!(m.code.to_string().len(), 3);
                assert!(m.trace.is_empty(), "{code}");
                assert_eq!(m.normal_form, c);
            }
        }
    }

    #[test]
    fn reduction_preserves_semigroup() {
        let c = curve(&[(4, 1), (5, 2)], &[(6, 1), (9, 1)], &[(7, 3), (8, 1)], 30);
        let s = semigroup(&c, 24).unwrap();
        let m = reduce_catalog(&c).unwrap();
        assert_eq!(m.code.to_string(), "RVL");
        for step in &m.trace.steps {
            assert_eq!(semigroup(&step.after, 24).unwrap().gaps, s.gaps);
        }
    }

    #[test]
    fn level_four_class_is_outside() {
        let c = CurveGerm::monomial([Some(2), Some(7), None], 30);
        assert!(matches!(reduce_catalog(&c), Err(Error::OutsideCatalog(_))));
    }
}
