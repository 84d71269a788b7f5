//! Value semigroup of a curve, certified by witness polynomials.

use std::collections::BTreeMap;

use super::{multiplicity, well_parameterized};
use crate::algebra::linalg::LeadEchelon;
use crate::algebra::poly::{Exp, SeriesPowers};
use crate::algebra::{CurveGerm, Poly3};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Semigroup {
    pub elements: Vec<u32>,
    pub gaps: Vec<u32>,
    pub bound: u32,
    /// Smallest `c` with `[c, bound]` inside the semigroup, reported once the run is at
    /// least as long as the multiplicity (which forces every later integer in).
    pub conductor: Option<u32>,
    /// For each element `e`, a polynomial `P` with `P∘c = t^e + O(t^(e+1))`.
    pub witnesses: BTreeMap<u32, Poly3>,
}

impl Semigroup {
    pub fn contains(&self, n: u32) -> bool {
        self.elements.binary_search(&n).is_ok()
    }

    /// Additive closure within the bound.
    pub fn is_closed(&self) -> bool {
        self.elements.iter().all(|&a| {
            self.elements.iter().all(|&b| a + b > self.bound || self.contains(a + b))
        })
    }

    /// Semigroup notation with gaps in brackets, e.g. `3 [4] 5 6 7 ...`.
    pub fn notation(&self) -> String {
        let mut parts: Vec<String> = Vec::new();
        let start = self.elements.first().copied().unwrap_or(1);
        for n in start..=self.bound {
            if Some(n) == self.conductor {
                parts.push(format!("{n} ..."));
                break;
            }
            parts.push(if self.contains(n) { n.to_string() } else { format!("[{n}]") });
        }
        parts.join(" ")
    }
}

/// Nonconstant monomials whose order on the curve is at most `bound`, sorted by that order.
pub(crate) fn monomials_by_order(orders: [u32; 3], bound: u32, mut keep: impl FnMut(&Exp) -> bool) -> Vec<Exp> {
    let mut out: Vec<(u32, Exp)> = Vec::new();
    let cap = |o: u32| if o == 0 { 0 } else { bound / o };
    for a in 0..=cap(orders[0]) {
        for b in 0..=cap(orders[1]) {
            for c in 0..=cap(orders[2]) {
                let e = [a, b, c];
                let ord = a * orders[0] + b * orders[1] + c * orders[2];
                if e != [0, 0, 0] && ord <= bound && keep(&e) {
                    out.push((ord, e));
                }
            }
        }
    }
    out.sort();
    out.into_iter().map(|(_, e)| e).collect()
}

/// Echelon of the series of `monomials` on `c`, positions `0..=bound`.
pub(crate) fn monomial_echelon(c: &CurveGerm, monomials: &[Exp], bound: u32) -> LeadEchelon {
    let curve = c.truncate(bound);
    let mut cache = SeriesPowers::new(curve.comps_ref());
    let mut ech = LeadEchelon::new(bound as usize + 1);
    for (i, e) in monomials.iter().enumerate() {
        let s = cache.monomial(e).truncate(bound);
        debug_assert_eq!(s.trunc(), bound);
        ech.insert(s.dense().to_vec(), i);
    }
    ech
}

/// The polynomial whose series is the echelon row with lead `lead`, normalized to lead 1.
pub(crate) fn witness(ech: &LeadEchelon, monomials: &[Exp], lead: usize) -> Poly3 {
    let comb = ech.normalized_combination(lead).expect("lead present");
    Poly3::from_terms(comb.into_iter().map(|(i, c)| (monomials[i], c)))
}

/// Orders `ord(P∘c)` over polynomials vanishing at 0, certified up to `bound`.
pub fn semigroup(c: &CurveGerm, bound: u32) -> Result<Semigroup> {
    if !well_parameterized(c) {
        return Err(Error::InvalidInput("curve is not well parameterized".into()));
    }
    if bound > c.trunc() {
        return Err(Error::trunc(format!("semigroup bound {bound} exceeds curve truncation {}", c.trunc())));
    }
    let m = multiplicity(c)?;
    let orders = [0, 1, 2].map(|i| c.comp(i).ord_bound());
    let monomials = monomials_by_order(orders, bound, |_| true);
    let ech = monomial_echelon(c, &monomials, bound);
    let leads = ech.leads();
    let elements: Vec<u32> = leads.iter().map(|&l| l as u32).filter(|&l| l >= 1).collect();
    let gaps: Vec<u32> = (1..=bound).filter(|n| elements.binary_search(n).is_err()).collect();
    let witnesses = elements.iter().map(|&e| (e, witness(&ech, &monomials, e as usize))).collect();
    let conductor = {
        let mut start = bound + 1;
        while start > 1 && elements.binary_search(&(start - 1)).is_ok() {
            start -= 1;
        }
        (start <= bound && bound + 1 - start >= m).then_some(start)
    };
    Ok(Semigroup { elements, gaps, bound, conductor, witnesses })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::qi;

    fn mono(e: [Option<u32>; 3]) -> CurveGerm {
        CurveGerm::monomial(e, 40)
    }

    #[test]
    fn quoted_semigroups() {
        let s = semigroup(&mono([Some(3), Some(5), Some(7)]), 12).unwrap();
        assert_eq!(s.gaps, vec![1, 2, 4]);
        assert_eq!(s.conductor, Some(5));
        let s = semigroup(&mono([Some(3), Some(5), None]), 12).unwrap();
        assert_eq!(s.gaps, vec![1, 2, 4, 7]);
        assert_eq!(s.conductor, Some(8));
        let s = semigroup(&mono([Some(1), None, None]), 10).unwrap();
        assert_eq!(s.elements, (1..=10).collect::<Vec<_>>());
    }

    #[test]
    fn cancellation_creates_elements() {
        // x = t^4, y = t^6 + t^7: y^2 - x^3 = 2 t^13 + t^14 reaches 13
        let c = CurveGerm::from_terms([&[(4, qi(1))], &[(6, qi(1)), (7, qi(1))], &[]], 40).unwrap();
        let s = semigroup(&c, 20).unwrap();
        assert!(s.contains(13));
        assert!(!s.contains(11));
        let w = &s.witnesses[&13];
        let val = w.eval_series(c.comps_ref());
        assert_eq!(val.ord(), Some(13));
        assert_eq!(val.coeff(13), Some(&qi(1)));
    }

    #[test]
    fn witnesses_certify_every_element() {
        let c = mono([Some(3), Some(4), Some(5)]);
        let s = semigroup(&c, 16).unwrap();
        assert!(s.is_closed());
        for (e, w) in &s.witnesses {
            let val = w.eval_series(c.comps_ref());
            assert_eq!(val.leading(), Some((*e, &qi(1))));
        }
    }

    #[test]
    fn bound_limited_by_truncation() {
        assert!(matches!(
            semigroup(&CurveGerm::monomial([Some(2), Some(3), None], 10), 12),
            Err(Error::InsufficientTruncation(_))
        ));
        assert!(semigroup(&CurveGerm::monomial([Some(2), Some(4), None], 10), 8).is_err());
    }

    #[test]
    fn notation_brackets_gaps() {
        let s = semigroup(&mono([Some(3), Some(5), None]), 12).unwrap();
        assert_eq!(s.notation(), "3 [4] 5 6 [7] 8 ...");
    }
}
