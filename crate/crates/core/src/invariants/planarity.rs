//! Bounded planarity test: is there a smooth surface `f = 0` containing the curve?

use num_traits::Zero;

use crate::algebra::linalg::{nullspace, LeadEchelon};
use crate::algebra::poly::{Exp, SeriesPowers};
use crate::algebra::{CurveGerm, Poly3, Rational};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PlanarityVerdict {
    /// `f` has nonzero linear part and `ord(f∘c) > order_bound`.
    Witness { f: Poly3, degree_bound: u32, order_bound: u32 },
    /// No polynomial of degree `≤ degree_bound` with nonzero linear part has
    /// `ord(f∘c) > order`; `order ≤ order_bound` is the first order at which this holds.
    Obstructed { order: u32, degree_bound: u32, order_bound: u32 },
    /// The curve's truncation is too short to decide at these bounds.
    Undetermined { reason: String },
}

impl PlanarityVerdict {
    pub fn is_planar(&self) -> Option<bool> {
        match self {
            PlanarityVerdict::Witness { .. } => Some(true),
            PlanarityVerdict::Obstructed { .. } => Some(false),
            PlanarityVerdict::Undetermined { .. } => None,
        }
    }
}

/// Monomials of total degree `1..=d`: linear ones first, then by degree.
fn candidate_monomials(d: u32) -> Vec<Exp> {
    let mut out = Vec::new();
    for deg in 1..=d {
        for a in (0..=deg).rev() {
            for b in (0..=deg - a).rev() {
                out.push([a, b, deg - a - b]);
            }
        }
    }
    out
}

fn unit(n: usize, i: usize) -> Vec<Rational> {
    let mut v = vec![Rational::zero(); n];
    v[i] = Rational::from_integer(1.into());
    v
}

/// Decides planarity up to the given polynomial degree and vanishing order.
pub fn planarity(c: &CurveGerm, degree_bound: u32, order_bound: u32) -> PlanarityVerdict {
    let monomials = candidate_monomials(degree_bound.max(1));
    let ncols = monomials.len();
    let k = order_bound.min(c.trunc());
    let curve = c.truncate(k);
    let mut cache = SeriesPowers::new(curve.comps_ref());
    let series: Vec<_> = monomials.iter().map(|e| cache.monomial(e)).collect();
    let coeff = |m: usize, t: u32| series[m].coeff(t).cloned().unwrap_or_else(Rational::zero);
    let mut rows: Vec<Vec<Rational>> = Vec::new();
    let mut ech = LeadEchelon::new(ncols);
    let linear: Vec<Vec<Rational>> = (0..3).map(|i| unit(ncols, i)).collect();
    for t in 1..=k {
        let row: Vec<Rational> = (0..ncols).map(|m| coeff(m, t)).collect();
        ech.insert(row.clone(), t as usize);
        rows.push(row);
        if linear.iter().all(|e| ech.contains(e)) {
            return PlanarityVerdict::Obstructed { order: t, degree_bound, order_bound };
        }
    }
    if k < order_bound {
        return PlanarityVerdict::Undetermined {
            reason: format!("curve truncation {} is below the order bound {order_bound}", c.trunc()),
        };
    }
    let kernel = nullspace(&rows, ncols);
    let best = kernel
        .iter()
        .filter(|v| v[..3].iter().any(|x| !x.is_zero()))
        .min_by_key(|v| {
            let nz: Vec<usize> = (0..ncols).filter(|&i| !v[i].is_zero()).collect();
            let deg = nz.iter().map(|&i| monomials[i].iter().sum::<u32>()).max().unwrap_or(0);
            (nz.len(), deg)
        })
        .expect("some kernel vector has a linear part when no obstruction was found");
    let lead = best[..3].iter().find(|x| !x.is_zero()).unwrap().recip();
    let f = Poly3::from_terms(monomials.iter().zip(best).map(|(e, x)| (*e, x * &lead)));
    PlanarityVerdict::Witness { f, degree_bound, order_bound }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::qi;

    #[test]
    fn flat_curve_has_witness_z() {
        let c = CurveGerm::monomial([Some(3), Some(5), None], 64);
        match planarity(&c, 7, 40) {
            PlanarityVerdict::Witness { f, .. } => assert_eq!(f, Poly3::var(2)),
            v => panic!("{v:?}"),
        }
    }

    #[test]
    fn parabolic_cylinder_witness() {
        let c = CurveGerm::monomial([Some(2), Some(3), Some(4)], 64);
        match planarity(&c, 7, 40) {
            PlanarityVerdict::Witness { f, .. } => {
                assert_eq!(f, Poly3::var(2).sub(&Poly3::monomial([2, 0, 0], qi(1))));
                assert!(f.eval_series(c.comps_ref()).is_zero());
            }
            v => panic!("{v:?}"),
        }
    }

    #[test]
    fn space_curve_obstructed() {
        let c = CurveGerm::monomial([Some(3), Some(5), Some(7)], 64);
        let v = planarity(&c, 7, 40);
        assert!(matches!(v, PlanarityVerdict::Obstructed { .. }), "{v:?}");
    }

    #[test]
    fn short_truncation_is_undetermined() {
        let c = CurveGerm::monomial([Some(3), Some(5), None], 20);
        assert!(matches!(planarity(&c, 7, 40), PlanarityVerdict::Undetermined { .. }));
    }
}
