//! Curve germs in 3-space through the origin.

use std::fmt;

use num_traits::Zero;

use super::poly::PolyJet3;
use super::rational::Rational;
use super::series::TruncSeries;
use crate::error::{Error, Result};

/// A parameterized curve `t ↦ (x(t), y(t), z(t))` with `c(0) = 0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CurveGerm {
    comps: [TruncSeries; 3],
}

impl CurveGerm {
    pub fn new(x: TruncSeries, y: TruncSeries, z: TruncSeries) -> Result<Self> {
        for (name, s) in ["x", "y", "z"].iter().zip([&x, &y, &z]) {
            if !s.coeff(0).map_or(true, Zero::is_zero) {
                return Err(Error::NotAGerm(format!("{name}(0) is not 0")));
            }
        }
        Ok(CurveGerm { comps: [x, y, z] })
    }

    pub fn from_comps(comps: [TruncSeries; 3]) -> Result<Self> {
        let [x, y, z] = comps;
        Self::new(x, y, z)
    }

    /// Curve from per-component term lists at a common truncation.
    pub fn from_terms(terms: [&[(u32, Rational)]; 3], trunc: u32) -> Result<Self> {
        Self::from_comps(terms.map(|t| TruncSeries::from_terms(t.iter().cloned(), trunc)))
    }

    /// `(t^a, t^b, t^c)`, with `None` for a zero component.
    pub fn monomial(exps: [Option<u32>; 3], trunc: u32) -> Self {
        let comps = exps.map(|e| match e {
            Some(d) => TruncSeries::monomial(Rational::from_integer(1.into()), d, trunc),
            None => TruncSeries::zero(trunc),
        });
        Self::from_comps(comps).expect("monomial exponents are positive")
    }

    pub fn x(&self) -> &TruncSeries {
        &self.comps[0]
    }

    pub fn y(&self) -> &TruncSeries {
        &self.comps[1]
    }

    pub fn z(&self) -> &TruncSeries {
        &self.comps[2]
    }

    pub fn comp(&self, i: usize) -> &TruncSeries {
        &self.comps[i]
    }

    pub fn comps(&self) -> &[TruncSeries; 3] {
        &self.comps
    }

    pub fn comps_ref(&self) -> [&TruncSeries; 3] {
        [&self.comps[0], &self.comps[1], &self.comps[2]]
    }

    /// Smallest component truncation.
    pub fn trunc(&self) -> u32 {
        self.comps.iter().map(|s| s.trunc()).min().unwrap()
    }

    pub fn truncate(&self, n: u32) -> Self {
        CurveGerm { comps: self.comps.clone().map(|s| s.truncate(n)) }
    }

    /// Equality of all components up to degree `n`.
    pub fn agrees_to(&self, other: &Self, n: u32) -> bool {
        (0..3).all(|i| self.comps[i].agrees_to(&other.comps[i], n))
    }

    /// Equality up to the smaller common truncation.
    pub fn agrees(&self, other: &Self) -> bool {
        self.agrees_to(other, self.trunc().min(other.trunc()))
    }

    /// `c ∘ τ`.
    pub fn reparametrize(&self, tau: &TruncSeries) -> Result<Self> {
        let comps = [0, 1, 2].map(|i| self.comps[i].compose(tau));
        let [x, y, z] = comps;
        Self::new(x?, y?, z?)
    }

    /// `Φ ∘ c`.
    pub fn apply(&self, jet: &PolyJet3) -> Result<Self> {
        jet.eval_on_curve(self)
    }

    /// Permutes components: output component `i` is input component `perm[i]`.
    pub fn permute(&self, perm: [usize; 3]) -> Self {
        CurveGerm { comps: perm.map(|j| self.comps[j].clone()) }
    }

    /// True when every component vanishes up to its truncation.
    pub fn is_constant(&self) -> bool {
        self.comps.iter().all(|s| s.is_zero())
    }
}

impl fmt::Display for CurveGerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.comps[0], self.comps[1], self.comps[2])
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::poly::Poly3;
    use crate::algebra::rational::qi;

    #[test]
    fn rejects_nonzero_base_point() {
        let one = TruncSeries::one(5);
        assert!(CurveGerm::new(one, TruncSeries::zero(5), TruncSeries::zero(5)).is_err());
    }

    #[test]
    fn jet_substitution() {
        let line = CurveGerm::monomial([Some(1), None, None], 10);
        let shear = PolyJet3::new(
            2,
            [Poly3::var(0), Poly3::var(1).add(&Poly3::monomial([2, 0, 0], qi(1))), Poly3::var(2)],
        )
        .unwrap();
        assert_eq!(line.apply(&shear).unwrap(), CurveGerm::monomial([Some(1), Some(2), None], 10));
        let c = CurveGerm::monomial([Some(3), Some(5), Some(7)], 12);
        assert_eq!(c.apply(&PolyJet3::identity(4)).unwrap(), c);
        let scaled = c.apply(&PolyJet3::scaling(&[qi(2), qi(3), qi(5)], 1)).unwrap();
        let want = CurveGerm::from_terms([&[(3, qi(2))], &[(5, qi(3))], &[(7, qi(5))]], 12).unwrap();
        assert_eq!(scaled, want);
    }
}
