//! Seeded sampling of jets and reparametrizations with small rational coefficients.

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::isotropy::IsotropyConstraintSet;
use super::DiffeoJet;
use crate::algebra::poly::det3;
use crate::algebra::{q, qi, Poly3, PolyJet3, Rational, TruncSeries};

/// Deterministic sampler: numerators in `[-5, 5]`, denominators in `[1, 3]`.
pub struct JetSampler {
    rng: ChaCha8Rng,
}

impl JetSampler {
    pub fn new(seed: u64) -> Self {
        JetSampler { rng: ChaCha8Rng::seed_from_u64(seed) }
    }

    pub fn rational(&mut self) -> Rational {
        q(self.rng.gen_range(-5..=5), self.rng.gen_range(1..=3))
    }

    pub fn nonzero_rational(&mut self) -> Rational {
        loop {
            let r = self.rational();
            if !r.is_zero() {
                return r;
            }
        }
    }

    /// Uniform index below `n`.
    pub fn index(&mut self, n: usize) -> usize {
        self.rng.gen_range(0..n)
    }

    /// Random polynomial with monomials of total degree `low..=high`.
    pub fn poly(&mut self, low: u32, high: u32) -> Poly3 {
        let mut p = Poly3::zero();
        for d in low..=high {
            for a in (0..=d).rev() {
                for b in (0..=d - a).rev() {
                    let c = self.rational();
                    p.add_term([a, b, d - a - b], c);
                }
            }
        }
        p
    }

    /// Random jet of the given degree with invertible linear part.
    pub fn jet(&mut self, degree: u32) -> DiffeoJet {
        let comps = [self.poly(1, degree), self.poly(1, degree), self.poly(1, degree)];
        fix_linear(PolyJet3::truncated(degree, comps))
    }

    /// Random jet satisfying a constraint set, with invertible linear part.
    pub fn constrained_jet(&mut self, degree: u32, set: &IsotropyConstraintSet) -> DiffeoJet {
        let raw = self.jet(degree).into_jet();
        fix_linear(set.enforce(&raw))
    }

    /// Random diagonal scaling.
    pub fn scaling(&mut self) -> DiffeoJet {
        let f = [self.nonzero_rational(), self.nonzero_rational(), self.nonzero_rational()];
        DiffeoJet::scaling(&f).expect("nonzero factors")
    }

    /// Random reparametrization `a1 t + a2 t^2 + a3 t^3` with `a1 ≠ 0`.
    pub fn reparametrization(&mut self, trunc: u32) -> TruncSeries {
        let terms = vec![(1, self.nonzero_rational()), (2, self.rational()), (3, self.rational())];
        TruncSeries::from_terms(terms, trunc)
    }
}

/// Adds the identity to the linear part until it is invertible.
fn fix_linear(jet: PolyJet3) -> DiffeoJet {
    let mut jet = jet;
    while det3(&jet.linear_matrix()).is_zero() {
        let mut comps = jet.comps().clone();
        for (i, p) in comps.iter_mut().enumerate() {
            let mut e = [0; 3];
            e[i] = 1;
            p.add_term(e, qi(1));
        }
        jet = PolyJet3::truncated(jet.degree(), comps);
    }
    DiffeoJet::new(jet).expect("constant terms are zero and the linear part is invertible")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diffeo::{taylor_constraints, Stage};

    #[test]
    fn sampling_is_deterministic() {
        let a = JetSampler::new(7).jet(3);
        let b = JetSampler::new(7).jet(3);
        assert_eq!(a, b);
        assert_ne!(a, JetSampler::new(8).jet(3));
    }

    #[test]
    fn constrained_samples_satisfy_constraints() {
        let set = taylor_constraints(Stage::G3);
        let mut s = JetSampler::new(1);
        for _ in 0..10 {
            assert!(set.satisfied_by(s.constrained_jet(3, &set).jet()));
        }
    }
}
