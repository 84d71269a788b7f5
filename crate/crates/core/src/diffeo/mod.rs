//! Diffeomorphism jets acting on tower points through prolongation.

pub mod isotropy;
pub mod sample;

use num_traits::Zero;

use crate::algebra::poly::{det3, Matrix3};
use crate::algebra::{CurveGerm, PolyJet3, Rational};
use crate::error::{Error, Result};
use crate::tower::{projective_normalize, prolong_curve, realize_point_with, Direction, RealizeOptions, TowerPoint};

pub use isotropy::{stage_point, taylor_constraints, IsotropyConstraintSet, Stage, TaylorConstraint};
pub use sample::JetSampler;

/// A polynomial jet fixing the origin with invertible linear part.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DiffeoJet(PolyJet3);

impl DiffeoJet {
    pub fn new(jet: PolyJet3) -> Result<Self> {
        if jet.constant_terms().iter().any(|c| !c.is_zero()) {
            return Err(Error::NotAGerm("jet does not fix the origin".into()));
        }
        if det3(&jet.linear_matrix()).is_zero() {
            return Err(Error::Degenerate("linear part is singular".into()));
        }
        Ok(DiffeoJet(jet))
    }

    pub fn identity(degree: u32) -> Self {
        DiffeoJet(PolyJet3::identity(degree))
    }

    /// `(a x, b y, c z)`; all factors must be nonzero.
    pub fn scaling(f: &[Rational; 3]) -> Result<Self> {
        Self::new(PolyJet3::scaling(f, 1))
    }

    pub fn jet(&self) -> &PolyJet3 {
        &self.0
    }

    pub fn into_jet(self) -> PolyJet3 {
        self.0
    }

    pub fn linear_matrix(&self) -> Matrix3 {
        self.0.linear_matrix()
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &DiffeoJet) -> DiffeoJet {
        DiffeoJet(self.0.compose(&inner.0))
    }

    pub fn inverse(&self) -> Result<DiffeoJet> {
        Ok(DiffeoJet(self.0.inverse()?))
    }

    pub fn apply(&self, c: &CurveGerm) -> Result<CurveGerm> {
        self.0.eval_on_curve(c)
    }
}

/// Image of `p` under the prolonged action of `phi`.
pub fn prolong_apply(phi: &DiffeoJet, p: &TowerPoint) -> Result<TowerPoint> {
    prolong_apply_with(phi, p, &RealizeOptions::default())
}

/// As [`prolong_apply`], realizing `p` with the given options.
///
/// The image curve is prolonged at increasing truncations until the endpoint is
/// determined; every coefficient used is exact.
pub fn prolong_apply_with(phi: &DiffeoJet, p: &TowerPoint, opts: &RealizeOptions) -> Result<TowerPoint> {
    let k = p.level();
    if k == 0 {
        return Ok(p.clone());
    }
    let gamma = realize_point_with(p, opts)?;
    let full = gamma.trunc();
    let mut n = 16.min(full);
    loop {
        let image = phi.apply(&gamma.truncate(n))?;
        match prolong_curve(&image, k).and_then(|pr| pr.point()) {
            Ok(q) => return Ok(q),
            Err(Error::InsufficientTruncation(msg)) => {
                if n >= full {
                    return Err(Error::InsufficientTruncation(msg));
                }
                n = (2 * n).min(full);
            }
            Err(e) => return Err(e),
        }
    }
}

/// True when the prolonged action of `phi` fixes `p`.
pub fn isotropy_check(phi: &DiffeoJet, p: &TowerPoint) -> Result<bool> {
    Ok(prolong_apply(phi, p)? == *p)
}

/// Images of directions over `p` under an isotropy jet, normalized projectively.
pub fn fiber_action(phi: &DiffeoJet, p: &TowerPoint, directions: &[Direction]) -> Result<Vec<Direction>> {
    let k = p.level();
    directions
        .iter()
        .map(|ell| {
            let q = p.extend(ell)?;
            let image = prolong_apply(phi, &q)?;
            if image.project(k) != *p {
                return Err(Error::Verification("jet does not fix the base point".into()));
            }
            projective_normalize(&image.step_direction(k + 1))
        })
        .collect()
}
