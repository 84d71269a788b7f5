//! Reduction traces: replayable sequences of right-left moves.

use num_traits::Zero;

use crate::algebra::poly::det3;
use crate::algebra::{CurveGerm, PolyJet3, Rational, TruncSeries};
use crate::error::{Error, Result};

/// One right-left move on a curve germ.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Move {
    /// `c ↦ c ∘ τ` with `ord τ = 1`.
    Reparametrize(TruncSeries),
    /// `c ↦ Φ ∘ c` with `Φ(0) = 0` and invertible linear part.
    CoordinateChange(PolyJet3),
    /// `(x, y, z) ↦ (a x, b y, c z)` with nonzero factors.
    Scale([Rational; 3]),
}

impl Move {
    pub fn validate(&self) -> Result<()> {
        match self {
            Move::Reparametrize(tau) => {
                let ok = tau.coeff(0).map_or(false, Zero::is_zero) && tau.coeff(1).map_or(false, |c| !c.is_zero());
                if !ok {
                    return Err(Error::InvalidInput("reparametrization must have order exactly 1".into()));
                }
            }
            Move::CoordinateChange(jet) => {
                if jet.constant_terms().iter().any(|c| !c.is_zero()) {
                    return Err(Error::NotAGerm("coordinate change does not fix the origin".into()));
                }
                if det3(&jet.linear_matrix()).is_zero() {
                    return Err(Error::Degenerate("coordinate change has singular linear part".into()));
                }
            }
            Move::Scale(f) => {
                if f.iter().any(Zero::is_zero) {
                    return Err(Error::Degenerate("zero scaling factor".into()));
                }
            }
        }
        Ok(())
    }

    pub fn apply(&self, c: &CurveGerm) -> Result<CurveGerm> {
        self.validate()?;
        match self {
            Move::Reparametrize(tau) => c.reparametrize(tau),
            Move::CoordinateChange(jet) => c.apply(jet),
            Move::Scale(f) => c.apply(&PolyJet3::scaling(f, 1)),
        }
    }

    /// The move as a jet, when it acts on the left.
    pub fn as_jet(&self) -> Option<PolyJet3> {
        match self {
            Move::Reparametrize(_) => None,
            Move::CoordinateChange(j) => Some(j.clone()),
            Move::Scale(f) => Some(PolyJet3::scaling(f, 1)),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Move::Reparametrize(_) => "reparametrize",
            Move::CoordinateChange(_) => "coordinate-change",
            Move::Scale(_) => "scale",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceStep {
    pub mv: Move,
    pub before: CurveGerm,
    pub after: CurveGerm,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ReductionTrace {
    pub steps: Vec<TraceStep>,
}

impl ReductionTrace {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    /// Applies `mv` to `c`, records the step and returns the result.
    pub fn record(&mut self, mv: Move, c: &CurveGerm) -> Result<CurveGerm> {
        let after = mv.apply(c)?;
        self.steps.push(TraceStep { mv, before: c.clone(), after: after.clone() });
        Ok(after)
    }

    pub fn extend(&mut self, other: ReductionTrace) {
        self.steps.extend(other.steps);
    }

    /// Re-executes every move from `input`, checking each recorded snapshot.
    pub fn replay(&self, input: &CurveGerm) -> Result<CurveGerm> {
        let mut cur = input.clone();
        for (i, step) in self.steps.iter().enumerate() {
            if !cur.agrees(&step.before) {
                return Err(Error::Verification(format!("step {i}: input does not match the recorded curve")));
            }
            cur = step.mv.apply(&cur)?;
            if !cur.agrees(&step.after) {
                return Err(Error::Verification(format!("step {i}: result does not match the recorded curve")));
            }
        }
        Ok(cur)
    }
}
