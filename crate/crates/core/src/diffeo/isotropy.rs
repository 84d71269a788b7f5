//! Taylor constraints for the isotropy groups along the R → RV → RVV chain.

use std::fmt;

use num_traits::Zero;

use crate::algebra::poly::Exp;
use crate::algebra::{qi, PolyJet3};
use crate::tower::{ChartStep, TowerPoint};

/// Isotropy stage: `G1` fixes the level-1 point over the x-axis, `G2` the RV point
/// above it and `G3` the RVV point above that (all coordinates zero).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Stage {
    G1,
    G2,
    G3,
}

impl Stage {
    pub fn level(self) -> usize {
        match self {
            Stage::G1 => 1,
            Stage::G2 => 2,
            Stage::G3 => 3,
        }
    }
}

/// The partial derivative `∂^e φ^(component+1) / ∂(x,y,z)^e` vanishes at 0.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct TaylorConstraint {
    pub component: usize,
    pub multi_index: Exp,
}

impl fmt::Display for TaylorConstraint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut sub = String::new();
        for (v, k) in ["x", "y", "z"].iter().zip(self.multi_index) {
            for _ in 0..k {
                sub.push_str(v);
            }
        }
        write!(f, "phi{}_{}(0) = 0", self.component + 1, sub)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IsotropyConstraintSet {
    pub stage: Stage,
    pub constraints: Vec<TaylorConstraint>,
}

impl IsotropyConstraintSet {
    pub fn satisfied_by(&self, jet: &PolyJet3) -> bool {
        self.constraints.iter().all(|c| jet.comp(c.component).coeff(&c.multi_index).is_zero())
    }

    /// Copy of `jet` with every constrained coefficient set to zero.
    pub fn enforce(&self, jet: &PolyJet3) -> PolyJet3 {
        let mut comps = jet.comps().clone();
        for c in &self.constraints {
            let cur = comps[c.component].coeff(&c.multi_index);
            comps[c.component].add_term(c.multi_index, -cur);
        }
        PolyJet3::truncated(jet.degree(), comps)
    }
}

/// Constraints cutting out the isotropy group at the given stage.
pub fn taylor_constraints(stage: Stage) -> IsotropyConstraintSet {
    let c = |component, multi_index| TaylorConstraint { component, multi_index };
    let mut constraints = vec![c(1, [1, 0, 0]), c(2, [1, 0, 0])];
    if matches!(stage, Stage::G2 | Stage::G3) {
        constraints.push(c(2, [0, 1, 0]));
    }
    if stage == Stage::G3 {
        constraints.push(c(2, [2, 0, 0]));
    }
    IsotropyConstraintSet { stage, constraints }
}

/// The representative point fixed by the stage's group.
pub fn stage_point(stage: Stage) -> TowerPoint {
    let chart: &[usize] = match stage {
        Stage::G1 => &[0],
        Stage::G2 => &[0, 1],
        Stage::G3 => &[0, 1, 1],
    };
    let chart: Vec<ChartStep> = chart.iter().map(|&i| ChartStep::new(i).unwrap()).collect();
    let n = 3 + 2 * chart.len();
    TowerPoint::new(chart, vec![qi(0); n]).expect("zero points are valid")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constraint_sets_nest() {
        let g1 = taylor_constraints(Stage::G1);
        let g2 = taylor_constraints(Stage::G2);
        let g3 = taylor_constraints(Stage::G3);
        assert_eq!(g1.constraints.len(), 2);
        assert!(g1.constraints.iter().all(|c| g2.constraints.contains(c)));
        assert!(g2.constraints.iter().all(|c| g3.constraints.contains(c)));
        assert_eq!(g3.constraints.last().unwrap().to_string(), "phi3_xx(0) = 0");
        assert_eq!(g2.constraints.last().unwrap().to_string(), "phi3_y(0) = 0");
    }

    #[test]
    fn stage_points_have_expected_words() {
        assert_eq!(stage_point(Stage::G1).word().to_string(), "R");
        assert_eq!(stage_point(Stage::G2).word().to_string(), "RV");
        assert_eq!(stage_point(Stage::G3).word().to_string(), "RVV");
    }
}
