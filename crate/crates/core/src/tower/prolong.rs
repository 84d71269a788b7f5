//! Prolongation of curve germs through the tower.

use num_traits::Zero;

use super::hyperplane::{other_indices, priority_index};
use super::point::{ChartStep, TowerPoint};
use super::word::{Letter, RvtWord};
use super::Direction;
use crate::algebra::{CurveGerm, Rational, TruncSeries};
use crate::error::{Error, Result};

/// The `k`-fold prolongation of a curve.
#[derive(Clone, Debug)]
pub struct Prolongation {
    // frames[j] = (h_j, u_j, v_j) along the curve; frames[0] = (x, y, z)
    frames: Vec<[TruncSeries; 3]>,
    chart: Vec<ChartStep>,
    // directions[j] = tangent direction at t = 0 in the level-j frame, when determined
    directions: Vec<Option<Direction>>,
}

/// Tangent direction at `t = 0` of a curve given by its three frame functions: the
/// lowest-order coefficient vector of the derivatives.
pub fn frame_direction(frame: &[TruncSeries; 3]) -> Result<Direction> {
    let ders = [frame[0].derivative()?, frame[1].derivative()?, frame[2].derivative()?];
    let m = ders
        .iter()
        .filter_map(|s| s.ord())
        .min()
        .ok_or_else(|| Error::trunc("curve is constant up to its truncation at this level"))?;
    for s in &ders {
        if s.ord().is_none() && s.trunc() < m {
            return Err(Error::trunc("cannot decide the tangent direction at this level"));
        }
    }
    Ok([0, 1, 2].map(|i| ders[i].coeff(m).cloned().unwrap_or_else(Rational::zero)))
}

fn next_frame(frame: &[TruncSeries; 3], d: usize) -> Result<[TruncSeries; 3]> {
    let [a, b] = other_indices(d);
    let dd = frame[d].derivative()?;
    let u = frame[a].derivative()?.ratio(&dd)?;
    let v = frame[b].derivative()?.ratio(&dd)?;
    Ok([frame[d].clone(), u, v])
}

/// Prolongs `c` to level `k`, choosing the priority chart at every level.
pub fn prolong_curve(c: &CurveGerm, k: usize) -> Result<Prolongation> {
    if c.is_constant() {
        return Err(Error::Degenerate("constant curve".into()));
    }
    let mut frames = vec![c.comps().clone()];
    let mut chart = Vec::with_capacity(k);
    let mut directions = Vec::with_capacity(k + 1);
    for _ in 0..k {
        let frame = frames.last().unwrap();
        let dir = frame_direction(frame)?;
        let d = priority_index(&dir)?;
        let next = next_frame(frame, d)?;
        directions.push(Some(dir));
        chart.push(ChartStep::new(d)?);
        frames.push(next);
    }
    directions.push(frame_direction(frames.last().unwrap()).ok());
    Ok(Prolongation { frames, chart, directions })
}

impl Prolongation {
    pub fn level(&self) -> usize {
        self.chart.len()
    }

    pub fn chart(&self) -> &[ChartStep] {
        &self.chart
    }

    /// Frame functions `(h_j, u_j, v_j)` along the curve (`(x, y, z)` for `j = 0`).
    pub fn frame(&self, j: usize) -> &[TruncSeries; 3] {
        &self.frames[j]
    }

    /// `(u_j, v_j)` along the curve.
    pub fn fiber_series(&self, j: usize) -> (&TruncSeries, &TruncSeries) {
        (&self.frames[j][1], &self.frames[j][2])
    }

    /// All `3 + 2k` coordinate series `(x, y, z, u_1, v_1, …)`.
    pub fn series(&self) -> Vec<TruncSeries> {
        let mut out: Vec<TruncSeries> = self.frames[0].to_vec();
        for f in &self.frames[1..] {
            out.push(f[1].clone());
            out.push(f[2].clone());
        }
        out
    }

    /// Tangent direction at level `j`, if determined by the truncation.
    pub fn direction(&self, j: usize) -> Option<&Direction> {
        self.directions[j].as_ref()
    }

    /// The point reached at `t = 0`.
    pub fn point(&self) -> Result<TowerPoint> {
        let mut coords: Vec<Rational> = Vec::with_capacity(3 + 2 * self.level());
        for s in self.series() {
            coords.push(s.coeff(0).cloned().unwrap_or_else(Rational::zero));
        }
        TowerPoint::new(self.chart.clone(), coords)
    }

    /// Letter of the level-`k` direction at the endpoint.
    pub fn top_letter(&self) -> Result<Letter> {
        let dir = self.directions[self.level()]
            .as_ref()
            .ok_or_else(|| Error::trunc("top-level direction undetermined"))?;
        self.point()?.classify(dir)
    }
}

/// RVT code of `c` at level `k`; the level-`k` direction must be regular.
pub fn rvt_code(c: &CurveGerm, k: usize) -> Result<RvtWord> {
    let pr = prolong_curve(c, k)?;
    let p = pr.point()?;
    match pr.top_letter()? {
        Letter::R => Ok(p.word().clone()),
        l => Err(Error::InvalidInput(format!(
            "level-{k} direction is critical ({l}); the curve does not realize its level-{k} point"
        ))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::q;

    fn mono(e: [Option<u32>; 3]) -> CurveGerm {
        CurveGerm::monomial(e, 40)
    }

    #[test]
    fn cusp_first_prolongation() {
        let pr = prolong_curve(&mono([Some(2), Some(3), None]), 1).unwrap();
        let (u, v) = pr.fiber_series(1);
        assert_eq!(u.terms().map(|(d, c)| (d, c.clone())).collect::<Vec<_>>(), vec![(1, q(3, 2))]);
        assert!(v.is_zero());
        assert!(pr.point().unwrap().coords().iter().all(Zero::is_zero));
    }

    #[test]
    fn quotient_of_derivatives() {
        let pr = prolong_curve(&mono([Some(3), Some(5), Some(7)]), 1).unwrap();
        let (u, v) = pr.fiber_series(1);
        assert_eq!(u.leading(), Some((2, &q(5, 3))));
        assert_eq!(u.terms().count(), 1);
        assert_eq!(v.leading(), Some((4, &q(7, 3))));
        assert_eq!(v.terms().count(), 1);
    }

    #[test]
    fn straight_line_stays_flat() {
        let pr = prolong_curve(&mono([Some(1), None, None]), 2).unwrap();
        for s in &pr.series()[3..] {
            assert!(s.is_zero());
        }
    }

    #[test]
    fn catalog_codes() {
        let cases: [([Option<u32>; 3], &str); 5] = [
            ([Some(2), Some(3), None], "RVR"),
            ([Some(4), Some(6), Some(7)], "RVL"),
            ([Some(3), Some(4), Some(5)], "RVT"),
            ([Some(3), Some(5), Some(7)], "RVV"),
            ([Some(2), Some(5), None], "RRV"),
        ];
        for (e, code) in cases {
            assert_eq!(rvt_code(&mono(e), 3).unwrap().to_string(), code, "{e:?}");
        }
        assert_eq!(rvt_code(&mono([Some(1), None, None]), 4).unwrap().to_string(), "RRRR");
    }

    #[test]
    fn critical_top_direction_rejected() {
        // the cusp's level-1 direction is vertical
        assert!(rvt_code(&mono([Some(2), Some(3), None]), 1).is_err());
    }

    #[test]
    fn constant_curve_rejected() {
        assert!(prolong_curve(&CurveGerm::monomial([None, None, None], 10), 1).is_err());
    }

    #[test]
    fn shallow_truncation_reported() {
        let c = CurveGerm::monomial([Some(4), Some(6), Some(7)], 5);
        assert!(matches!(prolong_curve(&c, 3), Err(Error::InsufficientTruncation(_))));
        // whenever a shallow truncation succeeds it agrees with a deep one
        for n in 6..12 {
            let c = CurveGerm::monomial([Some(4), Some(6), Some(7)], n);
            if let Ok(pr) = prolong_curve(&c, 3) {
                assert_eq!(pr.point().unwrap(), prolong_curve(&mono([Some(4), Some(6), Some(7)]), 3).unwrap().point().unwrap());
            }
        }
    }
}
