//! Curves realizing a tower point.

use num_traits::{One, Zero};

use super::hyperplane::other_indices;
use super::point::TowerPoint;
use super::word::Letter;
use super::Direction;
use crate::algebra::{qi, CurveGerm, Rational, TruncSeries};
use crate::error::{Error, Result};
use crate::DEFAULT_TRUNC;

/// Choices for the realizing curve.
#[derive(Clone, Debug)]
pub struct RealizeOptions {
    /// Regular direction at the top level; `None` picks the first regular candidate.
    pub direction: Option<Direction>,
    /// Extra terms: `bend[i]` is added as the `t^(i+2)` coefficient of `(h_k, u_k, v_k)`.
    pub bend: Vec<Direction>,
    pub trunc: u32,
}

impl Default for RealizeOptions {
    fn default() -> Self {
        RealizeOptions { direction: None, bend: vec![], trunc: DEFAULT_TRUNC }
    }
}

/// First direction `(1, a, b)` off every critical plane at `p`, scanning small integers.
pub fn regular_direction(p: &TowerPoint) -> Direction {
    for r in 0i64.. {
        for a in -r..=r {
            let rest = r - a.abs();
            let bs: Vec<i64> = if rest == 0 { vec![0] } else { vec![rest, -rest] };
            for b in bs {
                let w = [Rational::one(), qi(a), qi(b)];
                if p.classify(&w).ok() == Some(Letter::R) {
                    return w;
                }
            }
        }
    }
    unreachable!()
}

/// A curve whose prolongation passes through `p` with a regular direction.
pub fn realize_point(p: &TowerPoint) -> Result<CurveGerm> {
    realize_point_with(p, &RealizeOptions::default())
}

/// Integrates the chart frame downward from a line through `p` in a regular direction.
pub fn realize_point_with(p: &TowerPoint, opts: &RealizeOptions) -> Result<CurveGerm> {
    let k = p.level();
    let n = opts.trunc;
    let w = match &opts.direction {
        Some(w) => {
            if p.classify(w)? != Letter::R {
                return Err(Error::InvalidInput("realizing direction must be regular".into()));
            }
            let inv = w[0].recip();
            [Rational::one(), &w[1] * &inv, &w[2] * &inv]
        }
        None => regular_direction(p),
    };
    let top = p.frame_values(k);
    let mut frame: [TruncSeries; 3] = [0, 1, 2].map(|i| {
        let mut terms = vec![(0, top[i].clone()), (1, w[i].clone())];
        for (e, b) in opts.bend.iter().enumerate() {
            terms.push((e as u32 + 2, b[i].clone()));
        }
        TruncSeries::from_terms(terms, n)
    });
    for j in (1..=k).rev() {
        let d = p.chart()[j - 1].index();
        let [a, b] = other_indices(d);
        let vals = p.frame_values(j - 1);
        let [h, u, v] = frame;
        let dh = h.derivative()?;
        let mut below: [TruncSeries; 3] = [TruncSeries::zero(n), TruncSeries::zero(n), TruncSeries::zero(n)];
        below[a] = (&u * &dh).integral(vals[a].clone());
        below[b] = (&v * &dh).integral(vals[b].clone());
        below[d] = h;
        frame = below.map(|s| s.truncate(n));
    }
    if frame.iter().any(|s| s.trunc() < n) {
        return Err(Error::trunc("realizing curve lost precision"));
    }
    let c = CurveGerm::from_comps(frame)?;
    debug_assert!(c.comps().iter().all(|s| s.coeff(0).map_or(true, Zero::is_zero)));
    Ok(c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::q;
    use crate::tower::point::ChartStep;
    use crate::tower::prolong::prolong_curve;

    fn chart(ix: &[usize]) -> Vec<ChartStep> {
        ix.iter().map(|&i| ChartStep::new(i).unwrap()).collect()
    }

    #[test]
    fn level_one_lines() {
        let p = TowerPoint::new(chart(&[0]), vec![qi(0); 5]).unwrap();
        assert_eq!(realize_point(&p).unwrap(), CurveGerm::monomial([Some(1), None, None], DEFAULT_TRUNC));
        let p = TowerPoint::new(chart(&[0]), vec![qi(0), qi(0), qi(0), q(2, 3), qi(-1)]).unwrap();
        let c = realize_point(&p).unwrap();
        assert_eq!(c.y().coeff(1), Some(&q(2, 3)));
        assert_eq!(c.z().coeff(1), Some(&qi(-1)));
        assert_eq!(prolong_curve(&c, 1).unwrap().point().unwrap(), p);
    }

    #[test]
    fn round_trip_of_prolonged_points() {
        for e in [[Some(3), Some(4), Some(5)], [Some(4), Some(6), Some(7)], [Some(3), Some(5), Some(7)]] {
            let c = CurveGerm::monomial(e, 48);
            let p = prolong_curve(&c, 3).unwrap().point().unwrap();
            let g = realize_point(&p).unwrap();
            let pr = prolong_curve(&g, 3).unwrap();
            assert_eq!(pr.point().unwrap(), p);
            assert_eq!(pr.top_letter().unwrap(), Letter::R);
        }
    }
}
