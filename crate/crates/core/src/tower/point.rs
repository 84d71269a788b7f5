//! Points of the tower in Kumpera–Rubin charts.

use std::fmt;

use num_traits::{One, Zero};

use super::hyperplane::{classify_in, other_indices, priority_index, prolong_arrangement, CriticalHyperplane};
use super::word::{Letter, RvtWord};
use super::Direction;
use crate::algebra::Rational;
use crate::error::{Error, Result};

/// Which level-`(j-1)` coframe member is the chart denominator at level `j`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ChartStep(u8);

impl ChartStep {
    pub fn new(index: usize) -> Result<Self> {
        if index > 2 {
            return Err(Error::InvalidInput(format!("chart index {index} out of range")));
        }
        Ok(ChartStep(index as u8))
    }

    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// A point `p_k` given by its chart path and `3 + 2k` coordinates `(x, y, z, u_1, v_1, …)`.
///
/// Only points over the origin of ℝ³ in priority charts are represented: at each level the
/// chart denominator is the first coframe member that is nonzero on the direction.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TowerPoint {
    chart: Vec<ChartStep>,
    coords: Vec<Rational>,
    // arrangements[j] is the arrangement at level j
    arrangements: Vec<Vec<CriticalHyperplane>>,
    word: RvtWord,
}

impl TowerPoint {
    pub fn origin() -> Self {
        TowerPoint {
            chart: vec![],
            coords: vec![Rational::zero(), Rational::zero(), Rational::zero()],
            arrangements: vec![vec![]],
            word: RvtWord::default(),
        }
    }

    pub fn new(chart: Vec<ChartStep>, coords: Vec<Rational>) -> Result<Self> {
        let k = chart.len();
        if coords.len() != 3 + 2 * k {
            return Err(Error::InvalidInput(format!(
                "level {k} needs {} coordinates, got {}",
                3 + 2 * k,
                coords.len()
            )));
        }
        if coords[..3].iter().any(|c| !c.is_zero()) {
            return Err(Error::Unsupported("points over a base point other than the origin".into()));
        }
        let mut p = TowerPoint::origin();
        for j in 1..=k {
            let d = chart[j - 1].index();
            let [a, b] = other_indices(d);
            let mut dir: Direction = [Rational::zero(), Rational::zero(), Rational::zero()];
            dir[d] = Rational::one();
            dir[a] = coords[1 + 2 * j].clone();
            dir[b] = coords[2 + 2 * j].clone();
            if priority_index(&dir)? != d {
                return Err(Error::InvalidInput(format!(
                    "chart at level {j} is not the priority chart of its direction"
                )));
            }
            p = p.extend(&dir)?;
        }
        Ok(p)
    }

    pub fn level(&self) -> usize {
        self.chart.len()
    }

    pub fn chart(&self) -> &[ChartStep] {
        &self.chart
    }

    pub fn coords(&self) -> &[Rational] {
        &self.coords
    }

    /// `(u_j, v_j)` for `1 ≤ j ≤ level`.
    pub fn fiber(&self, j: usize) -> (&Rational, &Rational) {
        (&self.coords[1 + 2 * j], &self.coords[2 + 2 * j])
    }

    /// RVT word of the point (one letter per level).
    pub fn word(&self) -> &RvtWord {
        &self.word
    }

    /// Critical hyperplanes in the distribution at this point.
    pub fn arrangement(&self) -> &[CriticalHyperplane] {
        self.arrangements.last().unwrap()
    }

    pub fn arrangement_at_level(&self, j: usize) -> &[CriticalHyperplane] {
        &self.arrangements[j]
    }

    /// Direction at level `j - 1` along which level `j` was reached, in the level-`(j-1)` frame.
    pub fn step_direction(&self, j: usize) -> Direction {
        let d = self.chart[j - 1].index();
        let [a, b] = other_indices(d);
        let mut dir: Direction = [Rational::zero(), Rational::zero(), Rational::zero()];
        dir[d] = Rational::one();
        dir[a] = self.coords[1 + 2 * j].clone();
        dir[b] = self.coords[2 + 2 * j].clone();
        dir
    }

    /// Values at this point of the level-`j` coframe functions `(h_j, u_j, v_j)`
    /// (`(x, y, z)` at level 0).
    pub fn frame_values(&self, j: usize) -> [Rational; 3] {
        let mut vals = [self.coords[0].clone(), self.coords[1].clone(), self.coords[2].clone()];
        for i in 1..=j {
            let h = vals[self.chart[i - 1].index()].clone();
            vals = [h, self.coords[1 + 2 * i].clone(), self.coords[2 + 2 * i].clone()];
        }
        vals
    }

    /// Letter of a direction in the distribution at this point.
    pub fn classify(&self, ell: &Direction) -> Result<Letter> {
        classify_in(self.arrangement(), ell)
    }

    /// The level-`(k+1)` point over this one in direction `ell`, in its priority chart.
    pub fn extend(&self, ell: &Direction) -> Result<TowerPoint> {
        let d = priority_index(ell)?;
        let letter = self.classify(ell)?;
        let level = self.level() as u32 + 1;
        let arrangement = prolong_arrangement(self.arrangement(), ell, level)?;
        let [a, b] = other_indices(d);
        let inv = ell[d].recip();
        let mut p = self.clone();
        p.chart.push(ChartStep(d as u8));
        p.coords.push(&ell[a] * &inv);
        p.coords.push(&ell[b] * &inv);
        p.arrangements.push(arrangement);
        p.word.push(letter);
        Ok(p)
    }

    /// Projection to level `i ≤ level`.
    pub fn project(&self, i: usize) -> TowerPoint {
        let i = i.min(self.level());
        TowerPoint {
            chart: self.chart[..i].to_vec(),
            coords: self.coords[..3 + 2 * i].to_vec(),
            arrangements: self.arrangements[..=i].to_vec(),
            word: self.word.prefix(i),
        }
    }
}

/// `π_{k,i}`.
pub fn project_point(p: &TowerPoint, i: usize) -> TowerPoint {
    p.project(i)
}

/// Critical hyperplanes at `p`.
pub fn arrangement_at(p: &TowerPoint) -> &[CriticalHyperplane] {
    p.arrangement()
}

/// Letter of `ell` at `p`.
pub fn classify_direction(p: &TowerPoint, ell: &Direction) -> Result<Letter> {
    p.classify(ell)
}

/// Prolongs `delta` (a plane at the level-`k` projection of `q`) to the level-`(k+1)` point `q`.
pub fn prolong_hyperplane(delta: &CriticalHyperplane, ell: &Direction, q: &TowerPoint) -> Result<CriticalHyperplane> {
    let k = q.level();
    if k == 0 {
        return Err(Error::InvalidInput("target point must have level at least 1".into()));
    }
    let expected = q.step_direction(k);
    let cross_zero = {
        let a = ell;
        let b = &expected;
        [&a[1] * &b[2] - &a[2] * &b[1], &a[2] * &b[0] - &a[0] * &b[2], &a[0] * &b[1] - &a[1] * &b[0]]
            .iter()
            .all(Zero::is_zero)
    };
    if !cross_zero {
        return Err(Error::InvalidInput("direction does not lead to the target point".into()));
    }
    delta.prolong(ell)
}

impl fmt::Display for TowerPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let chart: Vec<String> = self.chart.iter().map(|c| c.index().to_string()).collect();
        let coords: Vec<String> = self.coords.iter().map(|c| c.to_string()).collect();
        write!(f, "level {} chart [{}] ({}) {}", self.level(), chart.join(","), coords.join(", "), self.word)
    }
}
