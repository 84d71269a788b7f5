//! Critical hyperplanes inside the rank-3 distribution and their prolongation.
//!
//! At level `k ≥ 1` the distribution at a point is identified with ℚ³ through the
//! chart coframe `(dh_k, du_k, dv_k)`: `h_k` is the level-`(k-1)` coordinate chosen as
//! chart denominator and `u_k, v_k` are the fiber coordinates. A hyperplane is stored
//! as a normal functional in that frame.

use num_traits::{One, Zero};

use super::word::Letter;
use super::Direction;
use crate::algebra::Rational;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CriticalHyperplane {
    /// Level of the fiber whose prolongation this plane is tangent to.
    pub birth: u32,
    /// Number of prolongations since birth; the vertical plane has age 0.
    pub age: u32,
    /// Normal functional, scaled so its first nonzero entry is 1.
    pub normal: [Rational; 3],
}

/// Scales a nonzero vector so its first nonzero entry is 1.
pub fn projective_normalize(v: &[Rational; 3]) -> Result<[Rational; 3]> {
    let lead = v.iter().find(|c| !c.is_zero()).ok_or(Error::ZeroDirection)?;
    let inv = lead.recip();
    Ok([&v[0] * &inv, &v[1] * &inv, &v[2] * &inv])
}

/// Index of the first nonzero entry: the chart-selection priority rule.
pub fn priority_index(v: &[Rational; 3]) -> Result<usize> {
    v.iter().position(|c| !c.is_zero()).ok_or(Error::ZeroDirection)
}

/// The two indices other than `d`, increasing.
pub fn other_indices(d: usize) -> [usize; 2] {
    match d {
        0 => [1, 2],
        1 => [0, 2],
        _ => [0, 1],
    }
}

fn dot(a: &[Rational; 3], b: &[Rational; 3]) -> Rational {
    &a[0] * &b[0] + &a[1] * &b[1] + &a[2] * &b[2]
}

impl CriticalHyperplane {
    /// The vertical plane `V_k = {dh_k = 0}`.
    pub fn vertical(level: u32) -> Self {
        CriticalHyperplane { birth: level, age: 0, normal: [Rational::one(), Rational::zero(), Rational::zero()] }
    }

    pub fn new(birth: u32, age: u32, normal: [Rational; 3]) -> Result<Self> {
        Ok(CriticalHyperplane { birth, age, normal: projective_normalize(&normal)? })
    }

    pub fn is_vertical(&self) -> bool {
        self.age == 0
    }

    pub fn contains(&self, dir: &Direction) -> bool {
        dot(&self.normal, dir).is_zero()
    }

    /// Two vectors spanning the plane.
    pub fn span(&self) -> [[Rational; 3]; 2] {
        kernel_basis(&self.normal)
    }

    /// Prolongs this plane along a direction `ell` it contains.
    ///
    /// The new chart is the priority chart of `ell`. The prolonged plane is spanned by the
    /// chart lift of `ell` (frame vector `(1,0,0)`) and the tangent at `ell` of the fiber
    /// line `ℙ(ker δ)`, written in the new fiber coordinates.
    pub fn prolong(&self, ell: &Direction) -> Result<CriticalHyperplane> {
        let d = priority_index(ell)?;
        if !self.contains(ell) {
            return Err(Error::NotInHyperplane);
        }
        let l = projective_normalize_at(ell, d);
        let [a, b] = other_indices(d);
        let [k1, k2] = kernel_basis(&self.normal);
        // a kernel vector independent of ell
        let w = if parallel(&k1, &l) { k2 } else { k1 };
        let t = [&w[a] - &l[a] * &w[d], &w[b] - &l[b] * &w[d]];
        if t[0].is_zero() && t[1].is_zero() {
            return Err(Error::Degenerate("fiber tangent vanished while prolonging a hyperplane".into()));
        }
        let normal = [Rational::zero(), -t[1].clone(), t[0].clone()];
        CriticalHyperplane::new(self.birth, self.age + 1, normal)
    }
}

fn projective_normalize_at(v: &Direction, d: usize) -> Direction {
    let inv = v[d].recip();
    [&v[0] * &inv, &v[1] * &inv, &v[2] * &inv]
}

fn parallel(a: &[Rational; 3], b: &[Rational; 3]) -> bool {
    let cross = [&a[1] * &b[2] - &a[2] * &b[1], &a[2] * &b[0] - &a[0] * &b[2], &a[0] * &b[1] - &a[1] * &b[0]];
    cross.iter().all(Zero::is_zero)
}

/// Basis of the kernel of a nonzero functional.
fn kernel_basis(n: &[Rational; 3]) -> [[Rational; 3]; 2] {
    let z = Rational::zero;
    let p = n.iter().position(|c| !c.is_zero()).expect("nonzero normal");
    let [a, b] = other_indices(p);
    let mut v1 = [z(), z(), z()];
    v1[a] = n[p].clone();
    v1[p] = -n[a].clone();
    let mut v2 = [z(), z(), z()];
    v2[b] = n[p].clone();
    v2[p] = -n[b].clone();
    [v1, v2]
}

/// Arrangement above a point reached along `ell` from a point with arrangement `parent`.
pub fn prolong_arrangement(parent: &[CriticalHyperplane], ell: &Direction, level: u32) -> Result<Vec<CriticalHyperplane>> {
    let mut out = vec![CriticalHyperplane::vertical(level)];
    for delta in parent {
        if delta.contains(ell) {
            out.push(delta.prolong(ell)?);
        }
    }
    Ok(out)
}

/// Letter of a direction relative to an arrangement.
pub fn classify_in(arrangement: &[CriticalHyperplane], ell: &Direction) -> Result<Letter> {
    priority_index(ell)?;
    let containing: Vec<&CriticalHyperplane> = arrangement.iter().filter(|h| h.contains(ell)).collect();
    let vertical = containing.iter().any(|h| h.is_vertical());
    let tangencies: Vec<&CriticalHyperplane> = arrangement.iter().filter(|h| !h.is_vertical()).collect();
    let hit: Vec<usize> = tangencies.iter().enumerate().filter(|(_, h)| h.contains(ell)).map(|(i, _)| i).collect();
    let letter = match tangencies.len() {
        0 => {
            if vertical {
                Letter::V
            } else {
                Letter::R
            }
        }
        1 => match (vertical, hit.is_empty()) {
            (false, true) => Letter::R,
            (true, true) => Letter::V,
            (false, false) => Letter::T,
            (true, false) => Letter::L,
        },
        2 => {
            // T1 is the tangency plane born at the higher level
            let t1 = if tangencies[0].birth >= tangencies[1].birth { 0 } else { 1 };
            let in1 = hit.contains(&t1);
            let in2 = hit.contains(&(1 - t1));
            match (vertical, in1, in2) {
                (false, false, false) => Letter::R,
                (true, false, false) => Letter::V,
                (false, true, false) => Letter::T1,
                (false, false, true) => Letter::T2,
                (true, true, false) => Letter::L1,
                (true, false, true) => Letter::L2,
                (false, true, true) => Letter::L3,
                (true, true, true) => {
                    return Err(Error::Degenerate("direction lies in three critical planes".into()))
                }
            }
        }
        n => return Err(Error::Unsupported(format!("arrangement with {n} tangency planes"))),
    };
    Ok(letter)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::qi;

    fn d(a: i64, b: i64, c: i64) -> Direction {
        [qi(a), qi(b), qi(c)]
    }

    #[test]
    fn vertical_prolongs_to_coordinate_plane() {
        // V at a level-2 point along ∂v2 becomes {du3 = 0}
        let v = CriticalHyperplane::vertical(2);
        let p = v.prolong(&d(0, 0, 1)).unwrap();
        assert_eq!(p.normal, d(0, 1, 0));
        assert_eq!((p.birth, p.age), (2, 1));
        assert!(v.prolong(&d(1, 0, 0)).is_err());
    }

    #[test]
    fn classification_over_two_planes() {
        let arr = vec![CriticalHyperplane::vertical(2), CriticalHyperplane::new(1, 1, d(0, 1, 0)).unwrap()];
        assert_eq!(classify_in(&arr, &d(0, 1, 0)).unwrap(), Letter::V);
        assert_eq!(classify_in(&arr, &d(0, 0, 1)).unwrap(), Letter::L);
        assert_eq!(classify_in(&arr, &d(1, 0, 3)).unwrap(), Letter::T);
        assert_eq!(classify_in(&arr, &d(1, 1, 0)).unwrap(), Letter::R);
        assert_eq!(classify_in(&arr, &d(0, 0, 0)), Err(Error::ZeroDirection));
    }

    #[test]
    fn spans_lie_in_plane() {
        let h = CriticalHyperplane::new(1, 2, d(0, 2, -3)).unwrap();
        for v in h.span() {
            assert!(h.contains(&v));
        }
        assert!(!parallel(&h.span()[0], &h.span()[1]));
    }
}
