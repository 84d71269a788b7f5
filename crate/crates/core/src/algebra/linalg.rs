//! Exact linear algebra over the rationals: lowest-index echelon forms with
//! provenance tracking, and null spaces.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use super::rational::Rational;

struct EchelonRow {
    vec: Vec<Rational>,
    source: usize,
    // vec = source vector - Σ coef · rows[r].vec
    steps: Vec<(Rational, usize)>,
}

/// Echelon basis keyed by the lowest nonzero index of each row.
///
/// Every inserted vector carries a caller-side `source` id; any row can be expanded
/// back into a combination of sources.
pub struct LeadEchelon {
    len: usize,
    rows: Vec<EchelonRow>,
    pivot: Vec<Option<usize>>,
}

fn lead_of(v: &[Rational]) -> Option<usize> {
    v.iter().position(|c| !c.is_zero())
}

impl LeadEchelon {
    pub fn new(len: usize) -> Self {
        LeadEchelon { len, rows: Vec::new(), pivot: vec![None; len] }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    /// Reduces `v` by existing rows until its lead is new; returns the new lead, if any.
    pub fn insert(&mut self, mut v: Vec<Rational>, source: usize) -> Option<usize> {
        assert_eq!(v.len(), self.len);
        let mut steps = Vec::new();
        let lead = loop {
            let l = lead_of(&v)?;
            match self.pivot[l] {
                None => break l,
                Some(r) => {
                    let row = &self.rows[r];
                    let coef = &v[l] / &row.vec[l];
                    for i in l..self.len {
                        if !row.vec[i].is_zero() {
                            v[i] -= &coef * &row.vec[i];
                        }
                    }
                    steps.push((coef, r));
                }
            }
        };
        self.pivot[lead] = Some(self.rows.len());
        self.rows.push(EchelonRow { vec: v, source, steps });
        Some(lead)
    }

    /// Lead positions present, increasing.
    pub fn leads(&self) -> Vec<usize> {
        (0..self.len).filter(|&l| self.pivot[l].is_some()).collect()
    }

    pub fn has_lead(&self, l: usize) -> bool {
        l < self.len && self.pivot[l].is_some()
    }

    /// The row whose lead is `l`.
    pub fn row_with_lead(&self, l: usize) -> Option<&[Rational]> {
        self.pivot.get(l).copied().flatten().map(|r| self.rows[r].vec.as_slice())
    }

    /// True when `v` lies in the span.
    pub fn contains(&self, v: &[Rational]) -> bool {
        let mut v = v.to_vec();
        while let Some(l) = lead_of(&v) {
            match self.pivot[l] {
                None => return false,
                Some(r) => {
                    let row = &self.rows[r].vec;
                    let coef = &v[l] / &row[l];
                    for i in l..self.len {
                        if !row[i].is_zero() {
                            v[i] -= &coef * &row[i];
                        }
                    }
                }
            }
        }
        true
    }

    /// Expands `Σ w_l · row(lead l)` into a combination of source ids.
    pub fn expand(&self, weights: &[(usize, Rational)]) -> BTreeMap<usize, Rational> {
        let mut w: Vec<Rational> = vec![Rational::zero(); self.rows.len()];
        for (l, c) in weights {
            let r = self.pivot[*l].expect("weight on a missing lead");
            w[r] += c;
        }
        let mut out: BTreeMap<usize, Rational> = BTreeMap::new();
        for r in (0..self.rows.len()).rev() {
            if w[r].is_zero() {
                continue;
            }
            let wr = w[r].clone();
            *out.entry(self.rows[r].source).or_insert_with(Rational::zero) += &wr;
            for (coef, k) in &self.rows[r].steps {
                let delta = &wr * coef;
                w[*k] -= delta;
            }
        }
        out.retain(|_, c| !c.is_zero());
        out
    }

    /// Expansion of the row with lead `l` scaled so its lead coefficient is 1.
    pub fn normalized_combination(&self, l: usize) -> Option<BTreeMap<usize, Rational>> {
        let row = self.row_with_lead(l)?;
        let scale = row[l].recip();
        Some(self.expand(&[(l, scale)]))
    }
}

/// Basis of the null space of a matrix given by rows, each of length `ncols`.
pub fn nullspace(rows: &[Vec<Rational>], ncols: usize) -> Vec<Vec<Rational>> {
    let mut m: Vec<Vec<Rational>> = rows.to_vec();
    let mut pivots: Vec<usize> = Vec::new();
    let mut r = 0;
    for col in 0..ncols {
        if r == m.len() {
            break;
        }
        let Some(p) = (r..m.len()).find(|&i| !m[i][col].is_zero()) else { continue };
        m.swap(r, p);
        let inv = m[r][col].recip();
        for c in col..ncols {
            m[r][c] *= &inv;
        }
        for i in 0..m.len() {
            if i != r && !m[i][col].is_zero() {
                let f = m[i][col].clone();
                for c in col..ncols {
                    if !m[r][c].is_zero() {
                        let d = &f * &m[r][c];
                        m[i][c] -= d;
                    }
                }
            }
        }
        pivots.push(col);
        r += 1;
    }
    let mut basis = Vec::new();
    for free in (0..ncols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![Rational::zero(); ncols];
        v[free] = Rational::one();
        for (i, &pc) in pivots.iter().enumerate() {
            v[pc] = -m[i][free].clone();
        }
        basis.push(v);
    }
    basis
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::qi;

    fn v(xs: &[i64]) -> Vec<Rational> {
        xs.iter().map(|&x| qi(x)).collect()
    }

    #[test]
    fn echelon_leads_and_expansion() {
        let mut e = LeadEchelon::new(4);
        assert_eq!(e.insert(v(&[0, 1, 2, 0]), 0), Some(1));
        assert_eq!(e.insert(v(&[0, 2, 4, 1]), 1), Some(3));
        assert_eq!(e.insert(v(&[0, 3, 6, 0]), 2), None);
        assert_eq!(e.leads(), vec![1, 3]);
        // row with lead 3 is source1 - 2 source0
        let comb = e.expand(&[(3, qi(1))]);
        assert_eq!(comb.get(&1), Some(&qi(1)));
        assert_eq!(comb.get(&0), Some(&qi(-2)));
        assert!(e.contains(&v(&[0, 1, 2, 5])));
        assert!(!e.contains(&v(&[1, 0, 0, 0])));
    }

    #[test]
    fn nullspace_basis() {
        let rows = vec![v(&[1, 1, 0]), v(&[0, 1, 1])];
        let ns = nullspace(&rows, 3);
        assert_eq!(ns, vec![v(&[1, -1, 1])]);
        for k in &ns {
            for r in &rows {
                let dot: Rational = r.iter().zip(k).map(|(a, b)| a * b).sum();
                assert!(dot.is_zero());
            }
        }
    }
}
