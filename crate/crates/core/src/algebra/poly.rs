//! Polynomials in (x, y, z) and polynomial jets of maps of 3-space.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_traits::{One, Zero};

use super::curve::CurveGerm;
use super::rational::{qi, Rational};
use super::series::TruncSeries;
use crate::error::{Error, Result};

/// Exponents of (x, y, z).
pub type Exp = [u32; 3];

fn total(e: &Exp) -> u32 {
    e[0] + e[1] + e[2]
}

fn add_exp(a: &Exp, b: &Exp) -> Exp {
    [a[0] + b[0], a[1] + b[1], a[2] + b[2]]
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Poly3 {
    terms: BTreeMap<Exp, Rational>,
}

impl Poly3 {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: Rational) -> Self {
        Self::monomial([0, 0, 0], c)
    }

    /// The coordinate function `x` (i = 0), `y` (1) or `z` (2).
    pub fn var(i: usize) -> Self {
        let mut e = [0; 3];
        e[i] = 1;
        Self::monomial(e, Rational::one())
    }

    pub fn monomial(e: Exp, c: Rational) -> Self {
        let mut p = Self::zero();
        p.add_term(e, c);
        p
    }

    pub fn from_terms<I: IntoIterator<Item = (Exp, Rational)>>(terms: I) -> Self {
        let mut p = Self::zero();
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    pub fn add_term(&mut self, e: Exp, c: Rational) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(e).or_insert_with(Rational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exp, &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, e: &Exp) -> Rational {
        self.terms.get(e).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Highest total degree of a term.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(total).max()
    }

    /// Lowest total degree of a term.
    pub fn low_degree(&self) -> Option<u32> {
        self.terms.keys().map(total).min()
    }

    /// Coefficients of x, y, z.
    pub fn linear_part(&self) -> [Rational; 3] {
        [self.coeff(&[1, 0, 0]), self.coeff(&[0, 1, 0]), self.coeff(&[0, 0, 1])]
    }

    /// Value at the origin of the partial derivative with multi-index `e`.
    pub fn derivative_at_zero(&self, e: &Exp) -> Rational {
        let fact = |n: u32| (1..=n as i64).fold(qi(1), |acc, k| acc * qi(k));
        self.coeff(e) * fact(e[0]) * fact(e[1]) * fact(e[2])
    }

    pub fn truncate(&self, d: u32) -> Self {
        Poly3 { terms: self.terms.iter().filter(|(e, _)| total(e) <= d).map(|(e, c)| (*e, c.clone())).collect() }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Poly3 { terms: self.terms.iter().map(|(e, a)| (*e, a * c)).collect() }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut p = self.clone();
        for (e, c) in &other.terms {
            p.add_term(*e, c.clone());
        }
        p
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut p = self.clone();
        for (e, c) in &other.terms {
            p.add_term(*e, -c);
        }
        p
    }

    /// Product with all terms of total degree above `d` discarded.
    pub fn mul_trunc(&self, other: &Self, d: u32) -> Self {
        let mut p = Self::zero();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e = add_exp(ea, eb);
                if total(&e) <= d {
                    p.add_term(e, ca * cb);
                }
            }
        }
        p
    }

    /// Substitutes `(x, y, z) := g`, discarding terms of degree above `d`.
    pub fn substitute(&self, g: &[Poly3; 3], d: u32) -> Self {
        let mut cache = PolyPowers::new(g, d);
        let mut out = Self::zero();
        for (e, c) in &self.terms {
            let m = cache.monomial(e);
            for (em, cm) in m.terms() {
                out.add_term(*em, cm * c);
            }
        }
        out
    }

    /// Evaluates on three series (e.g. the components of a curve).
    pub fn eval_series(&self, s: [&TruncSeries; 3]) -> TruncSeries {
        SeriesPowers::new(s).eval(self)
    }
}

struct PolyPowers<'a> {
    base: &'a [Poly3; 3],
    d: u32,
    powers: [Vec<Poly3>; 3],
    mono: HashMap<Exp, Poly3>,
}

impl<'a> PolyPowers<'a> {
    fn new(base: &'a [Poly3; 3], d: u32) -> Self {
        let one = || vec![Poly3::constant(Rational::one())];
        PolyPowers { base, d, powers: [one(), one(), one()], mono: HashMap::new() }
    }

    fn power(&mut self, i: usize, k: u32) -> Poly3 {
        while self.powers[i].len() <= k as usize {
            let next = self.powers[i].last().unwrap().mul_trunc(&self.base[i], self.d);
            self.powers[i].push(next);
        }
        self.powers[i][k as usize].clone()
    }

    fn monomial(&mut self, e: &Exp) -> Poly3 {
        if let Some(m) = self.mono.get(e) {
            return m.clone();
        }
        let xy = if e[1] == 0 {
            self.power(0, e[0])
        } else {
            let key = [e[0], e[1], 0];
            match self.mono.get(&key) {
                Some(m) => m.clone(),
                None => {
                    let m = self.power(0, e[0]).mul_trunc(&self.power(1, e[1]), self.d);
                    self.mono.insert(key, m.clone());
                    m
                }
            }
        };
        let m = if e[2] == 0 { xy } else { xy.mul_trunc(&self.power(2, e[2]), self.d) };
        self.mono.insert(*e, m.clone());
        m
    }
}

/// Cached powers and monomials of three series, shared across evaluations.
pub struct SeriesPowers<'a> {
    base: [&'a TruncSeries; 3],
    powers: [Vec<TruncSeries>; 3],
    mono: HashMap<Exp, TruncSeries>,
    trunc: u32,
}

impl<'a> SeriesPowers<'a> {
    pub fn new(base: [&'a TruncSeries; 3]) -> Self {
        let trunc = base.iter().map(|s| s.trunc()).min().unwrap();
        let one = || vec![TruncSeries::one(trunc)];
        SeriesPowers { base, powers: [one(), one(), one()], mono: HashMap::new(), trunc }
    }

    fn power(&mut self, i: usize, k: u32) -> TruncSeries {
        while self.powers[i].len() <= k as usize {
            let next = self.powers[i].last().unwrap() * self.base[i];
            self.powers[i].push(next);
        }
        self.powers[i][k as usize].clone()
    }

    /// The series of the monomial `x^a y^b z^c`.
    pub fn monomial(&mut self, e: &Exp) -> TruncSeries {
        if let Some(m) = self.mono.get(e) {
            return m.clone();
        }
        let m = if *e == [0, 0, 0] {
            TruncSeries::one(self.trunc)
        } else if e[2] > 0 {
            &self.monomial(&[e[0], e[1], 0]) * &self.power(2, e[2])
        } else if e[1] > 0 {
            &self.monomial(&[e[0], 0, 0]) * &self.power(1, e[1])
        } else {
            self.power(0, e[0])
        };
        self.mono.insert(*e, m.clone());
        m
    }

    pub fn eval(&mut self, p: &Poly3) -> TruncSeries {
        let mut acc: Option<TruncSeries> = None;
        for (e, c) in p.terms() {
            let term = self.monomial(e).scale(c);
            acc = Some(match acc {
                None => term,
                Some(a) => &a + &term,
            });
        }
        acc.unwrap_or_else(|| TruncSeries::zero(self.trunc))
    }
}

impl fmt::Display for Poly3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut sorted: Vec<_> = self.terms.iter().collect();
        sorted.sort_by_key(|(e, _)| (total(e), std::cmp::Reverse(**e)));
        for (i, (e, c)) in sorted.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({c})")?;
            for (v, k) in ["x", "y", "z"].iter().zip(e.iter()) {
                match k {
                    0 => {}
                    1 => write!(f, "{v}")?,
                    _ => write!(f, "{v}^{k}")?,
                }
            }
        }
        Ok(())
    }
}

/// A polynomial map of 3-space truncated at total degree `degree`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PolyJet3 {
    degree: u32,
    comps: [Poly3; 3],
}

pub type Matrix3 = [[Rational; 3]; 3];

impl PolyJet3 {
    /// Fails when a component has a term of degree above `degree`.
    pub fn new(degree: u32, comps: [Poly3; 3]) -> Result<Self> {
        for p in &comps {
            if p.degree().map_or(false, |d| d > degree) {
                return Err(Error::InvalidInput(format!("jet term exceeds degree {degree}")));
            }
        }
        Ok(PolyJet3 { degree, comps })
    }

    /// Builds a jet and discards terms above `degree`.
    pub fn truncated(degree: u32, comps: [Poly3; 3]) -> Self {
        PolyJet3 { degree, comps: comps.map(|p| p.truncate(degree)) }
    }

    pub fn identity(degree: u32) -> Self {
        PolyJet3 { degree, comps: [Poly3::var(0), Poly3::var(1), Poly3::var(2)] }
    }

    /// `(a x, b y, c z)`.
    pub fn scaling(f: &[Rational; 3], degree: u32) -> Self {
        PolyJet3 {
            degree,
            comps: [0, 1, 2].map(|i| Poly3::monomial(unit(i), f[i].clone())),
        }
    }

    pub fn from_linear(m: &Matrix3, degree: u32) -> Self {
        let comps = [0, 1, 2].map(|i| Poly3::from_terms((0..3).map(|j| (unit(j), m[i][j].clone()))));
        PolyJet3 { degree, comps }
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn comps(&self) -> &[Poly3; 3] {
        &self.comps
    }

    pub fn comp(&self, i: usize) -> &Poly3 {
        &self.comps[i]
    }

    pub fn with_degree(&self, degree: u32) -> Self {
        Self::truncated(degree, self.comps.clone())
    }

    /// Row `i` holds the coefficients of x, y, z in component `i`.
    pub fn linear_matrix(&self) -> Matrix3 {
        [0, 1, 2].map(|i| self.comps[i].linear_part())
    }

    pub fn constant_terms(&self) -> [Rational; 3] {
        [0, 1, 2].map(|i| self.comps[i].coeff(&[0, 0, 0]))
    }

    /// `self ∘ inner`, truncated at the larger of the two degrees.
    pub fn compose(&self, inner: &PolyJet3) -> PolyJet3 {
        let d = self.degree.max(inner.degree);
        let mut cache = PolyPowers::new(&inner.comps, d);
        let comps = [0, 1, 2].map(|i| {
            let mut out = Poly3::zero();
            for (e, c) in self.comps[i].terms() {
                for (em, cm) in cache.monomial(e).terms() {
                    out.add_term(*em, cm * c);
                }
            }
            out
        });
        PolyJet3 { degree: d, comps }
    }

    /// Component-wise substitution of a curve.
    pub fn eval_on_curve(&self, c: &CurveGerm) -> Result<CurveGerm> {
        let mut cache = SeriesPowers::new(c.comps_ref());
        let [x, y, z] = [0, 1, 2].map(|i| cache.eval(&self.comps[i]));
        CurveGerm::new(x, y, z)
    }

    /// Inverse jet up to `self.degree`; requires an invertible linear part.
    pub fn inverse(&self) -> Result<PolyJet3> {
        if self.constant_terms().iter().any(|c| !c.is_zero()) {
            return Err(Error::NotAGerm("jet does not fix the origin".into()));
        }
        let linv = inverse3(&self.linear_matrix())
            .ok_or_else(|| Error::Degenerate("linear part is singular".into()))?;
        let d = self.degree;
        let nonlinear: [Poly3; 3] = [0, 1, 2].map(|i| {
            Poly3::from_terms(self.comps[i].terms().filter(|(e, _)| total(e) >= 2).map(|(e, c)| (*e, c.clone())))
        });
        let nl = PolyJet3 { degree: d, comps: nonlinear };
        let apply_linv = |p: &[Poly3; 3]| -> [Poly3; 3] {
            [0, 1, 2].map(|i| {
                (0..3).fold(Poly3::zero(), |acc, j| acc.add(&p[j].scale(&linv[i][j])))
            })
        };
        let id = [Poly3::var(0), Poly3::var(1), Poly3::var(2)];
        let mut psi = PolyJet3 { degree: d, comps: apply_linv(&id) };
        for _ in 1..d {
            let n_psi = nl.compose(&psi);
            let rhs = [0, 1, 2].map(|i| id[i].sub(&n_psi.comps[i]));
            psi = PolyJet3 { degree: d, comps: apply_linv(&rhs) };
        }
        Ok(psi)
    }
}

fn unit(i: usize) -> Exp {
    let mut e = [0; 3];
    e[i] = 1;
    e
}

pub fn det3(m: &Matrix3) -> Rational {
    &m[0][0] * (&m[1][1] * &m[2][2] - &m[1][2] * &m[2][1]) - &m[0][1] * (&m[1][0] * &m[2][2] - &m[1][2] * &m[2][0])
        + &m[0][2] * (&m[1][0] * &m[2][1] - &m[1][1] * &m[2][0])
}

pub fn inverse3(m: &Matrix3) -> Option<Matrix3> {
    let det = det3(m);
    if det.is_zero() {
        return None;
    }
    let cof = |r0: usize, r1: usize, c0: usize, c1: usize| &m[r0][c0] * &m[r1][c1] - &m[r0][c1] * &m[r1][c0];
    let adj = [
        [cof(1, 2, 1, 2), -cof(0, 2, 1, 2), cof(0, 1, 1, 2)],
        [-cof(1, 2, 0, 2), cof(0, 2, 0, 2), -cof(0, 1, 0, 2)],
        [cof(1, 2, 0, 1), -cof(0, 2, 0, 1), cof(0, 1, 0, 1)],
    ];
    Some(adj.map(|row| row.map(|a| a / &det)))
}

/// `f ∘ g` for jets.
pub fn jet_compose(f: &PolyJet3, g: &PolyJet3) -> PolyJet3 {
    f.compose(g)
}

/// Substitutes a curve into a jet.
pub fn jet_eval_on_curve(f: &PolyJet3, c: &CurveGerm) -> Result<CurveGerm> {
    f.eval_on_curve(c)
}
