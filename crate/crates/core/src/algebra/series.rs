//! Univariate truncated power series with exact rational coefficients.
//!
//! A series carries a truncation `N`: coefficients of degree `0..=N` are known,
//! everything above is unknown (not zero). Every operation returns a result whose
//! truncation is the degree up to which it is actually determined.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::rational::{qi, Rational};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TruncSeries {
    // dense, len = trunc + 1
    coeffs: Vec<Rational>,
}

impl TruncSeries {
    /// Builds a series from dense coefficients `c_0..=c_N`; `N = coeffs.len() - 1`.
    pub fn from_dense(coeffs: Vec<Rational>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::trunc("series with no known coefficient"));
        }
        Ok(TruncSeries { coeffs })
    }

    /// Builds a series from `(degree, coefficient)` pairs. Terms above `trunc` are dropped.
    pub fn from_terms<I>(terms: I, trunc: u32) -> Self
    where
        I: IntoIterator<Item = (u32, Rational)>,
    {
        let mut s = Self::zero(trunc);
        for (d, c) in terms {
            if d <= trunc {
                s.coeffs[d as usize] += c;
            }
        }
        s
    }

    pub fn zero(trunc: u32) -> Self {
        TruncSeries { coeffs: vec![Rational::zero(); trunc as usize + 1] }
    }

    pub fn constant(c: Rational, trunc: u32) -> Self {
        let mut s = Self::zero(trunc);
        s.coeffs[0] = c;
        s
    }

    pub fn one(trunc: u32) -> Self {
        Self::constant(Rational::one(), trunc)
    }

    /// `c t^d`.
    pub fn monomial(c: Rational, d: u32, trunc: u32) -> Self {
        Self::from_terms([(d, c)], trunc)
    }

    /// The parameter `t` itself.
    pub fn variable(trunc: u32) -> Self {
        Self::monomial(Rational::one(), 1, trunc)
    }

    pub fn trunc(&self) -> u32 {
        (self.coeffs.len() - 1) as u32
    }

    /// Coefficient of `t^d`, or `None` when `d` exceeds the truncation.
    pub fn coeff(&self, d: u32) -> Option<&Rational> {
        self.coeffs.get(d as usize)
    }

    /// Coefficient of `t^d` for `d <= trunc`; zero above (callers must check truncation).
    fn c(&self, d: usize) -> &Rational {
        &self.coeffs[d]
    }

    pub fn dense(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Nonzero terms in increasing degree.
    pub fn terms(&self) -> impl Iterator<Item = (u32, &Rational)> {
        self.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(d, c)| (d as u32, c))
    }

    /// Smallest degree with a nonzero coefficient; `None` when zero up to truncation.
    pub fn ord(&self) -> Option<u32> {
        self.coeffs.iter().position(|c| !c.is_zero()).map(|d| d as u32)
    }

    /// Lower bound for the true order: `ord` when known, `trunc + 1` otherwise.
    pub fn ord_bound(&self) -> u32 {
        self.ord().unwrap_or(self.trunc() + 1)
    }

    pub fn is_zero(&self) -> bool {
        self.ord().is_none()
    }

    /// Leading term `(degree, coefficient)`.
    pub fn leading(&self) -> Option<(u32, &Rational)> {
        self.terms().next()
    }

    /// Degree of the highest nonzero stored term.
    pub fn top_degree(&self) -> Option<u32> {
        self.coeffs.iter().rposition(|c| !c.is_zero()).map(|d| d as u32)
    }

    pub fn truncate(&self, n: u32) -> Self {
        let n = n.min(self.trunc()) as usize;
        TruncSeries { coeffs: self.coeffs[..=n].to_vec() }
    }

    /// Agreement of all coefficients of degree `<= n`; both series must know them.
    pub fn agrees_to(&self, other: &Self, n: u32) -> bool {
        n <= self.trunc() && n <= other.trunc() && self.coeffs[..=n as usize] == other.coeffs[..=n as usize]
    }

    /// Agreement up to the smaller of the two truncations.
    pub fn agrees(&self, other: &Self) -> bool {
        self.agrees_to(other, self.trunc().min(other.trunc()))
    }

    pub fn scale(&self, c: &Rational) -> Self {
        TruncSeries { coeffs: self.coeffs.iter().map(|a| a * c).collect() }
    }

    /// Multiplication by `t^k`.
    pub fn shift_up(&self, k: u32) -> Self {
        let mut coeffs = vec![Rational::zero(); k as usize];
        coeffs.extend(self.coeffs.iter().cloned());
        TruncSeries { coeffs }
    }

    /// Exact division by `t^k`; coefficients below `k` must vanish.
    pub fn shift_down(&self, k: u32) -> Result<Self> {
        if k > self.trunc() {
            return Err(Error::trunc(format!("cannot divide by t^{k} at truncation {}", self.trunc())));
        }
        if self.coeffs[..k as usize].iter().any(|c| !c.is_zero()) {
            return Err(Error::InvalidInput(format!("series not divisible by t^{k}")));
        }
        Ok(TruncSeries { coeffs: self.coeffs[k as usize..].to_vec() })
    }

    pub fn derivative(&self) -> Result<Self> {
        if self.trunc() == 0 {
            return Err(Error::trunc("derivative of a series known only at degree 0"));
        }
        let coeffs = (1..self.coeffs.len()).map(|d| &self.coeffs[d] * qi(d as i64)).collect();
        Ok(TruncSeries { coeffs })
    }

    /// Antiderivative with the given constant term.
    pub fn integral(&self, constant: Rational) -> Self {
        let mut coeffs = Vec::with_capacity(self.coeffs.len() + 1);
        coeffs.push(constant);
        for (d, c) in self.coeffs.iter().enumerate() {
            coeffs.push(c / qi(d as i64 + 1));
        }
        TruncSeries { coeffs }
    }

    fn mul_impl(&self, other: &Self) -> Self {
        let (ta, tb) = (self.trunc(), other.trunc());
        let (oa, ob) = (self.ord_bound(), other.ord_bound());
        let n = (ta + ob).min(tb + oa);
        let mut out = vec![Rational::zero(); n as usize + 1];
        let nz_a: Vec<usize> = (oa as usize..=(ta.min(n) as usize)).filter(|&i| !self.coeffs[i].is_zero()).collect();
        let nz_b: Vec<usize> = (ob as usize..=(tb.min(n) as usize)).filter(|&j| !other.coeffs[j].is_zero()).collect();
        for &i in &nz_a {
            for &j in &nz_b {
                if i + j > n as usize {
                    break;
                }
                out[i + j] += &self.coeffs[i] * &other.coeffs[j];
            }
        }
        TruncSeries { coeffs: out }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut result = Self::one(self.trunc());
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// Multiplicative inverse of a unit (nonzero constant term).
    pub fn inverse(&self) -> Result<Self> {
        let a0 = self.c(0);
        if a0.is_zero() {
            return Err(Error::InvalidInput("inverse of a non-unit series".into()));
        }
        let n = self.coeffs.len();
        let inv0 = a0.recip();
        let mut out: Vec<Rational> = Vec::with_capacity(n);
        out.push(inv0.clone());
        for k in 1..n {
            let mut acc = Rational::zero();
            for i in 1..=k {
                let a = self.c(i);
                if !a.is_zero() {
                    acc += a * &out[k - i];
                }
            }
            out.push(-(acc * &inv0));
        }
        Ok(TruncSeries { coeffs: out })
    }

    /// Quotient `self / other`, cancelling the common factor `t^ord(other)` first.
    pub fn ratio(&self, other: &Self) -> Result<Self> {
        let k = other
            .ord()
            .ok_or_else(|| Error::trunc("denominator series vanishes up to its truncation"))?;
        let num = self.shift_down(k)?;
        let den = other.shift_down(k)?;
        Ok(&num * &den.inverse()?)
    }

    /// Composition `self(inner(t))`; `inner` must vanish at 0.
    pub fn compose(&self, inner: &Self) -> Result<Self> {
        if !inner.c(0).is_zero() {
            return Err(Error::NotAGerm("inner series has a nonzero constant term".into()));
        }
        let (to, ti) = (self.trunc(), inner.trunc());
        let oi = inner.ord_bound();
        let cap = to.max(ti);
        if inner.ord() == Some(1) && inner.terms().count() == 1 && inner.c(1).is_one() {
            let low = self.terms().map(|(d, _)| d).find(|&d| d >= 1).unwrap_or(to + 1);
            return Ok(self.truncate(to.min(ti + low - 1)));
        }
        let mut acc = Self::constant(self.c(to as usize).clone(), cap);
        for i in (0..to as usize).rev() {
            acc = &acc * inner;
            acc.coeffs[0] += self.c(i);
        }
        let tail = ((to as u64 + 1) * oi as u64 - 1).min(u32::MAX as u64) as u32;
        Ok(acc.truncate(tail))
    }

    /// `s^(1/m)` for a unit with constant term 1.
    pub fn unit_root(&self, m: u32) -> Result<Self> {
        if m == 0 {
            return Err(Error::InvalidInput("zeroth root".into()));
        }
        if !self.c(0).is_one() {
            return Err(Error::InvalidInput("root of a series whose constant term is not 1".into()));
        }
        let alpha = Rational::new(1.into(), (m as i64).into());
        let n = self.coeffs.len();
        let mut p: Vec<Rational> = Vec::with_capacity(n);
        p.push(Rational::one());
        let alpha1 = &alpha + Rational::one();
        for k in 1..n {
            let mut acc = Rational::zero();
            for j in 1..=k {
                let s = self.c(j);
                if !s.is_zero() {
                    let w = &alpha1 * qi(j as i64) - qi(k as i64);
                    acc += w * s * &p[k - j];
                }
            }
            p.push(acc / qi(k as i64));
        }
        Ok(TruncSeries { coeffs: p })
    }

    /// Compositional inverse of a series of order exactly 1, by Newton iteration.
    pub fn param_inverse(&self) -> Result<Self> {
        if !self.c(0).is_zero() || self.coeff(1).map_or(true, |c| c.is_zero()) {
            return Err(Error::InvalidInput("compositional inverse requires order exactly 1".into()));
        }
        let n = self.trunc();
        let ds = self.derivative()?;
        let a1 = self.c(1).clone();
        let mut g = Self::monomial(a1.recip(), 1, 1);
        let mut prec = 1u32;
        while prec < n {
            let next = (2 * prec + 1).min(n);
            let gq = g.extend_to(next);
            let t = Self::variable(next);
            let f = &self.truncate(next).compose(&gq)? - &t;
            let d = ds.truncate(next).compose(&gq)?;
            let corr = &f * &d.inverse()?;
            g = (&gq - &corr).truncate(next);
            if g.trunc() < next {
                return Err(Error::trunc("reversion lost precision"));
            }
            prec = next;
        }
        Ok(g.truncate(n).extend_to(n))
    }

    /// Pads with zero coefficients up to `n`; only valid where the caller knows the
    /// padded coefficients (used for exact polynomial data).
    pub(crate) fn extend_to(&self, n: u32) -> Self {
        let mut coeffs = self.coeffs.clone();
        coeffs.resize(n.max(self.trunc()) as usize + 1, Rational::zero());
        TruncSeries { coeffs }
    }
}

impl Add for &TruncSeries {
    type Output = TruncSeries;
    fn add(self, other: &TruncSeries) -> TruncSeries {
        let n = self.trunc().min(other.trunc()) as usize;
        TruncSeries { coeffs: (0..=n).map(|d| &self.coeffs[d] + &other.coeffs[d]).collect() }
    }
}

impl Sub for &TruncSeries {
    type Output = TruncSeries;
    fn sub(self, other: &TruncSeries) -> TruncSeries {
        let n = self.trunc().min(other.trunc()) as usize;
        TruncSeries { coeffs: (0..=n).map(|d| &self.coeffs[d] - &other.coeffs[d]).collect() }
    }
}

impl Neg for &TruncSeries {
    type Output = TruncSeries;
    fn neg(self) -> TruncSeries {
        TruncSeries { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl Mul for &TruncSeries {
    type Output = TruncSeries;
    fn mul(self, other: &TruncSeries) -> TruncSeries {
        self.mul_impl(other)
    }
}

impl fmt::Display for TruncSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (d, c) in self.terms() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match d {
                0 => write!(f, "{c}")?,
                1 => write!(f, "({c})t")?,
                _ => write!(f, "({c})t^{d}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " + O(t^{})", self.trunc() + 1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::q;

    fn s(terms: &[(u32, Rational)], n: u32) -> TruncSeries {
        TruncSeries::from_terms(terms.iter().cloned(), n)
    }

    #[test]
    fn order() {
        assert_eq!(s(&[(3, qi(1)), (5, qi(1))], 20).ord(), Some(3));
        assert_eq!(TruncSeries::zero(20).ord(), None);
        assert_eq!(TruncSeries::zero(20).ord_bound(), 21);
    }

    #[test]
    fn product_square() {
        let a = s(&[(3, qi(1)), (4, qi(1))], 20);
        let p = &a * &a;
        // known up to 20 + 3
        assert_eq!(p, s(&[(6, qi(1)), (7, qi(2)), (8, qi(1))], 23));
        assert_eq!((&s(&[(2, qi(1))], 10) * &s(&[(3, qi(1))], 10)).ord(), Some(5));
    }

    #[test]
    fn product_truncation_rule() {
        // t^2 + O(t^6) times t^3 + O(t^10): known to min(5+3, 9+2) = 8
        let a = s(&[(2, qi(1))], 5);
        let b = s(&[(3, qi(1))], 9);
        assert_eq!((&a * &b).trunc(), 8);
    }

    #[test]
    fn compose_identity_and_truncation() {
        let a = s(&[(3, qi(1)), (4, q(2, 3)), (9, qi(-1))], 16);
        assert_eq!(a.compose(&TruncSeries::variable(16)).unwrap(), a);
        let inner = s(&[(1, qi(1)), (2, qi(1))], 16);
        assert_eq!(a.compose(&inner).unwrap().trunc(), 16);
        assert!(a.compose(&s(&[(0, qi(1)), (1, qi(1))], 16)).is_err());
    }

    #[test]
    fn paper_reparametrization_kills_quartic() {
        // x = t^3 + a t^4 with t = T(1 - a T / 3) gives T^3 + O(T^5)
        let a = q(7, 2);
        let x = s(&[(3, qi(1)), (4, a.clone())], 20);
        let tau = s(&[(1, qi(1)), (2, -&a / qi(3))], 20);
        let y = x.compose(&tau).unwrap();
        assert_eq!(y.coeff(3), Some(&qi(1)));
        assert_eq!(y.coeff(4), Some(&qi(0)));
        assert!(!y.coeff(5).unwrap().is_zero());
    }

    #[test]
    fn second_reparametrization_kills_septic() {
        // x = T^3 + b T^7 with T = S(1 - b S^4 / 3) gives S^3 + O(S^8)
        let b = q(-5, 4);
        let x = s(&[(3, qi(1)), (7, b.clone())], 24);
        let tau = s(&[(1, qi(1)), (5, -&b / qi(3))], 24);
        let y = x.compose(&tau).unwrap();
        assert_eq!(y.ord(), Some(3));
        assert!((4..8).all(|d| y.coeff(d).unwrap().is_zero()));
    }

    #[test]
    fn unit_root_binomial_oracle() {
        let one_plus_t = s(&[(0, qi(1)), (1, qi(1))], 10);
        let r = one_plus_t.unit_root(2).unwrap();
        // binomial(1/2, k)
        let mut c = qi(1);
        for k in 0..=10u32 {
            assert_eq!(r.coeff(k).unwrap(), &c, "degree {k}");
            c = c * (q(1, 2) - qi(k as i64)) / qi(k as i64 + 1);
        }
        assert_eq!(TruncSeries::one(5).unit_root(3).unwrap(), TruncSeries::one(5));
    }

    #[test]
    fn unit_root_cube_multiplies_back() {
        let u = s(&[(0, qi(1)), (2, q(3, 5))], 30);
        let r = u.unit_root(3).unwrap();
        assert_eq!(r.pow(3), u);
        assert!(s(&[(0, qi(2))], 4).unit_root(2).is_err());
    }

    /// Lagrange reversion: [t^n] g = (1/n) [t^{n-1}] (t / s)^n.
    fn lagrange_inverse(s: &TruncSeries) -> TruncSeries {
        let n = s.trunc();
        let h = s.shift_down(1).unwrap().inverse().unwrap();
        let mut out = TruncSeries::zero(n);
        let mut hp = TruncSeries::one(n - 1);
        let mut terms = vec![];
        for k in 1..=n {
            hp = &hp * &h.truncate(n - 1);
            terms.push((k, hp.coeff(k - 1).unwrap() / qi(k as i64)));
        }
        for (k, c) in terms {
            out = &out + &TruncSeries::monomial(c, k, n);
        }
        out
    }

    #[test]
    fn reversion_matches_lagrange() {
        let a = q(5, 7);
        let sr = s(&[(1, qi(1)), (2, -&a / qi(3))], 12);
        let g = sr.param_inverse().unwrap();
        assert_eq!(g.coeff(2), Some(&(&a / qi(3))));
        assert_eq!(g, lagrange_inverse(&sr));
        let sr = s(&[(1, qi(2)), (2, qi(1)), (3, q(-1, 3)), (7, qi(4))], 20);
        assert_eq!(sr.param_inverse().unwrap(), lagrange_inverse(&sr));
        assert_eq!(TruncSeries::variable(9).param_inverse().unwrap(), TruncSeries::variable(9));
        assert!(s(&[(2, qi(1))], 9).param_inverse().is_err());
    }

    #[test]
    fn ratio_cancels_common_power() {
        let num = s(&[(4, qi(5))], 10);
        let den = s(&[(2, qi(3))], 10);
        let r = num.ratio(&den).unwrap();
        assert_eq!(r.leading(), Some((2, &q(5, 3))));
        assert_eq!(r.trunc(), 8);
    }

    #[test]
    fn derivative_and_integral() {
        let a = s(&[(1, qi(1)), (3, q(1, 2))], 8);
        assert_eq!(a.derivative().unwrap(), s(&[(0, qi(1)), (2, q(3, 2))], 7));
        assert_eq!(a.derivative().unwrap().integral(qi(0)), a);
    }
}
