//! Exact rational helpers and the textual literal format ("p/q" or "p").

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

/// The rational `n/d`. Panics when `d == 0`.
pub fn q(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// The integer `n` as a rational.
pub fn qi(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Parses a decimal-free rational literal: `"p/q"` or `"p"`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let bad = || Error::Parse(format!("malformed rational literal {s:?}"));
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n, d),
        None => (s, "1"),
    };
    let digits_ok = |t: &str| {
        let t = t.strip_prefix('-').unwrap_or(t);
        !t.is_empty() && t.bytes().all(|b| b.is_ascii_digit())
    };
    if !digits_ok(num) || !digits_ok(den) {
        return Err(bad());
    }
    let n: BigInt = num.parse().map_err(|_| bad())?;
    let d: BigInt = den.parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(Error::Parse(format!("zero denominator in {s:?}")));
    }
    Ok(Rational::new(n, d))
}

/// Formats in lowest terms with a positive denominator; integers omit "/1".
pub fn format_rational(r: &Rational) -> String {
    r.to_string()
}

/// Rational `k`-th root of `r` when one exists.
pub fn rational_root(r: &Rational, k: u32) -> Option<Rational> {
    if k == 0 {
        return None;
    }
    if r.is_negative() {
        if k % 2 == 0 {
            return None;
        }
        return rational_root(&-r, k).map(|x| -x);
    }
    let n = r.numer().nth_root(k);
    let d = r.denom().nth_root(k);
    let cand = Rational::new(n, d);
    if num_traits::pow(cand.clone(), k as usize) == *r {
        Some(cand)
    } else {
        None
    }
}

/// Splits `|r|` as `root^k * rest` with `root` the largest `k`-th power part
/// found by trial division over small primes.
pub fn power_part(r: &Rational, k: u32) -> (Rational, Rational) {
    let (rn, rest_n) = int_power_part(&r.numer().abs(), k);
    let (rd, rest_d) = int_power_part(r.denom(), k);
    (
        Rational::new(rn, rd),
        Rational::new(rest_n, rest_d),
    )
}

fn int_power_part(n: &BigInt, k: u32) -> (BigInt, BigInt) {
    let mut rest = n.clone();
    let mut root = BigInt::one();
    if k == 1 {
        return (rest, root);
    }
    if rest.is_zero() {
        return (root, rest);
    }
    let mut p = BigInt::from(2);
    let limit = BigInt::from(100_000);
    while p <= limit && &p * &p <= rest {
        let pk = num_traits::pow(p.clone(), k as usize);
        while (&rest % &pk).is_zero() {
            rest /= &pk;
            root *= &p;
        }
        p += 1;
    }
    let s = rest.nth_root(k);
    if num_traits::pow(s.clone(), k as usize) == rest {
        root *= &s;
        rest = BigInt::one();
    }
    (root, rest)
}
