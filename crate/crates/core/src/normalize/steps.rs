//! Individual reduction moves: monomialization, term elimination, gap steps, scaling.

use num_traits::{One, Signed, Zero};

use super::trace::{Move, ReductionTrace};
use crate::algebra::poly::Exp;
use crate::algebra::rational::power_part;
use crate::algebra::{CurveGerm, Poly3, PolyJet3, Rational, TruncSeries};
use crate::error::{Error, Result};
use crate::invariants::semigroup::{monomial_echelon, monomials_by_order};

/// Orders of the three components, with `trunc + 1` for zero components.
fn orders(c: &CurveGerm) -> [u32; 3] {
    [0, 1, 2].map(|i| c.comp(i).ord_bound())
}

/// Reorders components by increasing order (stable; zero components last).
pub fn sort_components(c: &CurveGerm) -> Result<(CurveGerm, ReductionTrace)> {
    let ords = orders(c);
    let mut perm = [0usize, 1, 2];
    perm.sort_by_key(|&i| ords[i]);
    let mut trace = ReductionTrace::new();
    if perm == [0, 1, 2] {
        return Ok((c.clone(), trace));
    }
    let jet = PolyJet3::truncated(1, perm.map(Poly3::var));
    let out = trace.record(Move::CoordinateChange(jet), c)?;
    Ok((out, trace))
}

/// Scales each nonzero component so that its leading coefficient is 1.
fn unit_leads(c: &CurveGerm, trace: &mut ReductionTrace) -> Result<CurveGerm> {
    let f = [0, 1, 2].map(|i| c.comp(i).leading().map_or_else(Rational::one, |(_, a)| a.recip()));
    if f.iter().all(One::is_one) {
        return Ok(c.clone());
    }
    trace.record(Move::Scale(f), c)
}

fn x_order(c: &CurveGerm) -> Result<u32> {
    c.x().ord().ok_or_else(|| Error::InvalidInput("x-component vanishes".into()))
}

/// Reparametrizes so that `x = t^m` exactly up to truncation, after scaling its leading
/// coefficient to 1.
pub fn monomialize_first(c: &CurveGerm) -> Result<(CurveGerm, ReductionTrace)> {
    let m = x_order(c)?;
    let mut trace = ReductionTrace::new();
    let mut cur = c.clone();
    let lead = cur.x().leading().unwrap().1.clone();
    if !lead.is_one() {
        cur = trace.record(Move::Scale([lead.recip(), Rational::one(), Rational::one()]), &cur)?;
    }
    if cur.x().terms().count() == 1 {
        return Ok((cur, trace));
    }
    // x = t^m U with U(0) = 1; with s = t U^(1/m) we have x = s^m, so t = s^(-1)(T)
    let r = cur.x().shift_down(m)?.unit_root(m)?;
    let tau = r.shift_up(1).param_inverse()?;
    let out = trace.record(Move::Reparametrize(tau), &cur)?;
    Ok((out, trace))
}

/// One leading-term reparametrization `t = T(1 - (α/m) T^r)` removing the first non-leading
/// term `α t^(m+r)` of `x = t^m + …`. Returns `None` when `x` is already a monomial.
pub fn leading_term_step(c: &CurveGerm) -> Result<Option<(CurveGerm, ReductionTrace)>> {
    let m = x_order(c)?;
    if !c.x().coeff(m).map_or(false, One::is_one) {
        return Err(Error::InvalidInput("x-component must have leading coefficient 1".into()));
    }
    let Some((e, alpha)) = c.x().terms().find(|(d, _)| *d > m) else {
        return Ok(None);
    };
    let r = e - m;
    let n = c.trunc();
    let tau = TruncSeries::from_terms([(1, Rational::one()), (r + 1, -alpha / Rational::from_integer(m.into()))], n);
    let mut trace = ReductionTrace::new();
    let out = trace.record(Move::Reparametrize(tau), c)?;
    Ok(Some((out, trace)))
}

/// A term that term elimination could not remove.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Leftover {
    pub component: usize,
    pub exponent: u32,
}

/// Linear monomials usable when reducing component `i`: every other component except
/// those of equal order listed later, so the lowest-order component keeps its lead.
fn allowed(i: usize, ords: [u32; 3]) -> impl Fn(&Exp) -> bool {
    move |e: &Exp| {
        let deg: u32 = e.iter().sum();
        if deg >= 2 {
            return true;
        }
        let j = e.iter().position(|&k| k == 1).unwrap();
        j != i && !(ords[j] == ords[i] && j > i)
    }
}

/// Removes from component `i` every term expressible as the order of some function of the
/// curve, by a single coordinate change `x_i ↦ x_i - Q(x, y, z)`.
fn kill_component(c: &CurveGerm, i: usize, trace: &mut ReductionTrace) -> Result<CurveGerm> {
    let Some(oi) = c.comp(i).ord() else {
        return Ok(c.clone());
    };
    let n = c.trunc();
    let ords = orders(c);
    let monomials = monomials_by_order(ords, n, allowed(i, ords));
    let ech = monomial_echelon(c, &monomials, n);
    let mut r: Vec<Rational> = c.comp(i).truncate(n).dense().to_vec();
    let mut weights = Vec::new();
    for e in oi as usize..=n as usize {
        if r[e].is_zero() {
            continue;
        }
        if let Some(row) = ech.row_with_lead(e) {
            let a = &r[e] / &row[e];
            for k in e..r.len() {
                if !row[k].is_zero() {
                    let d = &a * &row[k];
                    r[k] -= d;
                }
            }
            weights.push((e, a));
        }
    }
    if weights.is_empty() {
        return Ok(c.clone());
    }
    let q = Poly3::from_terms(ech.expand(&weights).into_iter().map(|(s, a)| (monomials[s], a)));
    let degree = q.degree().unwrap_or(1).max(1);
    let mut comps = [Poly3::var(0), Poly3::var(1), Poly3::var(2)];
    comps[i] = Poly3::var(i).sub(&q);
    let out = trace.record(Move::CoordinateChange(PolyJet3::new(degree, comps)?), c)?;
    debug_assert_eq!(out.comp(i).truncate(n).dense(), &r[..]);
    Ok(out)
}

/// Non-leading terms of every component, by increasing exponent then component.
pub fn tail_terms(c: &CurveGerm) -> Vec<Leftover> {
    let mut out: Vec<Leftover> = Vec::new();
    for i in 0..3 {
        if let Some(o) = c.comp(i).ord() {
            out.extend(c.comp(i).terms().filter(|(d, _)| *d > o).map(|(d, _)| Leftover { component: i, exponent: d }));
        }
    }
    out.sort_by_key(|l| (l.exponent, l.component));
    out
}

/// Removes every term lying in the value semigroup of the curve by coordinate changes.
///
/// Components are processed in order x, y, z, each by one triangular solve in increasing
/// exponent, and the passes repeat until nothing changes. Surviving non-leading terms are
/// returned as leftovers.
pub fn kill_semigroup_terms(c: &CurveGerm) -> Result<(CurveGerm, ReductionTrace, Vec<Leftover>)> {
    let mut trace = ReductionTrace::new();
    let mut cur = c.clone();
    for _ in 0..4 {
        let before = trace.len();
        for i in 0..3 {
            cur = kill_component(&cur, i, &mut trace)?;
        }
        if trace.len() == before {
            break;
        }
    }
    let leftovers = tail_terms(&cur);
    Ok((cur, trace, leftovers))
}

/// Alternates term elimination with leading-term steps until `x` is a monomial.
pub fn clean_first(c: &CurveGerm) -> Result<(CurveGerm, ReductionTrace)> {
    let mut trace = ReductionTrace::new();
    let mut cur = c.clone();
    for _ in 0..=c.trunc() {
        let (k, t, _) = kill_semigroup_terms(&cur)?;
        trace.extend(t);
        match leading_term_step(&k)? {
            Some((next, t)) => {
                trace.extend(t);
                cur = next;
            }
            None => return Ok((k, trace)),
        }
    }
    Err(Error::trunc("leading-term steps did not terminate within the truncation"))
}

/// Result of a gap-elimination attempt.
#[derive(Clone, Debug)]
pub enum GapStep {
    Applied { curve: CurveGerm, trace: ReductionTrace, exponent: u32 },
    NoGapTerms,
    NotApplicable { exponent: u32, reason: String },
}

fn require_monomial_x(c: &CurveGerm) -> Result<u32> {
    let n = x_order(c)?;
    if c.x().terms().count() != 1 || !c.x().coeff(n).unwrap().is_one() {
        return Err(Error::InvalidInput("x-component must be exactly t^n".into()));
    }
    Ok(n)
}

/// Zariski's elimination for a planar curve `x = tⁿ`, `y = ℓtᵐ + b tᵛ + …` where `ν` is the
/// smallest exponent of `y` outside the semigroup and `ν + n = (j+1)m`: the change
/// `x ↦ x + a yʲ` followed by the reparametrization making `x` a monomial again removes
/// the `tᵛ` term.
pub fn zariski_step(c: &CurveGerm) -> Result<GapStep> {
    if !c.z().is_zero() {
        return Err(Error::InvalidInput("zariski_step needs a planar curve with z = 0".into()));
    }
    require_monomial_x(c)?;
    let Some(m) = c.y().ord() else {
        return Ok(GapStep::NoGapTerms);
    };
    let s = crate::invariants::semigroup(c, c.trunc())?;
    match c.y().terms().find(|(d, _)| *d > m && !s.contains(*d)) {
        Some((nu, _)) => zariski_at(c, nu),
        None => Ok(GapStep::NoGapTerms),
    }
}

/// Zariski step at the lowest non-leading term of `y`, assumed to be a gap.
pub(crate) fn zariski_at_lowest(c: &CurveGerm) -> Result<GapStep> {
    let m = c.y().ord().unwrap_or(0);
    match c.y().terms().find(|(d, _)| *d > m) {
        Some((nu, _)) => zariski_at(c, nu),
        None => Ok(GapStep::NoGapTerms),
    }
}

fn zariski_at(c: &CurveGerm, nu: u32) -> Result<GapStep> {
    let n = require_monomial_x(c)?;
    let (m, lead) = c.y().leading().map(|(d, l)| (d, l.clone())).unwrap();
    let b = c.y().coeff(nu).cloned().unwrap_or_else(Rational::zero);
    if m <= n || (nu + n) % m != 0 || (nu + n) / m < 2 {
        return Ok(GapStep::NotApplicable {
            exponent: nu,
            reason: format!("{nu} + {n} is not a multiple (j+1)·{m} with j ≥ 1"),
        });
    }
    let j = (nu + n) / m - 1;
    // x' = x + a y^j gives t = τ(1 - (a ℓ^j / n) τ^(jm-n) + …), hence a = b n / (m ℓ^(j+1))
    let a = &b * Rational::from_integer(n.into()) / (Rational::from_integer(m.into()) * num_traits::pow(lead, j as usize + 1));
    let mut comps = [Poly3::var(0), Poly3::var(1), Poly3::var(2)];
    comps[0].add_term([0, j, 0], a);
    let mut trace = ReductionTrace::new();
    let shifted = trace.record(Move::CoordinateChange(PolyJet3::new(j.max(1), comps)?), c)?;
    let (curve, t) = monomialize_first(&shifted)?;
    trace.extend(t);
    Ok(GapStep::Applied { curve, trace, exponent: nu })
}

/// Space-curve analogue of the Zariski step: with `x = tⁿ` and the lowest surviving
/// non-leading term `b tᵛ` sitting in a component with leading term `ℓ tᵐ`, the
/// reparametrization `t = T(1 - b/(ℓm) T^(ν-m))` cancels it. Lower-order side effects
/// are left for the caller to eliminate.
pub fn gap_reparametrization(c: &CurveGerm) -> Result<GapStep> {
    require_monomial_x(c)?;
    let Some(l) = tail_terms(c).into_iter().find(|l| l.component > 0) else {
        return Ok(GapStep::NoGapTerms);
    };
    let comp = c.comp(l.component);
    let (m, lead) = comp.leading().unwrap();
    let b = comp.coeff(l.exponent).unwrap();
    let coef = -(b / (lead * Rational::from_integer(m.into())));
    let tau = TruncSeries::from_terms([(1, Rational::one()), (l.exponent - m + 1, coef)], c.trunc());
    let mut trace = ReductionTrace::new();
    let curve = trace.record(Move::Reparametrize(tau), c)?;
    Ok(GapStep::Applied { curve, trace, exponent: l.exponent })
}

/// Sets leading coefficients to 1 and normalizes the first non-leading term by an exact
/// rational `t ↦ λt`: its coefficient becomes its square-free (power-free) class, positive
/// whenever the exponent gap is odd.
pub fn scale_normalize(c: &CurveGerm) -> Result<(CurveGerm, ReductionTrace)> {
    let mut trace = ReductionTrace::new();
    let mut cur = unit_leads(c, &mut trace)?;
    let Some(l) = tail_terms(&cur).into_iter().next() else {
        return Ok((cur, trace));
    };
    let n = cur.comp(l.component).ord().unwrap();
    let beta = cur.comp(l.component).coeff(l.exponent).unwrap().clone();
    let d = l.exponent - n;
    let (root, _) = power_part(&beta, d);
    let mut lambda = root.recip();
    if d % 2 == 1 && beta.is_negative() {
        lambda = -lambda;
    }
    if lambda.is_one() {
        return Ok((cur, trace));
    }
    cur = trace.record(Move::Reparametrize(TruncSeries::monomial(lambda, 1, cur.trunc())), &cur)?;
    cur = unit_leads(&cur, &mut trace)?;
    Ok((cur, trace))
}

/// Scales only the x-component's leading coefficient to 1.
pub(crate) fn unit_lead_x(c: &CurveGerm, trace: &mut ReductionTrace) -> Result<CurveGerm> {
    let lead = c.x().leading().ok_or_else(|| Error::InvalidInput("x-component vanishes".into()))?.1.clone();
    if lead.is_one() {
        return Ok(c.clone());
    }
    trace.record(Move::Scale([lead.recip(), Rational::one(), Rational::one()]), c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{q, qi};
    use crate::invariants::semigroup;

    fn curve(x: &[(u32, i64)], y: &[(u32, i64)], z: &[(u32, i64)], n: u32) -> CurveGerm {
        let f = |v: &[(u32, i64)]| v.iter().map(|&(d, c)| (d, qi(c))).collect::<Vec<_>>();
        CurveGerm::from_terms([&f(x), &f(y), &f(z)], n).unwrap()
    }

    fn mono(e: [Option<u32>; 3], n: u32) -> CurveGerm {
        CurveGerm::monomial(e, n)
    }

    #[test]
    fn first_leading_step_matches_hand_expansion() {
        // t = T(1 - T/3) turns t^3 + t^4 into T^3 + O(T^5)
        let c = curve(&[(3, 1), (4, 1)], &[(5, 1)], &[(7, 1)], 20);
        let (out, trace) = leading_term_step(&c).unwrap().unwrap();
        assert_eq!(trace.len(), 1);
        assert_eq!(out.x().coeff(4), Some(&qi(0)));
        assert_eq!(out.x().coeff(5), Some(&qi(-1)));
        let (full, _) = monomialize_first(&c).unwrap();
        assert_eq!(full.x(), &TruncSeries::monomial(qi(1), 3, 20));
    }

    #[test]
    fn two_leading_steps_leave_order_eight_remainder() {
        // x = t^3 + t^4 + t^7: the second step T = S(1 - α'/3 S^4) leaves S^3 + O(S^8)
        let c = curve(&[(3, 1), (4, 1), (7, 1)], &[(5, 1), (7, 1)], &[], 24);
        let (a, _) = leading_term_step(&c).unwrap().unwrap();
        let (k, _, _) = kill_semigroup_terms(&a).unwrap();
        let (b, _) = leading_term_step(&k).unwrap().unwrap();
        assert!(b.x().terms().all(|(d, _)| d == 3 || d >= 8), "{b}");
        let (full, _) = monomialize_first(&c).unwrap();
        assert_eq!(full.x().terms().count(), 1);
    }

    #[test]
    fn monomial_input_untouched() {
        let c = mono([Some(3), Some(5), None], 20);
        let (out, trace) = monomialize_first(&c).unwrap();
        assert!(trace.is_empty());
        assert_eq!(out, c);
        assert!(monomialize_first(&mono([None, Some(2), None], 10)).is_err());
    }

    #[test]
    fn kill_uses_product_witness() {
        let c = curve(&[(3, 1), (8, 1)], &[(5, 1)], &[(7, 1)], 30);
        let (out, trace, left) = kill_semigroup_terms(&c).unwrap();
        assert!(left.is_empty());
        assert!(out.agrees(&mono([Some(3), Some(5), Some(7)], 30)));
        assert_eq!(trace.replay(&c).unwrap(), out);
        // oracle: x ↦ x - xy removes t^8, leaving only terms of order 13 and up
        let jet = PolyJet3::new(2, [Poly3::var(0).sub(&Poly3::monomial([1, 1, 0], qi(1))), Poly3::var(1), Poly3::var(2)]).unwrap();
        assert!(c.apply(&jet).unwrap().agrees_to(&out, 12));
    }

    #[test]
    fn kill_uses_cube_witness() {
        let c = curve(&[(3, 1)], &[(5, 1)], &[(7, 1), (9, 1)], 30);
        let (out, _, _) = kill_semigroup_terms(&c).unwrap();
        let jet = PolyJet3::new(3, [Poly3::var(0), Poly3::var(1), Poly3::var(2).sub(&Poly3::monomial([3, 0, 0], qi(1)))]).unwrap();
        assert!(c.apply(&jet).unwrap().agrees(&out));
        assert!(out.agrees(&mono([Some(3), Some(5), Some(7)], 30)));
    }

    #[test]
    fn kill_reports_gap_terms() {
        let c = curve(&[(3, 1)], &[(5, 1), (7, 1)], &[], 30);
        let (out, trace, left) = kill_semigroup_terms(&c).unwrap();
        assert!(trace.is_empty());
        assert_eq!(out, c);
        assert_eq!(left, vec![Leftover { component: 1, exponent: 7 }]);
    }

    #[test]
    fn zariski_examples() {
        for b in [1, -1] {
            let c = curve(&[(3, 1)], &[(5, 1), (7, b)], &[], 32);
            let GapStep::Applied { curve: out, trace, exponent } = zariski_step(&c).unwrap() else {
                panic!("not applied")
            };
            assert_eq!(exponent, 7);
            // first move is x ↦ x + (3b/5) y
            let Move::CoordinateChange(j) = &trace.steps[0].mv else { panic!() };
            assert_eq!(j.comp(0).coeff(&[0, 1, 0]), q(3 * b, 5));
            assert_eq!(out.x(), &TruncSeries::monomial(qi(1), 3, 32));
            assert!(out.y().terms().all(|(d, _)| d == 5 || d >= 8), "{out}");
            assert_eq!(trace.replay(&c).unwrap(), out);
        }
        let c = mono([Some(3), Some(5), None], 20);
        assert!(matches!(zariski_step(&c).unwrap(), GapStep::NoGapTerms));
        // 8 + 3 is not a multiple of 5
        let c = curve(&[(3, 1)], &[(5, 1), (8, 1)], &[], 30);
        assert!(matches!(zariski_at_lowest(&c).unwrap(), GapStep::NotApplicable { exponent: 8, .. }));
    }

    #[test]
    fn scale_examples() {
        let c = curve(&[(3, 2)], &[(5, 5)], &[], 20);
        let (out, _) = scale_normalize(&c).unwrap();
        assert_eq!(out, mono([Some(3), Some(5), None], 20));
        for (beta, sign) in [(4, 1), (-9, -1), (-16, -1)] {
            let c = curve(&[(3, 1)], &[(5, 1), (7, beta)], &[], 20);
            let (out, trace) = scale_normalize(&c).unwrap();
            assert_eq!(out.y().coeff(7), Some(&qi(sign)));
            assert_eq!(trace.replay(&c).unwrap(), out);
        }
        let c = curve(&[(3, 1)], &[(5, 1), (7, 2)], &[], 20);
        assert!(scale_normalize(&c).unwrap().1.is_empty());
        let c = curve(&[(3, 1)], &[(5, 1), (7, 1)], &[], 20);
        assert!(scale_normalize(&c).unwrap().1.is_empty());
    }

    #[test]
    fn rational_beta_square_class() {
        let c = CurveGerm::from_terms([&[(3, qi(1))], &[(5, qi(1)), (7, q(-8, 9))], &[]], 20).unwrap();
        let (out, _) = scale_normalize(&c).unwrap();
        assert_eq!(out.y().coeff(7), Some(&qi(-2)));
    }

    #[test]
    fn steps_preserve_semigroup() {
        let c = curve(&[(3, 1), (4, 1)], &[(5, 1)], &[(7, 1)], 30);
        let s = semigroup(&c, 20).unwrap();
        let (_, trace) = clean_first(&c).unwrap();
        for step in &trace.steps {
            assert_eq!(semigroup(&step.after, 20).unwrap().gaps, s.gaps);
        }
    }
}
