//! RVT classes of the first four levels and their orbit counts, with the evidence the
//! engine can produce for each count.

mod rvvv;

pub use rvvv::{rvvv_closed_form, verify_rvvv_split, RvvvReport};

use std::fmt;

use num_traits::Zero;

use crate::algebra::{qi, CurveGerm, Rational};
use crate::error::{Error, Result};
use crate::invariants::semigroup;
use crate::normalize::CATALOG;
use crate::tower::{realize_point_with, regular_direction, rvt_code, Direction, Letter, RealizeOptions, RvtWord, TowerPoint};

/// Highest level covered by the census.
pub const MAX_LEVEL: usize = 4;

/// Truncation used when realizing and checking representatives.
pub const CENSUS_TRUNC: u32 = 40;

/// Letters that may follow `letter` in a word of length at most four.
pub fn class_successors(letter: Letter) -> Result<Vec<Letter>> {
    use Letter::*;
    match letter {
        R => Ok(vec![R, V]),
        V | T => Ok(vec![R, V, T, L]),
        L => Ok(vec![R, V, T1, T2, L1, L2, L3]),
        other => Err(Error::Unsupported(format!("successors of {other} lie beyond level 4"))),
    }
}

/// All RVT classes at `level`, in the order generated by the successor rule.
pub fn enumerate_classes(level: usize) -> Result<Vec<RvtWord>> {
    if level == 0 || level > MAX_LEVEL {
        return Err(Error::Unsupported(format!("class enumeration is available for levels 1..={MAX_LEVEL}")));
    }
    let mut words = vec![RvtWord::new(vec![Letter::R])];
    for _ in 1..level {
        let mut next = Vec::new();
        for w in &words {
            for l in class_successors(w.last().unwrap())? {
                next.push(w.with(l));
            }
        }
        words = next;
    }
    Ok(words)
}

const TWO_ORBIT_LEVEL_FOUR: [&str; 8] = ["RRVT", "RVRV", "RVVR", "RVVV", "RVVT", "RVTR", "RVTV", "RVTL"];

/// Number of orbits in a class (levels 1 to 4).
pub fn orbit_count(code: &RvtWord) -> Result<u32> {
    let s = code.to_string();
    match code.len() {
        1..=3 => {
            if !CATALOG.iter().any(|(c, _)| *c == s) {
                return Err(Error::InvalidInput(format!("{s} is not an RVT class")));
            }
            Ok(if s == "RVT" { 2 } else { 1 })
        }
        4 => {
            if !enumerate_classes(4)?.contains(code) {
                return Err(Error::InvalidInput(format!("{s} is not an RVT class")));
            }
            Ok(if s == "RVTT" {
                4
            } else if TWO_ORBIT_LEVEL_FOUR.contains(&s.as_str()) {
                2
            } else {
                1
            })
        }
        _ => Err(Error::Unsupported(format!("orbit counts are available up to level {MAX_LEVEL}"))),
    }
}

/// Representative curves of a class, with a note when there are none.
#[derive(Clone, Debug)]
pub struct Representatives {
    pub curves: Vec<CurveGerm>,
    pub note: Option<String>,
}

/// `(t², t^(2k+1), 0)`.
pub fn a2k_curve(k: u32, trunc: u32) -> CurveGerm {
    CurveGerm::monomial([Some(2), Some(2 * k + 1), None], trunc)
}

/// Catalog normal forms for levels ≤ 3; `A_{2k}` curves for `RᵏVRᵐ` words; the two
/// level-3 normal forms for `RVVR`; realized curves for the two `RVVV` orbits.
pub fn representatives(code: &RvtWord, trunc: u32) -> Result<Representatives> {
    let s = code.to_string();
    let found = |curves: Vec<CurveGerm>| Ok(Representatives { curves, note: None });
    if code.len() <= 3 {
        let forms = crate::normalize::catalog_forms(code, trunc);
        if forms.is_empty() {
            return Err(Error::InvalidInput(format!("{s} is not an RVT class")));
        }
        return found(forms);
    }
    let letters = code.letters();
    let vs: Vec<usize> = letters.iter().enumerate().filter(|(_, l)| **l != Letter::R).map(|(i, _)| i).collect();
    if letters.iter().all(|l| matches!(l, Letter::R | Letter::V)) && vs.len() <= 1 {
        // the first V sits at position k; the curve with this code is A_{2k}
        return found(match vs.first() {
            None => vec![CurveGerm::monomial([Some(1), None, None], trunc)],
            Some(&i) => vec![a2k_curve(i as u32, trunc)],
        });
    }
    match s.as_str() {
        "RVVR" => found(vec![
            CurveGerm::monomial([Some(3), Some(5), Some(7)], trunc),
            CurveGerm::monomial([Some(3), Some(5), None], trunc),
        ]),
        "RVVV" => {
            let (a, b) = rvvv::representative_curves(trunc)?;
            found(vec![a, b])
        }
        _ => Ok(Representatives {
            curves: vec![],
            note: Some(format!("no normal form is listed for {s}; a realized point stands in")),
        }),
    }
}

fn cross(a: &Direction, b: &Direction) -> Direction {
    [&a[1] * &b[2] - &a[2] * &b[1], &a[2] * &b[0] - &a[0] * &b[2], &a[0] * &b[1] - &a[1] * &b[0]]
}

/// A direction at `p` carrying `letter`: small integer vectors first, then the lines where
/// critical planes meet and the spans of single planes.
pub fn direction_for_letter(p: &TowerPoint, letter: Letter) -> Result<Direction> {
    if letter == Letter::R {
        return Ok(regular_direction(p));
    }
    let mut cands: Vec<Direction> = Vec::new();
    let range = [0i64, 1, -1, 2];
    for a in range {
        for b in range {
            for c in range {
                cands.push([qi(a), qi(b), qi(c)]);
            }
        }
    }
    cands.sort_by_key(|v| {
        let support = v.iter().filter(|x| !x.is_zero()).count();
        let size = v.iter().map(|x| x.numer().magnitude().clone()).max();
        (support, size, v.iter().position(|x| !x.is_zero()))
    });
    let arr = p.arrangement();
    for (i, h) in arr.iter().enumerate() {
        for g in &arr[i + 1..] {
            cands.push(cross(&h.normal, &g.normal));
        }
        let [u, v] = h.span();
        cands.push([&u[0] + &v[0], &u[1] + &v[1], &u[2] + &v[2]]);
        cands.push(u);
        cands.push(v);
    }
    cands
        .into_iter()
        .filter(|v| v.iter().any(|x| !x.is_zero()))
        .find(|v| p.classify(v).ok() == Some(letter))
        .ok_or_else(|| Error::Unsupported(format!("no {letter} direction at {p}")))
}

/// The point reached from the origin by following `code` letter by letter.
pub fn point_for_word(code: &RvtWord) -> Result<TowerPoint> {
    let mut p = TowerPoint::origin();
    for &l in code.letters() {
        let ell = direction_for_letter(&p, l)?;
        p = p.extend(&ell)?;
    }
    Ok(p)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Tier {
    /// The engine demonstrates the count's lower bound and every membership.
    ToolVerified,
    /// The count is taken from the classification theorem; the engine only checks membership.
    PaperAsserted,
}

impl Tier {
    pub fn as_str(self) -> &'static str {
        match self {
            Tier::ToolVerified => "verified-by-tool",
            Tier::PaperAsserted => "paper-asserted",
        }
    }
}

impl fmt::Display for Tier {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Evidence {
    /// A representative was prolonged and classified into the class.
    Membership { representative: String },
    /// Distinct representatives meet in one point.
    Merge { detail: String },
    /// Representatives told apart by a computed quantity.
    Separation { invariant: String, detail: String },
    /// The isotropy fiber computation over the parent class.
    FiberComputation { detail: String },
    /// A count that rests on the classification theorem.
    Citation { statement: String },
}

impl Evidence {
    pub fn kind(&self) -> &'static str {
        match self {
            Evidence::Membership { .. } => "membership-check",
            Evidence::Merge { .. } => "merge-certificate",
            Evidence::Separation { .. } => "separation-invariant",
            Evidence::FiberComputation { .. } => "fiber-computation",
            Evidence::Citation { .. } => "paper-citation",
        }
    }

    pub fn detail(&self) -> String {
        match self {
            Evidence::Membership { representative } => representative.clone(),
            Evidence::Merge { detail } | Evidence::FiberComputation { detail } => detail.clone(),
            Evidence::Separation { invariant, detail } => format!("{invariant}: {detail}"),
            Evidence::Citation { statement } => statement.clone(),
        }
    }
}

#[derive(Clone, Debug)]
pub struct ClassRecord {
    pub code: RvtWord,
    pub orbit_count: u32,
    pub representatives: Vec<CurveGerm>,
    pub points: Vec<TowerPoint>,
    pub evidence: Vec<Evidence>,
    pub tier: Tier,
    pub note: Option<String>,
}

#[derive(Clone, Debug)]
pub struct Census {
    pub level: usize,
    pub records: Vec<ClassRecord>,
    pub total: u32,
}

fn classify_curve(c: &CurveGerm, level: usize) -> Result<RvtWord> {
    rvt_code(c, level)
}

fn membership(c: &CurveGerm, code: &RvtWord) -> Result<Evidence> {
    let got = classify_curve(c, code.len())?;
    if got != *code {
        return Err(Error::Verification(format!("{c} has code {got}, expected {code}")));
    }
    Ok(Evidence::Membership { representative: c.truncate(12).to_string() })
}

fn semigroup_separation(a: &CurveGerm, b: &CurveGerm) -> Result<Option<Evidence>> {
    let bound = 20.min(a.trunc()).min(b.trunc());
    let (sa, sb) = (semigroup(a, bound)?, semigroup(b, bound)?);
    Ok((sa.gaps != sb.gaps).then(|| Evidence::Separation {
        invariant: "semigroup".into(),
        detail: format!("{} vs {}", sa.notation(), sb.notation()),
    }))
}

fn realize(p: &TowerPoint) -> Result<CurveGerm> {
    realize_point_with(p, &RealizeOptions { trunc: CENSUS_TRUNC, ..Default::default() })
}

fn record(code: RvtWord, seed: u64) -> Result<ClassRecord> {
    let count = orbit_count(&code)?;
    let reps = representatives(&code, CENSUS_TRUNC)?;
    let mut evidence = Vec::new();
    for c in &reps.curves {
        evidence.push(membership(c, &code)?);
    }
    let point = point_for_word(&code)?;
    let realized = realize(&point)?;
    evidence.push(membership(&realized, &code)?);
    let mut points = vec![point];
    let mut note = reps.note.clone();
    let s = code.to_string();
    let mut tier = if count == 1 { Tier::ToolVerified } else { Tier::PaperAsserted };
    match s.as_str() {
        "RVV" => {
            let pts: Vec<TowerPoint> =
                reps.curves.iter().map(|c| crate::tower::prolong_curve(c, 3).and_then(|pr| pr.point())).collect::<Result<_>>()?;
            if pts[0] != pts[1] {
                return Err(Error::Verification("the two RVV normal forms reach different points".into()));
            }
            evidence.push(Evidence::Merge { detail: "(t³,t⁵,t⁷) and (t³,t⁵,0) reach the same level-3 point".into() });
            note = Some("one orbit with two listed normal forms; they separate one level up, in RVVR".into());
        }
        "RVT" => {
            if let Some(e) = semigroup_separation(&reps.curves[0], &reps.curves[1])? {
                evidence.push(e);
                tier = Tier::ToolVerified;
            }
        }
        "RVVR" => {
            let pts: Vec<TowerPoint> =
                reps.curves.iter().map(|c| crate::tower::prolong_curve(c, 4).and_then(|pr| pr.point())).collect::<Result<_>>()?;
            if pts[0] == pts[1] {
                return Err(Error::Verification("the two RVVR representatives reach the same point".into()));
            }
            if let Some(e) = semigroup_separation(&reps.curves[0], &reps.curves[1])? {
                evidence.push(e);
            }
            note = Some("the two RVV normal forms reach different level-4 points here".into());
        }
        "RVVV" => {
            let report = verify_rvvv_split(seed)?;
            if !report.passed {
                return Err(Error::Verification(report.summary));
            }
            evidence.push(Evidence::FiberComputation { detail: report.summary.clone() });
            points.extend(report.points.clone());
            tier = Tier::ToolVerified;
        }
        _ => {}
    }
    if tier == Tier::PaperAsserted {
        evidence.push(Evidence::Citation {
            statement: format!("{s} consists of {count} orbits by the level-{} classification theorem", code.len()),
        });
    }
    Ok(ClassRecord { code, orbit_count: count, representatives: reps.curves, points, evidence, tier, note })
}

/// Census of the RVT classes at `level` with per-class counts and evidence.
pub fn orbit_census(level: usize, seed: u64) -> Result<Census> {
    let records: Vec<ClassRecord> = enumerate_classes(level)?.into_iter().map(|w| record(w, seed)).collect::<Result<_>>()?;
    let total = records.iter().map(|r| r.orbit_count).sum();
    Ok(Census { level, records, total })
}

/// Aligned text table: code, orbit count, normal forms, evidence tier.
pub fn census_table(c: &Census) -> String {
    let forms = |r: &ClassRecord| -> String {
        if r.representatives.is_empty() {
            "-".into()
        } else {
            r.representatives.iter().map(short_curve).collect::<Vec<_>>().join(", ")
        }
    };
    let rows: Vec<[String; 4]> = c
        .records
        .iter()
        .map(|r| [r.code.to_string(), r.orbit_count.to_string(), forms(r), r.tier.to_string()])
        .collect();
    let head = ["code".to_string(), "orbits".into(), "normal forms".into(), "evidence".into()];
    let width = |i: usize| rows.iter().map(|r| r[i].chars().count()).chain([head[i].len()]).max().unwrap();
    let w = [width(0), width(1), width(2), width(3)];
    let line = |r: &[String; 4]| {
        format!("{:<w0$}  {:>w1$}  {:<w2$}  {}", r[0], r[1], r[2], r[3], w0 = w[0], w1 = w[1], w2 = w[2]).trim_end().to_string()
    };
    let mut out = vec![line(&head)];
    out.extend(rows.iter().map(line));
    out.push(format!("total {}", c.total));
    out.join("\n") + "\n"
}

/// `(t^a, t^b + …, 0)` with every term and no truncation marker.
pub fn short_curve(c: &CurveGerm) -> String {
    let comp = |i: usize| -> String {
        let s = c.comp(i);
        if s.is_zero() {
            return "0".into();
        }
        s.terms()
            .map(|(d, a)| {
                let mono = if d == 1 { "t".to_string() } else { format!("t^{d}") };
                if *a == Rational::from_integer(1.into()) {
                    mono
                } else {
                    format!("{a}{mono}")
                }
            })
            .collect::<Vec<_>>()
            .join(" + ")
    };
    format!("({}, {}, {})", comp(0), comp(1), comp(2))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn words(level: usize) -> Vec<String> {
        enumerate_classes(level).unwrap().iter().map(ToString::to_string).collect()
    }

    #[test]
    fn successor_rule() {
        assert_eq!(class_successors(Letter::R).unwrap(), vec![Letter::R, Letter::V]);
        assert_eq!(class_successors(Letter::V).unwrap().len(), 4);
        assert_eq!(class_successors(Letter::L).unwrap().len(), 7);
        assert!(class_successors(Letter::T1).is_err());
    }

    #[test]
    fn class_lists() {
        assert_eq!(words(1), ["R"]);
        assert_eq!(words(2), ["RR", "RV"]);
        assert_eq!(words(3), ["RRR", "RRV", "RVR", "RVV", "RVT", "RVL"]);
        assert_eq!(words(4).len(), 23);
        assert!(enumerate_classes(5).is_err());
    }

    #[test]
    fn counts_sum_to_totals() {
        let totals: Vec<u32> =
            (1..=4).map(|l| enumerate_classes(l).unwrap().iter().map(|w| orbit_count(w).unwrap()).sum()).collect();
        assert_eq!(totals, [1, 2, 7, 34]);
    }

    #[test]
    fn letters_found_where_available() {
        let p = point_for_word(&"RVL".parse().unwrap()).unwrap();
        for l in [Letter::R, Letter::V, Letter::T1, Letter::T2, Letter::L1, Letter::L2, Letter::L3] {
            assert_eq!(p.classify(&direction_for_letter(&p, l).unwrap()).unwrap(), l);
        }
        assert!(direction_for_letter(&p, Letter::T).is_err());
    }

    #[test]
    fn a2k_representatives() {
        for (w, k) in [("RRRV", 3), ("RRVR", 2), ("RVRR", 1)] {
            let r = representatives(&w.parse().unwrap(), 30).unwrap();
            assert_eq!(r.curves, vec![a2k_curve(k, 30)]);
            assert_eq!(rvt_code(&r.curves[0], 4).unwrap().to_string(), w);
        }
        let r = representatives(&"RVTT".parse().unwrap(), 30).unwrap();
        assert!(r.curves.is_empty() && r.note.is_some());
    }

    #[test]
    fn table_has_total_line() {
        let c = orbit_census(3, 0).unwrap();
        let t = census_table(&c);
        assert!(t.ends_with("total 7\n"));
        assert!(t.contains("RVT"));
    }
}
