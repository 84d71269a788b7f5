//! The fixed acceptance checks behind `mt verify --suite paper`.
//!
//! Each check returns a one-line detail on success and an error describing the first
//! mismatch otherwise.

use std::time::{Duration, Instant};

use num_traits::{One, Zero};

use crate::algebra::{q, qi, CurveGerm, Rational, TruncSeries};
use crate::census::{enumerate_classes, orbit_census, point_for_word, representatives, verify_rvvv_split, Tier};
use crate::diffeo::{isotropy_check, prolong_apply, prolong_apply_with, stage_point, taylor_constraints, DiffeoJet, JetSampler, Stage};
use crate::error::{Error, Result};
use crate::invariants::{planarity, semigroup, DEFAULT_PLANARITY_DEGREE, DEFAULT_PLANARITY_ORDER};
use crate::normalize::{catalog_forms, equivalence_search, reduce_catalog, Budget, EquivalenceVerdict, Move, CATALOG};
use crate::tower::{prolong_curve, rvt_code, Letter, RealizeOptions, RvtWord, TowerPoint};

pub struct Check {
    pub id: u32,
    pub name: &'static str,
    run: fn(u64) -> Result<String>,
}

#[derive(Clone, Debug)]
pub struct Outcome {
    pub id: u32,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
    pub elapsed: Duration,
}

impl Check {
    pub fn run(&self, seed: u64) -> Outcome {
        let start = Instant::now();
        let res = (self.run)(seed);
        let elapsed = start.elapsed();
        let (passed, detail) = match res {
            Ok(d) => (true, d),
            Err(e) => (false, e.to_string()),
        };
        Outcome { id: self.id, name: self.name, passed, detail, elapsed }
    }
}

impl Outcome {
    pub fn line(&self) -> String {
        let mark = if self.passed { "PASS" } else { "FAIL" };
        format!("[{mark}] {:>2} {}: {}", self.id, self.name, self.detail)
    }
}

pub const CHECKS: [Check; 12] = [
    Check { id: 1, name: "cusp prolongation", run: cusp_prolongation },
    Check { id: 2, name: "catalog membership", run: catalog_membership },
    Check { id: 3, name: "semigroups", run: semigroups },
    Check { id: 4, name: "class enumeration", run: class_enumeration },
    Check { id: 5, name: "orbit census", run: orbit_counts },
    Check { id: 6, name: "zariski certificates", run: zariski_certificates },
    Check { id: 7, name: "normal-form pipeline", run: normal_form_pipeline },
    Check { id: 8, name: "planarity", run: planarity_checks },
    Check { id: 9, name: "hyperplane geometry", run: hyperplane_geometry },
    Check { id: 10, name: "isotropy constraints", run: isotropy_constraints },
    Check { id: 11, name: "rvvv split", run: rvvv_split },
    Check { id: 12, name: "property suites", run: property_suites },
];

/// Runs every check in order.
pub fn run_all(seed: u64) -> Vec<Outcome> {
    CHECKS.iter().map(|c| c.run(seed)).collect()
}

pub fn check(id: u32) -> Option<&'static Check> {
    CHECKS.iter().find(|c| c.id == id)
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::Verification(msg()))
    }
}

fn word(s: &str) -> RvtWord {
    s.parse().expect("fixed words parse")
}

fn cusp_prolongation(_: u64) -> Result<String> {
    let cusp = CurveGerm::monomial([Some(2), Some(3), None], 32);
    let pr = prolong_curve(&cusp, 1)?;
    let (u, v) = pr.fiber_series(1);
    let expected = TruncSeries::monomial(q(3, 2), 1, u.trunc());
    ensure(u.agrees(&expected) && v.is_zero(), || format!("got u = {u}, v = {v}"))?;
    Ok("(u, v) = (3/2 t, 0)".into())
}

fn catalog_membership(_: u64) -> Result<String> {
    let mut n = 0;
    for (code, _) in CATALOG {
        let w = word(code);
        for c in catalog_forms(&w, 32) {
            let got = rvt_code(&c, w.len())?;
            ensure(got == w, || format!("{c} has code {got}, expected {w}"))?;
            n += 1;
        }
    }
    Ok(format!("{n} normal forms land in their classes"))
}

fn semigroups(_: u64) -> Result<String> {
    let gaps = |c: &CurveGerm, bound: u32| semigroup(c, bound).map(|s| s.gaps);
    let space = CurveGerm::monomial([Some(3), Some(5), Some(7)], 30);
    let plane = CurveGerm::monomial([Some(3), Some(5), None], 30);
    ensure(gaps(&space, 20)? == [1, 2, 4], || "gaps of (t³,t⁵,t⁷)".into())?;
    ensure(gaps(&plane, 20)? == [1, 2, 4, 7], || "gaps of (t³,t⁵,0)".into())?;
    let reps = representatives(&word("RVVV"), 40)?;
    let [flat, bent] = &reps.curves[..] else {
        return Err(Error::Verification("RVVV needs two representatives".into()));
    };
    let (gf, gb) = (gaps(flat, 23)?, gaps(bent, 23)?);
    ensure(gb == [1, 2, 3, 4, 6, 7, 9, 12, 14, 17], || format!("RVVV curve with a z term has gaps {gb:?}"))?;
    ensure(gf == [1, 2, 3, 4, 6, 7, 9, 11, 12, 14, 17, 19, 22], || format!("planar RVVV curve has gaps {gf:?}"))?;
    Ok("(3,5,7): {1,2,4}; (3,5): {1,2,4,7}; both RVVV gap patterns to 23".into())
}

fn class_enumeration(_: u64) -> Result<String> {
    let counts: Vec<usize> = (1..=4).map(|l| enumerate_classes(l).map(|v| v.len())).collect::<Result<_>>()?;
    ensure(counts == [1, 2, 6, 23], || format!("counts {counts:?}"))?;
    let four: Vec<String> = enumerate_classes(4)?.iter().map(ToString::to_string).collect();
    let listed = "RRRR RRRV RRVR RRVV RRVT RRVL RVRR RVRV RVVR RVVV RVVT RVVL RVTR RVTV RVTT RVTL RVLR RVLV RVLT1 RVLT2 RVLL1 RVLL2 RVLL3";
    ensure(four.join(" ") == listed, || format!("level 4 list {four:?}"))?;
    Ok("1/2/6/23 classes".into())
}

fn orbit_counts(seed: u64) -> Result<String> {
    let mut totals = Vec::new();
    for level in 1..=4 {
        let c = orbit_census(level, seed)?;
        ensure(c.records.iter().all(|r| !r.evidence.is_empty()), || format!("missing evidence at level {level}"))?;
        totals.push(c.total);
        if level == 4 {
            let by = |n: u32| c.records.iter().filter(|r| r.orbit_count == n).map(|r| r.code.to_string()).collect::<Vec<_>>();
            ensure(by(1).len() == 14, || format!("single-orbit classes {:?}", by(1)))?;
            ensure(
                by(2) == ["RRVT", "RVRV", "RVVR", "RVVV", "RVVT", "RVTR", "RVTV", "RVTL"],
                || format!("two-orbit classes {:?}", by(2)),
            )?;
            ensure(by(4) == ["RVTT"], || format!("four-orbit classes {:?}", by(4)))?;
            let rvvv = c.records.iter().find(|r| r.code == word("RVVV")).unwrap();
            ensure(rvvv.tier == Tier::ToolVerified, || "RVVV is not tool-verified".into())?;
        }
    }
    ensure(totals == [1, 2, 7, 34], || format!("totals {totals:?}"))?;
    Ok("totals 1/2/7/34".into())
}

fn zariski_certificates(_: u64) -> Result<String> {
    let target = CurveGerm::monomial([Some(3), Some(5), None], 32);
    for b in [1, -1] {
        let c = CurveGerm::from_terms([&[(3, qi(1))], &[(5, qi(1)), (7, qi(b))], &[]], 32)?;
        let EquivalenceVerdict::Equivalent(cert) = equivalence_search(&c, &target, &Budget::default())? else {
            return Err(Error::Verification(format!("no certificate for b = {b}")));
        };
        let image = cert.phi.eval_on_curve(&c.reparametrize(&cert.tau)?)?;
        ensure(cert.trunc == 32 && image.agrees_to(&target, 32), || format!("certificate for b = {b} does not replay"))?;
    }
    Ok("(t³, t⁵ ± t⁷, 0) certified equivalent to (t³, t⁵, 0) to order 32".into())
}

fn normal_form_pipeline(_: u64) -> Result<String> {
    let c = CurveGerm::from_terms([&[(3, qi(1)), (4, qi(1))], &[(5, qi(1))], &[(7, qi(1))]], 32)?;
    let m = reduce_catalog(&c)?;
    let target = CurveGerm::monomial([Some(3), Some(5), Some(7)], 32);
    ensure(m.normal_form.agrees(&target), || format!("normal form {}", m.normal_form))?;
    ensure(matches!(m.trace.steps.first().map(|s| &s.mv), Some(Move::Reparametrize(_))), || {
        "the reduction does not open with a reparametrization".into()
    })?;
    ensure(m.trace.replay(&c)?.agrees(&target), || "trace does not replay".into())?;
    let s0 = semigroup(&c, 20)?.gaps;
    for step in &m.trace.steps {
        ensure(semigroup(&step.after, 20)?.gaps == s0, || format!("{} changed the semigroup", step.mv.name()))?;
    }
    Ok(format!("(t³+t⁴, t⁵, t⁷) reduced to (t³, t⁵, t⁷) in {} steps", m.trace.len()))
}

fn planarity_checks(_: u64) -> Result<String> {
    let (d, o) = (DEFAULT_PLANARITY_DEGREE, DEFAULT_PLANARITY_ORDER);
    let check = |e: [Option<u32>; 3]| planarity(&CurveGerm::monomial(e, o), d, o).is_planar();
    ensure(check([Some(3), Some(5), Some(7)]) == Some(false), || "(t³,t⁵,t⁷) not obstructed".into())?;
    ensure(check([Some(3), Some(5), None]) == Some(true), || "(t³,t⁵,0) has no witness".into())?;
    ensure(check([Some(2), Some(3), Some(4)]) == Some(true), || "(t²,t³,t⁴) has no witness".into())?;
    Ok(format!("obstruction and witnesses at degree {d}, order {o}"))
}

fn hyperplane_geometry(_: u64) -> Result<String> {
    let count = |w: &str| point_for_word(&word(w)).map(|p| p.arrangement().len());
    for (w, n) in [("R", 1), ("RV", 2), ("RVT", 2), ("RVL", 3)] {
        let got = count(w)?;
        ensure(got == n, || format!("{w} carries {got} critical planes"))?;
    }
    let p3 = point_for_word(&word("RVL"))?;
    let chart: Vec<usize> = p3.chart().iter().map(|c| c.index()).collect();
    ensure(chart == [0, 1, 2], || format!("RVL point in chart {chart:?}"))?;
    let arr = p3.arrangement();
    let find = |birth: u32| arr.iter().find(|h| h.birth == birth && !h.is_vertical());
    let (d12, d21) = (find(2), find(1));
    let e = |i: usize| {
        let mut v = [Rational::zero(), Rational::zero(), Rational::zero()];
        v[i] = Rational::one();
        v
    };
    ensure(d12.map(|h| h.normal == e(1) && h.age == 1) == Some(true), || format!("δ¹₂ is {d12:?}"))?;
    ensure(d21.map(|h| h.normal == e(2) && h.age == 2) == Some(true), || format!("δ²₁ is {d21:?}"))?;
    Ok("1/2/3 planes; δ¹₂ = span{∂v₂, ∂v₃}, δ²₁ = span{∂v₂, ∂u₃}".into())
}

fn perturbed(sampler: &mut JetSampler, stage: Stage, component: usize, e: [u32; 3]) -> Result<DiffeoJet> {
    let jet = sampler.constrained_jet(3, &taylor_constraints(stage)).into_jet();
    let mut comps = jet.comps().clone();
    comps[component].add_term(e, sampler.nonzero_rational());
    DiffeoJet::new(crate::algebra::PolyJet3::truncated(jet.degree(), comps))
}

fn isotropy_constraints(seed: u64) -> Result<String> {
    let mut sampler = JetSampler::new(seed);
    for (stage, e, name) in [(Stage::G2, [0, 1, 0], "φ³_y"), (Stage::G3, [2, 0, 0], "φ³_xx")] {
        let p = stage_point(stage);
        for i in 0..20 {
            let phi = perturbed(&mut sampler, stage, 2, e)?;
            ensure(!isotropy_check(&phi, &p)?, || format!("jet {i} with {name}(0) ≠ 0 fixes the point"))?;
        }
        let phi = sampler.constrained_jet(3, &taylor_constraints(stage));
        ensure(isotropy_check(&phi, &p)?, || format!("constrained jet moves the {stage:?} point"))?;
    }
    Ok("20 + 20 perturbed jets move their points".into())
}

fn rvvv_split(seed: u64) -> Result<String> {
    let report = verify_rvvv_split(seed)?;
    ensure(report.passed, || report.summary.clone())?;
    Ok(report.summary)
}

fn random_point(sampler: &mut JetSampler) -> Result<TowerPoint> {
    let codes = ["R", "RR", "RV", "RRV", "RVR", "RVV", "RVT", "RVL"];
    let mut p = point_for_word(&word(codes[sampler.index(codes.len())]))?;
    let ell = [Rational::one(), sampler.rational(), sampler.rational()];
    if p.classify(&ell)? == Letter::R {
        p = p.extend(&ell)?;
    }
    Ok(p)
}

fn alternative_options(p: &TowerPoint, sampler: &mut JetSampler) -> Result<RealizeOptions> {
    for _ in 0..50 {
        let w = [Rational::one(), sampler.rational(), sampler.rational()];
        if p.classify(&w)? == Letter::R {
            let bend = vec![[sampler.rational(), sampler.rational(), sampler.rational()]];
            return Ok(RealizeOptions { direction: Some(w), bend, ..Default::default() });
        }
    }
    Err(Error::Verification(format!("no regular direction sampled at {p}")))
}

fn property_suites(seed: u64) -> Result<String> {
    let mut sampler = JetSampler::new(seed);

    // (a) the image point does not depend on the realizing curve
    for i in 0..50 {
        let p = random_point(&mut sampler)?;
        let phi = sampler.jet(3);
        let opts = alternative_options(&p, &mut sampler)?;
        let (a, b) = (prolong_apply(&phi, &p)?, prolong_apply_with(&phi, &p, &opts)?);
        ensure(a == b, || format!("trial {i}: realizations of {p} disagree"))?;
    }

    // (b) codes and semigroups survive random coordinate changes and reparametrizations
    let mut transformed = 0;
    for (code, _) in CATALOG {
        let w = word(code);
        for c in catalog_forms(&w, 24) {
            let s0 = semigroup(&c, 14)?.gaps;
            for _ in 0..20 {
                let phi = sampler.jet(3);
                let tau = sampler.reparametrization(24);
                let d = phi.apply(&c.reparametrize(&tau)?)?;
                ensure(rvt_code(&d, w.len())? == w, || format!("code of {c} changed"))?;
                ensure(semigroup(&d, 14)?.gaps == s0, || format!("semigroup of {c} changed"))?;
                transformed += 1;
            }
        }
    }

    // (c) the prolonged action respects composition
    for i in 0..10 {
        let p = random_point(&mut sampler)?;
        let (f, g) = (sampler.jet(3), sampler.jet(3));
        let lhs = prolong_apply(&f.compose(&g), &p)?;
        let rhs = prolong_apply(&f, &prolong_apply(&g, &p)?)?;
        ensure(lhs == rhs, || format!("trial {i}: composition at {p}"))?;
    }

    // (d) projections of prolongations are prolongations of lower levels
    for (code, _) in CATALOG {
        let w = word(code);
        for c in catalog_forms(&w, 32) {
            let top = prolong_curve(&c, w.len())?.point()?;
            for j in 0..w.len() {
                ensure(top.project(j) == prolong_curve(&c, j)?.point()?, || format!("{c} at level {j}"))?;
            }
            let ell = [Rational::one(), qi(2), qi(-1)];
            if top.classify(&ell)? == Letter::R {
                ensure(top.extend(&ell)?.project(w.len()) == top, || format!("extending {top}"))?;
            }
        }
    }
    Ok(format!("50 realizations, {transformed} transformed curves, 10 compositions, projections"))
}
