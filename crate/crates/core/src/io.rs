//! JSON documents for curves, points, jets, traces, certificates and census reports.
//!
//! Rationals are written as `"p/q"` in lowest terms (integers as `"p"`). Series are objects
//! keyed by degree and jets by `"i,j,k"`, both emitted in increasing order, zero terms omitted.

use std::collections::BTreeMap;

use num_traits::Zero;
use serde::de::DeserializeOwned;
use serde::ser::SerializeMap;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::algebra::poly::Exp;
use crate::algebra::rational::format_rational;
use crate::algebra::{parse_rational, CurveGerm, Poly3, PolyJet3, Rational, TruncSeries};
use crate::census::{Census, ClassRecord};
use crate::diffeo::DiffeoJet;
use crate::error::{Error, Result};
use crate::normalize::{Certificate, Move, ReductionTrace, TraceStep};
use crate::tower::{ChartStep, TowerPoint};

/// Nonzero series terms keyed by degree.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SeriesLit(pub Vec<(u32, Rational)>);

/// Nonzero polynomial terms keyed by exponent triple.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct JetLit(pub Vec<(Exp, Rational)>);

impl Serialize for SeriesLit {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut m = s.serialize_map(Some(self.0.len()))?;
        for (d, c) in &self.0 {
            m.serialize_entry(&d.to_string(), &format_rational(c))?;
        }
        m.end()
    }
}

impl<'de> Deserialize<'de> for SeriesLit {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let raw = BTreeMap::<String, String>::deserialize(d)?;
        let mut terms = Vec::with_capacity(raw.len());
        for (k, v) in raw {
            let deg: u32 = k.trim().parse().map_err(|_| D::Error::custom(format!("bad degree key {k:?}")))?;
            terms.push((deg, parse_rational(&v).map_err(D::Error::custom)?));
        }
        terms.sort_by_key(|t| t.0);
        Ok(SeriesLit(terms))
    }
}

fn exp_key(e: &Exp) -> String {
    format!("{},{},{}", e[0], e[1], e[2])
}

fn exp_order(e: &Exp) -> (u32, std::cmp::Reverse<Exp>) {
    (e.iter().sum(), std::cmp::Reverse(*e))
}

impl Serialize for JetLit {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut m = s.serialize_map(Some(self.0.len()))?;
        for (e, c) in &self.0 {
            m.serialize_entry(&exp_key(e), &format_rational(c))?;
        }
        m.end()
    }
}

impl<'de> Deserialize<'de> for JetLit {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let raw = BTreeMap::<String, String>::deserialize(d)?;
        let mut terms = Vec::with_capacity(raw.len());
        for (k, v) in raw {
            let parts: Vec<u32> = k.split(',').map(|p| p.trim().parse()).collect::<std::result::Result<_, _>>()
                .map_err(|_| D::Error::custom(format!("bad monomial key {k:?}")))?;
            let [a, b, c] = parts[..] else {
                return Err(D::Error::custom(format!("monomial key {k:?} needs three exponents")));
            };
            terms.push(([a, b, c], parse_rational(&v).map_err(D::Error::custom)?));
        }
        terms.sort_by_key(|t| exp_order(&t.0));
        Ok(JetLit(terms))
    }
}

impl From<&TruncSeries> for SeriesLit {
    fn from(s: &TruncSeries) -> Self {
        SeriesLit(s.terms().map(|(d, c)| (d, c.clone())).collect())
    }
}

impl SeriesLit {
    pub fn to_series(&self, trunc: u32) -> Result<TruncSeries> {
        if let Some((d, _)) = self.0.iter().find(|(d, c)| *d > trunc && !c.is_zero()) {
            return Err(Error::Parse(format!("term of degree {d} exceeds truncation {trunc}")));
        }
        Ok(TruncSeries::from_terms(self.0.iter().cloned(), trunc))
    }
}

impl From<&Poly3> for JetLit {
    fn from(p: &Poly3) -> Self {
        let mut terms: Vec<(Exp, Rational)> = p.terms().filter(|(_, c)| !c.is_zero()).map(|(e, c)| (*e, c.clone())).collect();
        terms.sort_by_key(|t| exp_order(&t.0));
        JetLit(terms)
    }
}

impl JetLit {
    pub fn to_poly(&self) -> Poly3 {
        Poly3::from_terms(self.0.iter().cloned())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CurveDoc {
    pub trunc: u32,
    pub x: SeriesLit,
    pub y: SeriesLit,
    pub z: SeriesLit,
}

impl From<&CurveGerm> for CurveDoc {
    fn from(c: &CurveGerm) -> Self {
        CurveDoc { trunc: c.trunc(), x: c.x().into(), y: c.y().into(), z: c.z().into() }
    }
}

impl CurveDoc {
    pub fn to_curve(&self) -> Result<CurveGerm> {
        let n = self.trunc;
        CurveGerm::new(self.x.to_series(n)?, self.y.to_series(n)?, self.z.to_series(n)?)
    }
}

/// A series together with its truncation order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SeriesDoc {
    pub trunc: u32,
    pub coeffs: SeriesLit,
}

impl From<&TruncSeries> for SeriesDoc {
    fn from(s: &TruncSeries) -> Self {
        SeriesDoc { trunc: s.trunc(), coeffs: s.into() }
    }
}

impl SeriesDoc {
    pub fn to_series(&self) -> Result<TruncSeries> {
        self.coeffs.to_series(self.trunc)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PointDoc {
    pub level: usize,
    pub chart: Vec<usize>,
    pub coords: Vec<String>,
}

impl From<&TowerPoint> for PointDoc {
    fn from(p: &TowerPoint) -> Self {
        PointDoc {
            level: p.level(),
            chart: p.chart().iter().map(|c| c.index()).collect(),
            coords: p.coords().iter().map(format_rational).collect(),
        }
    }
}

impl PointDoc {
    pub fn to_point(&self) -> Result<TowerPoint> {
        if self.chart.len() != self.level {
            return Err(Error::Parse(format!("level {} with {} chart entries", self.level, self.chart.len())));
        }
        let chart = self.chart.iter().map(|&i| ChartStep::new(i)).collect::<Result<_>>()?;
        let coords = self.coords.iter().map(|s| parse_rational(s)).collect::<Result<_>>()?;
        TowerPoint::new(chart, coords)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DiffeoDoc {
    pub degree: u32,
    pub phi1: JetLit,
    pub phi2: JetLit,
    pub phi3: JetLit,
}

impl From<&PolyJet3> for DiffeoDoc {
    fn from(j: &PolyJet3) -> Self {
        DiffeoDoc { degree: j.degree(), phi1: j.comp(0).into(), phi2: j.comp(1).into(), phi3: j.comp(2).into() }
    }
}

impl DiffeoDoc {
    pub fn to_jet(&self) -> Result<PolyJet3> {
        PolyJet3::new(self.degree, [self.phi1.to_poly(), self.phi2.to_poly(), self.phi3.to_poly()])
    }

    pub fn to_diffeo(&self) -> Result<DiffeoJet> {
        DiffeoJet::new(self.to_jet()?)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "move", rename_all = "kebab-case", deny_unknown_fields)]
pub enum MoveDoc {
    Reparametrize { tau: SeriesDoc },
    CoordinateChange { jet: DiffeoDoc },
    Scale { factors: [String; 3] },
}

impl From<&Move> for MoveDoc {
    fn from(m: &Move) -> Self {
        match m {
            Move::Reparametrize(t) => MoveDoc::Reparametrize { tau: t.into() },
            Move::CoordinateChange(j) => MoveDoc::CoordinateChange { jet: j.into() },
            Move::Scale(f) => MoveDoc::Scale { factors: f.clone().map(|c| format_rational(&c)) },
        }
    }
}

impl MoveDoc {
    pub fn to_move(&self) -> Result<Move> {
        Ok(match self {
            MoveDoc::Reparametrize { tau } => Move::Reparametrize(tau.to_series()?),
            MoveDoc::CoordinateChange { jet } => Move::CoordinateChange(jet.to_jet()?),
            MoveDoc::Scale { factors } => {
                let [a, b, c] = factors;
                Move::Scale([parse_rational(a)?, parse_rational(b)?, parse_rational(c)?])
            }
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StepDoc {
    #[serde(flatten)]
    pub mv: MoveDoc,
    pub before: CurveDoc,
    pub after: CurveDoc,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TraceDoc {
    pub input: CurveDoc,
    pub steps: Vec<StepDoc>,
}

impl TraceDoc {
    pub fn new(input: &CurveGerm, trace: &ReductionTrace) -> Self {
        let steps = trace
            .steps
            .iter()
            .map(|s| StepDoc { mv: (&s.mv).into(), before: (&s.before).into(), after: (&s.after).into() })
            .collect();
        TraceDoc { input: input.into(), steps }
    }

    pub fn to_trace(&self) -> Result<(CurveGerm, ReductionTrace)> {
        let steps = self
            .steps
            .iter()
            .map(|s| Ok(TraceStep { mv: s.mv.to_move()?, before: s.before.to_curve()?, after: s.after.to_curve()? }))
            .collect::<Result<_>>()?;
        Ok((self.input.to_curve()?, ReductionTrace { steps }))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CertificateDoc {
    pub trunc: u32,
    pub phi: DiffeoDoc,
    pub tau: SeriesDoc,
}

impl From<&Certificate> for CertificateDoc {
    fn from(c: &Certificate) -> Self {
        CertificateDoc { trunc: c.trunc, phi: (&c.phi).into(), tau: (&c.tau).into() }
    }
}

impl CertificateDoc {
    pub fn to_certificate(&self) -> Result<Certificate> {
        Ok(Certificate { phi: self.phi.to_jet()?, tau: self.tau.to_series()?, trunc: self.trunc })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EvidenceDoc {
    pub kind: String,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassDoc {
    pub code: String,
    pub orbits: u32,
    pub normal_forms: Vec<CurveDoc>,
    pub points: Vec<PointDoc>,
    pub tier: String,
    pub evidence: Vec<EvidenceDoc>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub note: Option<String>,
}

impl From<&ClassRecord> for ClassDoc {
    fn from(r: &ClassRecord) -> Self {
        ClassDoc {
            code: r.code.to_string(),
            orbits: r.orbit_count,
            normal_forms: r.representatives.iter().map(Into::into).collect(),
            points: r.points.iter().map(Into::into).collect(),
            tier: r.tier.to_string(),
            evidence: r.evidence.iter().map(|e| EvidenceDoc { kind: e.kind().into(), detail: e.detail() }).collect(),
            note: r.note.clone(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusDoc {
    pub level: usize,
    pub total: u32,
    pub classes: Vec<ClassDoc>,
}

impl From<&Census> for CensusDoc {
    fn from(c: &Census) -> Self {
        CensusDoc { level: c.level, total: c.total, classes: c.records.iter().map(Into::into).collect() }
    }
}

/// Parses a JSON document, mapping every failure to [`Error::Parse`].
pub fn from_json<T: DeserializeOwned>(text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
}

/// Pretty-printed JSON with a trailing newline.
pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("documents serialize");
    s.push('\n');
    s
}

pub fn parse_curve(text: &str) -> Result<CurveGerm> {
    from_json::<CurveDoc>(text)?.to_curve()
}

pub fn parse_point(text: &str) -> Result<TowerPoint> {
    from_json::<PointDoc>(text)?.to_point()
}

pub fn parse_diffeo(text: &str) -> Result<DiffeoJet> {
    from_json::<DiffeoDoc>(text)?.to_diffeo()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{q, qi};

    #[test]
    fn curve_text_is_fixed() {
        let c = CurveGerm::from_terms([&[(3, qi(1)), (12, q(-6, 4))], &[(5, qi(2))], &[]], 12).unwrap();
        let text = serde_json::to_string(&CurveDoc::from(&c)).unwrap();
        assert_eq!(text, r#"{"trunc":12,"x":{"3":"1","12":"-3/2"},"y":{"5":"2"},"z":{}}"#);
        assert_eq!(parse_curve(&text).unwrap(), c);
    }

    #[test]
    fn jet_keys_by_degree() {
        let phi = PolyJet3::new(
            2,
            [Poly3::from_terms([([0, 0, 1], qi(1)), ([1, 0, 0], qi(2)), ([0, 2, 0], q(1, 3))]), Poly3::var(1), Poly3::var(2)],
        )
        .unwrap();
        let text = serde_json::to_string(&DiffeoDoc::from(&phi)).unwrap();
        assert!(text.starts_with(r#"{"degree":2,"phi1":{"1,0,0":"2","0,0,1":"1","0,2,0":"1/3"}"#), "{text}");
        assert_eq!(from_json::<DiffeoDoc>(&text).unwrap().to_jet().unwrap(), phi);
    }

    #[test]
    fn point_round_trip() {
        let p = TowerPoint::origin().extend(&[qi(1), q(3, 2), qi(0)]).unwrap();
        let text = to_json(&PointDoc::from(&p));
        assert_eq!(parse_point(&text).unwrap(), p);
    }

    #[test]
    fn malformed_inputs() {
        assert!(matches!(parse_curve(r#"{"trunc":4,"x":{"1":"1.5"},"y":{},"z":{}}"#), Err(Error::Parse(_))));
        assert!(matches!(parse_curve(r#"{"trunc":4,"x":{"9":"1"},"y":{},"z":{}}"#), Err(Error::Parse(_))));
        assert!(matches!(parse_curve(r#"{"trunc":4,"x":{"0":"1"},"y":{},"z":{}}"#), Err(Error::NotAGerm(_))));
        assert!(parse_point(r#"{"level":1,"chart":[],"coords":[]}"#).is_err());
    }

    #[test]
    fn trace_round_trip() {
        let c = CurveGerm::from_terms([&[(3, qi(1)), (4, qi(1))], &[(5, qi(1))], &[(7, qi(1))]], 16).unwrap();
        let m = crate::normalize::reduce_catalog(&c).unwrap();
        let doc = TraceDoc::new(&c, &m.trace);
        let back: TraceDoc = from_json(&to_json(&doc)).unwrap();
        assert_eq!(back, doc);
        let (input, trace) = back.to_trace().unwrap();
        assert!(trace.replay(&input).unwrap().agrees(&m.normal_form));
    }
}
