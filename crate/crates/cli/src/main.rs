//! `mt`: prolongation, RVT codes, invariants, normal forms and the orbit census from the
//! command line. Output is JSON unless `--table` is given.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde::Serialize;

use mt_core::algebra::CurveGerm;
use mt_core::census::{census_table, enumerate_classes, orbit_census};
use mt_core::diffeo::prolong_apply_with;
use mt_core::invariants::{planarity, semigroup, PlanarityVerdict, DEFAULT_PLANARITY_DEGREE, DEFAULT_PLANARITY_ORDER, DEFAULT_SEMIGROUP_BOUND};
use mt_core::io::{
    from_json, parse_curve, parse_diffeo, parse_point, to_json, CensusDoc, CertificateDoc, CurveDoc, JetLit, PointDoc,
    TraceDoc,
};
use mt_core::normalize::{equivalence_search, reduce_catalog, Budget, EquivalenceVerdict};
use mt_core::suite::run_all;
use mt_core::tower::{prolong_curve, rvt_code, RealizeOptions};
use mt_core::{Error, DEFAULT_TRUNC};

#[derive(Parser)]
#[command(name = "mt", version, about = "Exact computations on the Monster tower over 3-space")]
struct Cli {
    /// Series truncation; input curves are cut down to it.
    #[arg(long, global = true, env = "MT_TRUNC", default_value_t = DEFAULT_TRUNC)]
    trunc: u32,
    /// Seed for sampled jets.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Bound for semigroup elements or planarity degree.
    #[arg(long, global = true)]
    bound: Option<u32>,
    /// Print a text table instead of JSON.
    #[arg(long, global = true)]
    table: bool,
    #[command(subcommand)]
    verb: Verb,
}

#[derive(Subcommand)]
enum Verb {
    /// Point reached by the k-th prolongation of a curve.
    Prolong {
        #[arg(long)]
        curve: PathBuf,
        #[arg(long)]
        level: usize,
    },
    /// RVT code of a curve.
    Rvt {
        #[arg(long)]
        curve: PathBuf,
        #[arg(long)]
        level: usize,
    },
    /// Value semigroup up to the bound.
    Semigroup {
        #[arg(long)]
        curve: PathBuf,
    },
    /// Bounded planarity test.
    Planar {
        #[arg(long)]
        curve: PathBuf,
        /// Order bound for `ord(f∘c)`.
        #[arg(long, default_value_t = DEFAULT_PLANARITY_ORDER)]
        order: u32,
    },
    /// Reduction to a catalog normal form with its trace.
    Reduce {
        #[arg(long)]
        curve: PathBuf,
    },
    /// Equivalence of two curves with a certificate or a separating invariant.
    Equiv {
        #[arg(long)]
        left: PathBuf,
        #[arg(long)]
        right: PathBuf,
    },
    /// RVT classes at a level.
    Classes {
        #[arg(long)]
        level: usize,
    },
    /// Orbit counts with evidence.
    Census {
        #[arg(long)]
        level: usize,
    },
    /// Applies a jet to a curve or (prolonged) to a point.
    Apply {
        #[arg(long)]
        diffeo: PathBuf,
        #[arg(long, conflicts_with = "point", required_unless_present = "point")]
        curve: Option<PathBuf>,
        #[arg(long)]
        point: Option<PathBuf>,
    },
    /// Re-executes a reduction trace.
    Replay {
        #[arg(long)]
        trace: PathBuf,
    },
    /// Runs the acceptance checks.
    Verify {
        #[arg(long, value_parser = ["paper"])]
        suite: String,
    },
}

#[derive(Debug)]
enum Failure {
    Domain(Error),
    Io(String),
    /// The suite ran; some checks failed.
    Checks(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Domain(e)
    }
}

type Out = Result<String, Failure>;

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))
}

fn curve(path: &Path, trunc: u32) -> Result<CurveGerm, Failure> {
    let c = parse_curve(&read(path)?)?;
    Ok(if c.trunc() > trunc { c.truncate(trunc) } else { c })
}

#[derive(Serialize)]
struct SemigroupOut {
    bound: u32,
    elements: Vec<u32>,
    gaps: Vec<u32>,
    conductor: Option<u32>,
    notation: String,
}

#[derive(Serialize)]
#[serde(tag = "verdict", rename_all = "kebab-case")]
enum PlanarOut {
    Planar { surface: JetLit, degree_bound: u32, order_bound: u32 },
    Obstructed { order: u32, degree_bound: u32, order_bound: u32 },
    Undetermined { reason: String },
}

#[derive(Serialize)]
struct ReduceOut {
    code: String,
    normal_form: CurveDoc,
    trace: TraceDoc,
}

#[derive(Serialize)]
#[serde(tag = "verdict", rename_all = "kebab-case")]
enum EquivOut {
    Equivalent { certificate: CertificateDoc },
    Separated { invariant: String, left: String, right: String },
    Unknown { reason: String },
}

#[derive(Serialize)]
struct ReplayOut {
    steps: usize,
    output: CurveDoc,
}

#[derive(Serialize)]
struct CheckOut {
    id: u32,
    name: &'static str,
    passed: bool,
    detail: String,
}

#[derive(Serialize)]
struct ErrorOut<'a> {
    error: ErrorBody<'a>,
}

#[derive(Serialize)]
struct ErrorBody<'a> {
    kind: &'a str,
    message: String,
}

fn run(cli: &Cli) -> Out {
    let n = cli.trunc;
    match &cli.verb {
        Verb::Prolong { curve: f, level } => {
            let p = prolong_curve(&curve(f, n)?, *level)?.point()?;
            Ok(if cli.table { format!("{p}\n") } else { to_json(&PointDoc::from(&p)) })
        }
        Verb::Rvt { curve: f, level } => {
            let w = rvt_code(&curve(f, n)?, *level)?;
            Ok(if cli.table { format!("{w}\n") } else { to_json(&w) })
        }
        Verb::Semigroup { curve: f } => {
            let s = semigroup(&curve(f, n)?, cli.bound.unwrap_or(DEFAULT_SEMIGROUP_BOUND))?;
            let notation = s.notation();
            if cli.table {
                return Ok(notation + "\n");
            }
            Ok(to_json(&SemigroupOut { bound: s.bound, elements: s.elements, gaps: s.gaps, conductor: s.conductor, notation }))
        }
        Verb::Planar { curve: f, order } => {
            let v = planarity(&curve(f, n)?, cli.bound.unwrap_or(DEFAULT_PLANARITY_DEGREE), *order);
            let out = match v {
                PlanarityVerdict::Witness { f, degree_bound, order_bound } => {
                    PlanarOut::Planar { surface: (&f).into(), degree_bound, order_bound }
                }
                PlanarityVerdict::Obstructed { order, degree_bound, order_bound } => {
                    PlanarOut::Obstructed { order, degree_bound, order_bound }
                }
                PlanarityVerdict::Undetermined { reason } => PlanarOut::Undetermined { reason },
            };
            if cli.table {
                let line = match &out {
                    PlanarOut::Planar { .. } => "planar".to_string(),
                    PlanarOut::Obstructed { order, .. } => format!("obstructed at order {order}"),
                    PlanarOut::Undetermined { reason } => format!("undetermined: {reason}"),
                };
                return Ok(line + "\n");
            }
            Ok(to_json(&out))
        }
        Verb::Reduce { curve: f } => {
            let c = curve(f, n)?;
            let m = reduce_catalog(&c)?;
            if cli.table {
                return Ok(format!("{} {}\n", m.code, mt_core::census::short_curve(&m.normal_form)));
            }
            Ok(to_json(&ReduceOut {
                code: m.code.to_string(),
                normal_form: (&m.normal_form).into(),
                trace: TraceDoc::new(&c, &m.trace),
            }))
        }
        Verb::Equiv { left, right } => {
            let mut budget = Budget::default();
            if let Some(b) = cli.bound {
                budget.semigroup_bound = b;
            }
            let out = match equivalence_search(&curve(left, n)?, &curve(right, n)?, &budget)? {
                EquivalenceVerdict::Equivalent(c) => EquivOut::Equivalent { certificate: (&c).into() },
                EquivalenceVerdict::Separated { invariant, left, right } => EquivOut::Separated { invariant, left, right },
                EquivalenceVerdict::Unknown { reason } => EquivOut::Unknown { reason },
            };
            if cli.table {
                let line = match &out {
                    EquivOut::Equivalent { .. } => "equivalent".to_string(),
                    EquivOut::Separated { invariant, left, right } => format!("separated by {invariant}: {left} vs {right}"),
                    EquivOut::Unknown { reason } => format!("unknown: {reason}"),
                };
                return Ok(line + "\n");
            }
            Ok(to_json(&out))
        }
        Verb::Classes { level } => {
            let words: Vec<String> = enumerate_classes(*level)?.iter().map(ToString::to_string).collect();
            Ok(if cli.table { words.join("\n") + "\n" } else { to_json(&words) })
        }
        Verb::Census { level } => {
            let c = orbit_census(*level, cli.seed)?;
            Ok(if cli.table { census_table(&c) } else { to_json(&CensusDoc::from(&c)) })
        }
        Verb::Apply { diffeo, curve: cf, point } => {
            let phi = parse_diffeo(&read(diffeo)?)?;
            if let Some(f) = cf {
                let image = phi.apply(&curve(f, n)?)?;
                return Ok(if cli.table { format!("{image}\n") } else { to_json(&CurveDoc::from(&image)) });
            }
            let p = parse_point(&read(point.as_ref().expect("clap requires one input"))?)?;
            let q = prolong_apply_with(&phi, &p, &RealizeOptions { trunc: n, ..Default::default() })?;
            Ok(if cli.table { format!("{q}\n") } else { to_json(&PointDoc::from(&q)) })
        }
        Verb::Replay { trace } => {
            let doc: TraceDoc = from_json(&read(trace)?)?;
            let (input, trace) = doc.to_trace()?;
            let out = trace.replay(&input)?;
            Ok(if cli.table {
                format!("{} steps replayed: {out}\n", trace.len())
            } else {
                to_json(&ReplayOut { steps: trace.len(), output: (&out).into() })
            })
        }
        Verb::Verify { .. } => {
            let outcomes = run_all(cli.seed);
            let passed = outcomes.iter().filter(|o| o.passed).count();
            let text = if cli.table {
                let mut s: String = outcomes.iter().map(|o| o.line() + "\n").collect();
                s.push_str(&format!("{passed}/{} criteria passed\n", outcomes.len()));
                s
            } else {
                let rows: Vec<CheckOut> = outcomes
                    .iter()
                    .map(|o| CheckOut { id: o.id, name: o.name, passed: o.passed, detail: o.detail.clone() })
                    .collect();
                to_json(&rows)
            };
            if passed == outcomes.len() {
                Ok(text)
            } else {
                Err(Failure::Checks(text))
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(text) => {
            print!("{text}");
            ExitCode::SUCCESS
        }
        Err(Failure::Checks(text)) => {
            print!("{text}");
            ExitCode::from(1)
        }
        Err(f) => {
            let (kind, message) = match &f {
                Failure::Domain(e) => (e.kind(), e.to_string()),
                Failure::Io(m) => ("io", m.clone()),
                Failure::Checks(_) => unreachable!(),
            };
            print!("{}", to_json(&ErrorOut { error: ErrorBody { kind, message } }));
            ExitCode::from(1)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn flags_parse() {
        let cli = Cli::try_parse_from(["mt", "--trunc", "20", "rvt", "--curve", "c.json", "--level", "3"]).unwrap();
        assert_eq!(cli.trunc, 20);
        assert!(matches!(cli.verb, Verb::Rvt { level: 3, .. }));
        assert!(Cli::try_parse_from(["mt", "apply", "--diffeo", "d.json"]).is_err());
        assert!(Cli::try_parse_from(["mt", "verify", "--suite", "other"]).is_err());
    }
}
