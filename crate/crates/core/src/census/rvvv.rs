//! The two orbits of the RVVV class, from the isotropy action on the vertical fiber over
//! the RVV point.

use num_traits::{One, Zero};

use crate::algebra::{qi, CurveGerm, Rational};
use crate::diffeo::{fiber_action, stage_point, taylor_constraints, DiffeoJet, JetSampler, Stage};
use crate::error::{Error, Result};
use crate::normalize::normal_form;
use crate::tower::{projective_normalize, realize_point_with, rvt_code, Direction, Letter, RealizeOptions, TowerPoint};

const SAMPLED_JETS: usize = 20;
const SCALINGS: usize = 10;
const JET_DEGREE: u32 = 4;
const TRUNC: u32 = 40;

#[derive(Clone, Debug)]
pub struct RvvvReport {
    pub passed: bool,
    /// The level-4 points over `[0:1:0]` and `[0:1:1]`.
    pub points: Vec<TowerPoint>,
    /// Number of sampled isotropy jets checked against the closed form.
    pub jets_checked: usize,
    pub summary: String,
}

/// Image of `[0:b:c]` predicted from the linear part of an isotropy jet:
/// `[0 : b·a_y²/a_x³ : c·a_z/a_x²]` with `a_x, a_y, a_z` the diagonal entries.
pub fn rvvv_closed_form(phi: &DiffeoJet, ell: &Direction) -> Result<Direction> {
    let m = phi.linear_matrix();
    let (ax, ay, az) = (&m[0][0], &m[1][1], &m[2][2]);
    if ax.is_zero() {
        return Err(Error::Degenerate("jet does not fix the RVV point".into()));
    }
    let b = &ell[1] * ay * ay / (ax * ax * ax);
    let c = &ell[2] * az / (ax * ax);
    projective_normalize(&[Rational::zero(), b, c])
}

fn orbit_directions() -> [Direction; 2] {
    [[qi(0), qi(1), qi(0)], [qi(0), qi(1), qi(1)]]
}

fn rvvv_points() -> Result<Vec<TowerPoint>> {
    let p3 = stage_point(Stage::G3);
    orbit_directions()
        .iter()
        .map(|d| {
            if p3.classify(d)? != Letter::V {
                return Err(Error::Verification(format!("{d:?} is not vertical over the RVV point")));
            }
            p3.extend(d)
        })
        .collect()
}

fn realize(p: &TowerPoint, trunc: u32) -> Result<CurveGerm> {
    let plain = RealizeOptions { trunc, ..Default::default() };
    let bent = RealizeOptions { direction: Some([qi(1), qi(1), qi(0)]), trunc, ..Default::default() };
    let code: crate::tower::RvtWord = "RVVV".parse()?;
    for opts in [plain, bent] {
        if let Ok(c) = realize_point_with(p, &opts) {
            if rvt_code(&c, 4).ok().as_ref() == Some(&code) {
                return Ok(c);
            }
        }
    }
    Err(Error::Verification(format!("no RVVV curve found through {p}")))
}

/// Curves through the level-4 points over `[0:1:0]` and `[0:1:1]`, brought to normal form.
pub fn representative_curves(trunc: u32) -> Result<(CurveGerm, CurveGerm)> {
    let pts = rvvv_points()?;
    let nf = |p: &TowerPoint| -> Result<CurveGerm> { Ok(normal_form(&realize(p, trunc)?)?.0) };
    Ok((nf(&pts[0])?, nf(&pts[1])?))
}

fn same_line(a: &Direction, b: &Direction) -> bool {
    let cross = [&a[1] * &b[2] - &a[2] * &b[1], &a[2] * &b[0] - &a[0] * &b[2], &a[0] * &b[1] - &a[1] * &b[0]];
    cross.iter().all(Zero::is_zero)
}

/// Checks that the isotropy group of the RVV point keeps `[0:1:0]` fixed and moves
/// `[0:1:1]` along `[0:1:λ]`, so the vertical directions split into at least two orbits.
pub fn verify_rvvv_split(seed: u64) -> Result<RvvvReport> {
    let p3 = stage_point(Stage::G3);
    let constraints = taylor_constraints(Stage::G3);
    let dirs = orbit_directions();
    let mut sampler = JetSampler::new(seed);
    let mut failures = Vec::new();

    for _ in 0..SAMPLED_JETS {
        let phi = sampler.constrained_jet(JET_DEGREE, &constraints);
        let images = fiber_action(&phi, &p3, &dirs)?;
        for (d, img) in dirs.iter().zip(&images) {
            if !same_line(img, &rvvv_closed_form(&phi, d)?) {
                failures.push(format!("closed form misses the image of {d:?}"));
            }
        }
        if !same_line(&images[0], &dirs[0]) {
            failures.push("[0:1:0] moved".into());
        }
    }

    for _ in 0..SCALINGS {
        let lambda = sampler.nonzero_rational();
        let phi = DiffeoJet::scaling(&[Rational::one(), Rational::one(), lambda.clone()])?;
        let img = fiber_action(&phi, &p3, &dirs[1..])?;
        if !same_line(&img[0], &[qi(0), qi(1), lambda.clone()]) {
            failures.push(format!("scaling by {lambda} does not send [0:1:1] to [0:1:{lambda}]"));
        }
    }

    let points = rvvv_points()?;
    for p in &points {
        realize(p, TRUNC)?;
    }

    let passed = failures.is_empty();
    let summary = if passed {
        format!(
            "[0:1:0] is fixed by {SAMPLED_JETS} sampled isotropy jets; [0:1:1] reaches [0:1:λ] under {SCALINGS} scalings; \
             at least 2 orbits demonstrated, exactly 2 by the classification"
        )
    } else {
        failures.join("; ")
    };
    Ok(RvvvReport { passed, points, jets_checked: SAMPLED_JETS, summary })
}
