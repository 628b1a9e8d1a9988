//! The defect σ(X) from the component count of the curve of lines through a
//! singular point, and the Hodge numbers of H³(X).

mod hodge;
mod project;

pub use hodge::{hodge_numbers, HodgeReport};
pub use project::{project, Projection};

use crate::forms::{cone_test, Form, FormError, Poly, Rat, C64};
use crate::report::ser_rats;
use crate::singular::{corank, singular_points, SingularError, SingularPoint};
use crate::tracker::{solve_overdetermined, TrackerError, TrackerSettings};
use crate::witness::{
    detect_nonreduced, double_plane_root, monodromy_partition, witness_points, ComponentPartition, QuadricClass, QuadricKind,
    WitnessError, WitnessSet,
};
use crate::Certification;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum DefectError {
    #[error("input is not a cubic form in five variables")]
    NotCubic,
    #[error("point is not singular: the projection has x4^2 or x4^3 terms")]
    NotSingular,
    #[error("degenerate cone (vertex dimension {vertex_dim}, smooth base: {smooth_base}); only cones over smooth cubic surfaces are handled")]
    DegenerateCone { vertex_dim: usize, smooth_base: bool },
    #[error("no singular point has rational coordinates; σ is not computed")]
    NoRationalPoint,
    #[error("σ depends on the projection point: {0}")]
    Disagreement(String),
    #[error("invariant violated: {0}")]
    Invariant(String),
    #[error("singular point analysis failed: {0}")]
    Singular(String),
    #[error(transparent)]
    Form(#[from] FormError),
    #[error(transparent)]
    Witness(#[from] WitnessError),
    #[error(transparent)]
    Tracker(#[from] TrackerError),
}

impl From<SingularError> for DefectError {
    fn from(e: SingularError) -> Self {
        DefectError::Singular(e.to_string())
    }
}

/// Loop budget for monodromy on the projection curve.
pub const MAX_LOOPS: usize = 50;

/// Decomposition of the projection curve C_q at one singular point.
#[derive(Clone, Debug, Serialize)]
pub struct PointDefect {
    #[serde(serialize_with = "ser_rats")]
    pub point: Vec<Rat>,
    pub corank: usize,
    pub quadric: QuadricClass,
    pub g2: String,
    pub g3: String,
    pub witness: WitnessSet,
    pub partition: ComponentPartition,
    pub k: usize,
    pub sigma: usize,
    pub seed: u64,
}

/// Decomposes C_q for the exact singular point q and applies σ = k − 1
/// (corank ≠ 2) or σ = k − 2 (corank 2).
pub fn defect_at(f: &Form<Rat>, q: &[Rat], cfg: &TrackerSettings, seed: u64) -> Result<PointDefect, DefectError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let p = project(f, q)?;
    let quadric = detect_nonreduced(&p.g2)?;
    let cr = 4 - quadric.rank;
    let eqs = if quadric.kind == QuadricKind::DoublePlane {
        vec![double_plane_root(&p.g2)?, p.g3.clone()]
    } else {
        vec![p.g2.clone(), p.g3.clone()]
    };
    let mut witness = witness_points(&eqs, cfg, &mut rng)?;
    witness.reduced = quadric.kind != QuadricKind::DoublePlane;
    let partition = monodromy_partition(&witness, MAX_LOOPS, cfg, &mut rng)?;
    let k = partition.k();
    if partition.degrees.iter().sum::<usize>() != witness.degree {
        return Err(DefectError::Invariant(format!("block degrees sum to {:?}, not {}", partition.degrees, witness.degree)));
    }
    let sigma = match cr {
        2 if k < 2 => return Err(DefectError::Invariant("corank 2 with an irreducible projection curve".into())),
        2 => k - 2,
        _ => k - 1,
    };
    Ok(PointDefect { point: q.to_vec(), corank: cr, quadric, g2: p.g2.to_string(), g3: p.g3.to_string(), witness, partition, k, sigma, seed })
}

#[derive(Clone, Debug, Serialize)]
pub struct DefectReport {
    pub cone: bool,
    pub sigma: Option<usize>,
    pub certification: Certification,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
    pub chosen: Option<PointDefect>,
    /// σ recomputed from every other rational singular point.
    pub recomputations: Vec<PointDefect>,
    pub consistent: bool,
}

/// Checks whether f is a cone over a smooth cubic surface.
pub fn cone_over_smooth_surface(f: &Form<Rat>, cfg: &TrackerSettings, rng: &mut ChaCha8Rng) -> Result<Option<Vec<Rat>>, DefectError> {
    let cv = cone_test(f);
    if !cv.is_cone() {
        return Ok(None);
    }
    if cv.r >= 2 {
        return Err(DefectError::DegenerateCone { vertex_dim: cv.r - 1, smooth_base: false });
    }
    let v = cv.vertex[0].clone();
    let t = crate::forms::change_moving_to_last(&v);
    let base = f.substitute(&t)?.into_poly().drop_var(4);
    let grads: Vec<Poly<C64>> = base.gradient().iter().map(|g| g.to_complex()).collect();
    let sing = solve_overdetermined(&grads, cfg, crate::singular::GRADIENT_FILTER, rng)?;
    if !sing.is_empty() {
        return Err(DefectError::DegenerateCone { vertex_dim: 0, smooth_base: false });
    }
    Ok(Some(v))
}

fn preference(p: &SingularPoint) -> usize {
    // Higher corank first; corank 3 is always the only singular point.
    match p.corank {
        3 => 0,
        2 => 1,
        1 => 2,
        _ => 3,
    }
}

/// σ(X) from already analyzed singular points (empty for smooth X).
pub fn compute_defect_from(f: &Form<Rat>, points: &[SingularPoint], cfg: &TrackerSettings, rng: &mut ChaCha8Rng) -> Result<DefectReport, DefectError> {
    if let Some(_v) = cone_over_smooth_surface(f, cfg, rng)? {
        return Ok(DefectReport {
            cone: true,
            sigma: Some(6),
            certification: Certification::Exact,
            note: Some("cone over a smooth cubic surface".into()),
            chosen: None,
            recomputations: vec![],
            consistent: true,
        });
    }
    if points.is_empty() {
        return Ok(DefectReport {
            cone: false,
            sigma: None,
            certification: Certification::Exact,
            note: Some("smooth cubic: no singular points, no projection; the defect of a smooth threefold is 0".into()),
            chosen: None,
            recomputations: vec![],
            consistent: true,
        });
    }
    let mut rational: Vec<&SingularPoint> = points.iter().filter(|p| p.exact().is_some()).collect();
    if rational.is_empty() {
        return Err(DefectError::NoRationalPoint);
    }
    rational.sort_by_key(|p| preference(p));
    let mut results = Vec::with_capacity(rational.len());
    for p in &rational {
        let q = p.exact().unwrap();
        debug_assert_eq!(corank(f, q).ok(), Some(p.corank));
        results.push(defect_at(f, q, cfg, rng.gen())?);
    }
    let chosen = results.remove(0);
    let sigma = chosen.sigma;
    if let Some(bad) = results.iter().find(|r| r.sigma != sigma) {
        let show = |v: &[Rat]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(":");
        return Err(DefectError::Disagreement(format!(
            "σ = {} from [{}] but σ = {} from [{}]",
            sigma,
            show(&chosen.point),
            bad.sigma,
            show(&bad.point)
        )));
    }
    if sigma > 6 {
        return Err(DefectError::Invariant(format!("σ = {sigma} exceeds 6")));
    }
    let certified = chosen.partition.certified && results.iter().all(|r| r.partition.certified);
    Ok(DefectReport {
        cone: false,
        sigma: Some(sigma),
        certification: if certified { Certification::CertifiedNumeric } else { Certification::Uncertified },
        note: None,
        chosen: Some(chosen),
        recomputations: results,
        consistent: true,
    })
}

/// σ(X): finds and analyzes the singular points, then projects.
pub fn compute_defect(f: &Form<Rat>, cfg: &TrackerSettings, seed: u64) -> Result<DefectReport, DefectError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    if cone_over_smooth_surface(f, cfg, &mut rng)?.is_some() {
        return compute_defect_from(f, &[], cfg, &mut rng);
    }
    let pts = singular_points(f, cfg, &mut rng)?;
    compute_defect_from(f, &pts, cfg, &mut rng)
}
