//! Singular points of a cubic threefold: location, corank, Milnor number,
//! analytic type and spectrum-derived local invariants.

mod classify;
mod milnor;
mod spectrum;

pub use classify::{binary_cubic_roots, classify, CubicRoots, SingularityType};
pub use milnor::local_multiplicity;
pub use spectrum::{normal_form_weights, spectrum, spectrum_from_weights, Spectrum};

use crate::defect::{project, DefectError};
use crate::forms::linalg::nullspace;
use crate::forms::{cone_test, rank_exact, CPoint, Form, LinearChange, Poly, Rat, Scalar, C64};
use crate::tracker::{rational_reconstruct, solve_overdetermined, TrackerError, TrackerSettings};
use crate::witness::{detect_nonreduced, double_plane_root, monodromy_partition, witness_points, WitnessError};
use crate::Certification;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum SingularError {
    #[error("singular locus is not isolated")]
    NonIsolatedSingularLocus,
    #[error("the cubic is a cone; its singular locus is the vertex")]
    Cone,
    #[error("point is not singular")]
    NotSingular,
    #[error("Milnor number did not stabilize: point is not an isolated singularity")]
    NotIsolated,
    #[error("inconsistent invariants: {0}")]
    Inconsistent(String),
    #[error(transparent)]
    Tracker(#[from] TrackerError),
    #[error(transparent)]
    Witness(#[from] WitnessError),
    #[error(transparent)]
    Defect(#[from] Box<DefectError>),
}

impl From<DefectError> for SingularError {
    fn from(e: DefectError) -> Self {
        match e {
            DefectError::NotSingular => SingularError::NotSingular,
            e => SingularError::Defect(Box::new(e)),
        }
    }
}

/// A singular point found numerically, with its exact location when the
/// coordinates reconstruct to rationals that annihilate the gradient.
#[derive(Clone, Debug, Serialize)]
pub struct SingularLocation {
    #[serde(serialize_with = "crate::report::ser_rats_opt")]
    pub exact: Option<Vec<Rat>>,
    pub numeric: CPoint,
    /// Number of homotopy paths converging to the point.
    pub path_multiplicity: usize,
}

/// Relative residual below which an endpoint counts as a zero of the gradient.
pub const GRADIENT_FILTER: f64 = 1e-7;

/// Projective solutions of ∇f = 0, found twice with independent random
/// combinations and patches; disagreement between the runs means the
/// singular locus has positive dimension.
pub fn find_singular_points(f: &Form<Rat>, cfg: &TrackerSettings, rng: &mut ChaCha8Rng) -> Result<Vec<SingularLocation>, SingularError> {
    if cone_test(f).is_cone() {
        return Err(SingularError::Cone);
    }
    let grads_exact = f.gradient();
    let grads: Vec<Poly<C64>> = grads_exact.iter().map(|g| g.poly().to_complex()).collect();
    let mut ra = ChaCha8Rng::seed_from_u64(rng.gen());
    let mut rb = ChaCha8Rng::seed_from_u64(rng.gen());
    let a = solve_overdetermined(&grads, cfg, GRADIENT_FILTER, &mut ra)?;
    let b = solve_overdetermined(&grads, cfg, GRADIENT_FILTER, &mut rb)?;
    let tol = 1e3 * cfg.clustering_radius;
    let agree = a.len() == b.len() && a.iter().all(|p| b.iter().any(|q| p.point.distance(&q.point) < tol));
    if !agree {
        return Err(SingularError::NonIsolatedSingularLocus);
    }
    let mut out: Vec<SingularLocation> = a
        .into_iter()
        .map(|s| SingularLocation {
            exact: rational_reconstruct(&s.point, cfg.reconstruction_bound, &grads_exact),
            numeric: s.point,
            path_multiplicity: s.multiplicity,
        })
        .collect();
    out.sort_by(|x, y| sort_key(x).partial_cmp(&sort_key(y)).unwrap());
    Ok(out)
}

fn sort_key(s: &SingularLocation) -> (u8, Vec<f64>) {
    let v = s.numeric.coords.iter().flat_map(|c| [-c.re, -c.im]).collect();
    (if s.exact.is_some() { 0 } else { 1 }, v)
}

/// 4 − rank(g₂) at an exact singular point.
pub fn corank(f: &Form<Rat>, q: &[Rat]) -> Result<usize, SingularError> {
    let p = project(f, q)?;
    Ok(4 - rank_exact(&p.g2.quad_matrix().map_err(DefectError::from)?))
}

/// Milnor number at an exact singular point: the local algebra dimension
/// of the partials of g₂ + g₃ in the chart x₄ = 1.
pub fn milnor_number(f: &Form<Rat>, q: &[Rat]) -> Result<usize, SingularError> {
    let p = project(f, q)?;
    let local = p.g2.poly().add(p.g3.poly());
    let partials: Vec<Poly<Rat>> = local.gradient().into_iter().filter(|g| !g.is_zero()).collect();
    if partials.is_empty() {
        return Err(SingularError::NotIsolated);
    }
    local_multiplicity(&partials).ok_or(SingularError::NotIsolated)
}

/// Full local analysis of one singular point.
#[derive(Clone, Debug, Serialize)]
pub struct SingularPoint {
    #[serde(flatten)]
    pub location: SingularLocation,
    pub corank: usize,
    pub milnor: usize,
    #[serde(rename = "type")]
    pub label: SingularityType,
    pub certification: Certification,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub kernel_cubic: Option<CubicRoots>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub projection_components: Option<usize>,
    pub spectrum: Option<Spectrum>,
    pub b11: Option<usize>,
    pub l11: Option<usize>,
}

impl SingularPoint {
    pub fn exact(&self) -> Option<&[Rat]> {
        self.location.exact.as_deref()
    }
}

fn with_invariants(location: SingularLocation, corank: usize, milnor: usize, label: SingularityType, certification: Certification) -> SingularPoint {
    let spectrum = if certification == Certification::Exact { spectrum(label) } else { None };
    let (b11, l11) = match &spectrum {
        Some(s) => (Some(s.b11()), Some(s.l11())),
        None => (None, None),
    };
    SingularPoint { location, corank, milnor, label, certification, kernel_cubic: None, projection_components: None, spectrum, b11, l11 }
}

/// Corank, μ, type and local invariants of a located singular point.
pub fn analyze_point(f: &Form<Rat>, loc: SingularLocation, cfg: &TrackerSettings, rng: &mut ChaCha8Rng) -> Result<SingularPoint, SingularError> {
    let Some(q) = loc.exact.clone() else {
        return Ok(analyze_numeric(f, loc));
    };
    let p = project(f, &q)?;
    let m = p.g2.quad_matrix().map_err(DefectError::from)?;
    let cr = 4 - rank_exact(&m);
    let mu = milnor_number(f, &q)?;
    let mut roots = None;
    let mut comps = None;
    if cr == 2 {
        let ker = nullspace(&m, 4);
        let a: Vec<Vec<Rat>> = (0..4).map(|i| vec![ker[0][i].clone(), ker[1][i].clone()]).collect();
        roots = Some(binary_cubic_roots(&p.g3.pullback(&a).map_err(DefectError::from)?));
    }
    if cr == 3 {
        detect_nonreduced(&p.g2)?;
        let l = double_plane_root(&p.g2)?;
        let w = witness_points(&[l, p.g3.clone()], cfg, rng)?;
        let part = monodromy_partition(&w, 50, cfg, rng)?;
        comps = Some(part.k());
    }
    let label = classify(cr, mu, roots, comps)?;
    let mut sp = with_invariants(loc, cr, mu, label, Certification::Exact);
    sp.kernel_cubic = roots;
    sp.projection_components = comps;
    Ok(sp)
}

/// Singular-value corank and path-count μ for points without exact coordinates.
fn analyze_numeric(f: &Form<Rat>, loc: SingularLocation) -> SingularPoint {
    let q = &loc.numeric.coords;
    let k = q.iter().enumerate().max_by(|a, b| a.1.norm().partial_cmp(&b.1.norm()).unwrap()).unwrap().0;
    let mut cols: Vec<Vec<C64>> = (0..5)
        .filter(|&j| j != k)
        .map(|j| (0..5).map(|i| if i == j { C64::new(1.0, 0.0) } else { C64::new(0.0, 0.0) }).collect())
        .collect();
    cols.push(q.clone());
    let t = LinearChange::from_columns(&cols).expect("q has a large entry at the omitted index");
    let h = f.to_complex().substitute(&t).expect("dimensions agree");
    let parts = h.poly().coefficients_in(4);
    let g2 = parts.get(1).map(|p| p.drop_var(4)).unwrap_or_else(|| Poly::zero(4));
    let m = Form::new(g2, 2).expect("quadric").quad_matrix().expect("quadric");
    let mat = nalgebra::DMatrix::from_fn(4, 4, |i, j| m[i][j]);
    let sv = mat.svd(false, false).singular_values;
    let top = sv.max().max(1e-300);
    let rank = sv.iter().filter(|&&s| s > 1e-8 * top).count();
    let cr = 4 - rank;
    let mu = loc.path_multiplicity;
    let label = match cr {
        0 => SingularityType::A(1),
        1 => SingularityType::A(mu as u32),
        _ => SingularityType::Unclassified,
    };
    with_invariants(loc, cr, mu, label, Certification::Uncertified)
}

/// The vertex of a cone, which tracking does not isolate; `path_multiplicity` is 0.
pub fn cone_vertex(f: &Form<Rat>, vertex: &[Rat], cfg: &TrackerSettings, rng: &mut ChaCha8Rng) -> Result<SingularPoint, SingularError> {
    let numeric = CPoint::new(vertex.iter().map(|x| x.to_c64()).collect());
    analyze_point(f, SingularLocation { exact: Some(vertex.to_vec()), numeric, path_multiplicity: 0 }, cfg, rng)
}

/// Finds and analyzes all singular points.
pub fn singular_points(f: &Form<Rat>, cfg: &TrackerSettings, rng: &mut ChaCha8Rng) -> Result<Vec<SingularPoint>, SingularError> {
    find_singular_points(f, cfg, rng)?.into_iter().map(|l| analyze_point(f, l, cfg, rng)).collect()
}

#[cfg(test)]
mod tests;
