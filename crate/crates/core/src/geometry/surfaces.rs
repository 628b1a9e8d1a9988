use super::{Decision, GeometryError};
use crate::defect::{project, DefectReport, PointDefect};
use crate::forms::linalg::nullspace;
use crate::forms::{Form, Rat, Scalar, C64};
use crate::tracker::{norm2, random_unit, TrackerSettings};
use crate::witness::{WitnessSet, QuadricKind};
use nalgebra::DMatrix;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

/// Ratio between consecutive singular values that separates a numerical rank.
pub const SPAN_GAP: f64 = 1e6;
/// Below this largest ratio the sample matrix has full rank.
const FULL_RANK_GAP: f64 = 1e3;

/// Linear span of one block of witness points, sampled on two slices.
#[derive(Clone, Debug, Serialize)]
pub struct SpanTest {
    pub block: Vec<usize>,
    /// Dimension of the linear span plus one; `None` when the gap is marginal.
    pub rank: Option<usize>,
    pub singular_values: Vec<f64>,
    /// Normal vector of the spanned plane when the rank is 3.
    #[serde(skip)]
    pub normal: Option<Vec<C64>>,
}

fn numerical_rank(sv: &[f64]) -> Option<usize> {
    let ratios: Vec<f64> = sv.windows(2).map(|w| w[0] / w[1].max(1e-300)).collect();
    if let Some(i) = ratios.iter().position(|&r| r >= SPAN_GAP) {
        return Some(i + 1);
    }
    if ratios.iter().all(|&r| r <= FULL_RANK_GAP) {
        return Some(sv.len());
    }
    None
}

pub fn block_span(w: &WitnessSet, block: &[usize], cfg: &TrackerSettings, rng: &mut ChaCha8Rng) -> Result<SpanTest, GeometryError> {
    let base: Vec<Vec<C64>> = block.iter().map(|&i| w.points[i].clone()).collect();
    let sys = w.system();
    let mut moved = None;
    for _ in 0..3 {
        let to: Vec<C64> = (0..sys.slice_vars).map(|_| random_unit(rng)).collect();
        moved = sys.move_points(&base, w.base_slice(), &to, cfg);
        if moved.is_some() {
            break;
        }
    }
    let Some(moved) = moved else {
        return Ok(SpanTest { block: block.to_vec(), rank: None, singular_values: vec![], normal: None });
    };
    let rows: Vec<Vec<C64>> = base.into_iter().chain(moved).collect();
    let n = rows[0].len();
    let m = DMatrix::from_fn(rows.len(), n, |i, j| rows[i][j] / norm2(&rows[i]));
    let svd = m.svd(false, true);
    let mut order: Vec<usize> = (0..svd.singular_values.len()).collect();
    order.sort_by(|&a, &b| svd.singular_values[b].partial_cmp(&svd.singular_values[a]).unwrap());
    let sv: Vec<f64> = order.iter().map(|&k| svd.singular_values[k]).collect();
    let rank = numerical_rank(&sv);
    let normal = match rank {
        Some(r) if r + 1 == n && sv.len() == n => {
            let vt = svd.v_t.as_ref().unwrap();
            Some(vt.row(order[n - 1]).iter().map(|c| c.conj()).collect())
        }
        _ => None,
    };
    Ok(SpanTest { block: block.to_vec(), rank, singular_values: sv, normal })
}

#[derive(Clone, Debug, Serialize)]
pub struct SurfaceVerdict {
    pub contains_plane: Decision,
    pub contains_scroll: Decision,
    /// Which component pattern decided the verdict.
    pub pattern: String,
    pub spans: Vec<SpanTest>,
    pub sigma: Option<usize>,
    /// (plane or scroll) agrees with σ > 0.
    pub consistent_with_sigma: Option<bool>,
}

impl SurfaceVerdict {
    fn new(plane: Decision, scroll: Decision, pattern: &str, spans: Vec<SpanTest>) -> Self {
        SurfaceVerdict { contains_plane: plane, contains_scroll: scroll, pattern: pattern.into(), spans, sigma: None, consistent_with_sigma: None }
    }

    pub fn fires(&self) -> bool {
        self.contains_plane.is_yes() || self.contains_scroll.is_yes()
    }
}

/// Plane or cubic scroll in X from the decomposition of C_q at one point.
pub fn detect_plane_scroll(
    f: &Form<Rat>,
    pd: &PointDefect,
    cfg: &TrackerSettings,
    rng: &mut ChaCha8Rng,
) -> Result<SurfaceVerdict, GeometryError> {
    use Decision::{No, Undetermined, Yes};
    let part = &pd.partition;
    if part.k() == 1 {
        return Ok(SurfaceVerdict::new(No, No, "irreducible projection curve", vec![]));
    }
    if part.degrees.contains(&1) {
        return Ok(SurfaceVerdict::new(Yes, No, "line component", vec![]));
    }
    let mut spans = Vec::new();
    for b in part.blocks.iter().filter(|b| b.len() == 2) {
        spans.push(block_span(&pd.witness, b, cfg, rng)?);
    }
    if !spans.is_empty() {
        return Ok(if spans.iter().all(|s| s.rank == Some(3)) {
            SurfaceVerdict::new(Yes, No, "plane conic component", spans)
        } else {
            SurfaceVerdict::new(Undetermined, Undetermined, "conic component with marginal span", spans)
        });
    }
    if pd.corank >= 2 && part.k() >= 3 {
        return Ok(SurfaceVerdict::new(Yes, No, "reducible beyond the two planes of the quadric", spans));
    }
    // Remaining patterns: two blocks of degree 3.
    if part.degrees != [3, 3] {
        return Ok(SurfaceVerdict::new(Undetermined, Undetermined, "unexpected component pattern", spans));
    }
    for b in &part.blocks {
        spans.push(block_span(&pd.witness, b, cfg, rng)?);
    }
    let ranks: Vec<Option<usize>> = spans.iter().map(|s| s.rank).collect();
    if ranks.iter().any(|r| r.is_none()) {
        return Ok(SurfaceVerdict::new(Undetermined, Undetermined, "twisted or plane cubic: marginal span", spans));
    }
    match pd.corank {
        2 if ranks.iter().all(|&r| r == Some(3)) => Ok(SurfaceVerdict::new(No, No, "two plane cubics in the two planes of the quadric", spans)),
        0 | 1 if ranks.iter().all(|&r| r == Some(4)) => Ok(SurfaceVerdict::new(No, Yes, "two twisted cubics", spans)),
        1 => {
            let vertex = cone_vertex(f, pd)?;
            let plane_missing_vertex = spans.iter().any(|s| match (&s.normal, &vertex) {
                (Some(n), Some(v)) => {
                    let dot: C64 = n.iter().zip(v).map(|(a, b)| a * b).sum();
                    dot.norm() / (norm2(n) * norm2(v)) > 1e-6
                }
                _ => false,
            });
            if plane_missing_vertex {
                Ok(SurfaceVerdict::new(Yes, No, "plane cubic away from the vertex of the quadric cone", spans))
            } else {
                Ok(SurfaceVerdict::new(Undetermined, Undetermined, "plane cubic through the vertex", spans))
            }
        }
        _ => Ok(SurfaceVerdict::new(Undetermined, Undetermined, "cubic components with unexpected spans", spans)),
    }
}

fn cone_vertex(f: &Form<Rat>, pd: &PointDefect) -> Result<Option<Vec<C64>>, GeometryError> {
    if pd.quadric.kind != QuadricKind::Cone {
        return Ok(None);
    }
    let p = project(f, &pd.point).map_err(|_| GeometryError::NotCubic)?;
    let m = p.g2.quad_matrix()?;
    Ok(nullspace(&m, 4).first().map(|v| v.iter().map(|c| c.to_c64()).collect()))
}

/// Surface verdict for the whole threefold, checked against σ.
pub fn surfaces(f: &Form<Rat>, defect: &DefectReport, cfg: &TrackerSettings, rng: &mut ChaCha8Rng) -> Result<SurfaceVerdict, GeometryError> {
    let mut v = if defect.cone {
        SurfaceVerdict::new(Decision::Yes, Decision::Undetermined, "cone: the cone over a line of the base surface is a plane", vec![])
    } else if let Some(pd) = &defect.chosen {
        detect_plane_scroll(f, pd, cfg, rng)?
    } else {
        SurfaceVerdict::new(Decision::No, Decision::No, "smooth: every surface is a multiple of the hyperplane class", vec![])
    };
    v.sigma = defect.sigma;
    v.consistent_with_sigma = defect.sigma.map(|s| v.fires() == (s > 0));
    Ok(v)
}
