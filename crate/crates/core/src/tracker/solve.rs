use super::eval::{norm2, NumPoly, NumSystem};
use super::track::{track_to_end, LinearHomotopy, PathStatus};
use super::{TrackerError, TrackerSettings};
use crate::forms::{CPoint, Monomial, Poly, C64};
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

pub fn random_unit(rng: &mut ChaCha8Rng) -> C64 {
    C64::from_polar(1.0, rng.gen_range(0.0..std::f64::consts::TAU))
}

/// Start system x_i^{d_i} − 1 and its Π d_i solutions.
pub fn total_degree_start(sys: &[Poly<C64>]) -> Result<(Vec<Poly<C64>>, Vec<Vec<C64>>), TrackerError> {
    let n = sys.first().map(|p| p.nvars()).unwrap_or(0);
    if sys.len() != n {
        return Err(TrackerError::NotSquare { equations: sys.len(), vars: n });
    }
    let degs: Vec<u32> = sys.iter().map(|p| p.degree().unwrap_or(0).max(1)).collect();
    let start: Vec<Poly<C64>> = degs
        .iter()
        .enumerate()
        .map(|(i, &d)| {
            let mut e = vec![0u16; n];
            e[i] = d as u16;
            Poly::monomial(Monomial(e), C64::new(1.0, 0.0)).sub(&Poly::constant(n, C64::new(1.0, 0.0)))
        })
        .collect();
    let mut sols: Vec<Vec<C64>> = vec![vec![]];
    for &d in &degs {
        let roots: Vec<C64> = (0..d).map(|k| C64::from_polar(1.0, std::f64::consts::TAU * k as f64 / d as f64)).collect();
        sols = sols.into_iter().flat_map(|s| roots.iter().map(move |r| { let mut v = s.clone(); v.push(*r); v })).collect();
    }
    Ok((start, sols))
}

/// One isolated solution; `multiplicity` is the number of paths ending there.
#[derive(Clone, Debug, Serialize)]
pub struct Solution {
    pub point: Vec<C64>,
    pub multiplicity: usize,
    pub singular: bool,
    pub condition: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct SolveReport {
    pub solutions: Vec<Solution>,
    pub paths: usize,
    pub converged: usize,
    pub singular: usize,
    pub diverged: usize,
    pub failed: usize,
    pub gamma: C64,
}

/// Tracks every total-degree path of the square system `sys` and clusters the endpoints.
pub fn solve_all(sys: &[Poly<C64>], cfg: &TrackerSettings, rng: &mut ChaCha8Rng) -> Result<SolveReport, TrackerError> {
    cfg.validate()?;
    let (start, starts) = total_degree_start(sys)?;
    let gamma = random_unit(rng);
    let a: Vec<NumPoly> = start.iter().map(|g| NumPoly::new(&g.scale(&gamma))).collect();
    let b: Vec<NumPoly> = sys.iter().zip(&start).map(|(f, g)| NumPoly::new(&f.sub(&g.scale(&gamma)))).collect();
    let h = LinearHomotopy::new(NumSystem::new(a), NumSystem::new(b));
    let run = |s: &Vec<C64>| track_to_end(&h, s, cfg);
    let ends: Vec<_> = if cfg.parallel { starts.par_iter().map(run).collect() } else { starts.iter().map(run).collect() };
    let count = |st: PathStatus| ends.iter().filter(|e| e.status == st).count();
    let (converged, singular, diverged, failed) =
        (count(PathStatus::Converged), count(PathStatus::SingularEndpoint), count(PathStatus::Diverged), count(PathStatus::Failed));
    if failed as f64 > cfg.max_failure_fraction * ends.len() as f64 {
        return Err(TrackerError::TooManyFailures { failed, paths: ends.len() });
    }
    let mut clusters: Vec<Solution> = Vec::new();
    let mut members: Vec<Vec<Vec<C64>>> = Vec::new();
    for e in ends.iter().filter(|e| matches!(e.status, PathStatus::Converged | PathStatus::SingularEndpoint)) {
        let hit = clusters.iter().position(|c| {
            let d: Vec<C64> = c.point.iter().zip(&e.x).map(|(a, b)| a - b).collect();
            norm2(&d) < cfg.clustering_radius * (1.0 + norm2(&e.x))
        });
        match hit {
            Some(i) => {
                clusters[i].multiplicity += 1;
                clusters[i].singular = true;
                clusters[i].condition = clusters[i].condition.max(e.condition);
                members[i].push(e.x.clone());
            }
            None => {
                clusters.push(Solution {
                    point: e.x.clone(),
                    multiplicity: 1,
                    singular: e.status == PathStatus::SingularEndpoint,
                    condition: e.condition,
                });
                members.push(vec![e.x.clone()]);
            }
        }
    }
    for (c, m) in clusters.iter_mut().zip(&members) {
        if m.len() > 1 {
            let k = m.len() as f64;
            c.point = (0..c.point.len()).map(|i| m.iter().map(|x| x[i]).sum::<C64>() / k).collect();
        }
    }
    Ok(SolveReport { solutions: clusters, paths: ends.len(), converged, singular, diverged, failed, gamma })
}

#[derive(Clone, Debug, Serialize)]
pub struct ProjectiveSolution {
    pub point: CPoint,
    pub multiplicity: usize,
    pub singular: bool,
}

/// Merges points closer than `radius` in the projective distance, summing multiplicities.
pub fn cluster_projective(points: Vec<ProjectiveSolution>, radius: f64) -> Vec<ProjectiveSolution> {
    let mut out: Vec<ProjectiveSolution> = Vec::new();
    for p in points {
        match out.iter_mut().find(|c| c.point.distance(&p.point) < radius) {
            Some(c) => {
                c.multiplicity += p.multiplicity;
                c.singular = true;
            }
            None => out.push(p),
        }
    }
    out
}

fn random_patch(n: usize, rng: &mut ChaCha8Rng) -> Poly<C64> {
    let coeffs: Vec<C64> = (0..n).map(|_| random_unit(rng)).collect();
    Poly::linear(&coeffs).sub(&Poly::constant(n, C64::new(1.0, 0.0)))
}

/// Solves n−1 homogeneous equations in n variables on a random affine patch.
pub fn solve_projective(
    forms: &[Poly<C64>],
    cfg: &TrackerSettings,
    rng: &mut ChaCha8Rng,
) -> Result<(Vec<ProjectiveSolution>, SolveReport), TrackerError> {
    let n = forms.first().map(|p| p.nvars()).unwrap_or(0);
    if forms.len() + 1 != n {
        return Err(TrackerError::NotSquare { equations: forms.len() + 1, vars: n });
    }
    let mut sys = forms.to_vec();
    sys.push(random_patch(n, rng));
    let rep = solve_all(&sys, cfg, rng)?;
    let pts = rep
        .solutions
        .iter()
        .filter(|s| norm2(&s.point) > 0.0)
        .map(|s| ProjectiveSolution { point: CPoint::new(s.point.clone()), multiplicity: s.multiplicity, singular: s.singular })
        .collect();
    Ok((cluster_projective(pts, cfg.clustering_radius), rep))
}

/// Common projective zeros of any number of homogeneous forms in n variables:
/// pads to a common degree with random linear factors, takes n−1 random
/// combinations, solves, and keeps the endpoints where every original form
/// vanishes to `filter_tol` (relative).
pub fn solve_overdetermined(
    forms: &[Poly<C64>],
    cfg: &TrackerSettings,
    filter_tol: f64,
    rng: &mut ChaCha8Rng,
) -> Result<Vec<ProjectiveSolution>, TrackerError> {
    let n = forms.first().map(|p| p.nvars()).unwrap_or(0);
    let forms: Vec<&Poly<C64>> = forms.iter().filter(|p| !p.is_zero()).collect();
    if forms.is_empty() {
        return Err(TrackerError::NotSquare { equations: 0, vars: n });
    }
    let dmax = forms.iter().map(|p| p.degree().unwrap()).max().unwrap();
    let padded: Vec<Poly<C64>> = forms
        .iter()
        .map(|p| {
            let mut q = (*p).clone();
            for _ in p.degree().unwrap()..dmax {
                let l: Vec<C64> = (0..n).map(|_| random_unit(rng)).collect();
                q = q.mul(&Poly::linear(&l));
            }
            q
        })
        .collect();
    let eqs: Vec<Poly<C64>> = if padded.len() == n - 1 {
        padded
    } else {
        (0..n - 1)
            .map(|_| padded.iter().fold(Poly::zero(n), |acc, p| acc.add(&p.scale(&random_unit(rng)))))
            .collect()
    };
    let (sols, _) = solve_projective(&eqs, cfg, rng)?;
    let check = NumSystem::from_polys(&forms.iter().map(|p| (*p).clone()).collect::<Vec<_>>());
    let degs: Vec<u32> = forms.iter().map(|p| p.degree().unwrap()).collect();
    Ok(sols.into_iter().filter(|s| check.relative_residual(&s.point.coords, &degs) < filter_tol).collect())
}

/// Endpoints at singular roots are only accurate to a power of the tracking
/// tolerance. Polishes each solution on the full system, keeping the polished
/// point only when it stays within `max_move` (projective distance), then
/// re-clusters.
pub fn polish_solutions(forms: &[Poly<C64>], sols: Vec<ProjectiveSolution>, max_move: f64, cfg: &TrackerSettings) -> Vec<ProjectiveSolution> {
    let check = NumSystem::from_polys(forms);
    let degs: Vec<u32> = forms.iter().map(|p| p.degree().unwrap_or(0)).collect();
    let polished = sols
        .into_iter()
        .map(|mut s| {
            let before = check.relative_residual(&s.point.coords, &degs);
            let (x, r) = refine_projective(&check, &degs, &s.point.coords, POLISH_ITERATIONS);
            let x = CPoint::new(x);
            if r < before && x.distance(&s.point) < max_move {
                s.point = x;
            }
            s
        })
        .collect();
    cluster_projective(polished, cfg.clustering_radius)
}

const POLISH_ITERATIONS: usize = 60;

/// Gauss–Newton for a homogeneous system with any number of equations, in the
/// chart where the largest coordinate of `x` is 1. Convergence is only linear
/// at singular roots. Returns the iterate with the smallest relative residual.
pub fn refine_projective(check: &NumSystem, degrees: &[u32], x: &[C64], max_iter: usize) -> (Vec<C64>, f64) {
    let n = x.len();
    let k = (0..n).max_by(|&a, &b| x[a].norm().partial_cmp(&x[b].norm()).unwrap()).unwrap();
    let mut x: Vec<C64> = x.iter().map(|c| c / x[k]).collect();
    let mut best = (x.clone(), check.relative_residual(&x, degrees));
    for _ in 0..max_iter {
        let (f, j) = check.eval_jac(&x);
        let svd = j.remove_column(k).svd(true, true);
        let eps = 1e-13 * svd.singular_values.max();
        let Ok(d) = svd.solve(&(-f), eps) else { break };
        let mut idx = 0;
        for (i, xi) in x.iter_mut().enumerate() {
            if i != k {
                *xi += d[idx];
                idx += 1;
            }
        }
        let r = check.relative_residual(&x, degrees);
        if r < best.1 {
            best = (x.clone(), r);
        }
        if d.norm() < 1e-15 * norm2(&x) || best.1 < 1e-15 {
            break;
        }
    }
    best
}
