use super::bundle::{conic_bundle, format_complex_poly, ConicBundle};
use super::{Decision, GeometryError};
use crate::forms::linalg::det;
use crate::forms::{rank_exact, CPoint, Form, Poly, Rat, Scalar, C64};
use crate::tracker::{norm2, polish_solutions, random_unit, ProjectiveSolution, refine, refine_projective, solve_all, solve_overdetermined, solve_projective, NumPoly, NumSystem, TrackerSettings};
use crate::witness::{monodromy_partition, witness_points_numeric, ComponentPartition, Orbits, SlicedSystem, WitnessError};
use crate::Certification;
use nalgebra::DMatrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

/// Loops spent looking for a sheet swap of the double cover of D_l.
pub const COVER_LOOP_BUDGET: usize = 24;
const DISCRIMINANT_LOOPS: usize = 50;
const ABC_TOL: f64 = 1e-10;
const ABC_MARGINAL: f64 = 1e-6;
const RANK_ONE_TOL: f64 = 1e-9;
const RANK_ONE_MARGINAL: f64 = 1e-6;
/// Candidates kept for polishing, and how far polishing may move them.
const LOOSE_FILTER: f64 = 1e-2;
const POLISH_MOVE: f64 = 1e-2;
/// Relative size of f on a numerically computed line.
const DISCRIMINANT_SOLVES: usize = 3;
/// Polished roots of ∇D_l reach roundoff; false minima of the residual stall near 1e-8.
const DISCRIMINANT_FILTER: f64 = 1e-10;
/// Roots of ∇D_l at a triple point are only accurate to about √ε.
const DISCRIMINANT_MERGE: f64 = 1e-4;
const LINE_TOL: f64 = 1e-8;
/// Recorded with every good-line verdict.
pub const GOOD_CRITERION: &str =
    "reconstructed criterion: l avoids Sing X, no residual conic contains l, no residual conic is a double line";

fn normalized(p: &Poly<C64>) -> Poly<C64> {
    let n = NumPoly::new(p).coefficient_norm();
    if n == 0.0 {
        p.clone()
    } else {
        p.scale(&C64::new(1.0 / n, 0.0))
    }
}

fn cmatrix<K: Scalar>(m: &[Vec<K>]) -> DMatrix<C64> {
    DMatrix::from_fn(m.len(), m[0].len(), |i, j| m[i][j].to_c64())
}

/// Unit vector spanning the numerical kernel: the last right singular vector.
fn kernel_vector(m: &DMatrix<C64>) -> Vec<C64> {
    let svd = m.clone().svd(false, true);
    let vt = svd.v_t.unwrap();
    let (k, _) = svd.singular_values.iter().enumerate().min_by(|a, b| a.1.partial_cmp(b.1).unwrap()).unwrap();
    vt.row(k).iter().map(|c| c.conj()).collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct GoodVerdict {
    pub good: Decision,
    pub criterion: &'static str,
    pub certification: Certification,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
    /// A fiber y ∈ P² whose residual conic contains l or has rank ≤ 1.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Vec<C64>>,
    /// |det| of the coefficient matrix of A, B, C over the product of its row norms.
    pub abc_determinant: f64,
    /// Relative residuals of the minors of M at candidate rank ≤ 1 fibers.
    pub minor_residuals: Vec<f64>,
}

/// Good ⇔ no residual conic contains l and no residual conic is a double line.
///
/// `hints` are fibers checked first, typically [`ConicBundle::fiber_of`] at the
/// singular points of X: over a corank-3 point the residual conic is always a
/// double line, and that root of the minors is too degenerate to be tracked.
pub fn good_line_test<K: Scalar>(
    cb: &ConicBundle<K>,
    hints: &[Vec<K>],
    cfg: &TrackerSettings,
    rng: &mut ChaCha8Rng,
) -> Result<GoodVerdict, GeometryError> {
    let abc = cb.abc_matrix();
    let d = det(&abc);
    let norms: f64 = abc.iter().map(|r| norm2(&r.iter().map(|c| c.to_c64()).collect::<Vec<_>>())).product();
    let rel = if norms == 0.0 { 0.0 } else { d.magnitude() / norms };
    let exact_cert = if K::EXACT { Certification::Exact } else { Certification::CertifiedNumeric };
    if d.is_zero() || rel < ABC_TOL {
        return Ok(GoodVerdict {
            criterion: GOOD_CRITERION,
            good: Decision::No,
            certification: exact_cert,
            reason: Some("a residual conic contains l: A, B, C have a common zero".into()),
            witness: Some(kernel_vector(&cmatrix(&abc))),
            abc_determinant: rel,
            minor_residuals: vec![],
        });
    }
    if !K::EXACT && rel < ABC_MARGINAL {
        return Ok(GoodVerdict {
            criterion: GOOD_CRITERION,
            good: Decision::Undetermined,
            certification: Certification::Uncertified,
            reason: Some("A, B, C are numerically close to dependent".into()),
            witness: None,
            abc_determinant: rel,
            minor_residuals: vec![],
        });
    }
    let exact_minors = cb.minors();
    let minors: Vec<Poly<C64>> = exact_minors.iter().map(|p| normalized(&p.to_complex())).collect();
    let degrees: Vec<u32> = minors.iter().map(|p| p.degree().unwrap_or(0)).collect();
    let check = NumSystem::from_polys(&minors);
    let double_line = |y: Vec<C64>, r: f64, certification| GoodVerdict {
        criterion: GOOD_CRITERION,
        good: Decision::No,
        certification,
        reason: Some("a residual conic is a double line".into()),
        witness: Some(y),
        abc_determinant: rel,
        minor_residuals: vec![r],
    };
    for y in hints {
        let yc: Vec<C64> = y.iter().map(|c| c.to_c64()).collect();
        if K::EXACT {
            if exact_minors.iter().all(|m| m.eval(y).is_zero()) {
                return Ok(double_line(yc, 0.0, Certification::Exact));
            }
            continue;
        }
        let r0 = check.relative_residual(&yc, &degrees);
        let (y, r) = if r0 < RANK_ONE_TOL { (yc, r0) } else { refine_projective(&check, &degrees, &yc, 50) };
        if r < RANK_ONE_TOL {
            return Ok(double_line(y, r, Certification::CertifiedNumeric));
        }
    }
    let mut residuals = Vec::new();
    // Two independent random patches.
    for _ in 0..2 {
        let raw = solve_overdetermined(&minors, cfg, LOOSE_FILTER, rng)?;
        for s in polish_solutions(&minors, raw, POLISH_MOVE, cfg) {
            let r = check.relative_residual(&s.point.coords, &degrees);
            if r >= RANK_ONE_MARGINAL {
                continue;
            }
            if r < RANK_ONE_TOL {
                return Ok(double_line(s.point.coords, r, Certification::CertifiedNumeric));
            }
            residuals.push(r);
        }
    }
    let marginal = !residuals.is_empty();
    Ok(GoodVerdict {
        criterion: GOOD_CRITERION,
        good: if marginal { Decision::Undetermined } else { Decision::Yes },
        certification: if marginal { Certification::Uncertified } else { Certification::CertifiedNumeric },
        reason: marginal.then(|| "minors nearly vanish at some fiber".to_string()),
        witness: None,
        abc_determinant: rel,
        minor_residuals: residuals,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct LineVerdict {
    pub line: [CPoint; 2],
    #[serde(skip_serializing_if = "Option::is_none")]
    pub exact_line: Option<[Vec<String>; 2]>,
    pub good: GoodVerdict,
    pub discriminant: String,
    pub discriminant_degree: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub discriminant_squarefree: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub discriminant_irreducible: Option<Decision>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub discriminant_partition: Option<ComponentPartition>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cover_connected: Option<Decision>,
    pub cover_loops: usize,
    pub very_good: Decision,
    pub certification: Certification,
    pub seed: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

/// Irreducibility of D_l by monodromy and trace test, then connectedness of
/// the double cover by lines of the residual line pairs. A line u + s·w in
/// the fiber plane meets the two lines of M(y) at the two roots s, so the
/// curve {D_l = 0, (u+sw)ᵀM(y)(u+sw) = 0} is birational to the cover.
pub fn very_good_test(cb: &ConicBundle<C64>, good: GoodVerdict, cfg: &TrackerSettings, seed: u64) -> Result<LineVerdict, GeometryError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let dl = normalized(&cb.discriminant);
    let mut v = LineVerdict {
        line: [CPoint::new(cb.line[0].clone()), CPoint::new(cb.line[1].clone())],
        exact_line: None,
        discriminant: format_complex_poly(&dl, "y"),
        discriminant_degree: dl.homogeneous_degree(),
        good,
        discriminant_squarefree: None,
        discriminant_irreducible: None,
        discriminant_partition: None,
        cover_connected: None,
        cover_loops: 0,
        very_good: Decision::No,
        certification: Certification::Exact,
        seed,
        note: None,
    };
    if !v.good.good.is_yes() {
        v.certification = v.good.certification;
        v.note = Some("not a good line".into());
        return Ok(v);
    }
    if v.discriminant_degree != Some(5) {
        return Err(GeometryError::NotOnX { residual: f64::NAN });
    }
    let w = match witness_points_numeric(&[dl.clone()], &[5], vec![v.discriminant.clone()], cfg, &mut rng) {
        Ok(w) => w,
        Err(WitnessError::Degenerate { .. }) => {
            v.discriminant_squarefree = Some(false);
            v.certification = Certification::Probabilistic;
            v.note = Some("D_l has a multiple component".into());
            return Ok(v);
        }
        Err(e) => return Err(e.into()),
    };
    // Five simple witness points on a generic line: no multiple component.
    v.discriminant_squarefree = Some(true);
    let part = monodromy_partition(&w, DISCRIMINANT_LOOPS, cfg, &mut rng)?;
    let irreducible = match (part.certified, part.k()) {
        (false, _) => Decision::Undetermined,
        (true, 1) => Decision::Yes,
        (true, _) => Decision::No,
    };
    v.discriminant_irreducible = Some(irreducible);
    v.discriminant_partition = Some(part);
    if irreducible != Decision::Yes {
        v.certification = if irreducible == Decision::No { Certification::CertifiedNumeric } else { Certification::Uncertified };
        return Ok(v);
    }

    let u: Vec<C64> = (0..3).map(|_| random_unit(&mut rng)).collect();
    let dir: Vec<C64> = (0..3).map(|_| random_unit(&mut rng)).collect();
    let emb = [0usize, 1, 2];
    let sv: Vec<Poly<C64>> = (0..3).map(|i| Poly::constant(4, u[i]).add(&Poly::var(4, 3).scale(&dir[i]))).collect();
    let mut q = Poly::zero(4);
    for i in 0..3 {
        for j in 0..3 {
            q = q.add(&cb.m[i][j].embed(4, &emb).mul(&sv[i]).mul(&sv[j]));
        }
    }
    let mut patch: Vec<C64> = w.patch.clone();
    patch.push(C64::new(0.0, 0.0));
    let patch = Poly::linear(&patch).sub(&Poly::constant(4, C64::new(1.0, 0.0)));
    let sys = SlicedSystem::new(vec![dl.embed(4, &emb), normalized(&q), patch], 3);
    let base = w.base_slice().to_vec();
    let square = sys.square(&base);
    let mut pts = Vec::with_capacity(10);
    for y in &w.points {
        let m = cb.m_at(y);
        let form = |a: &[C64], b: &[C64]| -> C64 { (0..3).flat_map(|i| (0..3).map(move |j| (i, j))).map(|(i, j)| a[i] * m[i][j] * b[j]).sum() };
        let (qa, qb, qc) = (form(&dir, &dir), form(&u, &dir) * 2.0, form(&u, &u));
        let disc = (qb * qb - qa * qc * 4.0).sqrt();
        for s in [(-qb + disc) / (qa * 2.0), (-qb - disc) / (qa * 2.0)] {
            let mut x = y.clone();
            x.push(s);
            let x = refine(&square, &x, cfg.refine_tolerance, 8).map(|(x, _)| x).unwrap_or(x);
            pts.push(x);
        }
    }
    if crate::witness::match_points(&pts, &pts).is_none() {
        v.cover_connected = Some(Decision::Undetermined);
        v.certification = Certification::Uncertified;
        v.note = Some("lifted witness points are not distinct".into());
        return Ok(v);
    }
    let mut orbits = Orbits::new(pts.len());
    let (mut loops, mut discarded) = (0, 0);
    while orbits.count() > 1 && loops < COVER_LOOP_BUDGET && discarded < COVER_LOOP_BUDGET {
        match sys.loop_permutation(&pts, &base, cfg, &mut rng) {
            Some(perm) => {
                loops += 1;
                orbits.merge_permutation(&perm);
            }
            None => discarded += 1,
        }
    }
    v.cover_loops = loops;
    if orbits.count() == 1 {
        v.cover_connected = Some(Decision::Yes);
        v.very_good = Decision::Yes;
        v.certification = Certification::CertifiedNumeric;
    } else {
        v.cover_connected = Some(Decision::No);
        v.certification = Certification::Probabilistic;
        v.note = Some(format!("no sheet swap in {loops} loops: cover likely split"));
    }
    Ok(v)
}

/// The line through `line[0]` and `line[1]` passes within `tol` of `s`.
pub fn line_meets(line: &[Vec<C64>; 2], s: &CPoint, tol: f64) -> bool {
    let dot = |a: &[C64], b: &[C64]| -> C64 { a.iter().zip(b).map(|(x, y)| x.conj() * y).sum() };
    let e0: Vec<C64> = {
        let n = norm2(&line[0]);
        line[0].iter().map(|c| c / n).collect()
    };
    let r: Vec<C64> = {
        let k = dot(&e0, &line[1]);
        line[1].iter().zip(&e0).map(|(b, a)| b - a * k).collect()
    };
    let e1: Vec<C64> = r.iter().map(|c| c / norm2(&r)).collect();
    let (k0, k1) = (dot(&e0, &s.coords), dot(&e1, &s.coords));
    let rest: Vec<C64> = s.coords.iter().zip(e0.iter().zip(&e1)).map(|(x, (a, b))| x - a * k0 - b * k1).collect();
    norm2(&rest) / norm2(&s.coords) < tol
}

/// Directions v with x + t·v ⊂ X, for a point x ∈ X: the common zeros of
/// ∇f(x)·v, vᵀ∇²f(x)v and f(v) on a random hyperplane of directions.
pub fn lines_through_point(f: &Form<Rat>, x: &[C64], cfg: &TrackerSettings, rng: &mut ChaCha8Rng) -> Result<Vec<Vec<C64>>, GeometryError> {
    let fc = f.poly().to_complex();
    let b: Vec<Vec<C64>> = (0..5).map(|_| (0..4).map(|_| random_unit(rng)).collect()).collect();
    let images: Vec<Poly<C64>> = b.iter().map(|row| Poly::linear(row)).collect();
    let grad = fc.gradient();
    let mut e1 = Poly::zero(4);
    let mut e2 = Poly::zero(4);
    for i in 0..5 {
        e1 = e1.add(&images[i].scale(&grad[i].eval_c(x)));
        let gi = grad[i].gradient();
        for j in 0..5 {
            e2 = e2.add(&images[i].mul(&images[j]).scale(&gi[j].eval_c(x)));
        }
    }
    let e3 = fc.compose(&images);
    let (sols, _) = solve_projective(&[normalized(&e1), normalized(&e2), normalized(&e3)], cfg, rng)?;
    Ok(sols
        .into_iter()
        .filter(|s| s.multiplicity == 1 && !s.singular)
        .map(|s| (0..5).map(|i| (0..4).map(|j| b[i][j] * s.point.coords[j]).sum()).collect())
        .collect())
}

fn line_residual(f: &NumSystem, line: &[Vec<C64>; 2]) -> f64 {
    [C64::new(0.7, 0.3), C64::new(-1.1, 0.5), C64::new(0.2, -1.3)]
        .iter()
        .map(|t| {
            let p: Vec<C64> = line[0].iter().zip(&line[1]).map(|(a, b)| a + b * t).collect();
            let n = norm2(&p);
            let p: Vec<C64> = p.iter().map(|c| c / n).collect();
            f.relative_residual(&p, &[3])
        })
        .fold(0.0, f64::max)
}

/// Random complex lines on X avoiding the points `avoid`: a random line meets
/// X in a point x, and at most two of the six lines through x are kept.
pub fn sample_lines(
    f: &Form<Rat>,
    count: usize,
    avoid: &[CPoint],
    cfg: &TrackerSettings,
    rng: &mut ChaCha8Rng,
) -> Result<Vec<[Vec<C64>; 2]>, GeometryError> {
    let fc = f.poly().to_complex();
    let check = NumSystem::from_polys(&[fc.clone()]);
    let mut out = Vec::with_capacity(count);
    let attempts = 20 * count.max(1);
    for _ in 0..attempts {
        if out.len() >= count {
            break;
        }
        let a: Vec<C64> = (0..5).map(|_| random_unit(rng)).collect();
        let d: Vec<C64> = (0..5).map(|_| random_unit(rng)).collect();
        let images: Vec<Poly<C64>> = (0..5).map(|i| Poly::constant(1, a[i]).add(&Poly::var(1, 0).scale(&d[i]))).collect();
        let g = normalized(&fc.compose(&images));
        let rep = solve_all(&[g], cfg, rng)?;
        let Some(t) = rep.solutions.iter().find(|s| s.multiplicity == 1 && !s.singular).map(|s| s.point[0]) else { continue };
        let x: Vec<C64> = a.iter().zip(&d).map(|(a, d)| a + d * t).collect();
        let n = norm2(&x);
        let x: Vec<C64> = x.iter().map(|c| c / n).collect();
        if avoid.iter().any(|s| CPoint::new(x.clone()).distance(s) < 1e-6) {
            continue;
        }
        let dirs = lines_through_point(f, &x, cfg, rng)?;
        for v in dirs.into_iter().take(2) {
            let n = norm2(&v);
            let line = [x.clone(), v.iter().map(|c| c / n).collect()];
            if line_residual(&check, &line) < LINE_TOL && !avoid.iter().any(|s| line_meets(&line, s, 1e-6)) && out.len() < count {
                out.push(line);
            }
        }
    }
    if out.is_empty() && count > 0 {
        return Err(GeometryError::NoLines { attempts });
    }
    Ok(out)
}

/// Conic bundle, good test and very-good test for one numerically given line.
pub fn analyze_numeric_line(
    f: &Form<Rat>,
    line: &[Vec<C64>; 2],
    singular: &[CPoint],
    cfg: &TrackerSettings,
    seed: u64,
) -> Result<LineVerdict, GeometryError> {
    if let Some(s) = singular.iter().find(|s| line_meets(line, s, 1e-6)) {
        return Err(GeometryError::MeetsSingular { point: format!("{:?}", s.coords) });
    }
    let cb = conic_bundle(&f.to_complex(), &line[0], &line[1], LINE_TOL)?;
    let hints: Vec<Vec<C64>> = singular.iter().map(|s| cb.fiber_of(&s.coords)).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let good = good_line_test(&cb, &hints, cfg, &mut rng)?;
    very_good_test(&cb, good, cfg, rng.gen())
}

/// Singular point of X given exactly when rational, numerically otherwise.
#[derive(Clone, Debug)]
pub struct KnownPoint {
    pub exact: Option<Vec<Rat>>,
    pub numeric: CPoint,
}

/// Same as [`analyze_numeric_line`] for the line through two rational points:
/// containment, incidence with rational singular points and the good test are exact.
pub fn analyze_exact_line(f: &Form<Rat>, p: &[Rat], q: &[Rat], singular: &[KnownPoint], cfg: &TrackerSettings, seed: u64) -> Result<LineVerdict, GeometryError> {
    let cb = conic_bundle(f, p, q, 0.0)?;
    let pc: Vec<C64> = p.iter().map(|x| x.to_c64()).collect();
    let qc: Vec<C64> = q.iter().map(|x| x.to_c64()).collect();
    for s in singular {
        let meets = match &s.exact {
            Some(e) => rank_exact(&vec![p.to_vec(), q.to_vec(), e.clone()]) == 2,
            None => line_meets(&[pc.clone(), qc.clone()], &s.numeric, 1e-6),
        };
        if meets {
            return Err(GeometryError::MeetsSingular { point: format!("{:?}", s.numeric.coords) });
        }
    }
    // Irrational points only enter through the minors solve.
    let hints: Vec<Vec<Rat>> = singular.iter().filter_map(|s| s.exact.as_ref().map(|e| cb.fiber_of(e))).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let good = good_line_test(&cb, &hints, cfg, &mut rng)?;
    let mut v = very_good_test(&cb.to_complex(), good, cfg, rng.gen())?;
    v.exact_line = Some([p.iter().map(|x| x.to_string()).collect(), q.iter().map(|x| x.to_string()).collect()]);
    Ok(v)
}

#[derive(Clone, Debug, Serialize)]
pub struct LineSearch {
    pub lines: Vec<LineVerdict>,
    pub good_lines: usize,
    pub found: bool,
    pub certification: Certification,
    pub seed: u64,
}

/// Samples lines until one is very good or `max_good` good lines were tested.
pub fn search_very_good(f: &Form<Rat>, singular: &[CPoint], max_good: usize, cfg: &TrackerSettings, seed: u64) -> Result<LineSearch, GeometryError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut lines = Vec::new();
    let mut good_lines = 0;
    let mut found = false;
    let mut budget = 4 * max_good;
    while good_lines < max_good && !found && budget > 0 {
        for line in sample_lines(f, 2, singular, cfg, &mut rng)? {
            if good_lines >= max_good || found {
                break;
            }
            budget = budget.saturating_sub(1);
            let v = analyze_numeric_line(f, &line, singular, cfg, rng.gen())?;
            if v.good.good.is_yes() {
                good_lines += 1;
            }
            found |= v.very_good.is_yes();
            lines.push(v);
        }
    }
    let certification = if found { Certification::CertifiedNumeric } else { Certification::Probabilistic };
    Ok(LineSearch { lines, good_lines, found, certification, seed })
}

#[derive(Clone, Debug, Serialize)]
pub struct DiscriminantSingularity {
    pub point: CPoint,
    /// Endpoints landing here, summed over the independent solves.
    pub multiplicity: usize,
    /// 2 − rank of the Hessian of D_l at the point.
    pub corank: usize,
}

/// Singular points of the plane quintic D_l from its gradient system.
pub fn discriminant_singularities<K: Scalar>(
    cb: &ConicBundle<K>,
    cfg: &TrackerSettings,
    rng: &mut ChaCha8Rng,
) -> Result<Vec<DiscriminantSingularity>, GeometryError> {
    let dl = normalized(&cb.discriminant.to_complex());
    let grads: Vec<Poly<C64>> = dl.gradient().iter().map(normalized).collect();
    let hess: Vec<Vec<Poly<C64>>> = grads.iter().map(|g| g.gradient()).collect();
    // Random combinations of a degenerate system occasionally lose roots to
    // path jumping; independent draws are pooled.
    let fine = TrackerSettings { max_step: cfg.max_step.min(0.02), ..cfg.clone() };
    let mut raw = Vec::new();
    for _ in 0..DISCRIMINANT_SOLVES {
        raw.extend(solve_overdetermined(&grads, &fine, LOOSE_FILTER, rng)?);
    }
    let check = NumSystem::from_polys(&grads);
    let residual = |s: &ProjectiveSolution| check.relative_residual(&s.point.coords, &[4, 4, 4]);
    let mut found: Vec<ProjectiveSolution> = polish_solutions(&grads, raw, POLISH_MOVE, cfg).into_iter().filter(|s| residual(s) < DISCRIMINANT_FILTER).collect();
    found.sort_by(|a, b| residual(a).total_cmp(&residual(b)));
    let mut merged: Vec<ProjectiveSolution> = Vec::new();
    for s in found {
        match merged.iter_mut().find(|m| m.point.distance(&s.point) < DISCRIMINANT_MERGE) {
            Some(m) => m.multiplicity += s.multiplicity,
            None => merged.push(s),
        }
    }
    Ok(merged
        .into_iter()
        .map(|s| {
            let h = DMatrix::from_fn(3, 3, |i, j| hess[i][j].eval_c(&s.point.coords));
            let sv = h.svd(false, false).singular_values;
            // D_l and its gradient are normalized, so the threshold is absolute.
            let rank = sv.iter().filter(|&&x| x > 1e-6).count().min(2);
            DiscriminantSingularity { point: s.point, multiplicity: s.multiplicity, corank: 2 - rank }
        })
        .collect())
}
