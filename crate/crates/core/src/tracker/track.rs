use super::eval::{condition_number, norm2, norm_inf, NumSystem};
use super::TrackerSettings;
use crate::forms::C64;
use nalgebra::{DMatrix, DVector};
use serde::Serialize;

/// H(x, t) = A(x) + t·B(x).
#[derive(Clone, Debug)]
pub struct LinearHomotopy {
    pub a: NumSystem,
    pub b: NumSystem,
}

impl LinearHomotopy {
    pub fn new(a: NumSystem, b: NumSystem) -> Self {
        assert_eq!(a.len(), b.len());
        assert_eq!(a.nvars, b.nvars);
        assert_eq!(a.len(), a.nvars, "homotopy must be square");
        LinearHomotopy { a, b }
    }

    pub fn nvars(&self) -> usize {
        self.a.nvars
    }

    /// (H, H_x, H_t) at (x, t).
    pub fn eval(&self, x: &[C64], t: C64) -> (DVector<C64>, DMatrix<C64>, DVector<C64>) {
        let (va, ja) = self.a.eval_jac(x);
        let (vb, jb) = self.b.eval_jac(x);
        (&va + &vb * t, ja + jb * t, vb)
    }

    pub fn residual(&self, x: &[C64], t: C64) -> f64 {
        let (va, _) = self.a.eval_jac(x);
        let vb = DVector::from_vec(self.b.eval(x));
        (va + vb * t).norm()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum PathStatus {
    Converged,
    Diverged,
    SingularEndpoint,
    Failed,
}

#[derive(Clone, Debug)]
pub struct TrackOutcome {
    pub status: PathStatus,
    pub x: Vec<C64>,
    /// Last accepted fraction of the segment.
    pub tau: f64,
    pub steps: usize,
}

fn solve(j: &DMatrix<C64>, r: &DVector<C64>) -> Option<DVector<C64>> {
    let sol = j.clone().lu().solve(r)?;
    sol.iter().all(|c| c.re.is_finite() && c.im.is_finite()).then_some(sol)
}

/// Newton at fixed t. Returns the corrected point when it converges within
/// the iteration budget with contracting updates.
pub fn newton(h: &LinearHomotopy, x: &[C64], t: C64, tol: f64, max_iter: usize) -> Option<Vec<C64>> {
    let mut x = DVector::from_column_slice(x);
    let mut last = f64::INFINITY;
    for _ in 0..max_iter {
        let (v, jx, _) = h.eval(x.as_slice(), t);
        let dx = solve(&jx, &(-v))?;
        let n = dx.norm();
        x += &dx;
        if n <= tol * (1.0 + x.norm()) {
            return Some(x.as_slice().to_vec());
        }
        if n > 0.5 * last {
            return None;
        }
        last = n;
    }
    None
}

/// Final refinement at t = 1. Updates that stop contracting below the
/// corrector tolerance are roundoff; the point is accepted as it stands.
fn finish(h: &LinearHomotopy, x: &[C64], cfg: &TrackerSettings) -> Option<Vec<C64>> {
    let one = C64::new(1.0, 0.0);
    let mut x = DVector::from_column_slice(x);
    let mut last = f64::INFINITY;
    for _ in 0..8 {
        let (v, jx, _) = h.eval(x.as_slice(), one);
        let dx = solve(&jx, &(-v))?;
        let n = dx.norm();
        let scale = 1.0 + x.norm();
        if n > 0.5 * last {
            return (last <= cfg.corrector_tolerance * scale).then(|| x.as_slice().to_vec());
        }
        x += &dx;
        if n <= cfg.refine_tolerance * scale {
            return Some(x.as_slice().to_vec());
        }
        last = n;
    }
    (last <= cfg.corrector_tolerance * (1.0 + x.norm())).then(|| x.as_slice().to_vec())
}

/// Newton refinement of a square system to `tol`, allowing more iterations.
pub fn refine(sys: &NumSystem, x: &[C64], tol: f64, max_iter: usize) -> Option<(Vec<C64>, f64)> {
    let mut x = DVector::from_column_slice(x);
    for _ in 0..max_iter {
        let (v, j) = sys.eval_jac(x.as_slice());
        let dx = solve(&j, &(-v))?;
        x += &dx;
        if dx.norm() <= tol * (1.0 + x.norm()) {
            let (_, j) = sys.eval_jac(x.as_slice());
            return Some((x.as_slice().to_vec(), condition_number(&j)));
        }
    }
    None
}

fn velocity(h: &LinearHomotopy, x: &[C64], t: C64, dt: C64) -> Option<DVector<C64>> {
    let (_, jx, ht) = h.eval(x, t);
    solve(&jx, &(-ht * dt))
}

fn rk4(h: &LinearHomotopy, x: &[C64], t: C64, dt: C64) -> Option<Vec<C64>> {
    let x0 = DVector::from_column_slice(x);
    let half = dt * 0.5;
    let c = |v: f64| C64::new(v, 0.0);
    let k1 = velocity(h, x, t, dt)?;
    let x1 = &x0 + &k1 * c(0.5);
    let k2 = velocity(h, x1.as_slice(), t + half, dt)?;
    let x2 = &x0 + &k2 * c(0.5);
    let k3 = velocity(h, x2.as_slice(), t + half, dt)?;
    let x3 = &x0 + &k3;
    let k4 = velocity(h, x3.as_slice(), t + dt, dt)?;
    let x = x0 + (k1 + k2 * c(2.0) + k3 * c(2.0) + k4) * c(1.0 / 6.0);
    Some(x.as_slice().to_vec())
}

/// Tracks x(t) along the segment t0 → t1 with an RK4 predictor and Newton corrector.
pub fn track(h: &LinearHomotopy, x0: &[C64], t0: C64, t1: C64, cfg: &TrackerSettings) -> TrackOutcome {
    track_with_min(h, x0, t0, t1, cfg, cfg.min_step)
}

pub(crate) fn track_with_min(h: &LinearHomotopy, x0: &[C64], t0: C64, t1: C64, cfg: &TrackerSettings, min_step: f64) -> TrackOutcome {
    let mut x = x0.to_vec();
    let mut tau = 0.0f64;
    let mut step = cfg.initial_step;
    let mut good = 0;
    let mut steps = 0;
    let span = t1 - t0;
    while tau < 1.0 {
        if norm_inf(&x) > cfg.divergence_bound {
            return TrackOutcome { status: PathStatus::Diverged, x, tau, steps };
        }
        let dtau = step.min(1.0 - tau);
        let t = t0 + span * tau;
        let dt = span * dtau;
        let accepted = rk4(h, &x, t, dt).and_then(|xp| {
            let tn = if tau + dtau >= 1.0 { t1 } else { t + dt };
            let xc = newton(h, &xp, tn, cfg.corrector_tolerance, cfg.max_corrector_iterations)?;
            // Reject predictor/corrector disagreements that signal a jump. Near a
            // branch point the other sheet is close, so the correction must also
            // stay small next to the predicted move.
            let dist = |a: &[C64], b: &[C64]| norm2(&a.iter().zip(b).map(|(p, q)| p - q).collect::<Vec<_>>());
            let (jump, moved, scale) = (dist(&xp, &xc), dist(&xp, &x), 1.0 + norm2(&xc));
            (jump <= 1e-3 * scale && jump <= 0.1 * moved + cfg.corrector_tolerance * scale).then_some(xc)
        });
        steps += 1;
        match accepted {
            Some(xc) => {
                x = xc;
                tau += dtau;
                good += 1;
                if good >= 3 {
                    step = (step * 2.0).min(cfg.max_step);
                    good = 0;
                }
            }
            None => {
                good = 0;
                step *= 0.5;
                if step < min_step {
                    let status = if tau > 0.9 { PathStatus::SingularEndpoint } else { PathStatus::Failed };
                    return TrackOutcome { status, x, tau, steps };
                }
            }
        }
        if steps > cfg.max_steps {
            return TrackOutcome { status: PathStatus::Failed, x, tau, steps };
        }
    }
    let status = if norm_inf(&x) > cfg.divergence_bound { PathStatus::Diverged } else { PathStatus::Converged };
    TrackOutcome { status, x, tau: 1.0, steps }
}

/// Endpoint of a path of the homotopy at t = 1.
#[derive(Clone, Debug)]
pub struct Endpoint {
    pub status: PathStatus,
    pub x: Vec<C64>,
    /// Winding number found by the Cauchy endgame (1 for regular endpoints).
    pub winding: usize,
    pub condition: f64,
}

/// Tracks from t = 0 to t = 1, switching to a Cauchy endgame near t = 1 when the
/// endpoint is singular.
pub fn track_to_end(h: &LinearHomotopy, start: &[C64], cfg: &TrackerSettings) -> Endpoint {
    let r0 = cfg.endgame_radius;
    let one = C64::new(1.0, 0.0);
    let te = C64::new(1.0 - r0, 0.0);
    let out = track(h, start, C64::new(0.0, 0.0), te, cfg);
    match out.status {
        PathStatus::Converged => {}
        PathStatus::Diverged => return Endpoint { status: PathStatus::Diverged, x: out.x, winding: 0, condition: f64::INFINITY },
        _ => return Endpoint { status: PathStatus::Failed, x: out.x, winding: 0, condition: f64::INFINITY },
    }
    let near = out.x;
    let direct = track_with_min(h, &near, te, one, cfg, 1e-6);
    if direct.status == PathStatus::Converged {
        let (_, jx, _) = h.eval(&direct.x, one);
        let cond = condition_number(&jx);
        if cond < cfg.singular_condition {
            if let Some(xr) = finish(h, &direct.x, cfg) {
                return Endpoint { status: PathStatus::Converged, x: xr, winding: 1, condition: cond };
            }
        }
    }
    if direct.status == PathStatus::Diverged {
        return Endpoint { status: PathStatus::Diverged, x: direct.x, winding: 0, condition: f64::INFINITY };
    }
    cauchy_endgame(h, &near, r0, cfg)
}

/// Radius shrinks by 4 per round: from 0.05 down to about 1e-9.
const ENDGAME_ROUNDS: usize = 14;

/// Loops around t = 1 on circles of shrinking radius; the mean over a closed
/// loop approximates the endpoint.
fn cauchy_endgame(h: &LinearHomotopy, near: &[C64], r0: f64, cfg: &TrackerSettings) -> Endpoint {
    const K: usize = 16;
    const MAX_WIND: usize = 24;
    let one = C64::new(1.0, 0.0);
    let mut x = near.to_vec();
    let mut r = r0;
    let mut prev: Option<Vec<C64>> = None;
    let mut best: Option<(Vec<C64>, usize)> = None;
    for _ in 0..ENDGAME_ROUNDS {
        let at = |k: usize| one - C64::from_polar(r, 2.0 * std::f64::consts::PI * (k as f64) / (K as f64));
        let base = x.clone();
        let mut cur = x.clone();
        let mut sum = vec![C64::new(0.0, 0.0); x.len()];
        let mut count = 0usize;
        let mut winding = 0;
        'outer: for loop_i in 1..=MAX_WIND {
            for k in 0..K {
                for (s, c) in sum.iter_mut().zip(&cur) {
                    *s += c;
                }
                count += 1;
                let o = track(h, &cur, at(k), at(k + 1), cfg);
                if o.status != PathStatus::Converged {
                    break 'outer;
                }
                cur = o.x;
            }
            let d = norm2(&cur.iter().zip(&base).map(|(a, b)| a - b).collect::<Vec<_>>());
            if d < 1e-6 * (1.0 + norm2(&base)) {
                winding = loop_i;
                break;
            }
        }
        if winding == 0 {
            break;
        }
        let est: Vec<C64> = sum.iter().map(|s| s / count as f64).collect();
        if norm_inf(&est) > cfg.divergence_bound {
            return Endpoint { status: PathStatus::Diverged, x: est, winding, condition: f64::INFINITY };
        }
        let done = prev
            .as_ref()
            .map(|p| norm2(&p.iter().zip(&est).map(|(a, b)| a - b).collect::<Vec<_>>()) < cfg.endgame_agreement * (1.0 + norm2(&est)))
            .unwrap_or(false);
        best = Some((est.clone(), winding));
        if done {
            break;
        }
        prev = Some(est);
        // Move inward along the real axis.
        let o = track(h, &cur, one - C64::new(r, 0.0), one - C64::new(r / 4.0, 0.0), cfg);
        if o.status != PathStatus::Converged {
            break;
        }
        x = o.x;
        r /= 4.0;
    }
    match best {
        Some((est, winding)) => {
            let (_, jx, _) = h.eval(&est, one);
            let condition = condition_number(&jx);
            if winding == 1 && condition < cfg.singular_condition {
                if let Some(xr) = finish(h, &est, cfg) {
                    return Endpoint { status: PathStatus::Converged, x: xr, winding, condition };
                }
            }
            Endpoint { status: PathStatus::SingularEndpoint, x: est, winding, condition }
        }
        None => Endpoint { status: PathStatus::Failed, x, winding: 0, condition: f64::INFINITY },
    }
}
