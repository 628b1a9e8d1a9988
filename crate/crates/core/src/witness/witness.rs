use super::slicing::{Orbits, SlicedSystem};
use super::WitnessError;
use crate::forms::{rat, Form, Poly, Rat, Scalar, C64};
use crate::tracker::{norm2, random_unit, solve_all, TrackerSettings};
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

/// Witness set of a projective curve cut out by n−2 forms in n variables:
/// its intersection with a rational hyperplane, on a random affine patch.
#[derive(Clone, Debug, Serialize)]
pub struct WitnessSet {
    pub equations: Vec<String>,
    pub slice: Vec<String>,
    pub patch: Vec<C64>,
    pub points: Vec<Vec<C64>>,
    pub degree: usize,
    /// False when the curve is the reduced support of a non-reduced scheme.
    pub reduced: bool,
    #[serde(skip)]
    pub(crate) system: SlicedSystem,
    #[serde(skip)]
    pub(crate) slice_c: Vec<C64>,
}

impl WitnessSet {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn system(&self) -> &SlicedSystem {
        &self.system
    }

    pub fn base_slice(&self) -> &[C64] {
        &self.slice_c
    }
}

fn random_rational(rng: &mut ChaCha8Rng) -> Rat {
    loop {
        let n: i64 = rng.gen_range(-9..=9);
        if n != 0 {
            return rat(n, rng.gen_range(1..=7));
        }
    }
}

/// Witness points of V(equations) ⊂ P^{n−1}. Redraws the slice when it meets
/// the curve non-transversally.
pub fn witness_points(equations: &[Form<Rat>], cfg: &TrackerSettings, rng: &mut ChaCha8Rng) -> Result<WitnessSet, WitnessError> {
    let polys: Vec<Poly<C64>> = equations.iter().map(|f| f.poly().to_complex()).collect();
    let degrees: Vec<u32> = equations.iter().map(|f| f.degree()).collect();
    let labels = equations.iter().map(|f| f.to_string()).collect();
    witness_points_numeric(&polys, &degrees, labels, cfg, rng)
}

/// Same as [`witness_points`] for forms with complex coefficients.
pub fn witness_points_numeric(
    equations: &[Poly<C64>],
    degrees: &[u32],
    labels: Vec<String>,
    cfg: &TrackerSettings,
    rng: &mut ChaCha8Rng,
) -> Result<WitnessSet, WitnessError> {
    let n = equations[0].nvars();
    if equations.len() + 2 != n {
        return Err(WitnessError::NotACurve { equations: equations.len(), vars: n });
    }
    let degree: usize = degrees.iter().map(|&d| d as usize).product();
    let mut last = 0;
    for _ in 0..5 {
        let patch: Vec<C64> = (0..n).map(|_| random_unit(rng)).collect();
        let slice: Vec<Rat> = (0..n).map(|_| random_rational(rng)).collect();
        let slice_c: Vec<C64> = slice.iter().map(|r| r.to_c64()).collect();
        let mut fixed: Vec<Poly<C64>> = equations.to_vec();
        fixed.push(Poly::linear(&patch).sub(&Poly::constant(n, C64::new(1.0, 0.0))));
        let system = SlicedSystem::new(fixed, n);
        let mut sq = system.fixed.clone();
        sq.push(system.slice_poly(&slice_c));
        let rep = solve_all(&sq, cfg, rng)?;
        last = rep.solutions.iter().map(|s| s.multiplicity).sum();
        let clean = rep.solutions.len() == degree && rep.solutions.iter().all(|s| s.multiplicity == 1 && !s.singular);
        if clean {
            return Ok(WitnessSet {
                equations: labels,
                slice: slice.iter().map(|r| r.to_string()).collect(),
                patch,
                points: rep.solutions.into_iter().map(|s| s.point).collect(),
                degree,
                reduced: true,
                system,
                slice_c,
            });
        }
    }
    Err(WitnessError::Degenerate { expected: degree, found: last })
}

#[derive(Clone, Debug, Serialize)]
pub struct TraceCertificate {
    pub block: Vec<usize>,
    /// ‖second difference of the block trace‖ relative to the block size.
    pub second_difference: f64,
    pub passed: bool,
}

/// Per-point samples along the pencil L − s·patch at s = 0, ±δ.
#[derive(Clone, Debug)]
pub struct TraceData {
    plus: Vec<Vec<C64>>,
    minus: Vec<Vec<C64>>,
    zero: Vec<Vec<C64>>,
}

pub const TRACE_TOLERANCE: f64 = 1e-6;

impl TraceData {
    pub fn compute(w: &WitnessSet, cfg: &TrackerSettings, rng: &mut ChaCha8Rng) -> Result<TraceData, WitnessError> {
        for _ in 0..3 {
            let delta = C64::from_polar(0.05, rng.gen_range(0.0..std::f64::consts::TAU));
            let dir: Vec<C64> = w.patch.iter().map(|c| -c).collect();
            let plus = w.system.move_along(&w.points, &w.slice_c, &dir, delta, cfg);
            let minus = w.system.move_along(&w.points, &w.slice_c, &dir, -delta, cfg);
            if let (Some(plus), Some(minus)) = (plus, minus) {
                let td = TraceData { plus, minus, zero: w.points.clone() };
                // The whole witness set is complete; failure means a tracking error.
                if td.certify(&(0..w.len()).collect::<Vec<_>>()).passed {
                    return Ok(td);
                }
            }
        }
        Err(WitnessError::TraceIndeterminate)
    }

    pub fn certify(&self, block: &[usize]) -> TraceCertificate {
        let n = self.zero[0].len();
        let mut d2 = vec![C64::new(0.0, 0.0); n];
        let mut scale = 0.0;
        for &i in block {
            for k in 0..n {
                d2[k] += self.plus[i][k] + self.minus[i][k] - self.zero[i][k] * 2.0;
            }
            scale += norm2(&self.zero[i]);
        }
        let second_difference = norm2(&d2) / scale.max(1.0);
        TraceCertificate { block: block.to_vec(), second_difference, passed: second_difference < TRACE_TOLERANCE }
    }
}

/// Completeness certificate for one block with a fresh pencil.
pub fn trace_test(block: &[usize], w: &WitnessSet, cfg: &TrackerSettings, rng: &mut ChaCha8Rng) -> Result<TraceCertificate, WitnessError> {
    Ok(TraceData::compute(w, cfg, rng)?.certify(block))
}

#[derive(Clone, Debug, Serialize)]
pub struct ComponentPartition {
    pub blocks: Vec<Vec<usize>>,
    pub degrees: Vec<usize>,
    pub certificates: Vec<TraceCertificate>,
    pub loops: usize,
    pub discarded_loops: usize,
    pub stabilized: bool,
    /// Every block passed the trace test.
    pub certified: bool,
}

impl ComponentPartition {
    /// Number of irreducible components.
    pub fn k(&self) -> usize {
        self.blocks.len()
    }
}

pub const STABILIZATION_WINDOW: usize = 5;

/// Groups witness points into irreducible components by monodromy, certifying
/// each group with the trace test.
pub fn monodromy_partition(
    w: &WitnessSet,
    maxloops: usize,
    cfg: &TrackerSettings,
    rng: &mut ChaCha8Rng,
) -> Result<ComponentPartition, WitnessError> {
    let trace = TraceData::compute(w, cfg, rng)?;
    let mut orbits = Orbits::new(w.len());
    let (mut loops, mut discarded, mut stable) = (0, 0, 0);
    let certify_all = |orbits: &mut Orbits| -> Vec<TraceCertificate> { orbits.blocks().iter().map(|b| trace.certify(b)).collect() };
    let mut certs = certify_all(&mut orbits);
    let mut stabilized = certs.iter().all(|c| c.passed);
    while !stabilized && loops + discarded < maxloops {
        match w.system.loop_permutation(&w.points, &w.slice_c, cfg, rng) {
            None => discarded += 1,
            Some(perm) => {
                loops += 1;
                if orbits.merge_permutation(&perm) {
                    stable = 0;
                    certs = certify_all(&mut orbits);
                    // A fully certified partition cannot coarsen further.
                    if certs.iter().all(|c| c.passed) {
                        stabilized = true;
                    }
                } else {
                    stable += 1;
                    if stable >= STABILIZATION_WINDOW && certs.iter().all(|c| c.passed) {
                        stabilized = true;
                    }
                }
            }
        }
    }
    let blocks = orbits.blocks();
    let certified = certs.iter().all(|c| c.passed);
    Ok(ComponentPartition {
        degrees: blocks.iter().map(|b| b.len()).collect(),
        blocks,
        certificates: certs,
        loops,
        discarded_loops: discarded,
        stabilized,
        certified,
    })
}
