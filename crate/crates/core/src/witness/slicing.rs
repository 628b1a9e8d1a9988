use crate::forms::{Poly, C64};
use crate::tracker::{norm2, random_unit, refine, track, LinearHomotopy, NumPoly, NumSystem, PathStatus, TrackerSettings};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

/// Fixed equations plus one moving linear slice Σ_{i<m} L_i x_i = 0 on the
/// first `m` variables. The slice is always the last row.
#[derive(Clone, Debug)]
pub struct SlicedSystem {
    pub fixed: Vec<Poly<C64>>,
    pub nvars: usize,
    pub slice_vars: usize,
}

impl SlicedSystem {
    pub fn new(fixed: Vec<Poly<C64>>, slice_vars: usize) -> Self {
        let nvars = fixed[0].nvars();
        assert_eq!(fixed.len() + 1, nvars, "sliced system must be square");
        SlicedSystem { fixed, nvars, slice_vars }
    }

    pub fn slice_poly(&self, l: &[C64]) -> Poly<C64> {
        let mut c = l.to_vec();
        c.resize(self.nvars, C64::new(0.0, 0.0));
        Poly::linear(&c)
    }

    pub fn square(&self, l: &[C64]) -> NumSystem {
        let mut eqs: Vec<NumPoly> = self.fixed.iter().map(NumPoly::new).collect();
        eqs.push(NumPoly::new(&self.slice_poly(l)));
        NumSystem::new(eqs)
    }

    /// H(x,t) with slice row L_from + t·(L_to − L_from), or L_from + t·dir when `to` is a direction.
    fn homotopy(&self, from: &[C64], dir: &[C64]) -> LinearHomotopy {
        let a = self.square(from);
        let mut b: Vec<NumPoly> = (0..self.fixed.len()).map(|_| NumPoly::zero(self.nvars)).collect();
        b.push(NumPoly::new(&self.slice_poly(dir)));
        LinearHomotopy::new(a, NumSystem::new(b))
    }

    /// Transports points from slice `from` to slice `to`; `None` if any path fails.
    pub fn move_points(&self, pts: &[Vec<C64>], from: &[C64], to: &[C64], cfg: &TrackerSettings) -> Option<Vec<Vec<C64>>> {
        let dir: Vec<C64> = to.iter().zip(from).map(|(a, b)| a - b).collect();
        self.move_along(pts, from, &dir, C64::new(1.0, 0.0), cfg)
    }

    /// Transports points from L to L + s·dir.
    pub fn move_along(&self, pts: &[Vec<C64>], from: &[C64], dir: &[C64], s: C64, cfg: &TrackerSettings) -> Option<Vec<Vec<C64>>> {
        let h = self.homotopy(from, dir);
        let target: Vec<C64> = from.iter().zip(dir).map(|(a, d)| a + d * s).collect();
        let sys = self.square(&target);
        let go = |p: &Vec<C64>| -> Option<Vec<C64>> {
            let o = track(&h, p, C64::new(0.0, 0.0), s, cfg);
            if o.status != PathStatus::Converged {
                return None;
            }
            refine(&sys, &o.x, cfg.refine_tolerance, 8).map(|(x, _)| x).or(Some(o.x))
        };
        let out: Vec<Option<Vec<C64>>> = if cfg.parallel { pts.par_iter().map(go).collect() } else { pts.iter().map(go).collect() };
        out.into_iter().collect()
    }

    /// Permutation induced by a triangle loop base → L1 → L2 → base through two
    /// random complex slices; `None` when tracking fails or the endpoints are
    /// not a bijection onto the base points.
    pub fn loop_permutation(&self, pts: &[Vec<C64>], base: &[C64], cfg: &TrackerSettings, rng: &mut ChaCha8Rng) -> Option<Vec<usize>> {
        let l1: Vec<C64> = (0..self.slice_vars).map(|_| random_unit(rng)).collect();
        let l2: Vec<C64> = (0..self.slice_vars).map(|_| random_unit(rng)).collect();
        let p1 = self.move_points(pts, base, &l1, cfg)?;
        let p2 = self.move_points(&p1, &l1, &l2, cfg)?;
        let p3 = self.move_points(&p2, &l2, base, cfg)?;
        match_points(pts, &p3)
    }
}

/// For each moved point, the index of the base point it landed on.
pub fn match_points(base: &[Vec<C64>], moved: &[Vec<C64>]) -> Option<Vec<usize>> {
    let mut perm = Vec::with_capacity(moved.len());
    let mut used = vec![false; base.len()];
    for m in moved {
        let (i, d) = base
            .iter()
            .enumerate()
            .map(|(i, b)| (i, norm2(&b.iter().zip(m).map(|(x, y)| x - y).collect::<Vec<_>>()) / (1.0 + norm2(b))))
            .min_by(|a, b| a.1.partial_cmp(&b.1).unwrap())?;
        if d > 1e-6 || used[i] {
            return None;
        }
        used[i] = true;
        perm.push(i);
    }
    Some(perm)
}

/// Union–find over witness point indices.
#[derive(Clone, Debug)]
pub struct Orbits {
    parent: Vec<usize>,
}

impl Orbits {
    pub fn new(n: usize) -> Self {
        Orbits { parent: (0..n).collect() }
    }

    pub fn find(&mut self, i: usize) -> usize {
        let p = self.parent[i];
        if p == i {
            return i;
        }
        let r = self.find(p);
        self.parent[i] = r;
        r
    }

    /// Returns true when the partition got coarser.
    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
        self.parent[hi] = lo;
        true
    }

    pub fn merge_permutation(&mut self, perm: &[usize]) -> bool {
        let mut changed = false;
        for (i, &j) in perm.iter().enumerate() {
            changed |= self.union(i, j);
        }
        changed
    }

    /// Blocks sorted by smallest member.
    pub fn blocks(&mut self) -> Vec<Vec<usize>> {
        let n = self.parent.len();
        let mut out: Vec<Vec<usize>> = Vec::new();
        let mut root_of = vec![usize::MAX; n];
        for i in 0..n {
            let r = self.find(i);
            if root_of[r] == usize::MAX {
                root_of[r] = out.len();
                out.push(vec![]);
            }
            out[root_of[r]].push(i);
        }
        out
    }

    pub fn count(&mut self) -> usize {
        self.blocks().len()
    }
}
