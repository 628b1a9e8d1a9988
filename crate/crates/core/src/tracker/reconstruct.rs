use crate::forms::{CPoint, Form, Rat, Scalar};
use num_bigint::BigInt;


/// Best rational approximation of `x` with denominator ≤ `bound` among the
/// continued-fraction convergents, if one lies within `tol`·max(1,|x|).
pub fn reconstruct_real(x: f64, bound: u64, tol: f64) -> Option<Rat> {
    if !x.is_finite() {
        return None;
    }
    let target = tol * x.abs().max(1.0);
    let (mut h0, mut h1) = (BigInt::from(0), BigInt::from(1));
    let (mut k0, mut k1) = (BigInt::from(1), BigInt::from(0));
    let mut r = x;
    for _ in 0..64 {
        let a = r.floor();
        let ai = BigInt::from(a as i64);
        let h2 = &ai * &h1 + &h0;
        let k2 = &ai * &k1 + &k0;
        if k2 > BigInt::from(bound) {
            return None;
        }
        let cand = Rat::new(h2.clone(), k2.clone());
        if (cand.to_c64().re - x).abs() <= target {
            return Some(cand);
        }
        let frac = r - a;
        if frac.abs() < 1e-300 {
            return None;
        }
        r = 1.0 / frac;
        h0 = h1;
        h1 = h2;
        k0 = k1;
        k1 = k2;
    }
    None
}

/// Exact projective point near `p` whose coordinate ratios have denominators
/// ≤ `bound`, verified by exact vanishing of every form in `system`. Tries
/// each coordinate of non-negligible size as the normalizer; the result is
/// scaled so its first nonzero coordinate is 1.
pub fn rational_reconstruct(p: &CPoint, bound: u64, system: &[Form<Rat>]) -> Option<Vec<Rat>> {
    const TOL: f64 = 1e-9;
    let max = p.coords.iter().map(|c| c.norm()).fold(0.0, f64::max);
    for j in 0..p.dim() {
        if p.coords[j].norm() < 1e-3 * max {
            continue;
        }
        let ratios: Option<Vec<Rat>> = p
            .coords
            .iter()
            .map(|c| {
                let r = c / p.coords[j];
                if r.im.abs() > TOL * r.re.abs().max(1.0) {
                    return None;
                }
                reconstruct_real(r.re, bound, TOL)
            })
            .collect();
        let Some(v) = ratios else { continue };
        let first = v.iter().find(|c| !c.is_zero())?.clone();
        let v: Vec<Rat> = v.iter().map(|c| c / &first).collect();
        if system.iter().all(|f| f.eval_exact(&v).map(|x| x.is_zero()).unwrap_or(false)) {
            return Some(v);
        }
    }
    None
}

