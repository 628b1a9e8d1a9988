use super::WitnessError;
use crate::forms::linalg::{inverse, nullspace, transpose};
use crate::forms::{rank_exact, Form, Poly, Rat, Scalar, C64};
use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum QuadricKind {
    Smooth,
    Cone,
    TwoPlanes,
    DoublePlane,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct QuadricClass {
    pub rank: usize,
    pub kind: QuadricKind,
}

/// Exact type of the quadric surface V(g2) ⊂ P³.
pub fn detect_nonreduced(g2: &Form<Rat>) -> Result<QuadricClass, WitnessError> {
    let m = g2.quad_matrix()?;
    let rank = rank_exact(&m);
    let kind = match rank {
        0 => return Err(WitnessError::ZeroQuadric),
        1 => QuadricKind::DoublePlane,
        2 => QuadricKind::TwoPlanes,
        3 => QuadricKind::Cone,
        _ => QuadricKind::Smooth,
    };
    Ok(QuadricClass { rank, kind })
}

/// ℓ with g2 = c·ℓ² for a rank-1 quadric: any nonzero row of its matrix.
pub fn double_plane_root(g2: &Form<Rat>) -> Result<Form<Rat>, WitnessError> {
    let m = g2.quad_matrix()?;
    let row = m.iter().find(|r| r.iter().any(|x| !x.is_zero())).ok_or(WitnessError::ZeroQuadric)?;
    Ok(Form::new(Poly::linear(row), 1).expect("linear"))
}

/// Numeric factorization g2 = ℓ₁ℓ₂ of a rank-2 quadric into complex linear forms.
pub fn plane_factors(g2: &Form<Rat>) -> Result<[Vec<C64>; 2], WitnessError> {
    let m = g2.quad_matrix()?;
    let n = m.len();
    if rank_exact(&m) != 2 {
        return Err(WitnessError::NotTwoPlanes);
    }
    let ker = nullspace(&m, n);
    // Complete the kernel with two standard basis vectors to a basis.
    let mut basis: Vec<Vec<Rat>> = Vec::new();
    for i in 0..n {
        let mut e = vec![Rat::zero(); n];
        e[i] = Rat::one();
        let mut trial = basis.clone();
        trial.push(e.clone());
        trial.extend(ker.iter().cloned());
        if rank_exact(&trial) == trial.len() {
            basis.push(e);
        }
        if basis.len() == 2 {
            break;
        }
    }
    let mut cols = basis.clone();
    cols.extend(ker.iter().cloned());
    let dual = inverse(&transpose(&cols)).expect("basis");
    let (u1, u2) = (&basis[0], &basis[1]);
    let ev = |v: &[Rat]| g2.eval_exact(v).unwrap().to_c64();
    let sum: Vec<Rat> = u1.iter().zip(u2).map(|(a, b)| a + b).collect();
    let (a, c) = (ev(u1), ev(u2));
    let b = ev(&sum) - a - c;
    let s: Vec<C64> = dual[0].iter().map(|x| x.to_c64()).collect();
    let t: Vec<C64> = dual[1].iter().map(|x| x.to_c64()).collect();
    // a s² + b st + c t² = (α s + β t)(γ s + δ t)
    let comb = |p: C64, q: C64| -> Vec<C64> { s.iter().zip(&t).map(|(x, y)| x * p + y * q).collect() };
    if a.norm() > 1e-14 {
        let disc = (b * b - a * c * 4.0).sqrt();
        let r1 = (-b + disc) / (a * 2.0);
        let r2 = (-b - disc) / (a * 2.0);
        // a(s − r1 t)(s − r2 t)
        Ok([comb(a, -a * r1), comb(C64::new(1.0, 0.0), -r2)])
    } else {
        // t(b s + c t)
        Ok([comb(C64::new(0.0, 0.0), C64::new(1.0, 0.0)), comb(b, c)])
    }
}
