use super::GeometryError;
use crate::forms::{rat, Form, LinearChange, Matrix, Monomial, Poly, Scalar, C64};
use std::fmt::Write;

/// Projection of X from a line l ⊂ X. After the change of coordinates sending
/// l to {x2 = x3 = x4 = 0},
/// f = A x0² + B x0x1 + C x1² + D x0 + E x1 + F with A, B, C linear, D, E
/// quadratic and F cubic in y = (x2, x3, x4). The plane through l and y meets
/// X in l plus the conic with Gram matrix M(y).
#[derive(Clone, Debug)]
pub struct ConicBundle<K: Scalar> {
    pub line: [Vec<K>; 2],
    /// Columns: the two points of l, then three coordinate vectors completing a basis.
    pub change: LinearChange<K>,
    /// Entry degrees [[1,1,2],[1,1,2],[2,2,3]].
    pub m: [[Poly<K>; 3]; 3],
    /// D_l = det M, a quintic in y.
    pub discriminant: Poly<K>,
}

impl<K: Scalar> ConicBundle<K> {
    /// Rows: coefficients of A, B, C in y.
    pub fn abc_matrix(&self) -> Matrix<K> {
        let two = K::from_i64(2);
        [self.m[0][0].clone(), self.m[0][1].scale(&two), self.m[1][1].clone()]
            .iter()
            .map(|p| (0..3).map(|i| p.coeff(Monomial::var(3, i).exps())).collect())
            .collect()
    }

    /// The six 2×2 minors of M.
    pub fn minors(&self) -> Vec<Poly<K>> {
        let m = &self.m;
        let pairs = [(0, 1), (0, 2), (1, 2)];
        let mut out = Vec::with_capacity(6);
        for (a, &(i, j)) in pairs.iter().enumerate() {
            for &(k, l) in &pairs[a..] {
                out.push(m[i][k].mul(&m[j][l]).sub(&m[i][l].mul(&m[j][k])));
            }
        }
        out
    }

    pub fn m_at(&self, y: &[C64]) -> [[C64; 3]; 3] {
        let mut r = [[C64::new(0.0, 0.0); 3]; 3];
        for i in 0..3 {
            for j in 0..3 {
                r[i][j] = self.m[i][j].eval_c(y);
            }
        }
        r
    }

    /// Coordinates y of the fiber containing the point x ∉ l.
    pub fn fiber_of(&self, x: &[K]) -> Vec<K> {
        self.change.inverse().apply(x)[2..].to_vec()
    }

    pub fn to_complex(&self) -> ConicBundle<C64> {
        let c = |p: &Poly<K>| p.to_complex();
        let line = [self.line[0].iter().map(|v| v.to_c64()).collect(), self.line[1].iter().map(|v| v.to_c64()).collect()];
        let cols: Vec<Vec<C64>> = (0..5).map(|j| self.change.matrix().iter().map(|row| row[j].to_c64()).collect()).collect();
        ConicBundle {
            line,
            change: LinearChange::from_columns(&cols).expect("invertible over Q stays invertible"),
            m: [
                [c(&self.m[0][0]), c(&self.m[0][1]), c(&self.m[0][2])],
                [c(&self.m[1][0]), c(&self.m[1][1]), c(&self.m[1][2])],
                [c(&self.m[2][0]), c(&self.m[2][1]), c(&self.m[2][2])],
            ],
            discriminant: c(&self.discriminant),
        }
    }
}

fn det3<K: Scalar>(m: &[[Poly<K>; 3]; 3]) -> Poly<K> {
    let minor = |a: usize, b: usize, c: usize, d: usize| m[1][a].mul(&m[2][b]).sub(&m[1][c].mul(&m[2][d]));
    m[0][0].mul(&minor(1, 2, 2, 1)).sub(&m[0][1].mul(&minor(0, 2, 2, 0))).add(&m[0][2].mul(&minor(0, 1, 1, 0)))
}

/// Conic bundle structure of X from the line through `p` and `q`.
/// `tol` bounds the x-cubic coefficients of f after the coordinate change,
/// relative to the largest coefficient; 0 demands exact containment.
pub fn conic_bundle<K: Scalar>(f: &Form<K>, p: &[K], q: &[K], tol: f64) -> Result<ConicBundle<K>, GeometryError> {
    if f.nvars() != 5 || f.degree() != 3 || p.len() != 5 || q.len() != 5 {
        return Err(GeometryError::NotCubic);
    }
    let cols = if K::EXACT { exact_basis(p, q)? } else { unitary_basis(p, q)? };
    let change = LinearChange::from_columns(&cols)?;
    let g = f.substitute(&change)?;
    let scale = g.poly().terms().map(|(_, c)| c.magnitude()).fold(0.0, f64::max);
    let mut parts: Vec<Poly<K>> = (0..6).map(|_| Poly::zero(3)).collect();
    let mut worst: f64 = 0.0;
    for (mono, c) in g.poly().terms() {
        let e = mono.exps();
        let slot = match (e[0], e[1]) {
            (2, 0) => 0,
            (1, 1) => 1,
            (0, 2) => 2,
            (1, 0) => 3,
            (0, 1) => 4,
            (0, 0) => 5,
            _ => {
                if !c.is_zero() {
                    worst = worst.max(c.magnitude() / scale);
                }
                continue;
            }
        };
        parts[slot].add_term(Monomial(e[2..].to_vec()), c.clone());
    }
    if worst > tol || (K::EXACT && worst > 0.0) {
        return Err(GeometryError::NotOnX { residual: worst });
    }
    let half = K::from_rat(&rat(1, 2));
    let [a, b, c, d, e, ff]: [Poly<K>; 6] = parts.try_into().unwrap();
    let (b2, d2, e2) = (b.scale(&half), d.scale(&half), e.scale(&half));
    let m = [[a, b2.clone(), d2.clone()], [b2, c, e2.clone()], [d2, e2, ff]];
    let discriminant = det3(&m);
    Ok(ConicBundle { line: [p.to_vec(), q.to_vec()], change, m, discriminant })
}

/// p, q, then the coordinate vectors off the best-conditioned 2×2 minor of (p, q).
fn exact_basis<K: Scalar>(p: &[K], q: &[K]) -> Result<Vec<Vec<K>>, GeometryError> {
    let mut best: Option<(f64, [usize; 2])> = None;
    for i in 0..5 {
        for j in i + 1..5 {
            let d = p[i].times(&q[j]).minus(&p[j].times(&q[i]));
            if !d.is_zero() && best.map_or(true, |(b, _)| d.magnitude() > b) {
                best = Some((d.magnitude(), [i, j]));
            }
        }
    }
    let Some((_, pivots)) = best else { return Err(GeometryError::DegenerateLine) };
    let mut cols = vec![p.to_vec(), q.to_vec()];
    for k in (0..5).filter(|k| !pivots.contains(k)) {
        let mut e = vec![K::zero(); 5];
        e[k] = K::one();
        cols.push(e);
    }
    Ok(cols)
}

/// Orthonormal basis whose first two vectors span the line, so that the
/// coordinate change does not distort coefficient sizes.
fn unitary_basis<K: Scalar>(p: &[K], q: &[K]) -> Result<Vec<Vec<K>>, GeometryError> {
    let c = |v: &[K]| -> Vec<C64> { v.iter().map(|x| x.to_c64()).collect() };
    let mut basis: Vec<Vec<C64>> = Vec::with_capacity(5);
    let push = |v: Vec<C64>, basis: &mut Vec<Vec<C64>>| -> f64 {
        let mut r = v;
        for b in basis.iter() {
            let k: C64 = b.iter().zip(&r).map(|(x, y)| x.conj() * y).sum();
            r.iter_mut().zip(b).for_each(|(y, x)| *y -= x * k);
        }
        let n = r.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt();
        if n > 0.0 {
            basis.push(r.iter().map(|x| x / n).collect());
        }
        n
    };
    let (np, nq) = (norm(&c(p)), norm(&c(q)));
    if np == 0.0 || push(c(p), &mut basis) / np < 1e-12 || push(c(q), &mut basis) / nq < 1e-12 {
        return Err(GeometryError::DegenerateLine);
    }
    while basis.len() < 5 {
        // The coordinate vector farthest from the current span.
        let resid = |k: usize, basis: &Vec<Vec<C64>>| -> f64 { 1.0 - basis.iter().map(|b| b[k].norm_sqr()).sum::<f64>() };
        let k = (0..5).max_by(|&a, &b| resid(a, &basis).partial_cmp(&resid(b, &basis)).unwrap()).unwrap();
        let mut e = vec![C64::new(0.0, 0.0); 5];
        e[k] = C64::new(1.0, 0.0);
        push(e, &mut basis);
    }
    Ok(basis.into_iter().map(|v| v.into_iter().map(K::from_c64).collect()).collect())
}

fn norm(v: &[C64]) -> f64 {
    v.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt()
}

/// Terms as "(re+imi)*y0^2*y1", dropping coefficients below 1e-12 of the largest.
pub fn format_complex_poly(p: &Poly<C64>, var: &str) -> String {
    let big = p.terms().map(|(_, c)| c.norm()).fold(0.0, f64::max);
    let mut s = String::new();
    for (m, c) in p.terms().rev() {
        if c.norm() <= 1e-12 * big {
            continue;
        }
        if !s.is_empty() {
            s.push_str(" + ");
        }
        let _ = write!(s, "({:.6e}{:+.6e}i)", c.re, c.im);
        for (i, &e) in m.exps().iter().enumerate() {
            match e {
                0 => {}
                1 => {
                    let _ = write!(s, "*{var}{i}");
                }
                _ => {
                    let _ = write!(s, "*{var}{i}^{e}");
                }
            }
        }
    }
    if s.is_empty() {
        s.push('0');
    }
    s
}
