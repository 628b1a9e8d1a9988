use super::linalg::{self, Matrix};
use super::poly::{monomials_of_degree, Poly};
use super::scalar::{Rat, Scalar, C64};
use super::FormError;
use std::fmt;

/// Homogeneous polynomial. The zero form is allowed and carries its nominal degree.
#[derive(Clone, PartialEq, Debug)]
pub struct Form<K: Scalar = Rat> {
    poly: Poly<K>,
    degree: u32,
}

pub type CubicForm = Form<Rat>;

impl<K: Scalar> Form<K> {
    pub fn new(poly: Poly<K>, degree: u32) -> Result<Self, FormError> {
        if let Some((m, _)) = poly.terms().find(|(m, _)| m.degree() != degree) {
            return Err(FormError::NotHomogeneous { expected: degree, found: m.degree() });
        }
        Ok(Form { poly, degree })
    }

    /// Infers the degree; fails on the zero polynomial.
    pub fn from_poly(poly: Poly<K>) -> Result<Self, FormError> {
        let d = poly.degree().ok_or(FormError::ZeroForm)?;
        Self::new(poly, d)
    }

    pub fn zero(nvars: usize, degree: u32) -> Self {
        Form { poly: Poly::zero(nvars), degree }
    }

    pub fn nvars(&self) -> usize {
        self.poly.nvars()
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn poly(&self) -> &Poly<K> {
        &self.poly
    }

    pub fn into_poly(self) -> Poly<K> {
        self.poly
    }

    pub fn is_zero(&self) -> bool {
        self.poly.is_zero()
    }

    pub fn coeff(&self, exps: &[u16]) -> K {
        self.poly.coeff(exps)
    }

    pub fn evaluate(&self, p: &[C64]) -> Result<C64, FormError> {
        if p.len() != self.nvars() {
            return Err(FormError::DimensionMismatch { expected: self.nvars(), found: p.len() });
        }
        Ok(self.poly.eval_c(p))
    }

    pub fn eval_exact(&self, p: &[K]) -> Result<K, FormError> {
        if p.len() != self.nvars() {
            return Err(FormError::DimensionMismatch { expected: self.nvars(), found: p.len() });
        }
        Ok(self.poly.eval(p))
    }

    pub fn gradient(&self) -> Vec<Form<K>> {
        let d = self.degree.saturating_sub(1);
        self.poly.gradient().into_iter().map(|p| Form { poly: p, degree: d }).collect()
    }

    /// `f ∘ T`, i.e. `y ↦ f(T y)`.
    pub fn substitute(&self, t: &LinearChange<K>) -> Result<Form<K>, FormError> {
        if t.dim() != self.nvars() {
            return Err(FormError::DimensionMismatch { expected: self.nvars(), found: t.dim() });
        }
        let images: Vec<Poly<K>> = t.matrix.iter().map(|row| Poly::linear(row)).collect();
        Ok(Form { poly: self.poly.compose(&images), degree: self.degree })
    }

    /// Pulls back along a (not necessarily square) linear map `y ↦ A y`, A being nvars × m.
    pub fn pullback(&self, a: &Matrix<K>) -> Result<Form<K>, FormError> {
        if a.len() != self.nvars() {
            return Err(FormError::DimensionMismatch { expected: self.nvars(), found: a.len() });
        }
        let images: Vec<Poly<K>> = a.iter().map(|row| Poly::linear(row)).collect();
        Ok(Form { poly: self.poly.compose(&images), degree: self.degree })
    }

    /// Symmetric M with g = xᵀMx.
    pub fn quad_matrix(&self) -> Result<Matrix<K>, FormError> {
        if self.degree != 2 {
            return Err(FormError::WrongDegree { expected: 2, found: self.degree });
        }
        let n = self.nvars();
        let half = K::one().divide(&K::from_i64(2));
        let mut m = vec![vec![K::zero(); n]; n];
        for (mono, c) in self.poly.terms() {
            let idx: Vec<usize> = mono.exps().iter().enumerate().flat_map(|(i, &e)| std::iter::repeat(i).take(e as usize)).collect();
            let (i, j) = (idx[0], idx[1]);
            if i == j {
                m[i][i] = c.clone();
            } else {
                m[i][j] = c.times(&half);
                m[j][i] = c.times(&half);
            }
        }
        Ok(m)
    }

    pub fn add(&self, o: &Self) -> Result<Self, FormError> {
        if o.degree != self.degree && !o.is_zero() && !self.is_zero() {
            return Err(FormError::WrongDegree { expected: self.degree, found: o.degree });
        }
        let degree = if self.is_zero() { o.degree } else { self.degree };
        Ok(Form { poly: self.poly.add(&o.poly), degree })
    }

    pub fn mul(&self, o: &Self) -> Self {
        Form { poly: self.poly.mul(&o.poly), degree: self.degree + o.degree }
    }

    pub fn scale(&self, k: &K) -> Self {
        Form { poly: self.poly.scale(k), degree: self.degree }
    }

    pub fn to_complex(&self) -> Form<C64> {
        Form { poly: self.poly.to_complex(), degree: self.degree }
    }

    /// Coefficient vector in the basis of degree-d monomials (descending graded-lex).
    pub fn coefficient_vector(&self) -> Vec<K> {
        monomials_of_degree(self.nvars(), self.degree).iter().map(|m| self.poly.coeff(m.exps())).collect()
    }

    pub fn from_monomials(nvars: usize, degree: u32, coeffs: &[K]) -> Self {
        let monos = monomials_of_degree(nvars, degree);
        assert_eq!(monos.len(), coeffs.len());
        let poly = Poly::from_terms(nvars, monos.into_iter().zip(coeffs.iter().cloned()));
        Form { poly, degree }
    }

    pub fn monomial_count(nvars: usize, degree: u32) -> usize {
        monomials_of_degree(nvars, degree).len()
    }
}

impl fmt::Display for Form<Rat> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.poly.fmt(f)
    }
}

impl Form<Rat> {
    /// The degree-3 form in 5 variables that `text` denotes.
    pub fn parse_cubic(text: &str) -> Result<CubicForm, super::ParseError> {
        super::parse::parse_form(text, 5, Some(3))
    }
}

/// Invertible linear substitution x = T y.
#[derive(Clone, PartialEq, Debug)]
pub struct LinearChange<K: Scalar = Rat> {
    matrix: Matrix<K>,
}

impl<K: Scalar> LinearChange<K> {
    pub fn new(matrix: Matrix<K>) -> Result<Self, FormError> {
        let n = matrix.len();
        if matrix.iter().any(|r| r.len() != n) {
            return Err(FormError::DimensionMismatch { expected: n, found: matrix.iter().map(|r| r.len()).find(|&l| l != n).unwrap() });
        }
        if linalg::det(&matrix).is_zero() {
            return Err(FormError::SingularChange);
        }
        Ok(LinearChange { matrix })
    }

    pub fn identity(n: usize) -> Self {
        LinearChange { matrix: linalg::identity(n) }
    }

    pub fn swap(n: usize, i: usize, j: usize) -> Self {
        let mut m = linalg::identity::<K>(n);
        m.swap(i, j);
        LinearChange { matrix: m }
    }

    /// Change whose columns are `cols` (so e_j ↦ cols[j]).
    pub fn from_columns(cols: &[Vec<K>]) -> Result<Self, FormError> {
        Self::new(linalg::transpose(&cols.to_vec()))
    }

    pub fn dim(&self) -> usize {
        self.matrix.len()
    }

    pub fn matrix(&self) -> &Matrix<K> {
        &self.matrix
    }

    pub fn inverse(&self) -> LinearChange<K> {
        LinearChange { matrix: linalg::inverse(&self.matrix).expect("invertible by construction") }
    }

    /// `self ∘ other`: y ↦ T(S y).
    pub fn compose(&self, other: &LinearChange<K>) -> LinearChange<K> {
        LinearChange { matrix: linalg::mat_mul(&self.matrix, &other.matrix) }
    }

    pub fn apply(&self, y: &[K]) -> Vec<K> {
        linalg::mat_vec(&self.matrix, y)
    }
}

/// Exact change sending e_{n-1} to `q`: last column q, other columns the
/// standard basis vectors that keep the matrix invertible.
pub fn change_moving_to_last(q: &[Rat]) -> LinearChange<Rat> {
    let n = q.len();
    let k = q.iter().rposition(|c| !Scalar::is_zero(c)).expect("nonzero point");
    let mut cols: Vec<Vec<Rat>> = Vec::with_capacity(n);
    for j in 0..n {
        if j == k {
            continue;
        }
        let mut e = vec![Rat::from_i64(0); n];
        e[j] = Rat::from_i64(1);
        cols.push(e);
    }
    cols.push(q.to_vec());
    LinearChange::from_columns(&cols).expect("q has a nonzero entry at the omitted index")
}

/// Projective point with complex coordinates, scaled so the largest modulus is 1
/// and the first coordinate of modulus ≥ 1/2 is real positive.
#[derive(Clone, Debug, PartialEq, serde::Serialize)]
pub struct CPoint {
    pub coords: Vec<C64>,
}

impl CPoint {
    pub fn new(v: Vec<C64>) -> Self {
        let m = v.iter().map(|c| c.norm()).fold(0.0, f64::max);
        assert!(m > 0.0, "projective point with all coordinates zero");
        let k = v.iter().position(|c| c.norm() >= 0.5 * m).unwrap();
        let phase = v[k].conj() / v[k].norm();
        CPoint { coords: v.iter().map(|c| c * phase / m).collect() }
    }

    pub fn from_rat(q: &[Rat]) -> Self {
        CPoint::new(q.iter().map(|c| c.to_c64()).collect())
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    /// Fubini–Study style distance sqrt(1 − |⟨p,q⟩|²/(|p|²|q|²)).
    pub fn distance(&self, o: &CPoint) -> f64 {
        let ip: C64 = self.coords.iter().zip(&o.coords).map(|(a, b)| a.conj() * b).sum();
        let na: f64 = self.coords.iter().map(|c| c.norm_sqr()).sum();
        let nb: f64 = o.coords.iter().map(|c| c.norm_sqr()).sum();
        (1.0 - ip.norm_sqr() / (na * nb)).max(0.0).sqrt()
    }
}

/// Result of [`cone_test`].
#[derive(Clone, Debug, PartialEq)]
pub struct ConeVerdict {
    /// 5 − rank of the span of the partial derivatives.
    pub r: usize,
    /// Basis of the vertex (the common kernel), as exact vectors.
    pub vertex: Vec<Vec<Rat>>,
}

impl ConeVerdict {
    pub fn is_cone(&self) -> bool {
        self.r >= 1
    }
}

/// f is a cone iff its partial derivatives are linearly dependent.
pub fn cone_test(f: &Form<Rat>) -> ConeVerdict {
    let n = f.nvars();
    let grads = f.gradient();
    // Columns are partials, rows are quadric monomials.
    let cols: Vec<Vec<Rat>> = grads.iter().map(|g| g.coefficient_vector()).collect();
    let m = linalg::transpose(&cols);
    let rank = linalg::rank_exact(&m);
    let vertex = linalg::nullspace(&m, n);
    debug_assert_eq!(vertex.len(), n - rank);
    ConeVerdict { r: n - rank, vertex }
}

/// The exact rational point on the line through `p` in direction `v` at parameter `t`.
pub fn point_on_line(p: &[Rat], v: &[Rat], t: &Rat) -> Vec<Rat> {
    p.iter().zip(v).map(|(a, b)| a + b * t).collect()
}
