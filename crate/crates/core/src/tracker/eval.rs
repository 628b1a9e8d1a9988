use crate::forms::{Poly, Scalar, C64};
use nalgebra::{DMatrix, DVector};

/// Polynomial compiled for fast complex evaluation.
#[derive(Clone, Debug)]
pub struct NumPoly {
    nvars: usize,
    terms: Vec<(C64, Vec<u16>)>,
    maxexp: usize,
}

impl NumPoly {
    pub fn new<K: Scalar>(p: &Poly<K>) -> Self {
        let terms: Vec<(C64, Vec<u16>)> = p.terms().map(|(m, c)| (c.to_c64(), m.exps().to_vec())).collect();
        let maxexp = terms.iter().flat_map(|(_, e)| e.iter().copied()).max().unwrap_or(0) as usize;
        NumPoly { nvars: p.nvars(), terms, maxexp }
    }

    pub fn zero(nvars: usize) -> Self {
        NumPoly { nvars, terms: vec![], maxexp: 0 }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn eval(&self, pw: &Powers) -> C64 {
        let mut acc = C64::new(0.0, 0.0);
        for (c, e) in &self.terms {
            let mut t = *c;
            for (i, &k) in e.iter().enumerate() {
                if k > 0 {
                    t *= pw.get(i, k as usize);
                }
            }
            acc += t;
        }
        acc
    }

    /// Value and gradient (written into `grad`).
    pub fn eval_grad(&self, pw: &Powers, grad: &mut [C64]) -> C64 {
        for g in grad.iter_mut() {
            *g = C64::new(0.0, 0.0);
        }
        let mut acc = C64::new(0.0, 0.0);
        for (c, e) in &self.terms {
            let mut t = *c;
            for (i, &k) in e.iter().enumerate() {
                if k > 0 {
                    t *= pw.get(i, k as usize);
                }
            }
            acc += t;
            for (i, &k) in e.iter().enumerate() {
                if k == 0 {
                    continue;
                }
                let mut d = *c * k as f64 * pw.get(i, k as usize - 1);
                for (j, &kj) in e.iter().enumerate() {
                    if j != i && kj > 0 {
                        d *= pw.get(j, kj as usize);
                    }
                }
                grad[i] += d;
            }
        }
        acc
    }

    /// Sum of coefficient moduli, the scale for relative residuals.
    pub fn coefficient_norm(&self) -> f64 {
        self.terms.iter().map(|(c, _)| c.norm()).sum()
    }
}

/// Table of x_i^k.
pub struct Powers {
    maxexp: usize,
    table: Vec<C64>,
}

impl Powers {
    pub fn new(x: &[C64], maxexp: usize) -> Self {
        let mut table = Vec::with_capacity(x.len() * (maxexp + 1));
        for xi in x {
            let mut p = C64::new(1.0, 0.0);
            table.push(p);
            for _ in 0..maxexp {
                p *= xi;
                table.push(p);
            }
        }
        Powers { maxexp, table }
    }

    #[inline]
    fn get(&self, i: usize, k: usize) -> C64 {
        self.table[i * (self.maxexp + 1) + k]
    }
}

/// Square or rectangular system of compiled polynomials.
#[derive(Clone, Debug)]
pub struct NumSystem {
    pub nvars: usize,
    pub polys: Vec<NumPoly>,
    maxexp: usize,
}

impl NumSystem {
    pub fn new(polys: Vec<NumPoly>) -> Self {
        let nvars = polys.first().map(|p| p.nvars).unwrap_or(0);
        assert!(polys.iter().all(|p| p.nvars == nvars), "system over mixed variable sets");
        let maxexp = polys.iter().map(|p| p.maxexp).max().unwrap_or(0);
        NumSystem { nvars, polys, maxexp }
    }

    pub fn from_polys<K: Scalar>(ps: &[Poly<K>]) -> Self {
        Self::new(ps.iter().map(NumPoly::new).collect())
    }

    pub fn len(&self) -> usize {
        self.polys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.polys.is_empty()
    }

    pub fn powers(&self, x: &[C64]) -> Powers {
        Powers::new(x, self.maxexp.max(1))
    }

    pub fn eval(&self, x: &[C64]) -> Vec<C64> {
        let pw = self.powers(x);
        self.polys.iter().map(|p| p.eval(&pw)).collect()
    }

    pub fn eval_jac(&self, x: &[C64]) -> (DVector<C64>, DMatrix<C64>) {
        let pw = self.powers(x);
        let mut jac = DMatrix::zeros(self.polys.len(), self.nvars);
        let mut g = vec![C64::new(0.0, 0.0); self.nvars];
        let v = DVector::from_iterator(
            self.polys.len(),
            self.polys.iter().enumerate().map(|(r, p)| {
                let val = p.eval_grad(&pw, &mut g);
                for (c, gi) in g.iter().enumerate() {
                    jac[(r, c)] = *gi;
                }
                val
            }),
        );
        (v, jac)
    }

    /// max_i |p_i(x)| / (coefficient norm · max(1,|x|∞)^deg), a scale-free residual.
    pub fn relative_residual(&self, x: &[C64], degrees: &[u32]) -> f64 {
        let xn = x.iter().map(|c| c.norm()).fold(1.0, f64::max);
        let vals = self.eval(x);
        vals.iter()
            .zip(&self.polys)
            .zip(degrees)
            .map(|((v, p), &d)| v.norm() / (p.coefficient_norm().max(1e-300) * xn.powi(d as i32)))
            .fold(0.0, f64::max)
    }
}

pub fn norm_inf(x: &[C64]) -> f64 {
    x.iter().map(|c| c.norm()).fold(0.0, f64::max)
}

pub fn norm2(x: &[C64]) -> f64 {
    x.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt()
}

/// Ratio of extreme singular values.
pub fn condition_number(m: &DMatrix<C64>) -> f64 {
    let sv = m.clone().svd(false, false).singular_values;
    let max = sv.iter().cloned().fold(0.0, f64::max);
    let min = sv.iter().cloned().fold(f64::INFINITY, f64::min);
    if min == 0.0 {
        f64::INFINITY
    } else {
        max / min
    }
}
