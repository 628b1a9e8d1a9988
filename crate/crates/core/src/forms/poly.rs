use super::scalar::{Rat, Scalar, C64};
use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

/// Exponent vector ordered graded-lexicographically.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial(pub Vec<u16>);

impl Monomial {
    pub fn one(n: usize) -> Self {
        Monomial(vec![0; n])
    }

    pub fn var(n: usize, i: usize) -> Self {
        let mut e = vec![0; n];
        e[i] = 1;
        Monomial(e)
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    pub fn exps(&self) -> &[u16] {
        &self.0
    }

    pub fn mul(&self, o: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&o.0).map(|(a, b)| a + b).collect())
    }
}

impl Ord for Monomial {
    fn cmp(&self, o: &Self) -> Ordering {
        self.degree().cmp(&o.degree()).then_with(|| self.0.cmp(&o.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

/// All exponent vectors of total degree `d` in `n` variables, in descending order.
pub fn monomials_of_degree(n: usize, d: u32) -> Vec<Monomial> {
    fn rec(n: usize, d: u32, prefix: &mut Vec<u16>, out: &mut Vec<Monomial>) {
        if prefix.len() + 1 == n {
            prefix.push(d as u16);
            out.push(Monomial(prefix.clone()));
            prefix.pop();
            return;
        }
        for e in (0..=d).rev() {
            prefix.push(e as u16);
            rec(n, d - e, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if n == 0 {
        if d == 0 {
            out.push(Monomial(vec![]));
        }
        return out;
    }
    rec(n, d, &mut Vec::with_capacity(n), &mut out);
    out
}

/// Sparse polynomial in `nvars` variables over `K`.
#[derive(Clone, PartialEq, Debug)]
pub struct Poly<K: Scalar> {
    nvars: usize,
    terms: BTreeMap<Monomial, K>,
}

impl<K: Scalar> Poly<K> {
    pub fn zero(nvars: usize) -> Self {
        Poly { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: K) -> Self {
        let mut p = Self::zero(nvars);
        p.add_term(Monomial::one(nvars), c);
        p
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        assert!(i < nvars, "variable index out of range");
        let mut p = Self::zero(nvars);
        p.add_term(Monomial::var(nvars, i), K::one());
        p
    }

    pub fn monomial(m: Monomial, c: K) -> Self {
        let mut p = Self::zero(m.0.len());
        p.add_term(m, c);
        p
    }

    /// Linear form Σ cᵢxᵢ.
    pub fn linear(coeffs: &[K]) -> Self {
        let n = coeffs.len();
        let mut p = Self::zero(n);
        for (i, c) in coeffs.iter().enumerate() {
            p.add_term(Monomial::var(n, i), c.clone());
        }
        p
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, K)>>(nvars: usize, it: I) -> Self {
        let mut p = Self::zero(nvars);
        for (m, c) in it {
            assert_eq!(m.0.len(), nvars, "exponent vector length");
            p.add_term(m, c);
        }
        p
    }

    pub fn add_term(&mut self, m: Monomial, c: K) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(v) => {
                let s = v.plus(&c);
                if s.is_zero() {
                    self.terms.remove(&m);
                } else {
                    *v = s;
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn nterms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in ascending graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &K)> {
        self.terms.iter()
    }

    pub fn coeff(&self, exps: &[u16]) -> K {
        self.terms.get(&Monomial(exps.to_vec())).cloned().unwrap_or_else(K::zero)
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().next_back().map(|m| m.degree())
    }

    pub fn min_degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.degree()).min()
    }

    /// Degree if every term has the same total degree.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let d = self.degree()?;
        self.terms.keys().all(|m| m.degree() == d).then_some(d)
    }

    pub fn homogeneous_part(&self, d: u32) -> Self {
        Poly {
            nvars: self.nvars,
            terms: self.terms.iter().filter(|(m, _)| m.degree() == d).map(|(m, c)| (m.clone(), c.clone())).collect(),
        }
    }

    /// Drops all terms of total degree above `d`.
    pub fn truncate(&self, d: u32) -> Self {
        Poly {
            nvars: self.nvars,
            terms: self.terms.iter().filter(|(m, _)| m.degree() <= d).map(|(m, c)| (m.clone(), c.clone())).collect(),
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        assert_eq!(self.nvars, o.nvars);
        let mut r = self.clone();
        for (m, c) in &o.terms {
            r.add_term(m.clone(), c.clone());
        }
        r
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> Self {
        self.map_coeffs(|c| c.negate())
    }

    pub fn scale(&self, k: &K) -> Self {
        if k.is_zero() {
            return Self::zero(self.nvars);
        }
        self.map_coeffs(|c| c.times(k))
    }

    pub fn mul(&self, o: &Self) -> Self {
        assert_eq!(self.nvars, o.nvars);
        let mut r = Self::zero(self.nvars);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &o.terms {
                r.add_term(m1.mul(m2), c1.times(c2));
            }
        }
        r
    }

    pub fn mul_monomial(&self, m: &Monomial, c: &K) -> Self {
        let mut r = Self::zero(self.nvars);
        for (m1, c1) in &self.terms {
            r.add_term(m1.mul(m), c1.times(c));
        }
        r
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut r = Self::constant(self.nvars, K::one());
        for _ in 0..e {
            r = r.mul(self);
        }
        r
    }

    pub fn map_coeffs<F: Fn(&K) -> K>(&self, f: F) -> Self {
        let mut r = Self::zero(self.nvars);
        for (m, c) in &self.terms {
            r.add_term(m.clone(), f(c));
        }
        r
    }

    pub fn convert<L: Scalar, F: Fn(&K) -> L>(&self, f: F) -> Poly<L> {
        let mut r = Poly::zero(self.nvars);
        for (m, c) in &self.terms {
            r.add_term(m.clone(), f(c));
        }
        r
    }

    pub fn to_complex(&self) -> Poly<C64> {
        self.convert(|c| c.to_c64())
    }

    pub fn derivative(&self, i: usize) -> Self {
        let mut r = Self::zero(self.nvars);
        for (m, c) in &self.terms {
            let e = m.0[i];
            if e == 0 {
                continue;
            }
            let mut m2 = m.clone();
            m2.0[i] -= 1;
            r.add_term(m2, c.times(&K::from_i64(e as i64)));
        }
        r
    }

    pub fn gradient(&self) -> Vec<Self> {
        (0..self.nvars).map(|i| self.derivative(i)).collect()
    }

    /// Evaluates in the coefficient field.
    pub fn eval(&self, x: &[K]) -> K {
        assert_eq!(x.len(), self.nvars, "dimension mismatch");
        let maxe = self.terms.keys().flat_map(|m| m.0.iter().copied()).max().unwrap_or(0) as usize;
        let pows: Vec<Vec<K>> = x
            .iter()
            .map(|xi| {
                let mut v = Vec::with_capacity(maxe + 1);
                v.push(K::one());
                for k in 1..=maxe {
                    let next = v[k - 1].times(xi);
                    v.push(next);
                }
                v
            })
            .collect();
        let mut acc = K::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    t = t.times(&pows[i][e as usize]);
                }
            }
            acc = acc.plus(&t);
        }
        acc
    }

    /// Complex evaluation with coefficients rounded to doubles.
    pub fn eval_c(&self, x: &[C64]) -> C64 {
        assert_eq!(x.len(), self.nvars, "dimension mismatch");
        let mut acc = C64::new(0.0, 0.0);
        for (m, c) in &self.terms {
            let mut t = c.to_c64();
            for (i, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    t *= x[i].powu(e as u32);
                }
            }
            acc += t;
        }
        acc
    }

    /// Substitutes `x_i ↦ images[i]`; the images share a (possibly different) variable set.
    pub fn compose(&self, images: &[Poly<K>]) -> Poly<K> {
        assert_eq!(images.len(), self.nvars);
        let m = images.first().map(|p| p.nvars).unwrap_or(0);
        let mut cache: Vec<Vec<Poly<K>>> = images.iter().map(|p| vec![Poly::constant(m, K::one()), p.clone()]).collect();
        let mut r = Poly::zero(m);
        for (mono, c) in &self.terms {
            let mut t = Poly::constant(m, c.clone());
            for (i, &e) in mono.0.iter().enumerate() {
                let e = e as usize;
                if e == 0 {
                    continue;
                }
                while cache[i].len() <= e {
                    let next = cache[i].last().unwrap().mul(&images[i]);
                    cache[i].push(next);
                }
                t = t.mul(&cache[i][e]);
            }
            r = r.add(&t);
        }
        r
    }

    /// Sets variable `i` to the constant `v`, keeping the variable slot (with exponent 0).
    pub fn specialize(&self, i: usize, v: &K) -> Self {
        let mut r = Self::zero(self.nvars);
        for (m, c) in &self.terms {
            let e = m.0[i];
            let mut k = c.clone();
            for _ in 0..e {
                k = k.times(v);
            }
            let mut m2 = m.clone();
            m2.0[i] = 0;
            r.add_term(m2, k);
        }
        r
    }

    /// Removes variable `i` (which must not occur) from the variable set.
    pub fn drop_var(&self, i: usize) -> Self {
        let mut r = Self::zero(self.nvars - 1);
        for (m, c) in &self.terms {
            assert_eq!(m.0[i], 0, "dropped variable occurs");
            let mut e = m.0.clone();
            e.remove(i);
            r.add_term(Monomial(e), c.clone());
        }
        r
    }

    /// Dehomogenizes by setting variable `i` to 1 and removing it.
    pub fn dehomogenize(&self, i: usize) -> Self {
        self.specialize(i, &K::one()).drop_var(i)
    }

    /// Embeds into a larger variable set, old variable j going to `map[j]`.
    pub fn embed(&self, nvars: usize, map: &[usize]) -> Self {
        let mut r = Self::zero(nvars);
        for (m, c) in &self.terms {
            let mut e = vec![0u16; nvars];
            for (j, &x) in m.0.iter().enumerate() {
                e[map[j]] += x;
            }
            r.add_term(Monomial(e), c.clone());
        }
        r
    }

    /// Coefficients of the powers of variable `i`: `self = Σ_k c_k x_i^k`.
    pub fn coefficients_in(&self, i: usize) -> Vec<Self> {
        let mut out: Vec<Self> = Vec::new();
        for (m, c) in &self.terms {
            let e = m.0[i] as usize;
            while out.len() <= e {
                out.push(Self::zero(self.nvars));
            }
            let mut m2 = m.clone();
            m2.0[i] = 0;
            out[e].add_term(m2, c.clone());
        }
        out
    }
}

fn fmt_monomial(m: &Monomial, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    let mut first = true;
    for (i, &e) in m.0.iter().enumerate() {
        if e == 0 {
            continue;
        }
        if !first {
            write!(f, "*")?;
        }
        first = false;
        if e == 1 {
            write!(f, "x{i}")?;
        } else {
            write!(f, "x{i}^{e}")?;
        }
    }
    Ok(())
}

impl fmt::Display for Poly<Rat> {
    /// Canonical text: descending graded-lex terms, rationals as `p/q`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use num_traits::{One, Signed};
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            match (k, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let is_const = m.degree() == 0;
            if is_const {
                write!(f, "{a}")?;
            } else {
                if !a.is_one() {
                    write!(f, "{a}*")?;
                }
                fmt_monomial(m, f)?;
            }
        }
        Ok(())
    }
}
