//! Local multiplicity by Macaulay dual-space nullities, with ranks taken
//! modulo large primes.

use crate::forms::{monomials_of_degree, Monomial, Poly, Rat};
use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use std::collections::HashMap;

const PRIMES: [u64; 2] = [2_305_843_009_213_693_951, 4_611_686_018_427_387_847];
pub const MAX_DEPTH: u32 = 20;

fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn powmod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1;
    while e > 0 {
        if e & 1 == 1 {
            r = mulmod(r, a, p);
        }
        a = mulmod(a, a, p);
        e >>= 1;
    }
    r
}

fn reduce(x: &BigInt, p: u64) -> u64 {
    let m = x % BigInt::from(p);
    let m = if m < BigInt::zero() { m + BigInt::from(p) } else { m };
    m.to_u64().unwrap()
}

fn to_mod(r: &Rat, p: u64) -> Option<u64> {
    let d = reduce(r.denom(), p);
    if d == 0 {
        return None;
    }
    Some(mulmod(reduce(r.numer(), p), powmod(d, p - 2, p), p))
}

/// Incremental row echelon form over Z/p.
struct Echelon {
    p: u64,
    rows: Vec<(usize, Vec<u64>)>,
}

impl Echelon {
    fn insert(&mut self, mut v: Vec<u64>) {
        let p = self.p;
        for (pc, r) in &self.rows {
            let c = v[*pc];
            if c != 0 {
                for (x, y) in v.iter_mut().zip(r) {
                    *x = (*x + p - mulmod(c, *y, p)) % p;
                }
            }
        }
        if let Some(pc) = v.iter().position(|&x| x != 0) {
            let inv = powmod(v[pc], p - 2, p);
            for x in v.iter_mut() {
                *x = mulmod(*x, inv, p);
            }
            self.rows.push((pc, v));
        }
    }
}

/// dim of the degree-≤d Macaulay dual space of the ideal (gens) at the origin.
fn nullity(gens: &[Poly<Rat>], d: u32) -> Option<usize> {
    let n = gens[0].nvars();
    let cols: Vec<Monomial> = (0..=d).flat_map(|k| monomials_of_degree(n, k)).collect();
    let index: HashMap<&Monomial, usize> = cols.iter().enumerate().map(|(i, m)| (m, i)).collect();
    let mut best = 0;
    for &p in &PRIMES {
        let mut ech = Echelon { p, rows: Vec::new() };
        for k in 0..d {
            for beta in monomials_of_degree(n, k) {
                for g in gens {
                    let mut row = vec![0u64; cols.len()];
                    for (m, c) in g.terms() {
                        let mm = m.mul(&beta);
                        if mm.degree() > d {
                            continue;
                        }
                        row[index[&mm]] = to_mod(c, p)?;
                    }
                    ech.insert(row);
                }
            }
        }
        best = best.max(ech.rows.len());
    }
    Some(cols.len() - best)
}

/// Dimension of C[[x]]/(gens) at the origin, or `None` if the nullities do
/// not stabilize by degree [`MAX_DEPTH`] (the zero is not isolated).
pub fn local_multiplicity(gens: &[Poly<Rat>]) -> Option<usize> {
    let mut prev = 1;
    for d in 1..=MAX_DEPTH {
        let nu = nullity(gens, d)?;
        if nu == prev {
            return Some(nu);
        }
        prev = nu;
    }
    None
}
