//! Dense exact linear algebra. Matrices are row-major `Vec<Vec<K>>`.

use super::scalar::{Rat, Scalar};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

pub type Matrix<K> = Vec<Vec<K>>;

pub fn identity<K: Scalar>(n: usize) -> Matrix<K> {
    (0..n).map(|i| (0..n).map(|j| if i == j { K::one() } else { K::zero() }).collect()).collect()
}

pub fn transpose<K: Scalar>(a: &Matrix<K>) -> Matrix<K> {
    if a.is_empty() {
        return vec![];
    }
    (0..a[0].len()).map(|j| a.iter().map(|r| r[j].clone()).collect()).collect()
}

pub fn mat_mul<K: Scalar>(a: &Matrix<K>, b: &Matrix<K>) -> Matrix<K> {
    let m = b.first().map(|r| r.len()).unwrap_or(0);
    a.iter()
        .map(|row| {
            (0..m)
                .map(|j| row.iter().zip(b).fold(K::zero(), |acc, (x, brow)| acc.plus(&x.times(&brow[j]))))
                .collect()
        })
        .collect()
}

pub fn mat_vec<K: Scalar>(a: &Matrix<K>, v: &[K]) -> Vec<K> {
    a.iter().map(|row| row.iter().zip(v).fold(K::zero(), |acc, (x, y)| acc.plus(&x.times(y)))).collect()
}

/// Reduced row echelon form in place; returns pivot columns.
pub fn rref<K: Scalar>(a: &mut Matrix<K>) -> Vec<usize> {
    let rows = a.len();
    if rows == 0 {
        return vec![];
    }
    let cols = a[0].len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let best = (r..rows)
            .filter(|&i| !a[i][c].is_zero())
            .max_by(|&i, &j| a[i][c].magnitude().partial_cmp(&a[j][c].magnitude()).unwrap());
        let Some(p) = best else { continue };
        a.swap(r, p);
        let inv = K::one().divide(&a[r][c]);
        for x in a[r].iter_mut() {
            *x = x.times(&inv);
        }
        for i in 0..rows {
            if i != r && !a[i][c].is_zero() {
                let f = a[i][c].clone();
                for j in 0..cols {
                    let v = a[i][j].minus(&f.times(&a[r][j]));
                    a[i][j] = v;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Basis of the right kernel {v : a v = 0}.
pub fn nullspace<K: Scalar>(a: &Matrix<K>, ncols: usize) -> Vec<Vec<K>> {
    let mut m = a.clone();
    let pivots = rref(&mut m);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![K::zero(); ncols];
            v[f] = K::one();
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = m[r][f].negate();
            }
            v
        })
        .collect()
}

pub fn det<K: Scalar>(a: &Matrix<K>) -> K {
    let n = a.len();
    let mut m = a.clone();
    let mut d = K::one();
    for c in 0..n {
        let best = (c..n)
            .filter(|&i| !m[i][c].is_zero())
            .max_by(|&i, &j| m[i][c].magnitude().partial_cmp(&m[j][c].magnitude()).unwrap());
        let Some(p) = best else { return K::zero() };
        if p != c {
            m.swap(p, c);
            d = d.negate();
        }
        d = d.times(&m[c][c]);
        for i in c + 1..n {
            if m[i][c].is_zero() {
                continue;
            }
            let f = m[i][c].divide(&m[c][c]);
            for j in c..n {
                let v = m[i][j].minus(&f.times(&m[c][j]));
                m[i][j] = v;
            }
        }
    }
    d
}

pub fn inverse<K: Scalar>(a: &Matrix<K>) -> Option<Matrix<K>> {
    let n = a.len();
    let mut aug: Matrix<K> = a
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { K::one() } else { K::zero() }));
            r
        })
        .collect();
    let pivots = rref(&mut aug);
    if pivots.len() < n || pivots[n - 1] != n - 1 {
        return None;
    }
    Some(aug.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// Rank over Q by fraction-free (Bareiss) elimination on the integer matrix
/// obtained by clearing row denominators.
pub fn rank_exact(a: &Matrix<Rat>) -> usize {
    let mut m: Vec<Vec<BigInt>> = a
        .iter()
        .map(|row| {
            let l = row.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
            row.iter().map(|x| (x * Rat::from_integer(l.clone())).to_integer()).collect()
        })
        .collect();
    let rows = m.len();
    if rows == 0 {
        return 0;
    }
    let cols = m[0].len();
    let mut prev = BigInt::one();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(r, p);
        for i in r + 1..rows {
            for j in c + 1..cols {
                let v = (&m[r][c] * &m[i][j] - &m[i][c] * &m[r][j]) / &prev;
                m[i][j] = v;
            }
            m[i][c] = BigInt::zero();
        }
        prev = m[r][c].clone();
        r += 1;
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forms::scalar::rat_int;

    fn q(rows: &[&[i64]]) -> Matrix<Rat> {
        rows.iter().map(|r| r.iter().map(|&x| rat_int(x)).collect()).collect()
    }

    #[test]
    fn bareiss_rank_matches_rref() {
        let a = q(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]);
        assert_eq!(rank_exact(&a), 2);
        let mut b = a.clone();
        assert_eq!(rref(&mut b).len(), 2);
        assert_eq!(rank_exact(&identity::<Rat>(4)), 4);
        assert_eq!(rank_exact(&q(&[&[0, 0], &[0, 0]])), 0);
    }

    #[test]
    fn inverse_and_det() {
        let a = q(&[&[2, 1], &[1, 1]]);
        assert_eq!(det(&a), rat_int(1));
        let inv = inverse(&a).unwrap();
        assert_eq!(mat_mul(&a, &inv), identity(2));
        assert!(inverse(&q(&[&[1, 2], &[2, 4]])).is_none());
    }

    #[test]
    fn kernel_vectors_are_annihilated() {
        let a = q(&[&[1, 1, 1, 1], &[1, -1, 0, 2]]);
        let ns = nullspace(&a, 4);
        assert_eq!(ns.len(), 2);
        for v in ns {
            assert!(mat_vec(&a, &v).iter().all(|x| Scalar::is_zero(x)));
        }
    }
}
