use super::SingularityType;
use crate::forms::{rat, Rat};
use num_integer::Integer;
use serde::Serialize;

/// Weights of a quasi-homogeneous normal form in four variables (squares
/// weigh 1/2), or `None` for types without one.
pub fn normal_form_weights(t: SingularityType) -> Option<[Rat; 4]> {
    use SingularityType::*;
    let h = || rat(1, 2);
    Some(match t {
        A(k) => [rat(1, k as i64 + 1), h(), h(), h()],
        // x²y + y^{k−1}
        D(k) => {
            let k = k as i64;
            [rat(k - 2, 2 * (k - 1)), rat(1, k - 1), h(), h()]
        }
        E(6) => [rat(1, 3), rat(1, 4), h(), h()],
        E(7) => [rat(1, 3), rat(2, 9), h(), h()],
        E(8) => [rat(1, 3), rat(1, 5), h(), h()],
        T333 => [rat(1, 3), rat(1, 3), rat(1, 3), h()],
        Q10 => [rat(1, 3), rat(1, 4), rat(3, 8), h()],
        S11 => [rat(1, 4), rat(5, 16), rat(3, 8), h()],
        U12 => [rat(1, 3), rat(1, 3), rat(1, 4), h()],
        _ => return None,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Spectrum {
    /// Spectral numbers in ascending order, as "p/q".
    pub numbers: Vec<String>,
    #[serde(skip)]
    pub values: Vec<Rat>,
    /// s_p = #{α : 3 − p < α ≤ 4 − p}, p = 0..3.
    pub s: [usize; 4],
}

impl Spectrum {
    pub fn mu(&self) -> usize {
        self.values.len()
    }

    pub fn b11(&self) -> usize {
        self.s[1]
    }

    pub fn l11(&self) -> usize {
        self.s[2] - self.s[1]
    }
}

/// Spectrum of the quasi-homogeneous germ with the given weights: weighted
/// degrees of a monomial basis of the Jacobian algebra, read off the
/// Poincaré polynomial Π (1 − t^{1−wᵢ})/(1 − t^{wᵢ}), shifted by Σ wᵢ.
pub fn spectrum_from_weights(w: &[Rat]) -> Spectrum {
    let n: i64 = w.iter().fold(1i64, |acc, x| acc.lcm(&x.denom().try_into().unwrap()));
    let a: Vec<usize> = w.iter().map(|x| (x * Rat::from_integer(n.into())).to_integer().try_into().unwrap()).collect();
    let mut num = vec![1i64];
    let mut den = vec![1i64];
    let mul = |p: &Vec<i64>, e: usize| -> Vec<i64> {
        let mut r = vec![0i64; p.len() + e];
        for (i, &c) in p.iter().enumerate() {
            r[i] += c;
            r[i + e] -= c;
        }
        r
    };
    for &ai in &a {
        num = mul(&num, n as usize - ai);
        den = mul(&den, ai);
    }
    // Exact division num / den (den has constant term 1).
    let qlen = num.len() - den.len() + 1;
    let mut q = vec![0i64; qlen];
    let mut r = num.clone();
    for i in 0..qlen {
        let c = r[i];
        q[i] = c;
        if c != 0 {
            for (j, &d) in den.iter().enumerate() {
                r[i + j] -= c * d;
            }
        }
    }
    assert!(r.iter().all(|&x| x == 0), "weights are not those of an isolated quasi-homogeneous germ");
    let shift: usize = a.iter().sum();
    let mut values = Vec::new();
    for (deg, &mult) in q.iter().enumerate() {
        assert!(mult >= 0);
        for _ in 0..mult {
            values.push(rat((deg + shift) as i64, n));
        }
    }
    let mut s = [0usize; 4];
    for v in &values {
        for (p, sp) in s.iter_mut().enumerate() {
            let lo = rat(3 - p as i64, 1);
            let hi = rat(4 - p as i64, 1);
            if *v > lo && *v <= hi {
                *sp += 1;
            }
        }
    }
    Spectrum { numbers: values.iter().map(|v| v.to_string()).collect(), values, s }
}

pub fn spectrum(t: SingularityType) -> Option<Spectrum> {
    normal_form_weights(t).map(|w| spectrum_from_weights(&w))
}
