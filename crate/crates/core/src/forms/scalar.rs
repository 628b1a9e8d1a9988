use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::fmt;

pub type Rat = BigRational;
pub type C64 = Complex64;

/// `n/d` as an exact rational.
pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat_int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn rat_to_f64(r: &Rat) -> f64 {
    r.to_f64().unwrap_or_else(|| {
        // Huge numerators or denominators overflow the direct conversion.
        let n = r.numer().to_f64().unwrap_or(f64::INFINITY);
        let d = r.denom().to_f64().unwrap_or(f64::INFINITY);
        n / d
    })
}

/// Coefficient field for [`Poly`](super::Poly): exact rationals or complex doubles.
pub trait Scalar: Clone + PartialEq + fmt::Debug + Send + Sync + 'static {
    /// Equality with zero is decided exactly.
    const EXACT: bool;
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn plus(&self, o: &Self) -> Self;
    fn minus(&self, o: &Self) -> Self;
    fn times(&self, o: &Self) -> Self;
    fn divide(&self, o: &Self) -> Self;
    fn negate(&self) -> Self;
    fn from_i64(v: i64) -> Self;
    fn from_rat(r: &Rat) -> Self;
    fn to_c64(&self) -> C64;
    /// Nearest value of the field; rationals keep only a float approximation of the real part.
    fn from_c64(c: C64) -> Self;
    /// Size used for pivot choice.
    fn magnitude(&self) -> f64;
}

impl Scalar for Rat {
    const EXACT: bool = true;
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn plus(&self, o: &Self) -> Self {
        self + o
    }
    fn minus(&self, o: &Self) -> Self {
        self - o
    }
    fn times(&self, o: &Self) -> Self {
        self * o
    }
    fn divide(&self, o: &Self) -> Self {
        self / o
    }
    fn negate(&self) -> Self {
        -self
    }
    fn from_i64(v: i64) -> Self {
        rat_int(v)
    }
    fn from_rat(r: &Rat) -> Self {
        r.clone()
    }
    fn to_c64(&self) -> C64 {
        C64::new(rat_to_f64(self), 0.0)
    }
    fn from_c64(c: C64) -> Self {
        Rat::from_float(c.re).unwrap_or_default()
    }
    fn magnitude(&self) -> f64 {
        rat_to_f64(&self.abs())
    }
}

impl Scalar for C64 {
    const EXACT: bool = false;
    fn zero() -> Self {
        C64::new(0.0, 0.0)
    }
    fn one() -> Self {
        C64::new(1.0, 0.0)
    }
    fn is_zero(&self) -> bool {
        self.re == 0.0 && self.im == 0.0
    }
    fn plus(&self, o: &Self) -> Self {
        self + o
    }
    fn minus(&self, o: &Self) -> Self {
        self - o
    }
    fn times(&self, o: &Self) -> Self {
        self * o
    }
    fn divide(&self, o: &Self) -> Self {
        self / o
    }
    fn negate(&self) -> Self {
        -self
    }
    fn from_i64(v: i64) -> Self {
        C64::new(v as f64, 0.0)
    }
    fn from_rat(r: &Rat) -> Self {
        C64::new(rat_to_f64(r), 0.0)
    }
    fn to_c64(&self) -> C64 {
        *self
    }
    fn from_c64(c: C64) -> Self {
        c
    }
    fn magnitude(&self) -> f64 {
        self.norm()
    }
}
