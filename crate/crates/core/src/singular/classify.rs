use super::SingularError;
use crate::forms::{Form, Rat, Scalar};
use serde::{Serialize, Serializer};
use std::fmt;

/// Analytic type of an isolated singular point of a cubic threefold.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SingularityType {
    A(u32),
    D(u32),
    E(u32),
    T333,
    T334,
    T344,
    T444,
    Q10,
    S11,
    U12,
    /// Corank 2 with a triple root and μ ≥ 9, or a vanishing cubic term.
    Corank2NonAde,
    /// Vertex of a cone over a smooth cubic surface.
    ConeVertex,
    Unclassified,
}

impl SingularityType {
    pub fn is_ade(&self) -> bool {
        matches!(self, SingularityType::A(_) | SingularityType::D(_) | SingularityType::E(_))
    }
}

impl fmt::Display for SingularityType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use SingularityType::*;
        match self {
            A(n) => write!(f, "A{n}"),
            D(n) => write!(f, "D{n}"),
            E(n) => write!(f, "E{n}"),
            T333 => write!(f, "T333"),
            T334 => write!(f, "T334"),
            T344 => write!(f, "T344"),
            T444 => write!(f, "T444"),
            Q10 => write!(f, "Q10"),
            S11 => write!(f, "S11"),
            U12 => write!(f, "U12"),
            Corank2NonAde => write!(f, "corank-2 non-ADE (T-family)"),
            ConeVertex => write!(f, "cone vertex"),
            Unclassified => write!(f, "unclassified"),
        }
    }
}

impl Serialize for SingularityType {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// Root pattern of a binary cubic.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CubicRoots {
    Distinct,
    Double,
    Triple,
    Zero,
}

/// Exact root structure of a binary cubic a s³ + b s²t + c st² + d t³.
pub fn binary_cubic_roots(g: &Form<Rat>) -> CubicRoots {
    assert_eq!((g.nvars(), g.degree()), (2, 3));
    if g.is_zero() {
        return CubicRoots::Zero;
    }
    let a = g.coeff(&[3, 0]);
    let b = g.coeff(&[2, 1]);
    let c = g.coeff(&[1, 2]);
    let d = g.coeff(&[0, 3]);
    let k = |v: i64| Rat::from_i64(v);
    let disc = &b * &b * &c * &c - k(4) * &a * &c * &c * &c - k(4) * &b * &b * &b * &d - k(27) * &a * &a * &d * &d
        + k(18) * &a * &b * &c * &d;
    if !disc.is_zero() {
        return CubicRoots::Distinct;
    }
    // The Hessian covariant vanishes identically exactly for a cube of a linear form.
    let h0 = k(3) * &a * &c - &b * &b;
    let h1 = k(9) * &a * &d - &b * &c;
    let h2 = k(3) * &b * &d - &c * &c;
    if h0.is_zero() && h1.is_zero() && h2.is_zero() {
        CubicRoots::Triple
    } else {
        CubicRoots::Double
    }
}

/// Type from corank, Milnor number, and either the kernel cubic (corank 2) or
/// the component count of the reduced projection curve (corank 3).
pub fn classify(corank: usize, mu: usize, roots: Option<CubicRoots>, components: Option<usize>) -> Result<SingularityType, SingularError> {
    use SingularityType::*;
    let bad = |why: &str| Err(SingularError::Inconsistent(format!("corank {corank}, μ = {mu}: {why}")));
    match corank {
        0 => {
            if mu != 1 {
                return bad("a nondegenerate point has μ = 1");
            }
            Ok(A(1))
        }
        1 => {
            if mu < 2 {
                return bad("corank 1 needs μ ≥ 2");
            }
            Ok(A(mu as u32))
        }
        2 => {
            if mu < 4 {
                return bad("corank 2 needs μ ≥ 4");
            }
            match roots {
                Some(CubicRoots::Distinct) if mu == 4 => Ok(D(4)),
                Some(CubicRoots::Distinct) => bad("three distinct roots force D4"),
                Some(CubicRoots::Double) if mu >= 5 => Ok(D(mu as u32)),
                Some(CubicRoots::Double) => bad("a double root needs μ ≥ 5"),
                Some(CubicRoots::Triple) if (6..=8).contains(&mu) => Ok(E(mu as u32)),
                Some(CubicRoots::Triple) | Some(CubicRoots::Zero) if mu >= 9 => Ok(Corank2NonAde),
                Some(_) => bad("triple root with μ < 6"),
                None => bad("kernel cubic missing"),
            }
        }
        3 => match (mu, components) {
            (8, Some(1)) => Ok(T333),
            (9, Some(1)) => Ok(T334),
            (10, Some(1)) => Ok(Q10),
            (10, Some(2)) => Ok(T344),
            (11, Some(2)) => Ok(S11),
            (11, Some(3)) => Ok(T444),
            (12, Some(3)) => Ok(U12),
            (_, None) => bad("component count of the projection curve missing"),
            _ => Ok(Unclassified),
        },
        4 if mu == 16 => Ok(ConeVertex),
        _ => Ok(Unclassified),
    }
}
