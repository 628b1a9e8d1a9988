use super::*;
use crate::forms::{rat, rat_int, Form};
use crate::tracker::TrackerSettings;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const F2: &str = "x0*x1*x2 + x1*x3*x4 + x2^3 - x3^3 + x3*x4^2";

fn e(i: usize) -> Vec<Rat> {
    (0..5).map(|j| rat_int((i == j) as i64)).collect()
}

#[test]
fn corank_examples() {
    let f2 = Form::parse_cubic(F2).unwrap();
    assert_eq!(corank(&f2, &e(1)).unwrap(), 0);
    assert_eq!(corank(&f2, &e(0)).unwrap(), 2);
    let f = Form::parse_cubic("x4*(x0^2 + x1^2 + x2^2) + x3^3").unwrap();
    assert_eq!(corank(&f, &e(4)).unwrap(), 1);
    assert_eq!(corank(&f2, &e(2)), Err(SingularError::NotSingular));
}

#[test]
fn milnor_examples() {
    let f2 = Form::parse_cubic(F2).unwrap();
    assert_eq!(milnor_number(&f2, &e(1)).unwrap(), 1);
    assert_eq!(milnor_number(&f2, &e(0)).unwrap(), 4);
    // Cone over a smooth cubic surface: the vertex has μ = 16.
    let cone = Form::parse_cubic("x0^3 + x1^3 + x2^3 + x3^3").unwrap();
    assert_eq!(milnor_number(&cone, &e(4)).unwrap(), 16);
}

#[test]
fn cubic_root_patterns() {
    let b = |s: &str| crate::forms::parse_form(s, 2, Some(3)).unwrap();
    assert_eq!(binary_cubic_roots(&b("x0^3 - x0*x1^2")), CubicRoots::Distinct);
    assert_eq!(binary_cubic_roots(&b("x0^2*x1")), CubicRoots::Double);
    assert_eq!(binary_cubic_roots(&b("(x0 + 2*x1)^3")), CubicRoots::Triple);
}

#[test]
fn classify_examples() {
    assert_eq!(classify(1, 9, None, None).unwrap(), SingularityType::A(9));
    assert_eq!(classify(2, 4, Some(CubicRoots::Distinct), None).unwrap(), SingularityType::D(4));
    assert_eq!(classify(2, 8, Some(CubicRoots::Triple), None).unwrap(), SingularityType::E(8));
    assert_eq!(classify(2, 10, Some(CubicRoots::Triple), None).unwrap(), SingularityType::Corank2NonAde);
    assert_eq!(classify(3, 10, None, Some(1)).unwrap(), SingularityType::Q10);
    assert_eq!(classify(3, 10, None, Some(2)).unwrap(), SingularityType::T344);
    assert!(classify(2, 3, Some(CubicRoots::Distinct), None).is_err());
    assert!(classify(0, 2, None, None).is_err());
}

#[test]
fn spectra_of_small_types() {
    let a1 = spectrum(SingularityType::A(1)).unwrap();
    assert_eq!(a1.numbers, ["2"]);
    assert_eq!((a1.b11(), a1.l11()), (0, 1));
    let a2 = spectrum(SingularityType::A(2)).unwrap();
    assert_eq!(a2.numbers, ["11/6", "13/6"]);
    assert_eq!((a2.b11(), a2.l11()), (1, 0));
    assert_eq!(spectrum(SingularityType::D(4)).unwrap().mu(), 4);
    assert_eq!(spectrum(SingularityType::T334), None);
    assert_eq!(normal_form_weights(SingularityType::D(5)).unwrap()[1], rat(1, 4));
}

#[test]
fn f2_points_and_types() {
    let f2 = Form::parse_cubic(F2).unwrap();
    let cfg = TrackerSettings::default();
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let pts = singular_points(&f2, &cfg, &mut rng).unwrap();
    assert_eq!(pts.len(), 3);
    let labels: Vec<String> = pts.iter().map(|p| p.label.to_string()).collect();
    assert_eq!(labels.iter().filter(|l| *l == "A1").count(), 2);
    assert_eq!(labels.iter().filter(|l| *l == "D4").count(), 1);
    for p in &pts {
        assert!(p.exact().is_some());
        assert_eq!(p.milnor, p.location.path_multiplicity);
    }
}

#[test]
fn smooth_fermat_has_no_singular_points() {
    let f = Form::parse_cubic("x0^3 + x1^3 + x2^3 + x3^3 + x4^3").unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    assert!(find_singular_points(&f, &TrackerSettings::default(), &mut rng).unwrap().is_empty());
}
