use super::*;
use crate::forms::{parse_form, Form, Rat};
use crate::tracker::TrackerSettings;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn q4(s: &str, d: u32) -> Form<Rat> {
    parse_form(s, 4, Some(d)).unwrap()
}

fn decompose(g2: &str, g3: &str, seed: u64) -> (WitnessSet, ComponentPartition) {
    let cfg = TrackerSettings::default();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let w = witness_points(&[q4(g2, 2), q4(g3, 3)], &cfg, &mut rng).unwrap();
    let p = monodromy_partition(&w, 50, &cfg, &mut rng).unwrap();
    (w, p)
}

fn sorted_degrees(p: &ComponentPartition) -> Vec<usize> {
    let mut d = p.degrees.clone();
    d.sort();
    d
}

#[test]
fn node_projection_of_f2_splits_off_a_line() {
    let (w, p) = decompose("x0*x1 + x2*x3", "x1^3 - x2^3 + x2*x3^2", 3);
    assert_eq!(w.len(), 6);
    assert_eq!(sorted_degrees(&p), [1, 5]);
    assert!(p.certified);
    assert_eq!(p.degrees.iter().sum::<usize>(), 6);
}

#[test]
fn d4_projection_of_f1_gives_two_plane_cubics() {
    let g2 = "x0*x1";
    let g3 = "x0^2*x3 - 2*x0*x3^2 + x1^2*x3 - 2*x1*x3^2 - x2^3 - x2^2*x3 + x3^3";
    let (w, p) = decompose(g2, g3, 5);
    assert_eq!(sorted_degrees(&p), [3, 3]);
    assert!(p.certified);
    // Each witness point lies on exactly one of the two planes of Q_q.
    let [l1, l2] = plane_factors(&q4(g2, 2)).unwrap();
    let on = |l: &[crate::forms::C64], x: &[crate::forms::C64]| l.iter().zip(x).map(|(a, b)| a * b).sum::<crate::forms::C64>().norm() < 1e-8;
    for x in &w.points {
        assert!(on(&l1, x) ^ on(&l2, x));
    }
    // A 2-subset of a plane cubic is not a complete component.
    let cfg = TrackerSettings::default();
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let block = &p.blocks[0];
    let cert = trace_test(&block[..2], &w, &cfg, &mut rng).unwrap();
    assert!(!cert.passed, "{cert:?}");
    assert!(trace_test(block, &w, &cfg, &mut rng).unwrap().passed);
    assert!(trace_test(&(0..6).collect::<Vec<_>>(), &w, &cfg, &mut rng).unwrap().passed);
}

#[test]
fn generic_curve_on_smooth_quadric_is_irreducible() {
    let (_, p) = decompose("x0*x3 - x1*x2", "x0^3 + 2*x1^3 - x2^3 + x3^3 + x0*x1*x2 - 3*x1*x2*x3 + x0*x3^2", 21);
    assert_eq!(p.k(), 1);
    assert!(p.certified && p.stabilized);
}

#[test]
fn quadric_classes() {
    assert_eq!(detect_nonreduced(&q4("x0^2", 2)).unwrap().kind, QuadricKind::DoublePlane);
    assert_eq!(detect_nonreduced(&q4("x0*x1", 2)).unwrap().kind, QuadricKind::TwoPlanes);
    assert_eq!(detect_nonreduced(&q4("x0*x1 + x2^2", 2)).unwrap().kind, QuadricKind::Cone);
    assert_eq!(detect_nonreduced(&q4("x0*x2 + x3*x1", 2)).unwrap().kind, QuadricKind::Smooth);
    let zero = Form::zero(4, 2);
    assert_eq!(detect_nonreduced(&zero), Err(WitnessError::ZeroQuadric));
    let root = double_plane_root(&q4("4*x0^2 + 4*x0*x1 + x1^2", 2)).unwrap();
    assert_eq!(root.to_string(), "4*x0 + 2*x1");
}

#[test]
fn orbits_union_find() {
    let mut o = Orbits::new(5);
    assert!(o.merge_permutation(&[1, 0, 2, 4, 3]));
    assert_eq!(o.blocks(), vec![vec![0, 1], vec![2], vec![3, 4]]);
    assert!(!o.merge_permutation(&[0, 1, 2, 3, 4]));
}
