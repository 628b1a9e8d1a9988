use super::*;
use crate::forms::linalg::det;
use crate::forms::{rank_exact, rat, CPoint, Form, Rat, Scalar, C64};
use crate::tracker::TrackerSettings;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn cubic(s: &str) -> Form<Rat> {
    Form::parse_cubic(s).unwrap()
}

fn ri(v: &[i64]) -> Vec<Rat> {
    v.iter().map(|&x| rat(x, 1)).collect()
}

fn unit(k: usize) -> Vec<Rat> {
    let mut e = vec![rat(0, 1); 5];
    e[k] = rat(1, 1);
    e
}

/// Gram matrix of the residual conic Q with f(a·p + b·q + c·w) = c·Q(a, b, c),
/// recovered from values of f at points with c = 1.
fn residual_gram(f: &Form<Rat>, p: &[Rat], q: &[Rat], w: &[Rat]) -> Vec<Vec<Rat>> {
    let at = |a: i64, b: i64| -> Rat {
        let x: Vec<Rat> = (0..5).map(|i| p[i].clone() * rat(a, 1) + q[i].clone() * rat(b, 1) + w[i].clone()).collect();
        f.poly().eval(&x)
    };
    let two = rat(2, 1);
    let cc = at(0, 0);
    let aa = (at(2, 0) - at(1, 0) * two.clone() + cc.clone()) / two.clone();
    let bb = (at(0, 2) - at(0, 1) * two.clone() + cc.clone()) / two.clone();
    let ac = at(1, 0) - aa.clone() - cc.clone();
    let bc = at(0, 1) - bb.clone() - cc.clone();
    let ab = at(1, 1) - aa.clone() - bb.clone() - ac.clone() - bc.clone() - cc.clone();
    vec![
        vec![aa, ab.clone() / two.clone(), ac.clone() / two.clone()],
        vec![ab / two.clone(), bb, bc.clone() / two.clone()],
        vec![ac / two.clone(), bc / two, cc],
    ]
}

const FERMAT: &str = "x0^3 + x1^3 + x2^3 + x3^3 + x4^3";

#[test]
fn fermat_discriminant_matches_residual_conics() {
    let f = cubic(FERMAT);
    let (p, q) = (ri(&[1, -1, 0, 0, 0]), ri(&[0, 0, 1, -1, 0]));
    let cb = conic_bundle(&f, &p, &q, 0.0).unwrap();
    assert_eq!(cb.discriminant.homogeneous_degree(), Some(5));
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let cols: Vec<Vec<Rat>> = (2..5).map(|j| cb.change.matrix().iter().map(|row| row[j].clone()).collect()).collect();
    for _ in 0..20 {
        let y: Vec<Rat> = (0..3).map(|_| rat(rng.gen_range(-9..=9), rng.gen_range(1..=5))).collect();
        let w: Vec<Rat> = (0..5).map(|i| (0..3).map(|k| cols[k][i].clone() * y[k].clone()).sum()).collect();
        let g = residual_gram(&f, &p, &q, &w);
        assert_eq!(det(&g), cb.discriminant.eval(&y));
    }
}

#[test]
fn fermat_coordinate_line_is_not_good() {
    let f = cubic(FERMAT);
    let (p, q) = (ri(&[1, -1, 0, 0, 0]), ri(&[0, 0, 1, -1, 0]));
    let cb = conic_bundle(&f, &p, &q, 0.0).unwrap();
    let cfg = TrackerSettings::default();
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let v = good_line_test(&cb, &[], &cfg, &mut rng).unwrap();
    assert_eq!(v.good, Decision::No);
    assert_eq!(v.certification, crate::Certification::Exact);
    // Oracle: the residual conic over the witness fiber contains l.
    let y: Vec<Rat> = v.witness.unwrap().iter().map(|c| Rat::from_c64(*c)).collect();
    let cols: Vec<Vec<Rat>> = (2..5).map(|j| cb.change.matrix().iter().map(|row| row[j].clone()).collect()).collect();
    let w: Vec<Rat> = (0..5).map(|i| (0..3).map(|k| cols[k][i].clone() * y[k].clone()).sum()).collect();
    let g = residual_gram(&f, &p, &q, &w);
    assert!(w.iter().any(|x| !x.is_zero()));
    assert!(g[0][0].is_zero() && g[0][1].is_zero() && g[1][1].is_zero());
}

#[test]
fn line_not_on_threefold_is_rejected() {
    let f = cubic(FERMAT);
    let err = conic_bundle(&f, &unit(0), &unit(1), 0.0).unwrap_err();
    assert!(matches!(err, GeometryError::NotOnX { .. }));
    assert_eq!(conic_bundle(&f, &unit(0), &unit(0), 0.0).unwrap_err(), GeometryError::DegenerateLine);
}

#[test]
fn double_line_fiber_makes_line_bad() {
    let f = cubic("x0^2*x2 + x0*x1*x4 + x1^2*x3 + x0*(x3^2 + x2*x4) + x1*(x4^2 + x2*x3) + x3^3 + x4^3 + x2*x3*x4");
    let cb = conic_bundle(&f, &unit(0), &unit(1), 0.0).unwrap();
    // Oracle: the residual conic over y = (1, 0, 0) has rank one.
    let g = residual_gram(&f, &unit(0), &unit(1), &unit(2));
    assert_eq!(rank_exact(&g), 1);
    let cfg = TrackerSettings::default();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let v = good_line_test(&cb, &[], &cfg, &mut rng).unwrap();
    assert_eq!(v.good, Decision::No);
    let w = CPoint::new(v.witness.unwrap());
    assert!(w.distance(&CPoint::new(vec![C64::new(1.0, 0.0), C64::new(0.0, 0.0), C64::new(0.0, 0.0)])) < 1e-6);
}

#[test]
fn conic_containing_the_line_makes_line_bad() {
    let f = cubic("x0^2*x2 + x0*x1*x3 + x1^2*(x2 + x3) + x0*x4^2 + x1*(x2^2 + x3*x4) + x2^3 + x3^3 + x4^3");
    let cb = conic_bundle(&f, &unit(0), &unit(1), 0.0).unwrap();
    // Oracle: over y = (0, 0, 1) the residual conic has no a², ab, b² terms,
    // so it contains the line c = 0.
    let g = residual_gram(&f, &unit(0), &unit(1), &unit(4));
    assert!(g[0][0].is_zero() && g[0][1].is_zero() && g[1][1].is_zero());
    let cfg = TrackerSettings::default();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let v = good_line_test(&cb, &[], &cfg, &mut rng).unwrap();
    assert_eq!(v.good, Decision::No);
    assert_eq!(v.certification, crate::Certification::Exact);
    let w = CPoint::new(v.witness.unwrap());
    assert!(w.distance(&CPoint::new(vec![C64::new(0.0, 0.0), C64::new(0.0, 0.0), C64::new(1.0, 0.0)])) < 1e-9);
}

#[test]
fn line_meets_points_in_its_span() {
    let c = |v: &[f64]| -> Vec<C64> { v.iter().map(|&x| C64::new(x, 0.0)).collect() };
    let line = [c(&[1.0, 0.0, 0.0, 0.0, 0.0]), c(&[0.0, 1.0, 0.0, 0.0, 0.0])];
    assert!(line_meets(&line, &CPoint::new(c(&[2.0, -3.0, 0.0, 0.0, 0.0])), 1e-9));
    assert!(!line_meets(&line, &CPoint::new(c(&[1.0, 1.0, 1e-3, 0.0, 0.0])), 1e-9));
    assert!(!line_meets(&line, &CPoint::new(c(&[0.0, 0.0, 0.0, 1.0, 0.0])), 1e-9));
}

#[test]
fn sampled_lines_lie_on_the_threefold() {
    let f = cubic(FERMAT);
    let cfg = TrackerSettings::default();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let lines = sample_lines(&f, 3, &[], &cfg, &mut rng).unwrap();
    assert_eq!(lines.len(), 3);
    let fc = f.to_complex();
    for l in &lines {
        for k in 0..4 {
            let s = C64::new(k as f64 * 0.7 - 1.0, 0.3 * k as f64);
            let x: Vec<C64> = l[0].iter().zip(&l[1]).map(|(a, b)| a + s * b).collect();
            let scale = x.iter().map(|c| c.norm()).fold(0.0, f64::max).powi(3);
            assert!(fc.poly().eval_c(&x).norm() < 1e-8 * scale);
        }
    }
}

#[test]
fn general_fermat_line_is_good_with_smooth_discriminant() {
    let f = cubic(FERMAT);
    let cfg = TrackerSettings::default();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let l = sample_lines(&f, 1, &[], &cfg, &mut rng).unwrap().remove(0);
    let cb = conic_bundle(&f.to_complex(), &l[0], &l[1], 1e-8).unwrap();
    assert_eq!(cb.discriminant.homogeneous_degree(), Some(5));
    assert_eq!(good_line_test(&cb, &[], &cfg, &mut rng).unwrap().good, Decision::Yes);
    assert!(discriminant_singularities(&cb, &cfg, &mut rng).unwrap().is_empty());
}

#[test]
fn corank_three_point_makes_every_line_bad() {
    let f = cubic("x4*x0^2 + x1^3 + x2^3 + x3^3 + x0*x1*x2 - 2*x0^2*x3 + x0^3 + x1*x2*x3");
    let vertex = unit(4);
    let s = CPoint::from_rat(&vertex);
    let cfg = TrackerSettings::default();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for l in sample_lines(&f, 3, &[s.clone()], &cfg, &mut rng).unwrap() {
        let cb = conic_bundle(&f.to_complex(), &l[0], &l[1], 1e-8).unwrap();
        let hint = cb.fiber_of(&s.coords);
        let v = good_line_test(&cb, &[hint.clone()], &cfg, &mut rng).unwrap();
        assert_eq!(v.good, Decision::No);
        assert!(CPoint::new(v.witness.unwrap()).distance(&CPoint::new(hint)) < 1e-9);
    }
}
