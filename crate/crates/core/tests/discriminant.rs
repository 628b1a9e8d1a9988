//! Singular points of the discriminant quintic D_l of a line l on X.

mod common;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use threefold::forms::{rat, CPoint, Form, Rat, C64};
use threefold::geometry::{conic_bundle, discriminant_singularities, good_line_test, sample_lines, Decision};
use threefold::singular::singular_points;
use threefold::tracker::TrackerSettings;

/// For a good line, Sing D_l is the image of Sing X under projection from l,
/// and the corank of D_l there is min(corank of X, 2).
#[test]
fn discriminant_singularities_come_from_singular_points() {
    let cfg = TrackerSettings::default();
    let mut checked = 0;
    for name in ["node1", "a2", "f1", "f2", "segre"] {
        let f = common::fixture(name);
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        let sing = singular_points(&f, &cfg, &mut rng).unwrap();
        let avoid: Vec<CPoint> = sing.iter().map(|s| s.location.numeric.clone()).collect();
        for line in sample_lines(&f, 3, &avoid, &cfg, &mut rng).unwrap() {
            let cb = conic_bundle(&f.to_complex(), &line[0], &line[1], 1e-8).unwrap();
            let hints: Vec<Vec<C64>> = avoid.iter().map(|s| cb.fiber_of(&s.coords)).collect();
            if good_line_test(&cb, &hints, &cfg, &mut rng).unwrap().good != Decision::Yes {
                continue;
            }
            let found = discriminant_singularities(&cb, &cfg, &mut rng).unwrap();
            assert_eq!(found.len(), sing.len(), "{name}: {found:?}");
            for s in &sing {
                let image = CPoint::new(cb.fiber_of(&s.location.numeric.coords));
                let d = found.iter().find(|d| d.point.distance(&image) < 1e-4).unwrap_or_else(|| panic!("{name}: no singular point of D_l over {image:?}"));
                assert_eq!(d.corank, s.corank.min(2), "{name}: corank {} point", s.corank);
            }
            checked += 1;
        }
    }
    assert!(checked >= 5, "only {checked} good lines");
}

/// l = {x0 + x1 = x2 + x3 = x4 = 0} on the Fermat cubic. In the fiber
/// coordinates D_l = c·y0·y1·(y0³ + y1³ + 4y2³): three components meeting
/// in seven nodes, (0:0:1) and (0:t:1), (t:0:1) with t³ = −4.
#[test]
fn fermat_coordinate_line() {
    let f = Form::parse_cubic("x0^3 + x1^3 + x2^3 + x3^3 + x4^3").unwrap();
    let ri = |v: [i64; 5]| -> Vec<Rat> { v.iter().map(|&x| rat(x, 1)).collect() };
    let cb = conic_bundle(&f, &ri([1, -1, 0, 0, 0]), &ri([0, 0, 1, -1, 0]), 0.0).unwrap();
    let y = |a: i64, b: i64, c: i64| [rat(a, 1), rat(b, 1), rat(c, 1)];
    let closed = |p: &[Rat; 3]| p[0].clone() * p[1].clone() * (p[0].clone().pow(3) + p[1].clone().pow(3) + rat(4, 1) * p[2].clone().pow(3));
    let scale = cb.discriminant.eval(&y(1, 1, 1)) / closed(&y(1, 1, 1));
    assert!(scale != rat(0, 1));
    for (a, b, c) in [(1, 2, 3), (-2, 5, 1), (3, -1, 7), (0, 4, -3), (6, 6, -5)] {
        assert_eq!(cb.discriminant.eval(&y(a, b, c)), scale.clone() * closed(&y(a, b, c)));
    }

    let t = C64::new(-4f64.cbrt(), 0.0);
    let omega = C64::from_polar(1.0, 2.0 * std::f64::consts::PI / 3.0);
    let (zero, one) = (C64::new(0.0, 0.0), C64::new(1.0, 0.0));
    let mut expected = vec![CPoint::new(vec![zero, zero, one])];
    for k in 0..3 {
        let r = t * omega.powu(k);
        expected.push(CPoint::new(vec![zero, r, one]));
        expected.push(CPoint::new(vec![r, zero, one]));
    }

    let cfg = TrackerSettings::default();
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let found = discriminant_singularities(&cb, &cfg, &mut rng).unwrap();
    assert_eq!(found.len(), 7, "{found:?}");
    for e in &expected {
        let d = found.iter().find(|d| d.point.distance(e) < 1e-6).unwrap_or_else(|| panic!("missing {e:?}"));
        assert_eq!(d.corank, 0);
    }
}
