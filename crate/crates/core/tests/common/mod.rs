#![allow(dead_code)]

use nalgebra::DMatrix;
use proptest::prelude::*;
use proptest::test_runner::{Config, TestRunner};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use threefold::defect::{compute_defect, defect_at};
use threefold::forms::{rat, CubicForm, Form, LinearChange, Poly, Rat, C64};
use threefold::singular::{spectrum, SingularityType};
use threefold::tracker::{solve_all, TrackerSettings};

pub struct Fixture {
    pub name: &'static str,
    pub sigma: Option<usize>,
    pub points: usize,
    pub max_corank: Option<usize>,
    pub cone: bool,
}

const fn fx(name: &'static str, sigma: Option<usize>, points: usize, max_corank: Option<usize>, cone: bool) -> Fixture {
    Fixture { name, sigma, points, max_corank, cone }
}

/// The fixture corpus with its known invariants. σ is `None` for the smooth cubic.
pub const FIXTURES: &[Fixture] = &[
    fx("f1", Some(0), 3, Some(2), false),
    fx("f2", Some(1), 3, Some(2), false),
    fx("segre", Some(5), 10, Some(0), false),
    fx("cone", Some(6), 1, Some(4), true),
    fx("fermat", None, 0, None, false),
    fx("node1", Some(0), 1, Some(0), false),
    fx("a2", Some(0), 1, Some(1), false),
    fx("plane4", Some(1), 4, Some(0), false),
    fx("scroll6", Some(1), 6, Some(0), false),
    fx("three_planes", Some(2), 6, Some(0), false),
    fx("t333", Some(0), 1, Some(3), false),
];

pub fn fixture_text(name: &str) -> String {
    let path = format!("{}/fixtures/{name}.txt", env!("CARGO_MANIFEST_DIR"));
    std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{path}: {e}")).trim().to_string()
}

pub fn fixture(name: &str) -> CubicForm {
    Form::parse_cubic(&fixture_text(name)).unwrap()
}

pub type Check = Result<String, String>;

fn cubic_strategy() -> impl Strategy<Value = CubicForm> {
    prop::collection::vec(-6i64..=6, 35)
        .prop_filter("nonzero", |c| c.iter().any(|&x| x != 0))
        .prop_map(|c| Form::from_monomials(5, 3, &c.iter().map(|&x| rat(x, 1)).collect::<Vec<_>>()))
}

fn change_strategy() -> impl Strategy<Value = LinearChange> {
    prop::collection::vec(-3i64..=3, 25).prop_filter_map("singular", |c| {
        LinearChange::new((0..5).map(|i| (0..5).map(|j| rat(c[5 * i + j], 1)).collect()).collect()).ok()
    })
}

fn runner(cases: u32) -> TestRunner {
    TestRunner::new(Config { cases, failure_persistence: None, ..Config::default() })
}

/// Σ xᵢ ∂ᵢf = 3f, exactly.
pub fn euler_identity(cases: u32) -> Check {
    runner(cases)
        .run(&cubic_strategy(), |f| {
            let euler = f.gradient().iter().enumerate().fold(Poly::zero(5), |acc, (i, d)| acc.add(&d.poly().mul(&Poly::var(5, i))));
            prop_assert_eq!(&euler, &f.poly().scale(&rat(3, 1)));
            Ok(())
        })
        .map(|_| format!("{cases} random cubics"))
        .map_err(|e| e.to_string())
}

/// (f∘T)∘T⁻¹ = f, and f∘T agrees with f at T·y.
pub fn substitution_round_trip(cases: u32) -> Check {
    runner(cases)
        .run(&(cubic_strategy(), change_strategy(), prop::collection::vec(-4i64..=4, 5)), |(f, t, y)| {
            let g = f.substitute(&t).unwrap();
            prop_assert_eq!(&g.substitute(&t.inverse()).unwrap(), &f);
            let y: Vec<Rat> = y.iter().map(|&v| rat(v, 1)).collect();
            prop_assert_eq!(g.poly().eval(&y), f.poly().eval(&t.apply(&y)));
            Ok(())
        })
        .map(|_| format!("{cases} random cubics and changes"))
        .map_err(|e| e.to_string())
}

/// parse(display(f)) = f.
pub fn parser_round_trip(cases: u32) -> Check {
    runner(cases)
        .run(&cubic_strategy(), |f| {
            let text = f.to_string();
            prop_assert_eq!(&Form::parse_cubic(&text).unwrap(), &f, "{}", text);
            Ok(())
        })
        .map(|_| format!("{cases} random cubics"))
        .map_err(|e| e.to_string())
}

fn random_poly(n: usize, d: u32, rng: &mut ChaCha8Rng) -> Poly<C64> {
    (0..=d).fold(Poly::zero(n), |acc, k| {
        let count = Form::<C64>::monomial_count(n, k);
        let c: Vec<C64> = (0..count).map(|_| C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))).collect();
        acc.add(Form::from_monomials(n, k, &c).poly())
    })
}

/// Roots of a univariate polynomial from the companion matrix.
fn companion_roots(p: &Poly<C64>) -> Vec<C64> {
    let d = p.degree().unwrap() as usize;
    let c: Vec<C64> = (0..=d).map(|k| p.coeff(&[k as u16])).collect();
    let m = DMatrix::from_fn(d, d, |i, j| {
        if j == d - 1 {
            -c[i] / c[d]
        } else if i == j + 1 {
            C64::new(1.0, 0.0)
        } else {
            C64::new(0.0, 0.0)
        }
    });
    m.schur().eigenvalues().expect("complex Schur form is triangular").iter().copied().collect()
}

/// Dense random systems with n ≤ 3 unknowns and degrees ≤ 3: every one of the
/// Π dᵢ paths ends at a regular finite root, the roots are distinct, and for
/// n = 1 they match the companion-matrix eigenvalues.
pub fn bezout_accounting(systems: usize, seed: u64) -> Check {
    let cfg = TrackerSettings::default();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut paths = 0;
    for s in 0..systems {
        let n = rng.gen_range(1..=3);
        let degs: Vec<u32> = (0..n).map(|_| rng.gen_range(1..=3)).collect();
        let sys: Vec<Poly<C64>> = degs.iter().map(|&d| random_poly(n, d, &mut rng)).collect();
        let bezout: usize = degs.iter().map(|&d| d as usize).product();
        let rep = solve_all(&sys, &cfg, &mut rng).map_err(|e| format!("system {s}: {e}"))?;
        paths += rep.paths;
        let accounted = rep.converged + rep.singular + rep.diverged + rep.failed;
        if rep.paths != bezout || accounted != bezout {
            return Err(format!("system {s} (n = {n}, degrees {degs:?}): {} paths, {accounted} accounted, Bézout {bezout}", rep.paths));
        }
        let mult: usize = rep.solutions.iter().map(|x| x.multiplicity).sum();
        if rep.converged != bezout || mult != bezout || rep.solutions.len() != bezout {
            return Err(format!(
                "system {s} (n = {n}, degrees {degs:?}): {} converged, {} singular, {} diverged, {} failed, {} distinct roots",
                rep.converged,
                rep.singular,
                rep.diverged,
                rep.failed,
                rep.solutions.len()
            ));
        }
        for x in &rep.solutions {
            let r = sys.iter().map(|p| p.eval_c(&x.point).norm()).fold(0.0, f64::max);
            if r > 1e-8 {
                return Err(format!("system {s}: residual {r:.1e} at {:?}", x.point));
            }
        }
        if n == 1 {
            let mut oracle = companion_roots(&sys[0]);
            for x in &rep.solutions {
                let (k, d) = oracle.iter().enumerate().map(|(k, r)| (k, (r - x.point[0]).norm())).min_by(|a, b| a.1.total_cmp(&b.1)).unwrap();
                if d > 1e-8 * (1.0 + x.point[0].norm()) {
                    return Err(format!("system {s}: root {} not among the companion eigenvalues", x.point[0]));
                }
                oracle.remove(k);
            }
        }
    }
    Ok(format!("{systems} systems, {paths} paths"))
}

/// At every rational singular point of every non-cone fixture the projection
/// curve C_q has degree 6: six witness points, or three on the reduced
/// curve of a double plane, and the block degrees add up.
pub fn witness_degree_sum() -> Check {
    let cfg = TrackerSettings::default();
    let mut projections = 0;
    for fx in FIXTURES.iter().filter(|f| !f.cone && f.points > 0) {
        let f = fixture(fx.name);
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        let pts = threefold::singular::singular_points(&f, &cfg, &mut rng).map_err(|e| format!("{}: {e}", fx.name))?;
        for p in pts.iter().filter_map(|p| p.exact()) {
            let pd = defect_at(&f, p, &cfg, 23).map_err(|e| format!("{}: {e}", fx.name))?;
            let w = pd.witness.points.len();
            let degree = if pd.witness.reduced { w } else { 2 * w };
            let blocks: usize = pd.partition.degrees.iter().sum();
            if degree != 6 || blocks != w {
                return Err(format!("{} at {:?}: {w} witness points (reduced {}), blocks {:?}", fx.name, p, pd.witness.reduced, pd.partition.degrees));
            }
            projections += 1;
        }
    }
    Ok(format!("{projections} projections"))
}

/// σ agrees across seeds and with the known value, on every fixture.
pub fn sigma_seed_independence(seeds: &[u64]) -> Check {
    let cfg = TrackerSettings::default();
    for fx in FIXTURES {
        let f = fixture(fx.name);
        for &seed in seeds {
            let d = compute_defect(&f, &cfg, seed).map_err(|e| format!("{} seed {seed}: {e}", fx.name))?;
            if d.sigma != fx.sigma {
                return Err(format!("{} seed {seed}: σ = {:?}, expected {:?}", fx.name, d.sigma, fx.sigma));
            }
        }
    }
    Ok(format!("{} fixtures × {} seeds", FIXTURES.len(), seeds.len()))
}

pub fn quasi_homogeneous_labels() -> Vec<SingularityType> {
    use SingularityType::*;
    let mut v: Vec<SingularityType> = (1..=12).map(A).collect();
    v.extend((4..=12).map(D));
    v.extend([E(6), E(7), E(8), T333, Q10, S11, U12]);
    v
}

/// 2·b¹¹ + l¹¹ = μ for every label with a quasi-homogeneous normal form.
pub fn b11_l11_sum() -> Check {
    let labels = quasi_homogeneous_labels();
    for t in &labels {
        let s = spectrum(*t).ok_or_else(|| format!("{t}: no spectrum"))?;
        if 2 * s.b11() + s.l11() != s.mu() {
            return Err(format!("{t}: b11 = {}, l11 = {}, μ = {}", s.b11(), s.l11(), s.mu()));
        }
    }
    Ok(format!("{} labels", labels.len()))
}

/// Spectrum of x₁^{a₁} + … + x₄^{a₄}: the monomials x^k with kᵢ ≤ aᵢ − 2
/// span the Milnor algebra, and x^k contributes Σ (kᵢ + 1)/aᵢ.
pub fn brieskorn_pham_spectrum(a: [i64; 4]) -> Vec<Rat> {
    let mut out = vec![rat(0, 1)];
    for &ai in &a {
        out = out.iter().flat_map(|s| (0..=ai - 2).map(move |k| s + rat(k + 1, ai))).collect();
    }
    out.sort();
    out
}

/// A₁ and A₂, plus the other types equivalent to a sum of powers, against
/// the monomial-basis oracle.
pub fn spectrum_oracle() -> Check {
    use SingularityType::*;
    let cases = [
        (A(1), [2, 2, 2, 2]),
        (A(2), [3, 2, 2, 2]),
        (A(3), [4, 2, 2, 2]),
        (A(5), [6, 2, 2, 2]),
        (D(4), [3, 3, 2, 2]),
        (E(6), [3, 4, 2, 2]),
        (E(8), [3, 5, 2, 2]),
        (T333, [3, 3, 3, 2]),
    ];
    for (t, a) in cases {
        let lib = spectrum(t).ok_or_else(|| format!("{t}: no spectrum"))?;
        let mut values = lib.values.clone();
        values.sort();
        if values != brieskorn_pham_spectrum(a) {
            return Err(format!("{t}: {:?} vs oracle {:?}", lib.numbers, brieskorn_pham_spectrum(a)));
        }
    }
    Ok(format!("{} types", cases.len()))
}
