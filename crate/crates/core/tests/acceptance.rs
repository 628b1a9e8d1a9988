//! One PASS/FAIL line per acceptance criterion; exits nonzero if any fails.

mod common;

use std::time::{Duration, Instant};
use threefold::defect::PointDefect;
use threefold::geometry::{Decision, LineSearch};
use threefold::pipeline::{run, Command, LinesSection, Report, Request};
use threefold::Certification;

fn analyze(name: &str, commands: &[Command], seed: u64) -> (Report, Duration) {
    let req = Request::new(&common::fixture_text(name), commands.iter().copied().collect(), seed).unwrap();
    let t = Instant::now();
    let r = run(&req);
    (r, t.elapsed())
}

fn within(d: Duration, limit: Duration) -> Result<(), String> {
    if d <= limit {
        Ok(())
    } else {
        Err(format!("took {d:.1?}, limit {limit:?}"))
    }
}

fn projections(r: &Report) -> Result<Vec<&PointDefect>, String> {
    let d = r.defect.as_ref().and_then(|o| o.ok()).ok_or("no defect result")?;
    Ok(d.chosen.iter().chain(&d.recomputations).collect())
}

fn search(r: &Report) -> Result<&LineSearch, String> {
    match r.lines.as_ref().and_then(|o| o.ok()) {
        Some(LinesSection::Sample { search, .. }) => Ok(search),
        other => Err(format!("lines: {other:?}")),
    }
}

/// σ from a D4 point and from a node, for f1 and f2.
fn criterion_1() -> common::Check {
    let mut out = Vec::new();
    for (name, sigma) in [("f1", 0), ("f2", 1)] {
        let (r, t) = analyze(name, &[Command::Singular, Command::Defect], 1);
        within(t, Duration::from_secs(30))?;
        let ps = projections(&r)?;
        for corank in [2, 0] {
            let p = ps.iter().find(|p| p.corank == corank).ok_or(format!("{name}: no corank-{corank} projection"))?;
            if p.sigma != sigma {
                return Err(format!("{name}: σ = {} from the corank-{corank} point", p.sigma));
            }
        }
        if r.sigma() != Some(sigma) || r.exit_code() != 0 {
            return Err(format!("{name}: σ = {:?}, exit {}", r.sigma(), r.exit_code()));
        }
        out.push(format!("{name} σ = {sigma} from D4 and A1 in {t:.1?}"));
    }
    Ok(out.join(", "))
}

fn criterion_2() -> common::Check {
    let (r, t) = analyze("segre", &[Command::Singular, Command::Defect], 1);
    within(t, Duration::from_secs(120))?;
    let s = r.singular.as_ref().and_then(|o| o.ok()).ok_or("no singular result")?;
    if s.count != 10 || s.points.iter().any(|p| p.corank != 0 || p.milnor != 1) {
        return Err(format!("{} singular points", s.count));
    }
    let ps = projections(&r)?;
    if ps.len() != 10 || ps.iter().any(|p| p.k != 6) || r.sigma() != Some(5) {
        return Err(format!("k = {:?}, σ = {:?}", ps.iter().map(|p| p.k).collect::<Vec<_>>(), r.sigma()));
    }
    Ok(format!("10 A1, k = 6 from all 10 nodes, σ = 5 in {t:.1?}"))
}

fn criterion_3() -> common::Check {
    let (r, t) = analyze("cone", &[Command::Singular, Command::Defect, Command::Hodge], 1);
    within(t, Duration::from_secs(60))?;
    let s = r.singular.as_ref().and_then(|o| o.ok()).ok_or("no singular result")?;
    let h = r.hodge.as_ref().and_then(|o| o.ok()).ok_or("no hodge result")?;
    if !s.cone || r.sigma() != Some(6) || h.h3 != 0 || h.mu_total != 16 {
        return Err(format!("cone {}, σ {:?}, h3 {}, μ {}", s.cone, r.sigma(), h.h3, h.mu_total));
    }
    Ok(format!("cone, σ = 6, h3 = 0, μ = 16 in {t:.1?}"))
}

fn criterion_4() -> common::Check {
    let (r, t) = analyze("fermat", &[Command::Singular, Command::Defect, Command::Hodge], 1);
    within(t, Duration::from_secs(30))?;
    let s = r.singular.as_ref().and_then(|o| o.ok()).ok_or("no singular result")?;
    let h = r.hodge.as_ref().and_then(|o| o.ok()).ok_or("no hodge result")?;
    if s.count != 0 || (h.h3, h.h12, h.h21) != (10, Some(5), Some(5)) {
        return Err(format!("{} points, h3 {}, h12 {:?}, h21 {:?}", s.count, h.h3, h.h12, h.h21));
    }
    Ok(format!("smooth, h3 = 10, h12 = h21 = 5 in {t:.1?}"))
}

/// Plane or scroll detected ⇔ σ > 0.
fn criterion_5() -> common::Check {
    let mut sigmas = std::collections::BTreeSet::new();
    let mut coranks = std::collections::BTreeSet::new();
    let mut n = 0;
    for fx in common::FIXTURES.iter().filter(|f| !f.cone && f.sigma.is_some()) {
        let (r, _) = analyze(fx.name, &[Command::Singular, Command::Defect, Command::Surfaces], 1);
        let sigma = r.sigma().ok_or(format!("{}: no σ", fx.name))?;
        let v = r.surfaces.as_ref().and_then(|o| o.ok()).ok_or(format!("{}: no surfaces result", fx.name))?;
        if v.fires() != (sigma > 0) {
            return Err(format!("{}: σ = {sigma}, plane {:?}, scroll {:?}", fx.name, v.contains_plane, v.contains_scroll));
        }
        sigmas.insert(sigma);
        coranks.extend(r.singular.as_ref().and_then(|o| o.ok()).into_iter().flat_map(|s| s.points.iter().map(|p| p.corank)));
        n += 1;
    }
    let (r, _) = analyze("cone", &[Command::Singular, Command::Defect], 1);
    sigmas.extend(r.sigma());
    if n < 8 || !sigmas.is_superset(&[0, 1, 2, 5, 6].into()) || !coranks.is_superset(&[0, 1, 2].into()) {
        return Err(format!("{n} fixtures, σ {sigmas:?}, coranks {coranks:?}"));
    }
    Ok(format!("{n} fixtures, σ ∈ {sigmas:?}, coranks {coranks:?}"))
}

fn criterion_6() -> common::Check {
    let all = [Command::Singular, Command::Defect, Command::Lines];
    let (r, t) = analyze("f1", &all, 1);
    let s = search(&r)?;
    if !s.found || s.good_lines > 10 {
        return Err(format!("f1: found {}, {} good lines", s.found, s.good_lines));
    }
    let mut out = vec![format!("f1 very good after {} good line(s) in {t:.1?}", s.good_lines)];
    for name in ["f2", "plane4"] {
        let (r, _) = analyze(name, &all, 1);
        let s = search(&r)?;
        if s.found || s.lines.iter().any(|l| l.very_good == Decision::Yes) || s.certification != Certification::Probabilistic {
            return Err(format!("{name}: found {}, certification {:?}", s.found, s.certification));
        }
        out.push(format!("{name} none in {} good (probabilistic)", s.good_lines));
    }
    Ok(out.join(", "))
}

fn criterion_7() -> common::Check {
    let t = Instant::now();
    let parts = [
        ("Euler", common::euler_identity(64)),
        ("substitution", common::substitution_round_trip(48)),
        ("parser", common::parser_round_trip(64)),
        ("Bézout", common::bezout_accounting(50, 2024)),
        ("witness degree", common::witness_degree_sum()),
        ("σ seeds", common::sigma_seed_independence(&[1, 42, 9001])),
        ("b11/l11", common::b11_l11_sum()),
        ("spectrum oracle", common::spectrum_oracle()),
    ];
    let mut out = Vec::new();
    for (name, r) in parts {
        out.push(format!("{name}: {}", r.map_err(|e| format!("{name}: {e}"))?));
    }
    within(t.elapsed(), Duration::from_secs(600))?;
    Ok(format!("{} in {:.1?}", out.join("; "), t.elapsed()))
}

fn main() {
    let criteria: [fn() -> common::Check; 7] = [criterion_1, criterion_2, criterion_3, criterion_4, criterion_5, criterion_6, criterion_7];
    let mut failed = 0;
    for (i, c) in criteria.iter().enumerate() {
        match c() {
            Ok(msg) => println!("criterion {}: PASS {msg}", i + 1),
            Err(msg) => {
                failed += 1;
                println!("criterion {}: FAIL {msg}", i + 1);
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
