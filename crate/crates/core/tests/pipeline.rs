mod common;

use threefold::geometry::Decision;
use threefold::pipeline::{run, Command, LinesSection, Outcome, Report, Request, EXIT_CERTIFICATION};
use threefold::Certification;

fn analyze(name: &str, seed: u64) -> Report {
    let req = Request::new(&common::fixture_text(name), Command::ALL.into_iter().collect(), seed).unwrap();
    run(&req)
}

fn search(r: &Report) -> &threefold::geometry::LineSearch {
    match r.lines.as_ref().and_then(|o| o.ok()) {
        Some(LinesSection::Sample { search, .. }) => search,
        other => panic!("{other:?}"),
    }
}

#[test]
fn cone_skips_lines() {
    let r = analyze("cone", 2);
    assert_eq!(r.exit_code(), 0);
    assert!(r.singular.as_ref().unwrap().ok().unwrap().cone);
    assert_eq!(r.sigma(), Some(6));
    let h = r.hodge.as_ref().unwrap().ok().unwrap();
    assert_eq!((h.mu_total, h.h3), (16, 0));
    assert!(matches!(r.lines, Some(Outcome::Skipped { .. })));
}

#[test]
fn f1_full_run() {
    let r = analyze("f1", 5);
    assert_eq!(r.exit_code(), 0, "{}", r.summary());
    assert_eq!(r.sigma(), Some(0));
    assert_eq!(r.hodge.as_ref().unwrap().ok().unwrap().h3, 4);
    assert!(!r.surfaces.as_ref().unwrap().ok().unwrap().fires());
}

#[test]
fn f2_full_run() {
    let r = analyze("f2", 5);
    assert_eq!(r.exit_code(), 0, "{}", r.summary());
    assert_eq!(r.sigma(), Some(1));
    assert_eq!(r.surfaces.as_ref().unwrap().ok().unwrap().contains_plane, Decision::Yes);
    let s = search(&r);
    assert!(!s.found);
    assert_eq!(s.certification, Certification::Probabilistic);
    assert!(s.lines.iter().all(|l| l.very_good != Decision::Yes));
}

#[test]
fn violations_set_the_certification_exit_code() {
    let mut r = analyze("node1", 1);
    assert_eq!(r.exit_code(), 0);
    r.violations.push("σ differs between projection points".into());
    assert_eq!(r.exit_code(), EXIT_CERTIFICATION);
}
