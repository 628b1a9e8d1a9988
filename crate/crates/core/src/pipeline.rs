//! Runs the requested analyses in dependency order and assembles the report.
//!
//! singular → defect → hodge, surfaces; lines need only the singular points.
//! A failing command is recorded and the others still run.

use crate::defect::{compute_defect_from, cone_over_smooth_surface, hodge_numbers, DefectError, DefectReport, HodgeReport};
use crate::forms::{CubicForm, Form, ParseError, Rat};
use crate::geometry::{analyze_exact_line, discriminant_singularities, conic_bundle, search_very_good, surfaces, DiscriminantSingularity, KnownPoint, LineSearch, LineVerdict, SurfaceVerdict};
use crate::singular::{cone_vertex, singular_points, SingularError, SingularPoint};
use crate::tracker::TrackerSettings;
use crate::Certification;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use std::collections::BTreeSet;
use std::fmt::{self, Write};
use std::str::FromStr;
use std::time::{Duration, Instant};

pub const SCHEMA: u32 = 1;

/// Good lines tested by `lines` when no count is given.
pub const DEFAULT_SAMPLE: usize = 10;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    Singular,
    Defect,
    Hodge,
    Surfaces,
    Lines,
}

impl Command {
    pub const ALL: [Command; 5] = [Command::Singular, Command::Defect, Command::Hodge, Command::Surfaces, Command::Lines];

    pub fn name(self) -> &'static str {
        match self {
            Command::Singular => "singular",
            Command::Defect => "defect",
            Command::Hodge => "hodge",
            Command::Surfaces => "surfaces",
            Command::Lines => "lines",
        }
    }
}

impl fmt::Display for Command {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Command {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        Command::ALL.into_iter().find(|c| c.name() == s.trim()).ok_or_else(|| format!("unknown command `{}`", s.trim()))
    }
}

/// Comma-separated command list; at least one.
pub fn parse_commands(s: &str) -> Result<BTreeSet<Command>, String> {
    let set: BTreeSet<Command> = s.split(',').filter(|t| !t.trim().is_empty()).map(str::parse).collect::<Result<_, _>>()?;
    if set.is_empty() {
        return Err("no command given".into());
    }
    Ok(set)
}

#[derive(Clone, Debug)]
pub enum LineMode {
    /// Sample lines until one is very good or this many good lines were tested.
    Sample(usize),
    /// The line through two rational points.
    Through([Vec<Rat>; 2]),
}

/// Two points "a0,…,a4;b0,…,b4" with rational entries such as `-3/2`.
pub fn parse_line(s: &str) -> Result<[Vec<Rat>; 2], String> {
    let pts: Vec<Vec<Rat>> = s
        .split(';')
        .map(|p| p.split(',').map(|x| Rat::from_str(x.trim()).map_err(|_| format!("bad coordinate `{}`", x.trim()))).collect())
        .collect::<Result<_, _>>()?;
    match <[Vec<Rat>; 2]>::try_from(pts) {
        Ok(pair) if pair.iter().all(|p| p.len() == 5) => Ok(pair),
        _ => Err("expected two points with five coordinates separated by `;`".into()),
    }
}

#[derive(Clone, Debug)]
pub struct Request {
    pub form: CubicForm,
    pub commands: BTreeSet<Command>,
    pub seed: u64,
    pub settings: TrackerSettings,
    pub lines: LineMode,
}

impl Request {
    pub fn new(text: &str, commands: BTreeSet<Command>, seed: u64) -> Result<Request, ParseError> {
        Ok(Request { form: Form::parse_cubic(text.trim())?, commands, seed, settings: TrackerSettings::default(), lines: LineMode::Sample(DEFAULT_SAMPLE) })
    }
}

#[derive(Clone, Debug, Serialize)]
#[serde(tag = "status", rename_all = "kebab-case")]
pub enum Outcome<T> {
    Ok { result: T },
    Skipped { reason: String },
    Failed { error: String },
}

impl<T> Outcome<T> {
    pub fn ok(&self) -> Option<&T> {
        match self {
            Outcome::Ok { result } => Some(result),
            _ => None,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SingularSection {
    pub count: usize,
    pub cone: bool,
    pub points: Vec<SingularPoint>,
    pub certification: Certification,
}

#[derive(Clone, Debug, Serialize)]
#[serde(tag = "mode", rename_all = "kebab-case")]
pub enum LinesSection {
    Sample {
        search: LineSearch,
        #[serde(skip_serializing_if = "Option::is_none")]
        note: Option<String>,
    },
    Through {
        verdict: LineVerdict,
        /// Singular points of D_l; for a good line they are the projections of Sing(X).
        discriminant_singularities: Vec<DiscriminantSingularity>,
    },
}

/// Per-stage seeds, drawn from the request seed in a fixed order.
#[derive(Clone, Debug, Serialize)]
pub struct Seeds {
    pub singular: u64,
    pub defect: u64,
    pub surfaces: u64,
    pub lines: u64,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub schema: u32,
    pub input: String,
    pub seed: u64,
    pub seeds: Seeds,
    pub settings: TrackerSettings,
    pub commands: Vec<Command>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub singular: Option<Outcome<SingularSection>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub defect: Option<Outcome<DefectReport>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub hodge: Option<Outcome<HodgeReport>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub surfaces: Option<Outcome<SurfaceVerdict>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lines: Option<Outcome<LinesSection>>,
    /// Violated invariants, e.g. σ differing between projection points.
    pub violations: Vec<String>,
    /// Wall-clock time per stage. Not serialized, so that reports are reproducible.
    #[serde(skip)]
    pub timings: Vec<(Command, Duration)>,
}

pub const EXIT_OK: i32 = 0;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_PIPELINE: i32 = 3;
pub const EXIT_CERTIFICATION: i32 = 4;

impl Report {
    pub fn failed(&self) -> bool {
        fn f<T>(o: &Option<Outcome<T>>) -> bool {
            matches!(o, Some(Outcome::Failed { .. }))
        }
        f(&self.singular) || f(&self.defect) || f(&self.hodge) || f(&self.surfaces) || f(&self.lines)
    }

    pub fn exit_code(&self) -> i32 {
        if !self.violations.is_empty() {
            EXIT_CERTIFICATION
        } else if self.failed() {
            EXIT_PIPELINE
        } else {
            EXIT_OK
        }
    }

    pub fn sigma(&self) -> Option<usize> {
        self.defect.as_ref()?.ok()?.sigma
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// Human-readable summary, with timings.
    pub fn summary(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "f = {}", self.input);
        let _ = writeln!(s, "seed {}", self.seed);
        let time = |c: Command| self.timings.iter().find(|t| t.0 == c).map(|t| format!(" [{:.2?}]", t.1)).unwrap_or_default();
        let mut section = |c: Command, body: Result<String, String>| {
            let _ = match body {
                Ok(b) => writeln!(s, "{c}{}: {b}", time(c)),
                Err(e) => writeln!(s, "{c}{}: {e}", time(c)),
            };
        };
        fn status<T>(o: &Outcome<T>, ok: impl Fn(&T) -> String) -> Result<String, String> {
            match o {
                Outcome::Ok { result } => Ok(ok(result)),
                Outcome::Skipped { reason } => Err(format!("skipped ({reason})")),
                Outcome::Failed { error } => Err(format!("FAILED: {error}")),
            }
        }
        if let Some(o) = &self.singular {
            section(
                Command::Singular,
                status(o, |r| {
                    let types: Vec<String> = r.points.iter().map(|p| format!("{} (corank {}, μ = {})", p.label, p.corank, p.milnor)).collect();
                    if r.points.is_empty() {
                        "smooth".into()
                    } else {
                        format!("{} point(s): {}", r.count, types.join(", "))
                    }
                }),
            );
        }
        if let Some(o) = &self.defect {
            section(
                Command::Defect,
                status(o, |r| match (r.sigma, &r.chosen) {
                    (Some(sg), Some(pd)) => format!("σ = {sg} ({:?}; k = {} at corank {}, {} recomputation(s))", r.certification, pd.k, pd.corank, r.recomputations.len()),
                    (Some(sg), None) => format!("σ = {sg} ({})", r.note.clone().unwrap_or_default()),
                    (None, _) => format!("σ undefined: {}", r.note.clone().unwrap_or_default()),
                }),
            );
        }
        if let Some(o) = &self.hodge {
            section(
                Command::Hodge,
                status(o, |h| {
                    let opt = |v: Option<i64>| v.map(|x| x.to_string()).unwrap_or_else(|| "?".into());
                    format!("h³ = {}, h¹² = {}, h²¹ = {} (μ_tot = {}, σ = {})", h.h3, opt(h.h12), opt(h.h21), h.mu_total, h.sigma)
                }),
            );
        }
        if let Some(o) = &self.surfaces {
            section(
                Command::Surfaces,
                status(o, |v| format!("plane {:?}, scroll {:?} ({})", v.contains_plane, v.contains_scroll, v.pattern)),
            );
        }
        if let Some(o) = &self.lines {
            section(
                Command::Lines,
                status(o, |l| match l {
                    LinesSection::Sample { search, note } => {
                        let mut t = format!(
                            "{} line(s) tested, {} good, very good line {}",
                            search.lines.len(),
                            search.good_lines,
                            if search.found { "found" } else { "not found" }
                        );
                        if let Some(n) = note {
                            let _ = write!(t, "; {n}");
                        }
                        t
                    }
                    LinesSection::Through { verdict, discriminant_singularities } => format!(
                        "good {:?}, very good {:?}, {} singular point(s) of D_l",
                        verdict.good.good,
                        verdict.very_good,
                        discriminant_singularities.len()
                    ),
                }),
            );
        }
        for v in &self.violations {
            let _ = writeln!(s, "VIOLATION: {v}");
        }
        s
    }
}

fn needs(req: &Request, cmds: &[Command]) -> bool {
    cmds.iter().any(|c| req.commands.contains(c))
}

fn timed<T>(timings: &mut Vec<(Command, Duration)>, c: Command, f: impl FnOnce() -> T) -> T {
    let t0 = Instant::now();
    let out = f();
    timings.push((c, t0.elapsed()));
    out
}

struct Located {
    points: Vec<SingularPoint>,
    cone: bool,
}

fn locate(f: &CubicForm, cfg: &TrackerSettings, seed: u64) -> Result<Located, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    match singular_points(f, cfg, &mut rng) {
        Ok(points) => Ok(Located { points, cone: false }),
        Err(SingularError::Cone) => {
            let v = cone_over_smooth_surface(f, cfg, &mut rng).map_err(|e| e.to_string())?.ok_or("cone test disagrees with the singular locus")?;
            Ok(Located { points: vec![cone_vertex(f, &v, cfg, &mut rng).map_err(|e| e.to_string())?], cone: true })
        }
        Err(e) => Err(e.to_string()),
    }
}

/// Runs every requested command. Never panics on bad geometry; failures are recorded per command.
pub fn run(req: &Request) -> Report {
    let f = &req.form;
    let cfg = &req.settings;
    let mut master = ChaCha8Rng::seed_from_u64(req.seed);
    let seeds = Seeds { singular: master.gen(), defect: master.gen(), surfaces: master.gen(), lines: master.gen() };
    let mut report = Report {
        schema: SCHEMA,
        input: f.to_string(),
        seed: req.seed,
        seeds: seeds.clone(),
        settings: cfg.clone(),
        commands: req.commands.iter().copied().collect(),
        singular: None,
        defect: None,
        hodge: None,
        surfaces: None,
        lines: None,
        violations: vec![],
        timings: vec![],
    };
    if let Err(e) = cfg.validate() {
        fn fail<T>(req: &Request, c: Command, e: &crate::tracker::TrackerError) -> Option<Outcome<T>> {
            req.commands.contains(&c).then(|| Outcome::Failed { error: e.to_string() })
        }
        report.singular = fail(req, Command::Singular, &e);
        report.defect = fail(req, Command::Defect, &e);
        report.hodge = fail(req, Command::Hodge, &e);
        report.surfaces = fail(req, Command::Surfaces, &e);
        report.lines = fail(req, Command::Lines, &e);
        return report;
    }

    let mut timings = Vec::new();
    let located = timed(&mut timings, Command::Singular, || locate(f, cfg, seeds.singular));
    if req.commands.contains(&Command::Singular) {
        report.singular = Some(match &located {
            Ok(l) => Outcome::Ok {
                result: SingularSection {
                    count: l.points.len(),
                    cone: l.cone,
                    certification: if l.points.iter().all(|p| p.certification == Certification::Exact) {
                        Certification::Exact
                    } else {
                        Certification::Uncertified
                    },
                    points: l.points.clone(),
                },
            },
            Err(e) => Outcome::Failed { error: e.clone() },
        });
    }

    let defect: Option<Result<DefectReport, DefectError>> = match &located {
        Ok(l) if needs(req, &[Command::Defect, Command::Hodge, Command::Surfaces]) => Some(timed(&mut timings, Command::Defect, || {
            let mut rng = ChaCha8Rng::seed_from_u64(seeds.defect);
            // The vertex of a cone is not projected from.
            let pts: &[SingularPoint] = if l.cone { &[] } else { &l.points };
            compute_defect_from(f, pts, cfg, &mut rng)
        })),
        _ => None,
    };
    if let Some(Err(e @ (DefectError::Disagreement(_) | DefectError::Invariant(_)))) = &defect {
        report.violations.push(e.to_string());
    }
    let upstream = |what: &str| -> String {
        match (&located, &defect) {
            (Err(e), _) => format!("{what} needs the singular points, which failed: {e}"),
            (_, Some(Err(e))) => format!("{what} needs σ, which failed: {e}"),
            _ => format!("{what} could not run"),
        }
    };
    if req.commands.contains(&Command::Defect) {
        report.defect = Some(match &defect {
            Some(Ok(d)) => Outcome::Ok { result: d.clone() },
            Some(Err(e)) => Outcome::Failed { error: e.to_string() },
            None => Outcome::Failed { error: upstream("defect") },
        });
    }

    if req.commands.contains(&Command::Hodge) {
        report.hodge = Some(match (&located, &defect) {
            (Ok(l), Some(Ok(d))) => {
                // A smooth cubic has σ = 0.
                let sigma = d.sigma.unwrap_or(0);
                Outcome::Ok { result: hodge_numbers(&l.points, sigma, d.certification) }
            }
            _ => Outcome::Failed { error: upstream("hodge") },
        });
    }

    if req.commands.contains(&Command::Surfaces) {
        report.surfaces = Some(match &defect {
            Some(Ok(d)) => timed(&mut timings, Command::Surfaces, || {
                let mut rng = ChaCha8Rng::seed_from_u64(seeds.surfaces);
                match surfaces(f, d, cfg, &mut rng) {
                    Ok(v) => {
                        if v.consistent_with_sigma == Some(false) && !d.cone {
                            report.violations.push(format!("surface verdict ({}) disagrees with σ = {:?}", v.pattern, d.sigma));
                        }
                        Outcome::Ok { result: v }
                    }
                    Err(e) => Outcome::Failed { error: e.to_string() },
                }
            }),
            _ => Outcome::Failed { error: upstream("surfaces") },
        });
    }

    if req.commands.contains(&Command::Lines) {
        report.lines = Some(match &located {
            Ok(l) if l.cone => Outcome::Skipped { reason: "cone: every line meets the vertex's ruling; the conic bundle is not defined".into() },
            Ok(l) => timed(&mut timings, Command::Lines, || run_lines(req, &l.points, seeds.lines)),
            Err(e) => Outcome::Failed { error: format!("lines need the singular points, which failed: {e}") },
        });
    }
    report.timings = timings;
    report
}

fn run_lines(req: &Request, points: &[SingularPoint], seed: u64) -> Outcome<LinesSection> {
    let f = &req.form;
    let cfg = &req.settings;
    match &req.lines {
        LineMode::Sample(n) => {
            let numeric: Vec<_> = points.iter().map(|p| p.location.numeric.clone()).collect();
            let note = points
                .iter()
                .any(|p| p.corank == 3)
                .then(|| "a corank-3 point is present: the fiber over its projection is a double line, so no good lines are expected".to_string());
            match search_very_good(f, &numeric, *n, cfg, seed) {
                Ok(search) => Outcome::Ok { result: LinesSection::Sample { search, note } },
                Err(e) => Outcome::Failed { error: e.to_string() },
            }
        }
        LineMode::Through([p, q]) => {
            let known: Vec<KnownPoint> = points.iter().map(|s| KnownPoint { exact: s.location.exact.clone(), numeric: s.location.numeric.clone() }).collect();
            let verdict = match analyze_exact_line(f, p, q, &known, cfg, seed) {
                Ok(v) => v,
                Err(e) => return Outcome::Failed { error: e.to_string() },
            };
            let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5d15);
            let sing = conic_bundle(f, p, q, 0.0).map_err(|e| e.to_string()).and_then(|cb| discriminant_singularities(&cb, cfg, &mut rng).map_err(|e| e.to_string()));
            match sing {
                Ok(discriminant_singularities) => Outcome::Ok { result: LinesSection::Through { verdict, discriminant_singularities } },
                Err(error) => Outcome::Failed { error },
            }
        }
    }
}
