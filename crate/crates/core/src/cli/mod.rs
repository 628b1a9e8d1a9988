//! Argument parsing, configuration files and tracker overrides.

use clap::{Args, Parser, Subcommand};
use serde::Deserialize;
use std::collections::BTreeSet;
use std::path::PathBuf;
use threefold::pipeline::{parse_line, Command, LineMode, Request, DEFAULT_SAMPLE};
use threefold::tracker::TrackerSettings;

#[derive(Parser, Debug)]
#[command(name = "threefold", version, about = "Singularities, defect and lines of cubic threefolds in P⁴")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Mode,
}

#[derive(Subcommand, Debug)]
pub enum Mode {
    /// Run a subset of singular, defect, hodge, surfaces, lines.
    Analyze {
        #[command(flatten)]
        common: Common,
        /// Comma-separated commands.
        #[arg(long, default_value = "singular,defect,hodge,surfaces,lines")]
        commands: String,
    },
    /// Good and very-good tests for one line or for sampled lines.
    Lines {
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Args, Debug)]
pub struct Common {
    /// The cubic, or @path to a file holding it.
    pub input: String,
    /// Random seed; a fresh one is drawn and echoed when absent.
    #[arg(long)]
    pub seed: Option<u64>,
    /// Write the JSON report here (`-` for standard output).
    #[arg(long)]
    pub json: Option<PathBuf>,
    /// Tracker override KEY=VALUE, e.g. max_step=0.05. Repeatable.
    #[arg(long = "tol", value_name = "KEY=VALUE")]
    pub tol: Vec<String>,
    /// TOML file with `seed`, `sample` and a `[tracker]` table.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Good lines to test before giving up on a very good one.
    #[arg(long, conflicts_with = "through")]
    pub sample: Option<usize>,
    /// A line as two rational points: "a0,a1,a2,a3,a4;b0,b1,b2,b3,b4".
    #[arg(long)]
    pub through: Option<String>,
}

#[derive(Deserialize, Debug, Default)]
#[serde(deny_unknown_fields)]
struct Config {
    seed: Option<u64>,
    sample: Option<usize>,
    tracker: Option<toml::Table>,
}

/// Input text after resolving `@path`.
pub fn read_input(s: &str) -> Result<String, String> {
    match s.strip_prefix('@') {
        Some(path) => std::fs::read_to_string(path).map_err(|e| format!("cannot read {path}: {e}")),
        None => Ok(s.to_string()),
    }
}

fn merge(settings: &TrackerSettings, overrides: toml::Table) -> Result<TrackerSettings, String> {
    let mut table = toml::Table::try_from(settings).map_err(|e| e.to_string())?;
    table.extend(overrides);
    table.try_into().map_err(|e: toml::de::Error| format!("tracker settings: {}", e.message()))
}

fn parse_override(kv: &str) -> Result<toml::Table, String> {
    let (k, v) = kv.split_once('=').ok_or_else(|| format!("--tol expects KEY=VALUE, got `{kv}`"))?;
    let parsed: toml::Table = toml::from_str(&format!("v = {}", v.trim())).map_err(|_| format!("--tol {k}: cannot parse `{}`", v.trim()))?;
    let mut t = toml::Table::new();
    t.insert(k.trim().to_string(), parsed["v"].clone());
    Ok(t)
}

/// Everything but the cubic itself; errors here are usage errors.
pub struct Options {
    pub commands: BTreeSet<Command>,
    pub seed: u64,
    pub settings: TrackerSettings,
    pub lines: LineMode,
}

pub fn options(common: &Common, commands: BTreeSet<Command>) -> Result<Options, String> {
    let config: Config = match &common.config {
        Some(p) => {
            let text = std::fs::read_to_string(p).map_err(|e| format!("cannot read {}: {e}", p.display()))?;
            toml::from_str(&text).map_err(|e| format!("{}: {}", p.display(), e.message()))?
        }
        None => Config::default(),
    };
    let mut settings = TrackerSettings::default();
    if let Some(t) = config.tracker {
        settings = merge(&settings, t)?;
    }
    for kv in &common.tol {
        settings = merge(&settings, parse_override(kv)?)?;
    }
    settings.validate().map_err(|e| e.to_string())?;
    let lines = match &common.through {
        Some(s) => LineMode::Through(parse_line(s)?),
        None => LineMode::Sample(common.sample.or(config.sample).unwrap_or(DEFAULT_SAMPLE)),
    };
    let seed = common.seed.or(config.seed).unwrap_or_else(rand::random);
    Ok(Options { commands, seed, settings, lines })
}

pub fn request(text: &str, o: Options) -> Result<Request, threefold::forms::ParseError> {
    let mut r = Request::new(text, o.commands, o.seed)?;
    r.settings = o.settings;
    r.lines = o.lines;
    Ok(r)
}
