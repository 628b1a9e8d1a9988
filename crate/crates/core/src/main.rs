mod cli;

use clap::Parser;
use cli::{Cli, Mode};
use std::collections::BTreeSet;
use std::io::Write;
use std::process::ExitCode;
use threefold::pipeline::{parse_commands, run, Command, EXIT_PARSE, EXIT_PIPELINE};

fn main() -> ExitCode {
    let args = Cli::parse();
    let (common, commands) = match &args.command {
        Mode::Analyze { common, commands } => (common, parse_commands(commands)),
        Mode::Lines { common } => (common, Ok(BTreeSet::from([Command::Lines]))),
    };
    let usage = |msg: String| {
        eprintln!("error: {msg}");
        ExitCode::from(EXIT_PARSE as u8)
    };
    let opts = match commands.and_then(|c| cli::options(common, c)) {
        Ok(o) => o,
        Err(e) => return usage(e),
    };
    let text = match cli::read_input(&common.input) {
        Ok(t) => t,
        Err(e) => return usage(e),
    };
    let req = match cli::request(&text, opts) {
        Ok(r) => r,
        Err(e) => return usage(e.render(text.trim())),
    };
    let report = run(&req);
    let summary = report.summary();
    match common.json.as_deref() {
        Some(p) if p.as_os_str() == "-" => {
            eprint!("{summary}");
            println!("{}", report.to_json());
        }
        Some(p) => {
            print!("{summary}");
            if let Err(e) = std::fs::File::create(p).and_then(|mut f| writeln!(f, "{}", report.to_json())) {
                eprintln!("error: cannot write {}: {e}", p.display());
                return ExitCode::from(EXIT_PIPELINE as u8);
            }
        }
        None => print!("{summary}"),
    }
    ExitCode::from(report.exit_code() as u8)
}
