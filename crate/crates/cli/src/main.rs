use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;

use rinehart_cli::{prepare_spec, run, Command, Overrides, SpecFile};

/// Exact de Rham, Lie-Rinehart and enveloping-algebra computations.
#[derive(Parser, Debug)]
#[command(name = "rinehart", version)]
struct Cli {
    command: Command,
    /// TOML spec file.
    spec: Option<PathBuf>,
    /// Read the spec as JSON from this path instead.
    #[arg(long = "spec-json", conflicts_with = "spec")]
    spec_json: Option<PathBuf>,
    /// Print the JSON report.
    #[arg(long)]
    json: bool,
    #[arg(long = "d-max")]
    d_max: Option<i64>,
    #[arg(long)]
    window: Option<i64>,
    /// PBW truncation order.
    #[arg(long)]
    order: Option<usize>,
    /// Exit with status 3 if some degree did not stabilize.
    #[arg(long = "require-stable")]
    require_stable: bool,
    /// Divisor equation for `logder`.
    #[arg(long = "f")]
    f: Option<String>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let spec = match (&cli.spec, &cli.spec_json) {
        (Some(p), _) => SpecFile::load(p, false).map(Some),
        (None, Some(p)) => SpecFile::load(p, true).map(Some),
        (None, None) => Ok(None),
    };
    let overrides = Overrides { d_max: cli.d_max, window: cli.window, order: cli.order, divisor: cli.f.clone() };
    let report = spec.and_then(|s| prepare_spec(s, &overrides)).and_then(|s| run(cli.command, s));
    let report = match report {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e:#}");
            return ExitCode::from(1);
        }
    };
    let text = if cli.json {
        serde_json::to_string_pretty(&report).expect("reports serialize") + "\n"
    } else {
        report.render_human()
    };
    // a closed pipe downstream is not an error worth reporting
    let _ = std::io::stdout().write_all(text.as_bytes());
    if !report.passed {
        ExitCode::from(2)
    } else if cli.require_stable && !report.fully_stable() {
        ExitCode::from(3)
    } else {
        ExitCode::SUCCESS
    }
}
