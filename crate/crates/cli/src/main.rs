use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use frobkit_cli::{run, CliError, Command, RunConfig, Settings};

#[derive(Parser)]
#[command(name = "frobkit", version, about = "Monomial F-graded systems of ideals in characteristic p")]
struct Cli {
    #[command(subcommand)]
    command: Sub,
}

#[derive(Subcommand)]
enum Sub {
    /// Print the terms a_0..a_depth.
    Eval(Opts),
    /// F-graded and p-family certificates up to depth.
    Verify(Opts),
    /// Truncated p-stabilization at index e against the closed form.
    Stab(Opts),
    /// Resolution-k p-body slice and optional point membership.
    Pbody(Opts),
    /// F-split and strongly F-regular degrees, Theorem A/B checks.
    Fsing(Opts),
    /// Colength ratios and the p-body volume comparison.
    Volume(Opts),
    /// Staircase plots of (1/p^e) log a_e for the given levels.
    Plot(Opts),
}

#[derive(Args)]
struct Opts {
    /// `key = value` file; flags override its entries.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    p: Option<String>,
    #[arg(long)]
    d: Option<String>,
    #[arg(long)]
    expr: Option<String>,
    #[arg(long)]
    e: Option<String>,
    #[arg(long)]
    depth: Option<String>,
    #[arg(long)]
    k: Option<String>,
    /// f0,F
    #[arg(long)]
    window: Option<String>,
    /// v1,...,vd
    #[arg(long = "box")]
    search_box: Option<String>,
    /// csv, json, svg or text
    #[arg(long)]
    format: Option<String>,
    #[arg(long)]
    out: Option<String>,
    /// Comma-separated indices for plot.
    #[arg(long)]
    levels: Option<String>,
    /// Rational coordinates for pbody, e.g. 1/3,4/9.
    #[arg(long)]
    point: Option<String>,
    #[arg(long)]
    slack: Option<String>,
}

impl Opts {
    fn settings(&self) -> Result<Settings, CliError> {
        let base = match &self.config {
            Some(path) => Settings::parse_file(&std::fs::read_to_string(path)?)?,
            None => Settings::default(),
        };
        let mut flags = Settings::default();
        let pairs = [
            ("p", &self.p),
            ("d", &self.d),
            ("expr", &self.expr),
            ("e", &self.e),
            ("depth", &self.depth),
            ("k", &self.k),
            ("window", &self.window),
            ("box", &self.search_box),
            ("format", &self.format),
            ("out", &self.out),
            ("levels", &self.levels),
            ("point", &self.point),
            ("slack", &self.slack),
        ];
        for (key, value) in pairs {
            if let Some(v) = value {
                flags.set(key, v).map_err(CliError::Usage)?;
            }
        }
        Ok(base.overlay(flags))
    }
}

fn execute(cli: Cli) -> Result<(), CliError> {
    let (cmd, opts) = match cli.command {
        Sub::Eval(o) => (Command::Eval, o),
        Sub::Verify(o) => (Command::Verify, o),
        Sub::Stab(o) => (Command::Stab, o),
        Sub::Pbody(o) => (Command::Pbody, o),
        Sub::Fsing(o) => (Command::Fsing, o),
        Sub::Volume(o) => (Command::Volume, o),
        Sub::Plot(o) => (Command::Plot, o),
    };
    let cfg = RunConfig::resolve(opts.settings()?)?;
    let text = run(cmd, &cfg)?;
    match &cfg.out {
        Some(path) => std::fs::write(path, text)?,
        None => print!("{text}"),
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match execute(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("frobkit: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
