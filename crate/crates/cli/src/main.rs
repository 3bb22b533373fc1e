mod commands;

use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use folcohom::ErrorKind;

#[derive(Parser, Debug)]
#[command(name = "folcohom", version, about = "Exact basic and twisted basic cohomology of foliated models")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Table, global = true)]
    format: Format,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Table,
    Doc,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Model summary: dimensions, mean curvature, characteristic form, tautness.
    Inspect(ModelArgs),
    /// Basic cohomology dimensions.
    Betti(ModelArgs),
    /// Dimensions of H_{d - θ∧}; θ defaults to half_kappa_b.
    TwistedBetti(ThetaArgs),
    /// Basic signature and the middle-degree pairing.
    Signature(ModelArgs),
    /// Twisted Poincaré duality table; θ defaults to 0.
    Duality(ThetaArgs),
    /// Invariants along a metric homotopy of a frame model.
    SweepMetric(SweepArgs),
    /// Validate a map file and report its consequences.
    MapCheck(MapArgs),
    /// List and verify the built-in models.
    Zoo(ZooArgs),
}

#[derive(clap::Args, Debug)]
pub struct ModelArgs {
    /// Model file path or `zoo:<name>`.
    #[arg(long)]
    model: String,
}

#[derive(clap::Args, Debug)]
pub struct ThetaArgs {
    #[arg(long)]
    model: String,
    /// Degree-1 expression, or kappa_b | half_kappa_b | minus_half_kappa_b.
    #[arg(long, allow_hyphen_values = true)]
    theta: Option<String>,
}

#[derive(clap::Args, Debug)]
pub struct SweepArgs {
    #[arg(long)]
    model: String,
    /// Comma-separated exact sample times in [0, 1].
    #[arg(long, default_value = "0,1/4,1/2,3/4,1")]
    samples: String,
}

#[derive(clap::Args, Debug)]
pub struct MapArgs {
    #[arg(long)]
    map: std::path::PathBuf,
}

#[derive(clap::Args, Debug)]
pub struct ZooArgs {
    /// Write every built-in model as a model file into this directory.
    #[arg(long)]
    export: Option<std::path::PathBuf>,
}

fn prefix(kind: ErrorKind) -> (&'static str, u8) {
    match kind {
        ErrorKind::Parse => ("parse", 2),
        ErrorKind::Validation => ("validation", 3),
        ErrorKind::Assertion => ("assertion", 4),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            print!("{e}");
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let text = e.to_string();
            let line = text.lines().next().unwrap_or("invalid arguments");
            eprintln!("error[parse]: {}", line.trim_start_matches("error: "));
            return ExitCode::from(2);
        }
    };
    let result = match &cli.command {
        Command::Inspect(a) => commands::inspect(a, cli.format),
        Command::Betti(a) => commands::betti(a, cli.format),
        Command::TwistedBetti(a) => commands::twisted_betti(a, cli.format),
        Command::Signature(a) => commands::signature(a, cli.format),
        Command::Duality(a) => commands::duality(a, cli.format),
        Command::SweepMetric(a) => commands::sweep_metric(a, cli.format),
        Command::MapCheck(a) => commands::map_check(a, cli.format),
        Command::Zoo(a) => commands::zoo(a, cli.format),
    };
    match result {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            let (tag, code) = prefix(e.kind());
            eprintln!("error[{tag}]: {e}");
            ExitCode::from(code)
        }
    }
}
