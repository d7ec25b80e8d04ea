mod commands;
mod input;
mod output;
mod repro;

use std::process::ExitCode;

use clap::{Parser, Subcommand};

use commands::{CertCmd, CharCmd, FlowCmd, KpfCmd, LieCmd, SymCmd};
use input::{CliError, CliResult};
use output::Report;

/// Exact weight multiplicities, partition functions and log-concavity certificates.
#[derive(Parser, Debug)]
#[command(name = "verma-lc", version)]
struct Cli {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Cap on enumerated points, terms or decompositions.
    #[arg(long, global = true, default_value_t = 1_000_000)]
    limit: usize,
    /// Exit with status 1 unless the verdict equals this value.
    #[arg(long, global = true)]
    expect: Option<bool>,
    /// Add non-authoritative floating-point approximations.
    #[arg(long, global = true)]
    float: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Kostant partition functions.
    #[command(subcommand)]
    Kpf(KpfCmd),
    /// Characters of highest-weight modules.
    #[command(subcommand)]
    Char(CharCmd),
    /// Polynomial certificates.
    #[command(subcommand)]
    Cert(CertCmd),
    /// Flow polytopes.
    #[command(subcommand)]
    Flow(FlowCmd),
    /// Two-variable symmetric polynomials.
    #[command(subcommand)]
    Sym(SymCmd),
    /// Weights, simplicity and hole predictions.
    #[command(subcommand)]
    Lie(LieCmd),
    /// Recompute the worked examples and diff them against fixtures.
    Repro {
        /// Case ids; all cases when omitted.
        ids: Vec<String>,
        #[arg(long, conflicts_with = "ids")]
        all: bool,
        /// Fixture file replacing the built-in one.
        #[arg(long)]
        fixtures: Option<String>,
    },
}

fn run(cli: &Cli) -> CliResult<Report> {
    match &cli.cmd {
        Cmd::Kpf(c) => commands::kpf(c, cli.limit),
        Cmd::Char(c) => commands::character(c, cli.limit),
        Cmd::Cert(c) => commands::cert(c),
        Cmd::Flow(c) => commands::flow(c),
        Cmd::Sym(c) => commands::sym(c),
        Cmd::Lie(c) => commands::lie(c),
        Cmd::Repro { ids, fixtures, .. } => {
            let text = match fixtures {
                Some(path) => input::read_input(path)?,
                None => repro::DEFAULT_FIXTURES.to_string(),
            };
            let (report, ok) = repro::run(&text, ids, cli.json)?;
            if !ok && cli.expect.is_none() {
                print(cli, &report);
                return Err(CliError::Mismatch("repro values differ from the fixtures".into()));
            }
            Ok(report)
        }
    }
}

fn print(cli: &Cli, r: &Report) {
    if cli.json {
        println!("{}", output::render_json(r, cli.float));
    } else {
        println!("{}", output::render_text(r, cli.float));
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(report) => {
            print(&cli, &report);
            match (cli.expect, report.verdict) {
                (Some(want), Some(got)) if want != got => {
                    eprintln!("error[mismatch]: verdict {got}, expected {want}");
                    ExitCode::from(1)
                }
                (Some(_), None) => {
                    eprintln!("error[input]: --expect given but this command has no verdict");
                    ExitCode::from(2)
                }
                _ => ExitCode::SUCCESS,
            }
        }
        Err(e) => {
            eprintln!("error[{}]: {}", e.class(), e.message());
            ExitCode::from(e.exit_code())
        }
    }
}
