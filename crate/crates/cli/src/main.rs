mod commands;
mod config;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand};

use config::{
    parse_budget, parse_grid, parse_quotient, CommandConfig, ObstructionStrategy, OutputFormat,
    RunConfig,
};
use klein_core::{Grid, SearchBudget, WindowedSearch};

/// Exact computations for the topological-complexity obstruction of the
/// Klein bottle. Exit status: 0 verified or zero, 10 nonzero, 20
/// inconclusive, 1 error or failed verification.
#[derive(Parser, Debug)]
#[command(name = "klein", version)]
struct Cli {
    #[arg(long, value_enum, default_value = "text", global = true)]
    format: OutputFormat,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Window `|m|, |n| <= W` for windowed and orbit-walk searches.
    #[arg(long, default_value_t = WindowedSearch::default().window, global = true)]
    window: i64,
    /// Seed radius for the windowed search.
    #[arg(long, default_value_t = WindowedSearch::default().radius, global = true)]
    radius: usize,
    /// Quotient grid, e.g. `p=2,4;q=2..8;ell=0,2,3,4`.
    #[arg(long, global = true)]
    grid: Option<String>,
    /// Resource budget, e.g. `rank=2500,cell=300,total=1800,witness=100`.
    #[arg(long, global = true)]
    budget: Option<String>,
    /// Print the resolved configuration as JSON and exit.
    #[arg(long, global = true)]
    print_config: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Cell tables of K×K.
    Cells {
        #[arg(long)]
        verify: bool,
    },
    /// The 60×24 top coboundary matrix.
    Matrix {
        #[arg(long)]
        verify: bool,
        /// Compare against this table instead of the bundled one.
        #[arg(long)]
        fixture: Option<PathBuf>,
        /// Print only this row.
        #[arg(long)]
        row: Option<usize>,
    },
    /// Row reduction of the top coboundary matrix with its audit log.
    Reduce {
        #[arg(long)]
        verify: bool,
    },
    /// The canonical one-cochain on the 15 edges.
    FTable {
        #[arg(long)]
        verify: bool,
    },
    /// The obstruction value and a certificate for it.
    Obstruction {
        #[arg(long, value_enum, default_value = "grid")]
        strategy: ObstructionStrategy,
        /// `p,q,ell` for `--strategy quotient`.
        #[arg(long)]
        quotient: Option<String>,
        /// Write the certificate here.
        #[arg(long)]
        certificate: Option<PathBuf>,
    },
    /// Finite-quotient grid search on the obstruction value.
    QuotientSearch {
        #[arg(long)]
        certificate: Option<PathBuf>,
    },
    /// Replay a certificate file.
    Verify { path: PathBuf },
    /// Run a configuration saved with `--print-config`.
    Run { config: PathBuf },
}

fn resolve(cli: Cli) -> Result<(RunConfig, bool)> {
    let command = match cli.command {
        Command::Run { config } => {
            let text = std::fs::read_to_string(&config)
                .with_context(|| format!("reading {}", config.display()))?;
            let parsed = RunConfig::from_json(&text)
                .with_context(|| format!("parsing {}", config.display()))?;
            return Ok((parsed, cli.print_config));
        }
        Command::Cells { verify } => CommandConfig::Cells { verify },
        Command::Matrix {
            verify,
            fixture,
            row,
        } => CommandConfig::Matrix {
            verify,
            fixture,
            row,
        },
        Command::Reduce { verify } => CommandConfig::Reduce { verify },
        Command::FTable { verify } => CommandConfig::FTable { verify },
        Command::Obstruction {
            strategy,
            quotient,
            certificate,
        } => CommandConfig::Obstruction {
            strategy,
            quotient: quotient.as_deref().map(parse_quotient).transpose()?,
            certificate,
        },
        Command::QuotientSearch { certificate } => CommandConfig::QuotientSearch { certificate },
        Command::Verify { path } => CommandConfig::Verify { path },
    };
    let config = RunConfig {
        command,
        format: cli.format,
        window: WindowedSearch {
            window: cli.window,
            radius: cli.radius,
            ..WindowedSearch::default()
        },
        grid: cli
            .grid
            .as_deref()
            .map(parse_grid)
            .transpose()?
            .unwrap_or_else(Grid::default),
        budget: cli
            .budget
            .as_deref()
            .map(parse_budget)
            .transpose()?
            .unwrap_or_else(SearchBudget::default),
        out: cli.out,
    };
    config.validate()?;
    Ok((config, cli.print_config))
}

fn emit(config: &RunConfig, body: &str) -> Result<()> {
    match &config.out {
        Some(p) => std::fs::write(p, body).with_context(|| format!("writing {}", p.display())),
        None => {
            let mut out = std::io::stdout().lock();
            match out.write_all(body.as_bytes()).and_then(|_| out.flush()) {
                Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => Ok(()),
                r => Ok(r?),
            }
        }
    }
}

fn main_inner() -> Result<u8> {
    let (config, print_config) = resolve(Cli::parse())?;
    if print_config {
        println!("{}", config.to_json());
        return Ok(0);
    }
    let report = commands::run(&config)?;
    let body = match config.format {
        OutputFormat::Text => report.text,
        OutputFormat::Json => serde_json::to_string_pretty(&report.json)? + "\n",
    };
    emit(&config, &body)?;
    Ok(report.status)
}

fn main() -> ExitCode {
    match main_inner() {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(commands::status::FAILED)
        }
    }
}
