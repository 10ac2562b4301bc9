use std::path::PathBuf;
use std::process::ExitCode;

use alb::cli::{cmd_cluster, cmd_plot, cmd_run, cmd_t0, T0Mode};
use alb::corpus::IngestOptions;
use alb::plot::PlotKind;
use alb::AlbError;
use anyhow::{bail, Result};
use clap::{Parser, Subcommand, ValueEnum};

#[derive(Parser)]
#[command(name = "alb", version, about = "Adaptive linear bandit experiments")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Continuum,
    Finite,
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Regret,
    Snapshot,
}

#[derive(Subcommand)]
enum Command {
    /// Run an experiment config and write traces.
    Run {
        config: PathBuf,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, default_value_t = 1)]
        threads: usize,
    },
    /// Print the initial phase length T0.
    T0 {
        #[arg(long)]
        d: usize,
        #[arg(long)]
        delta: f64,
        #[arg(long)]
        sigma: f64,
        #[arg(long, value_enum, default_value = "continuum")]
        mode: Mode,
        #[arg(long)]
        tau: Option<f64>,
        #[arg(long = "T")]
        horizon: Option<u64>,
        #[arg(long = "K")]
        arms: Option<usize>,
    },
    /// Cluster a ratings CSV into arms.csv.
    Cluster {
        csv: PathBuf,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Skip the first line of the input.
        #[arg(long)]
        header: bool,
        #[arg(long)]
        row_limit: Option<usize>,
        #[arg(long)]
        col_limit: Option<usize>,
    },
    /// Render a trace CSV to SVG.
    Plot {
        csv: PathBuf,
        #[arg(long, value_enum)]
        kind: Kind,
        #[arg(long)]
        out: PathBuf,
    },
}

fn dispatch(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Run { config, out, threads } => {
            let (_, lines) = cmd_run(&config, &out, threads)?;
            for line in lines {
                eprintln!("{line}");
            }
        }
        Command::T0 { d, delta, sigma, mode, tau, horizon, arms } => {
            let mode = match (mode, tau, horizon, arms) {
                (Mode::Continuum, ..) => T0Mode::Continuum,
                (Mode::Finite, Some(tau), Some(horizon), Some(arms)) => T0Mode::Finite { tau, horizon, arms },
                (Mode::Finite, ..) => bail!(AlbError::Config {
                    field: "mode".into(),
                    message: "finite mode needs --tau, --T and --K".into()
                }),
            };
            println!("{}", cmd_t0(d, delta, sigma, mode)?);
        }
        Command::Cluster { csv, k, out, seed, header, row_limit, col_limit } => {
            let opts = IngestOptions { has_header: header, row_limit, col_limit, ..IngestOptions::default() };
            let path = cmd_cluster(&csv, k, &out, &opts, seed)?;
            eprintln!("wrote {}", path.display());
        }
        Command::Plot { csv, kind, out } => {
            let kind = match kind {
                Kind::Regret => PlotKind::Regret,
                Kind::Snapshot => PlotKind::Snapshot,
            };
            cmd_plot(&csv, &out, kind)?;
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match std::panic::catch_unwind(|| dispatch(cli)) {
        Ok(Ok(())) => ExitCode::SUCCESS,
        Err(_) => ExitCode::from(2),
        Ok(Err(e)) => {
            eprintln!("error: {e}");
            let user = e.downcast_ref::<AlbError>().is_none_or(AlbError::is_user_error);
            ExitCode::from(if user { 1 } else { 2 })
        }
    }
}
