use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Context;
use clap::{Parser, Subcommand, ValueEnum};

use cube_orient::harness::{
    cmd_construct, cmd_counterexample_q3, cmd_enumerate, cmd_facts, cmd_harper_table,
    cmd_verify_main_theorem, configure_jobs, harper_report, harper_rows_to_csv, ExperimentReport,
    Mode, VerifyConfig,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Debug, Parser)]
#[command(name = "cube-orient", version, about = "Experiments on Eulerian orientations of hypercubes")]
struct Cli {
    /// Output format for reports and tables.
    #[arg(long, global = true, value_enum, default_value = "json")]
    format: Format,

    /// Worker threads (overridden by CUBE_ORIENT_JOBS).
    #[arg(long, global = true)]
    jobs: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check that Eulerian orientations of Q_d are strongly d/2-node connected.
    Verify {
        #[arg(long)]
        dim: u32,
        #[arg(long, value_enum, default_value = "exhaustive")]
        mode: Mode,
        #[arg(long, default_value_t = 1000)]
        samples: u64,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        /// Cycle reversals between samples (default 10 * |E|).
        #[arg(long)]
        steps: Option<u64>,
        /// Directory for witness files.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Tabulate Harper's b_v(m, Q_n) against oracles and the expansion bound.
    Harper {
        #[arg(long)]
        dim: u32,
        #[arg(long)]
        m_max: Option<u64>,
        /// Write the table here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Build the recursive strongly k-connected orientation of Q_{2k}.
    Construct {
        #[arg(long)]
        k: u32,
        #[arg(long)]
        out: PathBuf,
    },
    /// Find a smooth orientation of Q_3 that is not strongly connected.
    Counterexample {
        #[arg(long, default_value = "q3-counterexample.cubeorient")]
        out: PathBuf,
    },
    /// Count Eulerian orientations of Q_d under two edge orders.
    Enumerate {
        #[arg(long)]
        dim: u32,
    },
    /// Check the expansion hypothesis and supporting inequalities for k.
    Facts {
        #[arg(long)]
        k: u32,
    },
}

fn emit(report: &ExperimentReport, format: Format) {
    match format {
        Format::Json => println!("{}", report.to_json()),
        Format::Csv => print!("{}", report.to_csv_summary()),
    }
}

fn run(cli: Cli) -> anyhow::Result<bool> {
    configure_jobs(cli.jobs);
    let report = match cli.command {
        Command::Verify {
            dim,
            mode,
            samples,
            seed,
            steps,
            out,
        } => cmd_verify_main_theorem(&VerifyConfig {
            dim,
            mode,
            samples,
            seed,
            steps,
            out_dir: out,
        })?,
        Command::Harper { dim, m_max, out } => {
            let m_max = m_max.unwrap_or(1u64 << dim.saturating_sub(1).min(62));
            let rows = cmd_harper_table(dim, m_max)?;
            let report = harper_report(dim, m_max, &rows);
            let table = match cli.format {
                Format::Csv => harper_rows_to_csv(&rows)?,
                Format::Json => serde_json::to_string_pretty(&rows)? + "\n",
            };
            match out {
                Some(path) => {
                    fs::write(&path, table).with_context(|| format!("writing {}", path.display()))?;
                    emit(&report, Format::Json);
                }
                None => print!("{table}"),
            }
            return Ok(report.succeeded());
        }
        Command::Construct { k, out } => cmd_construct(k, &out)?,
        Command::Counterexample { out } => cmd_counterexample_q3(&out)?,
        Command::Enumerate { dim } => cmd_enumerate(dim)?,
        Command::Facts { k } => cmd_facts(k)?,
    };
    emit(&report, cli.format);
    Ok(report.succeeded())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
