//! `lawson`: spectra of Lawson tori and Klein bottles from the command line.

mod commands;
mod output;

use std::io::Write;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use lawson_spectrum::SpectrumError;

use output::Report;

const EXIT_INVALID: u8 = 2;
const EXIT_NUMERIC: u8 = 3;
const EXIT_MISMATCH: u8 = 4;

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
    Human,
}

#[derive(Debug, Parser)]
#[command(name = "lawson", version, about = "Laplace spectra of Lawson tau-surfaces")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, global = true, default_value = "human")]
    format: Format,

    /// Print nothing on success; errors still go to stderr.
    #[arg(long, global = true)]
    quiet: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Kind, extremal index j, Lambda_j, area and crossover l_c.
    Invariants {
        m: u32,
        k: u32,
        /// Use the double cover of a torus.
        #[arg(long)]
        cover: bool,
    },
    /// Mode table and eigenvalue count below a cutoff.
    Spectrum {
        m: u32,
        k: u32,
        #[arg(long)]
        cover: bool,
        #[arg(long, default_value_t = 2.0)]
        cutoff: f64,
    },
    /// Compare N(2) and Lambda_j with their closed forms for all surfaces up to mmax.
    Verify {
        #[arg(long, default_value_t = 5)]
        mmax: u32,
        /// Also count N(2) with the finite-difference Laplacian.
        #[arg(long)]
        with_2d_oracle: bool,
        /// Grid size for the finite-difference count (multiple of 4).
        #[arg(long, default_value_t = 128)]
        grid: usize,
    },
    /// Half- and full-period discriminants on a uniform lambda grid.
    Discriminant {
        m: u32,
        k: u32,
        #[arg(long)]
        cover: bool,
        #[arg(long, default_value_t = 0.0)]
        l: f64,
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        lambda_min: f64,
        #[arg(long, default_value_t = 10.0, allow_negative_numbers = true)]
        lambda_max: f64,
        #[arg(long, default_value_t = 101)]
        steps: usize,
    },
}

fn render(report: &Report, format: Format) -> String {
    match format {
        Format::Json => report.to_json(),
        Format::Csv => report.table.to_csv(),
        Format::Human => report.to_text(),
    }
}

fn run(cli: &Cli) -> Result<(Report, bool), SpectrumError> {
    match cli.command {
        Command::Invariants { m, k, cover } => Ok((commands::invariants(m, k, cover)?, true)),
        Command::Spectrum { m, k, cover, cutoff } => {
            Ok((commands::spectrum(m, k, cover, cutoff)?, true))
        }
        Command::Verify { mmax, with_2d_oracle, grid } => {
            commands::verify_sweep(mmax, with_2d_oracle, grid)
        }
        Command::Discriminant { m, k, cover, l, lambda_min, lambda_max, steps } => Ok((
            commands::discriminant(m, k, cover, l, lambda_min, lambda_max, steps)?,
            true,
        )),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok((report, passed)) => {
            if !cli.quiet {
                let mut out = std::io::stdout().lock();
                // A closed pipe is not an error worth reporting.
                let _ = out.write_all(render(&report, cli.format).as_bytes());
            }
            if passed {
                ExitCode::SUCCESS
            } else {
                eprintln!("lawson: verification mismatch");
                ExitCode::from(EXIT_MISMATCH)
            }
        }
        Err(e) => {
            eprintln!("lawson: {e}");
            ExitCode::from(if e.is_invalid_input() { EXIT_INVALID } else { EXIT_NUMERIC })
        }
    }
}
