mod commands;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

/// Frequent serial episodes over a sliding window of an itemset stream.
#[derive(Parser, Debug)]
#[command(name = "epistream", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Mine frequent patterns window by window.
    Mine(MineArgs),
    /// Run the incremental and batch miners in lockstep and check they agree.
    Compare(RunArgs),
    /// Write a random itemset stream.
    Gen(GenArgs),
    /// Turn a numeric series into a symbol stream (SAX).
    Discretize(DiscretizeArgs),
}

#[derive(Args, Debug)]
struct RunArgs {
    /// Itemset stream, one itemset per line; `-` reads stdin.
    #[arg(long, default_value = "-")]
    input: PathBuf,
    /// Window size, in positions.
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    window: u64,
    /// Minimum support.
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    sigma: u64,
    /// Which pattern dumps to print.
    #[arg(long, value_enum)]
    emit: Option<Emit>,
    /// Per-slide timings and tree sizes, as CSV.
    #[arg(long)]
    report: Option<PathBuf>,
    /// Wall-clock budget for the whole run.
    #[arg(long, default_value_t = 600.0)]
    timeout: f64,
}

#[derive(Args, Debug)]
struct MineArgs {
    #[command(flatten)]
    run: RunArgs,
    #[arg(long, value_enum, default_value_t = Mode::Incremental)]
    mode: Mode,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Mode {
    Incremental,
    Batch,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Emit {
    None,
    Final,
    EachSlide,
}

#[derive(Args, Debug)]
struct GenArgs {
    #[arg(long, default_value_t = 40)]
    vocab: usize,
    /// Probability of each item at each position.
    #[arg(long, default_value_t = 0.03, value_parser = probability)]
    prob: f64,
    /// Stream length.
    #[arg(long, conflicts_with = "window_multiple")]
    length: Option<usize>,
    /// Stream length as a multiple of --window.
    #[arg(long, default_value_t = 1000)]
    window_multiple: usize,
    #[arg(long, default_value_t = 80)]
    window: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Defaults to stdout.
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct DiscretizeArgs {
    /// One number per line; `-` reads stdin.
    #[arg(long, default_value = "-")]
    input: PathBuf,
    #[arg(long, default_value_t = 14, value_parser = clap::value_parser!(u64).range(2..))]
    alphabet: u64,
    /// Samples per symbol.
    #[arg(long, default_value_t = 24, value_parser = clap::value_parser!(u64).range(1..))]
    paa: u64,
    /// Keep the PAA block means as they come out of the series
    /// normalization instead of re-normalizing them.
    #[arg(long)]
    raw_blocks: bool,
    /// Defaults to stdout.
    #[arg(long)]
    output: Option<PathBuf>,
}

fn probability(s: &str) -> Result<f64, String> {
    let p: f64 = s.parse().map_err(|e| format!("{e}"))?;
    if (0.0..=1.0).contains(&p) {
        Ok(p)
    } else {
        Err(format!("{p} is not a probability in [0, 1]"))
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Mine(args) => commands::mine(args),
        Command::Compare(args) => commands::compare(args),
        Command::Gen(args) => commands::gen(args).map(|()| ExitCode::SUCCESS),
        Command::Discretize(args) => commands::discretize(args).map(|()| ExitCode::SUCCESS),
    };
    result.unwrap_or_else(|err| {
        eprintln!("error: {err:#}");
        ExitCode::FAILURE
    })
}
