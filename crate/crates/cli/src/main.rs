use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use ewalk::commands;
use ewalk::input::{self, parse_complex, Inflow};
use ewalk_core::par::Execution;
use ewalk_core::walk::{Coin, C64, DEFAULT_MAX_STEPS, DEFAULT_TOL};

/// Quantum walks on graph embeddings: faces, genus, scattering and comfortability.
#[derive(Parser)]
#[command(name = "ewalk", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Target {
    /// `Kn`, `Cn`, or a rotation-system file.
    graph: String,
    /// Write to this file instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

/// Coin entries as `re` or `re,im`. None: the Hadamard-type coin; a real
/// `--a` alone: the real coin `[[a, r], [r, -a]]`.
#[derive(Args)]
struct CoinArgs {
    #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
    a: Option<C64>,
    #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
    b: Option<C64>,
    #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
    c: Option<C64>,
    #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
    d: Option<C64>,
}

impl CoinArgs {
    fn coin(&self) -> anyhow::Result<Coin> {
        input::coin(self.a, self.b, self.c, self.d)
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Args)]
struct EnumerateArgs {
    #[command(flatten)]
    target: Target,
    /// Report `E[E]` for the real coin at this `a`; repeatable.
    #[arg(long = "a")]
    a: Vec<f64>,
    /// Also report `E[E]` at `a = i / (n + 1)` for `i = 1..=n`.
    #[arg(long)]
    grid: Option<usize>,
    /// Sort rows by `E[E]` at `--rank-at`.
    #[arg(long)]
    rank: bool,
    #[arg(long, default_value_t = 0.98)]
    rank_at: f64,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
    /// Run on one thread.
    #[arg(long)]
    sequential: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Facial walks, lengths, self-intersections and surface.
    Faces(Target),
    /// Surface type and genus.
    Genus(Target),
    /// Orientability by spanning-tree flips, double cover and scattering signs.
    Orientable {
        #[command(flatten)]
        target: Target,
        #[command(flatten)]
        coin: CoinArgs,
    },
    /// Face blocks of the scattering matrix.
    Scatter {
        #[command(flatten)]
        target: Target,
        #[command(flatten)]
        coin: CoinArgs,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Comfortability of one inflow, or its average with `--inflow uniform`.
    Comfort {
        #[command(flatten)]
        target: Target,
        #[command(flatten)]
        coin: CoinArgs,
        /// Tail id, `uniform` or `zero`.
        #[arg(long, default_value = "uniform")]
        inflow: Inflow,
        /// Include the `a -> 1` limit coefficient.
        #[arg(long)]
        limit: bool,
    },
    /// Iterate the walk to its stationary state.
    Simulate {
        #[command(flatten)]
        target: Target,
        #[command(flatten)]
        coin: CoinArgs,
        /// Tail id, `uniform` (equal amplitudes, unit norm) or `zero`.
        #[arg(long, default_value = "0")]
        inflow: Inflow,
        #[arg(long, default_value_t = DEFAULT_TOL)]
        tol: f64,
        #[arg(long, default_value_t = DEFAULT_MAX_STEPS)]
        max_steps: usize,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// One row per embedding class of the graph.
    Enumerate(EnumerateArgs),
    /// Same as `enumerate --rank`.
    Rank(EnumerateArgs),
}

fn output(path: &Option<PathBuf>) -> anyhow::Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn enumerate(args: EnumerateArgs, rank: bool) -> anyhow::Result<()> {
    let g = input::load_graph(&args.target.graph)?;
    let mut a = args.a.clone();
    if let Some(n) = args.grid {
        a.extend((1..=n).map(|i| i as f64 / (n + 1) as f64));
    }
    let exec = if args.sequential { Execution::Sequential } else { Execution::Parallel };
    let rank_at = (rank || args.rank).then_some(args.rank_at);
    let report = commands::enumerate(&g, input::budget()?, &a, rank_at, exec)?;
    let mut out = output(&args.target.out)?;
    match args.format {
        Format::Json => commands::write_json(&mut out, &report)?,
        Format::Csv => commands::write_enumerate_csv(&mut out, &report)?,
    }
    out.flush()?;
    Ok(())
}

fn run(cli: Cli) -> anyhow::Result<()> {
    match cli.command {
        Command::Faces(t) => {
            let r = commands::faces(&input::load_system(&t.graph)?)?;
            commands::write_json(&mut output(&t.out)?, &r)
        }
        Command::Genus(t) => {
            let r = commands::genus(&input::load_system(&t.graph)?)?;
            commands::write_json(&mut output(&t.out)?, &r)
        }
        Command::Orientable { target, coin } => {
            let r = commands::orientable(&input::load_system(&target.graph)?, &coin.coin()?)?;
            commands::write_json(&mut output(&target.out)?, &r)
        }
        Command::Scatter { target, coin, format } => {
            let r = commands::scatter(&input::load_system(&target.graph)?, &coin.coin()?)?;
            let mut out = output(&target.out)?;
            match format {
                Format::Json => commands::write_json(&mut out, &r),
                Format::Csv => commands::write_scatter_csv(&mut out, &r),
            }
        }
        Command::Comfort { target, coin, inflow, limit } => {
            let r = commands::comfort(&input::load_system(&target.graph)?, &coin.coin()?, inflow, limit)?;
            commands::write_json(&mut output(&target.out)?, &r)
        }
        Command::Simulate { target, coin, inflow, tol, max_steps, format } => {
            let r = commands::simulate(&input::load_system(&target.graph)?, &coin.coin()?, inflow, tol, max_steps)?;
            let mut out = output(&target.out)?;
            match format {
                Format::Json => commands::write_json(&mut out, &r),
                Format::Csv => commands::write_simulate_csv(&mut out, &r),
            }
        }
        Command::Enumerate(args) => enumerate(args, false),
        Command::Rank(args) => enumerate(args, true),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(ewalk::exit_code(&e))
        }
    }
}
