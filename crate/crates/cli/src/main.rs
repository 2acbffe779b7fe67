use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use trisample::Method;

mod commands;

/// Seed used when `--seed` is not given.
pub const DEFAULT_SEED: u64 = 42;

#[derive(Parser)]
#[command(name = "trisample", version, about = "Triangle-count estimation by edge and wedge sampling")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Exact Δ, Λ, C, φ and K of an edge list.
    Stats {
        #[arg(long)]
        graph: PathBuf,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// One estimator run.
    Estimate {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long, value_parser = parse_method)]
        method: Method,
        /// Edge-sampling probability (ews, es).
        #[arg(long)]
        p: Option<f64>,
        /// Number of sampled wedges (ws).
        #[arg(long)]
        k: Option<u64>,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        /// Report wall-clock seconds; otherwise the field is left empty so
        /// that repeated runs produce identical output.
        #[arg(long)]
        timing: bool,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Empirical and theoretical RSE over a grid of sampling probabilities.
    RseSweep {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long = "method", value_parser = parse_method, required = true)]
        methods: Vec<Method>,
        #[arg(long = "p", required = true)]
        ps: Vec<f64>,
        #[arg(long, default_value_t = 1000)]
        runs: usize,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Sample sizes reaching a target RSE under the approximate formulas.
    SampleSize {
        #[arg(long, conflicts_with = "metrics", required_unless_present = "metrics")]
        graph: Option<PathBuf>,
        /// Inline metrics: n,m,delta,lambda,phi,K.
        #[arg(long)]
        metrics: Option<String>,
        #[arg(long)]
        rse: f64,
        #[command(flatten)]
        out: OutputArgs,
    },
}

#[derive(Args)]
struct OutputArgs {
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
    /// Write to this file instead of standard output.
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

fn parse_method(s: &str) -> Result<Method, String> {
    s.parse()
}

fn run(cli: Cli) -> Result<()> {
    let (rendered, out) = match cli.command {
        Command::Stats { graph, out } => (commands::run_stats(&graph, out.format)?, out),
        Command::Estimate {
            graph,
            method,
            p,
            k,
            seed,
            timing,
            out,
        } => {
            let plan = trisample::SamplingPlan::new(method, p, k, seed, 1)?;
            (commands::run_estimate(&graph, &plan, timing, out.format)?, out)
        }
        Command::RseSweep {
            graph,
            methods,
            ps,
            runs,
            seed,
            out,
        } => {
            if runs < 2 {
                bail!("--runs must be at least 2");
            }
            for &p in &ps {
                trisample::Probability::new(p)?;
            }
            eprintln!("seed={seed}");
            (commands::run_rse_sweep(&graph, &methods, &ps, runs, seed, out.format)?, out)
        }
        Command::SampleSize {
            graph,
            metrics,
            rse,
            out,
        } => {
            if !(rse > 0.0 && rse <= 1.0) {
                bail!("--rse must lie in (0, 1], got {rse}");
            }
            let source = match (graph, metrics) {
                (Some(path), None) => commands::MetricsSource::Graph(path),
                (None, Some(inline)) => commands::MetricsSource::Inline(commands::parse_inline_metrics(&inline)?),
                _ => bail!("give exactly one of --graph or --metrics"),
            };
            (commands::run_sample_size(source, rse, out.format)?, out)
        }
    };

    match out.output {
        Some(path) => std::fs::write(&path, rendered).with_context(|| format!("writing {}", path.display()))?,
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(rendered.as_bytes())?;
            stdout.flush()?;
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::FAILURE
        }
    }
}
