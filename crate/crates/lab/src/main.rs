use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use entrotter_lab::output::write_result;
use entrotter_lab::{run, ExperimentConfig, ExperimentKind, LabError, LabResult, RunOptions};

/// Trotter error experiments with entanglement-aware bounds.
#[derive(Parser)]
#[command(name = "entrotter", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Validation panels a-d.
    Validate(Common),
    /// Area-law against all-to-all error scaling.
    Separation(Common),
    /// Order-scaling fits of single-step errors.
    Orders(Common),
    /// Step-count comparison table across geometries.
    Resources(Common),
    /// Error and bounds over an n, p, r grid.
    Sweep(Common),
}

#[derive(Args)]
struct Common {
    /// JSON object overriding the experiment defaults.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Output directory.
    #[arg(long, default_value = "out")]
    out: PathBuf,
    /// Overrides the config seed.
    #[arg(long)]
    seed: Option<u64>,
    /// Also write SVG plots.
    #[arg(long)]
    plots: bool,
    /// Worker threads (default: all cores).
    #[arg(long)]
    threads: Option<usize>,
    /// Fill runtime_ms with wall-clock times; the CSV is then not reproducible.
    #[arg(long)]
    timings: bool,
}

fn execute(kind: ExperimentKind, args: Common) -> LabResult<()> {
    if let Some(t) = args.threads {
        if t == 0 {
            return Err(LabError::Config("--threads must be at least 1".into()));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build_global()
            .map_err(|e| LabError::Config(format!("thread pool: {e}")))?;
    }
    let mut cfg = match &args.config {
        Some(path) => ExperimentConfig::load(kind, path)?,
        None => ExperimentConfig::defaults(kind),
    };
    if let Some(seed) = args.seed {
        cfg.seed = seed;
    }
    cfg.validate()?;
    let result = run(&cfg, RunOptions { timings: args.timings })?;
    let files = write_result(&result, &cfg, &args.out, args.plots, args.timings)?;
    for f in files {
        println!("{}", f.display());
    }
    println!("{}", serde_json::to_string_pretty(&result.summary)?);
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (kind, args) = match cli.command {
        Command::Validate(a) => (ExperimentKind::Validate, a),
        Command::Separation(a) => (ExperimentKind::Separation, a),
        Command::Orders(a) => (ExperimentKind::Orders, a),
        Command::Resources(a) => (ExperimentKind::Resources, a),
        Command::Sweep(a) => (ExperimentKind::Sweep, a),
    };
    match execute(kind, args) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}
