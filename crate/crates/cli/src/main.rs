use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use lamedtn::harness::{self, ExperimentConfig, ExperimentKind};
use lamedtn::reference::Orientation;

/// Experiments for the semiclassical elastic DN symbol.
#[derive(Parser, Debug)]
#[command(name = "lamedtn", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Random-instance checks of the matrix identities.
    VerifyAlgebra(Common),
    /// Boundary symbol against the exact half-space DN map.
    OracleHalfspace(Common),
    /// O(h) rate of the symbol against the exact disk DN map.
    ConvergeDisk(Common),
    /// Residual order of the truncated eikonal phases.
    EikonalResidual(Common),
    /// Tabulate the symbol matrices.
    SymbolDump(Common),
}

#[derive(ValueEnum, Debug, Clone, Copy)]
enum OrientationArg {
    Inward,
    Outward,
}

#[derive(Args, Debug)]
struct Common {
    /// JSON config; the built-in default for the experiment otherwise.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Overrides the config seed.
    #[arg(long)]
    seed: Option<u64>,
    /// Directory for CSV tables and summary.json.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Worker threads (rayon).
    #[arg(long)]
    threads: Option<usize>,
    /// Overrides the config orientation.
    #[arg(long, value_enum)]
    orientation: Option<OrientationArg>,
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

fn run(cli: Cli) -> anyhow::Result<bool> {
    let (kind, common) = match cli.command {
        Command::VerifyAlgebra(c) => (ExperimentKind::VerifyAlgebra, c),
        Command::OracleHalfspace(c) => (ExperimentKind::OracleHalfspace, c),
        Command::ConvergeDisk(c) => (ExperimentKind::ConvergeDisk, c),
        Command::EikonalResidual(c) => (ExperimentKind::EikonalResidual, c),
        Command::SymbolDump(c) => (ExperimentKind::SymbolDump, c),
    };
    let mut config = match &common.config {
        Some(p) => ExperimentConfig::load(p).with_context(|| format!("reading {}", p.display()))?,
        None => ExperimentConfig::default_for(kind),
    };
    if config.experiment != kind {
        bail!("config is for {}, not {}", config.experiment.name(), kind.name());
    }
    if let Some(s) = common.seed {
        config.seed = s;
    }
    if let Some(o) = common.orientation {
        config.orientation = match o {
            OrientationArg::Inward => Orientation::Inward,
            OrientationArg::Outward => Orientation::Outward,
        };
    }
    if let Some(n) = common.threads {
        rayon::ThreadPoolBuilder::new().num_threads(n).build_global()?;
    }
    let report = harness::run(&config)?;
    println!("{} (seed {}, config {})", report.experiment, report.seed, &report.config_hash[..12]);
    for line in report.summary_lines() {
        println!("{line}");
    }
    for n in &report.notes {
        println!("note: {n}");
    }
    if let Some(dir) = &common.out {
        for p in report.write(dir)? {
            println!("wrote {}", p.display());
        }
    } else {
        println!("{}", serde_json::to_string(&serde_json::json!({"passed": report.passed}))?);
    }
    Ok(report.passed)
}
