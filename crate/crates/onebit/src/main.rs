use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use onebit::bench::{run_bench, BenchConfig};
use onebit::config::{self, parse_grid, parse_methods, ExperimentSpec};
use onebit::oracle::{run_oracle_suite, OracleConfig};
use onebit::{report, run_experiment, Error};

#[derive(Parser)]
#[command(name = "onebit", version, about = "1-bit DAC precoding experiments")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Monte Carlo SER sweep; writes CSV and a JSON manifest.
    Sweep(SweepArgs),
    /// Relaxation and 1-bit methods against exhaustive search (2Nt <= 24).
    Oracle(OracleArgs),
    /// Precoding time versus number of antennas.
    Bench(BenchArgs),
}

#[derive(Args)]
struct SweepArgs {
    /// Flat `key = value` file or a JSON manifest from an earlier run.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    seed: Option<u64>,
    /// CSV path; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    noiseless: bool,
    #[arg(long)]
    epsilon: Option<f64>,
    /// Comma-separated: fgreedy, qlp, qzf, zf, milp.
    #[arg(long, value_parser = parse_methods)]
    methods: Option<std::vec::Vec<onebit_core::Method>>,
    #[arg(long)]
    nt: Option<usize>,
    #[arg(long)]
    k: Option<usize>,
    /// n of 4^n-QAM.
    #[arg(long)]
    order: Option<usize>,
    #[arg(long)]
    trials: Option<usize>,
    /// `start:stop:step` or a comma-separated list, in dB.
    #[arg(long, value_parser = parse_grid)]
    snr: Option<std::vec::Vec<f64>>,
    /// Fill the wall_time_ms column (makes the CSV run-dependent).
    #[arg(long)]
    timing: bool,
}

#[derive(Args)]
struct OracleArgs {
    #[arg(long, default_value_t = 4)]
    nt: usize,
    #[arg(long, default_value_t = 2)]
    k: usize,
    #[arg(long, default_value_t = 2)]
    order: usize,
    #[arg(long, default_value_t = 200)]
    instances: usize,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// JSON report path; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct BenchArgs {
    #[arg(long, value_delimiter = ',', default_value = "16,32,64,128")]
    nt: Vec<usize>,
    #[arg(long, default_value_t = 8)]
    k: usize,
    #[arg(long, default_value_t = 2)]
    order: usize,
    #[arg(long, default_value_t = 100)]
    repeats: usize,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    #[arg(long, value_parser = parse_methods)]
    methods: Option<std::vec::Vec<onebit_core::Method>>,
    /// JSON rows path; a table goes to stdout either way.
    #[arg(long)]
    out: Option<PathBuf>,
}

fn sweep(args: SweepArgs) -> Result<(), Error> {
    let mut spec = match &args.config {
        Some(path) => config::load(path)?,
        None => ExperimentSpec::default(),
    };
    let sim = &mut spec.sim;
    if let Some(v) = args.seed {
        sim.seed = v;
    }
    if let Some(v) = args.epsilon {
        sim.epsilon = v;
    }
    if let Some(v) = args.methods {
        sim.methods = v;
    }
    if let Some(v) = args.nt {
        sim.nt = v;
    }
    if let Some(v) = args.k {
        sim.k = v;
    }
    if let Some(v) = args.order {
        sim.order = v;
    }
    if let Some(v) = args.trials {
        sim.trials = v;
    }
    if let Some(v) = args.snr {
        sim.snr_db = v;
    }
    sim.noiseless |= args.noiseless;
    sim.timing |= args.timing;
    if args.out.is_some() {
        spec.out = args.out;
    }
    let stats = run_experiment(&spec)?;
    for m in &stats.methods {
        if m.step_violations > 0 {
            eprintln!(
                "warning: {} greedy step violations for {}",
                m.step_violations, m.method
            );
        }
    }
    Ok(())
}

fn oracle(args: OracleArgs) -> Result<(), Error> {
    let report = run_oracle_suite(&OracleConfig {
        nt: args.nt,
        k: args.k,
        order: args.order,
        instances: args.instances,
        seed: args.seed,
    })?;
    match &args.out {
        Some(path) => report::write_json(&report, path)?,
        None => println!("{}", serde_json::to_string_pretty(&report)?),
    }
    if report.dominance_violations > 0 {
        return Err(Error::Config(format!(
            "{} instances violate t_LP >= t*",
            report.dominance_violations
        )));
    }
    Ok(())
}

fn bench(args: BenchArgs) -> Result<(), Error> {
    let mut cfg = BenchConfig {
        nts: args.nt,
        k: args.k,
        order: args.order,
        repeats: args.repeats,
        seed: args.seed,
        ..BenchConfig::default()
    };
    if let Some(m) = args.methods {
        cfg.methods = m;
    }
    let rows = run_bench(&cfg)?;
    let mut out = io::stdout().lock();
    let _ = writeln!(out, "{:<10}{:>8}{:>14}", "method", "nt", "mean_ms");
    for r in &rows {
        let _ = writeln!(out, "{:<10}{:>8}{:>14.4}", r.method.name(), r.nt, r.mean_ms);
    }
    if let Some(path) = &args.out {
        report::write_json(&rows, path)?;
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Sweep(a) => sweep(a),
        Command::Oracle(a) => oracle(a),
        Command::Bench(a) => bench(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}
