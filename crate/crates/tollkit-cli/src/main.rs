use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, Context, Result};
use clap::{Args, Parser, Subcommand};
use tollkit::calibration::{builtin_scenario, eta_grid, load_scenario, Scenario};
use tollkit::mfd::DEFAULT_GRID_POINTS;
use tollkit_cli::analysis::{analyze, jam_divergence, sweep, write_sweep_csv};
use tollkit_cli::crossover::crossover;
use tollkit_cli::verify::{verify_random, verify_scenario};
use tollkit_oracle::DEFAULT_STEP;

/// Static and dynamic congestion pricing with a transit outside option.
#[derive(Parser)]
#[command(name = "tollkit", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// Scenario file, or a builtin name (bay_bridge, nyc).
    #[arg(long, default_value = "bay_bridge")]
    scenario: String,
    /// Jam accumulation override for network scenarios, vehicles.
    #[arg(long)]
    nj: Option<f64>,
    /// Grid points for network static toll searches.
    #[arg(long, default_value_t = DEFAULT_GRID_POINTS)]
    grid: usize,
}

#[derive(Subcommand)]
enum Command {
    /// Report all four policies at one discomfort multiplier.
    Analyze {
        #[command(flatten)]
        common: Common,
        /// Discomfort multiplier; defaults to the scenario's own.
        #[arg(long)]
        eta: Option<f64>,
    },
    /// Write one comparison row per discomfort multiplier as CSV.
    Sweep {
        #[command(flatten)]
        common: Common,
        /// Uniform grid lo:hi:n; defaults to the scenario's sweep.
        #[arg(long, value_parser = parse_range)]
        eta_range: Option<(f64, f64, usize)>,
        /// Output path; stdout when absent.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the oracle agreement and bound suites.
    Verify {
        #[command(flatten)]
        common: Common,
        /// Use seeded random parameters instead of the scenario.
        #[arg(long)]
        random: bool,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        /// Random cases per suite.
        #[arg(long, default_value_t = 1000)]
        cases: usize,
        /// Random network cases.
        #[arg(long, default_value_t = 100)]
        network_cases: usize,
        /// Oracle time step, hours.
        #[arg(long, default_value_t = DEFAULT_STEP)]
        step: f64,
        /// Grid points for the oracle toll searches.
        #[arg(long = "search-grid", default_value_t = 10_000)]
        search_grid: usize,
    },
    /// Find the discomfort multiplier at which the optimal static toll
    /// equals the implemented toll.
    Crossover {
        #[command(flatten)]
        common: Common,
    },
}

fn parse_range(text: &str) -> Result<(f64, f64, usize), String> {
    let parts: Vec<&str> = text.split(':').collect();
    let [lo, hi, n] = parts[..] else {
        return Err(format!("expected lo:hi:n, got `{text}`"));
    };
    let num = |s: &str| s.trim().parse::<f64>().map_err(|e| format!("`{s}`: {e}"));
    let n = n.trim().parse::<usize>().map_err(|e| format!("`{n}`: {e}"))?;
    Ok((num(lo)?, num(hi)?, n))
}

fn resolve(spec: &str) -> Result<Scenario> {
    let scenario = if std::path::Path::new(spec).exists() {
        load_scenario(spec).with_context(|| format!("loading scenario file {spec}"))?
    } else {
        builtin_scenario(spec).with_context(|| format!("`{spec}` is neither a file nor a builtin"))?
    };
    scenario.validate().context("scenario validation")?;
    Ok(scenario)
}

fn warn_low_eta(etas: &[f64]) {
    if let Some(eta) = etas.iter().find(|&&e| e < 1.0) {
        eprintln!("warning: eta = {eta} < 1 makes transit time feel lighter than driving time");
    }
}

enum Failure {
    Validation(anyhow::Error),
    Verification,
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        Failure::Validation(e)
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Analyze { common, eta } => {
            let scenario = resolve(&common.scenario)?;
            let eta = eta.unwrap_or(scenario.transit.discomfort);
            warn_low_eta(&[eta]);
            let report = analyze(&scenario, eta, common.nj, common.grid)?;
            print!("{report}");
        }
        Command::Sweep { common, eta_range, out } => {
            let scenario = resolve(&common.scenario)?;
            let etas = match eta_range {
                Some((lo, hi, n)) => eta_grid(lo, hi, n),
                None => scenario.eta_sweep.clone(),
            };
            warn_low_eta(&etas);
            let rows = sweep(&scenario, &etas, common.nj, common.grid)?;
            match &out {
                Some(path) => {
                    let file = File::create(path)
                        .with_context(|| format!("cannot write {}", path.display()))?;
                    write_sweep_csv(&rows, BufWriter::new(file))?;
                }
                None => write_sweep_csv(&rows, io::stdout().lock())?,
            }
            if common.nj.is_none() && !scenario.jam_sweep().is_empty() {
                match jam_divergence(&scenario, &rows, common.grid)? {
                    Some(d) if d.relative_gap > 0.0 => eprintln!(
                        "jam accumulation divergence: {} differs by {:.3e} (relative) at n_j = {}, eta = {}",
                        d.column, d.relative_gap, d.n_j, d.eta
                    ),
                    _ => eprintln!(
                        "jam accumulation sweep {:?}: all columns identical",
                        scenario.jam_sweep()
                    ),
                }
            }
        }
        Command::Verify {
            common,
            random,
            seed,
            cases,
            network_cases,
            step,
            search_grid,
        } => {
            if !(step > 0.0) {
                return Err(anyhow!("step must be positive").into());
            }
            let summary = if random {
                verify_random(seed, cases, network_cases, step, search_grid)
            } else {
                let scenario = resolve(&common.scenario)?;
                verify_scenario(&scenario, common.nj, step, common.grid)
            };
            print!("{summary}");
            if !summary.passed() {
                return Err(Failure::Verification);
            }
        }
        Command::Crossover { common } => {
            let scenario = resolve(&common.scenario)?;
            print!("{}", crossover(&scenario, common.nj, common.grid)?);
        }
    }
    io::stdout().flush().ok();
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            e.print().ok();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Validation(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
        Err(Failure::Verification) => ExitCode::from(2),
    }
}
