//! Batch runner: TOML experiment files in, JSON reports and CSV tables out.

use std::path::{Path, PathBuf};
use std::time::{Instant, SystemTime, UNIX_EPOCH};

use clap::{Parser, Subcommand};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::verify::{run_check, CheckKind, PropertyCheck, Verdict};

pub mod config;
pub mod report;

pub use config::{CheckEntry, ExperimentConfig, TabulateConfig};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_CONFIG: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "ucprox", about = "Certified generalized proximal mappings and their moduli")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run every check of a configuration and write reports.
    Run {
        config: PathBuf,
        /// Overrides `output_dir` of the configuration.
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Write moduli.csv for the configuration's grids.
    Tabulate {
        config: PathBuf,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// List the available check kinds.
    ListChecks,
    /// Print the version.
    Version,
}

/// Result of [`run`]: the checks in configuration order.
pub struct RunSummary {
    pub checks: Vec<PropertyCheck>,
    pub output_dir: PathBuf,
}

impl RunSummary {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.verdict == Verdict::Pass)
    }
}

fn io_error(path: &Path, e: std::io::Error) -> Error {
    Error::Internal(format!("{}: {e}", path.display()))
}

fn write(path: &Path, contents: &str) -> Result<()> {
    std::fs::write(path, contents).map_err(|e| io_error(path, e))
}

fn output_dir(cfg: &ExperimentConfig, output: Option<&Path>) -> Result<PathBuf> {
    let dir = output.map(Path::to_path_buf).unwrap_or_else(|| cfg.output_dir.clone());
    std::fs::create_dir_all(&dir).map_err(|e| io_error(&dir, e))?;
    Ok(dir)
}

/// Runs all checks on a pool of `workers` threads, then writes
/// `<name>.json` per check, `margins.csv` and `moduli.csv`.
pub fn run(cfg: &ExperimentConfig, output: Option<&Path>) -> Result<RunSummary> {
    let specs = cfg.resolve();
    if specs.is_empty() {
        return Err(Error::input("configuration has no [[check]] entries"));
    }
    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(w) = cfg.workers {
        pool = pool.num_threads(w);
    }
    let pool = pool.build().map_err(|e| Error::Internal(e.to_string()))?;
    let outcomes: Vec<Result<(PropertyCheck, std::time::Duration)>> = pool.install(|| {
        specs
            .par_iter()
            .map(|s| {
                let start = Instant::now();
                run_check(s).map(|c| (c, start.elapsed()))
            })
            .collect()
    });
    let outcomes: Vec<_> = outcomes.into_iter().collect::<Result<_>>()?;
    let dir = output_dir(cfg, output)?;
    let stamp = SystemTime::now().duration_since(UNIX_EPOCH).map(|d| d.as_secs()).unwrap_or(0);
    for (check, runtime) in &outcomes {
        let text = report::report_json(check, *runtime, stamp)?;
        write(&dir.join(format!("{}.json", check.name)), &text)?;
    }
    let checks: Vec<PropertyCheck> = outcomes.into_iter().map(|(c, _)| c).collect();
    write(&dir.join("margins.csv"), &report::margins_csv(&checks))?;
    tabulate_into(cfg, &dir)?;
    Ok(RunSummary { checks, output_dir: dir })
}

fn tabulate_into(cfg: &ExperimentConfig, dir: &Path) -> Result<Vec<report::ModuliRow>> {
    let space = cfg.tabulate_space().build()?;
    let rows = report::moduli_rows(&space, &cfg.tabulate_young(), &cfg.tabulate)?;
    write(&dir.join("moduli.csv"), &report::moduli_csv(&rows))?;
    Ok(rows)
}

/// Writes `moduli.csv` and returns its rows.
pub fn tabulate(cfg: &ExperimentConfig, output: Option<&Path>) -> Result<Vec<report::ModuliRow>> {
    let dir = output_dir(cfg, output)?;
    tabulate_into(cfg, &dir)
}

fn verdict_line(c: &PropertyCheck) -> String {
    let tag = match c.verdict {
        Verdict::Pass => "PASS",
        Verdict::Fail => "FAIL",
    };
    let margin = c.min_margin.map(|m| format!("{m:e}")).unwrap_or_else(|| "none".into());
    let mut line = format!(
        "{tag} {} [{}] samples={} violations={} min_margin={margin}",
        c.name,
        c.kind.as_str(),
        c.samples,
        c.violations
    );
    if c.solver_failures > 0 {
        line.push_str(&format!(" solver_failures={}", c.solver_failures));
    }
    if c.vacuous {
        line.push_str(" (vacuous)");
    }
    line
}

fn load_or_exit(path: &Path) -> std::result::Result<ExperimentConfig, i32> {
    ExperimentConfig::load(path).map_err(|e| {
        eprintln!("configuration error: {e}");
        EXIT_CONFIG
    })
}

/// Entry point of the binary; returns the process exit code.
pub fn main_with(cli: Cli) -> i32 {
    match cli.command {
        Command::Version => {
            println!("ucprox {}", env!("CARGO_PKG_VERSION"));
            EXIT_PASS
        }
        Command::ListChecks => {
            for k in CheckKind::ALL {
                println!("{:<26} {}", k.as_str(), k.description());
            }
            EXIT_PASS
        }
        Command::Run { config, output } => {
            let cfg = match load_or_exit(&config) {
                Ok(c) => c,
                Err(code) => return code,
            };
            match run(&cfg, output.as_deref()) {
                Ok(summary) => {
                    for c in &summary.checks {
                        println!("{}", verdict_line(c));
                    }
                    println!("reports written to {}", summary.output_dir.display());
                    if summary.all_pass() {
                        EXIT_PASS
                    } else {
                        EXIT_FAIL
                    }
                }
                Err(e @ Error::InvalidInput(_)) => {
                    eprintln!("configuration error: {e}");
                    EXIT_CONFIG
                }
                Err(e) => {
                    eprintln!("error: {e}");
                    EXIT_FAIL
                }
            }
        }
        Command::Tabulate { config, output } => {
            let cfg = match load_or_exit(&config) {
                Ok(c) => c,
                Err(code) => return code,
            };
            match tabulate(&cfg, output.as_deref()) {
                Ok(rows) => {
                    let contrast = report::scaling_contrast(&rows);
                    println!("{} rows; lambda contrast {}", rows.len(), if contrast { "holds" } else { "absent" });
                    EXIT_PASS
                }
                Err(e @ Error::InvalidInput(_)) => {
                    eprintln!("configuration error: {e}");
                    EXIT_CONFIG
                }
                Err(e) => {
                    eprintln!("error: {e}");
                    EXIT_FAIL
                }
            }
        }
    }
}
