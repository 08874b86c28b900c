//! Command-line front end: `ellsov <group> <task> --config FILE`.

use crate::config::ModelConfig;
use crate::error::Error;
use crate::report::{Outcome, Report, Table, Timing};
use crate::sample::Sampler;
use crate::suite;
use clap::{Args, Parser, Subcommand};
use std::ffi::OsString;
use std::path::{Path, PathBuf};
use std::time::Instant;

#[derive(Debug, Parser)]
#[command(name = "ellsov", about = "Elliptic quantum group, Gaudin and IRF verification suites")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub flags: Flags,
}

#[derive(Debug, Args)]
pub struct Flags {
    /// Model configuration (JSON).
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Report path; stdout when absent.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Overrides the seed in the configuration.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Overrides `tolerances.residual_tol`.
    #[arg(long, global = true)]
    pub tol: Option<f64>,
    /// Directory for CSV curves.
    #[arg(long = "emit-csv", value_name = "DIR", global = true)]
    pub emit_csv: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    #[command(subcommand)]
    Theta(ThetaCmd),
    #[command(subcommand)]
    Gaudin(GaudinCmd),
    #[command(subcommand)]
    Eqg(EqgCmd),
    #[command(subcommand)]
    Irf(IrfCmd),
}

#[derive(Debug, Subcommand)]
pub enum ThetaCmd {
    /// θ kernel and theta-space checks.
    Eval,
}

#[derive(Debug, Subcommand)]
pub enum GaudinCmd {
    /// Commuting Hamiltonians and S(z).
    Check,
    /// Bethe ansatz.
    Bethe,
}

#[derive(Debug, Subcommand)]
pub enum EqgCmd {
    /// Yang-Baxter and RLL relations.
    RllCheck,
    /// Highest-weight vector and restrictions.
    HwCheck,
}

#[derive(Debug, Subcommand)]
pub enum IrfCmd {
    /// Transfer matrix, two ways.
    Build,
    /// Spectrum certificates.
    Spectrum,
    /// Partition function.
    Partition,
    /// Continuous Bethe ansatz.
    Bethe,
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Theta(ThetaCmd::Eval) => "theta eval",
            Command::Gaudin(GaudinCmd::Check) => "gaudin check",
            Command::Gaudin(GaudinCmd::Bethe) => "gaudin bethe",
            Command::Eqg(EqgCmd::RllCheck) => "eqg rll-check",
            Command::Eqg(EqgCmd::HwCheck) => "eqg hw-check",
            Command::Irf(IrfCmd::Build) => "irf build",
            Command::Irf(IrfCmd::Spectrum) => "irf spectrum",
            Command::Irf(IrfCmd::Partition) => "irf partition",
            Command::Irf(IrfCmd::Bethe) => "irf bethe",
        }
    }

    fn runner(&self) -> fn(&ModelConfig, &mut Sampler) -> crate::Result<Outcome> {
        match self {
            Command::Theta(ThetaCmd::Eval) => suite::theta_eval,
            Command::Gaudin(GaudinCmd::Check) => suite::gaudin_check,
            Command::Gaudin(GaudinCmd::Bethe) => suite::gaudin_bethe,
            Command::Eqg(EqgCmd::RllCheck) => suite::eqg_rll,
            Command::Eqg(EqgCmd::HwCheck) => suite::eqg_hw,
            Command::Irf(IrfCmd::Build) => suite::irf_build,
            Command::Irf(IrfCmd::Spectrum) => suite::irf_spectrum,
            Command::Irf(IrfCmd::Partition) => suite::irf_partition,
            Command::Irf(IrfCmd::Bethe) => suite::irf_bethe,
        }
    }
}

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_CONFIG: i32 = 2;

/// Runs one task and returns the report. Input errors come back as `Err`.
pub fn execute(command: &Command, mut cfg: ModelConfig, flags: &Flags) -> crate::Result<(Report, Outcome)> {
    if let Some(seed) = flags.seed {
        cfg.seed = seed;
    }
    if let Some(tol) = flags.tol {
        if !(tol > 0.0) {
            return Err(Error::Config(format!("--tol must be positive, got {tol}")));
        }
        cfg.tolerances.residual_tol = Some(tol);
    }
    let start = Instant::now();
    let mut sampler = Sampler::new(cfg.seed);
    let outcome = command.runner()(&cfg, &mut sampler)?;
    let report = Report {
        task: command.name().to_string(),
        config: serde_json::to_value(&cfg).map_err(|e| Error::Config(e.to_string()))?,
        seed: cfg.seed,
        pass: outcome.pass(),
        checks: outcome.checks.clone(),
        data: outcome.data.clone(),
        timing: Timing { elapsed_ms: start.elapsed().as_secs_f64() * 1e3 },
    };
    Ok((report, outcome))
}

fn write_csv(dir: &Path, outcome: &Outcome) -> std::io::Result<()> {
    std::fs::create_dir_all(dir)?;
    for Table { name, header, rows } in &outcome.csv {
        let mut w = csv::Writer::from_path(dir.join(format!("{name}.csv")))?;
        w.write_record(header)?;
        for r in rows {
            w.write_record(r.iter().map(|x| format!("{x:.17e}")))?;
        }
        w.flush()?;
    }
    Ok(())
}

/// Parses `args` (program name first) and runs. Returns the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_CONFIG } else { EXIT_PASS };
        }
    };
    let Some(path) = cli.flags.config.as_deref() else {
        eprintln!("error: --config is required");
        return EXIT_CONFIG;
    };
    let result = ModelConfig::load(path).and_then(|cfg| execute(&cli.command, cfg, &cli.flags));
    let (report, outcome) = match result {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return if e.is_config() { EXIT_CONFIG } else { EXIT_FAIL };
        }
    };
    for c in &report.checks {
        eprintln!("{} {} residual={:e} tolerance={:e}", if c.pass { "PASS" } else { "FAIL" }, c.name, c.residual, c.tolerance);
    }
    let json = serde_json::to_string_pretty(&report).expect("reports serialize");
    match &cli.flags.out {
        Some(p) => {
            if let Err(e) = std::fs::write(p, json + "\n") {
                eprintln!("error: cannot write {}: {e}", p.display());
                return EXIT_FAIL;
            }
        }
        None => println!("{json}"),
    }
    if let Some(dir) = &cli.flags.emit_csv {
        if let Err(e) = write_csv(dir, &outcome) {
            eprintln!("error: cannot write CSV to {}: {e}", dir.display());
            return EXIT_FAIL;
        }
    }
    if report.pass {
        EXIT_PASS
    } else {
        EXIT_FAIL
    }
}
