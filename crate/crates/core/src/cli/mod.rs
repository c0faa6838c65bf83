//! Command-line front end: argument and config-file parsing, dispatch, CSV output.

pub mod args;
pub mod config;
pub mod output;

use std::collections::BTreeMap;
use std::f64::consts::TAU;
use std::ffi::OsString;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};

use clap::Parser;
use thiserror::Error;

use crate::experiments::{
    cesium_example, figure_data, sweep_ratio_both, sweep_single, Comparison, ExperimentError,
    Range, SweepAxis, SweepResult, WorkerPool, DEFAULT_DECAY_RANGE, DEFAULT_DETUNING_RANGE,
    DEFAULT_RATIO_RANGE, DEFAULT_REL_ERR_RANGE, DEFAULT_TIME_POINTS, MATCHED_RECT_RATIO,
};
use crate::gate::{run_gate, GateConfig, GateError, InitialState};
use crate::model::{magic_ratio, BasisIndex, ModelError, SystemParams};

pub use args::{AxisArg, Cli, Command, PulseArg, SystemArgs, Units};

/// Fidelity the `example` command must exceed.
pub const EXAMPLE_THRESHOLD: f64 = 0.98;
/// Default coupling in Hz for `--units hz`.
pub const DEFAULT_G_HZ: f64 = 2.0e6;

const SUBCOMMANDS: [&str; 4] = ["simulate", "sweep", "figures", "example"];

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Usage(#[from] clap::Error),
    #[error("config file {0}")]
    Config(String),
    #[error(transparent)]
    Experiment(#[from] ExperimentError),
    #[error(transparent)]
    Gate(#[from] GateError),
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error("invalid argument: {0}")]
    Invalid(String),
    #[error("{path}: {source}")]
    Io { path: String, source: io::Error },
    #[error("fidelity {0} does not exceed {EXAMPLE_THRESHOLD}")]
    BelowThreshold(f64),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(e) => e.exit_code(),
            _ => 1,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CommandKind {
    Simulate,
    Sweep,
    Figures,
    Example,
}

/// A fully resolved invocation: command-line flags merged over config-file values.
#[derive(Debug, Clone)]
pub struct RunManifest {
    pub command: CommandKind,
    pub config: Option<PathBuf>,
    /// Output file (`simulate`, `sweep`) or directory (`figures`); `None` means stdout.
    pub output: Option<PathBuf>,
    /// Values read from the config file, keyed by flag name.
    pub overrides: BTreeMap<String, String>,
    pub workers: usize,
    pub args: Command,
}

fn config_path(command: &Command) -> Option<&Path> {
    match command {
        Command::Simulate(a) => a.system.config.as_deref(),
        Command::Sweep(a) => a.system.config.as_deref(),
        Command::Figures(a) => a.config.as_deref(),
        Command::Example(a) => a.config.as_deref(),
    }
}

pub fn parse_args<I, T>(argv: I) -> Result<RunManifest, CliError>
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let argv: Vec<OsString> = argv.into_iter().map(Into::into).collect();
    let mut cli = Cli::try_parse_from(&argv)?;
    let config = config_path(&cli.command).map(Path::to_path_buf);
    let mut overrides = BTreeMap::new();

    if let Some(path) = &config {
        let entries = config::read_config(path)?;
        let at = argv
            .iter()
            .skip(1)
            .position(|a| SUBCOMMANDS.iter().any(|s| a == s))
            .map(|i| i + 1)
            .ok_or_else(|| CliError::Invalid("missing subcommand".into()))?;
        let mut merged = argv[..=at].to_vec();
        merged.extend(config::to_tokens(&entries));
        merged.extend_from_slice(&argv[at + 1..]);
        cli = Cli::try_parse_from(&merged).map_err(|e| {
            CliError::Config(format!("{}: {}", path.display(), e.to_string().trim_end()))
        })?;
        overrides.extend(entries);
    }

    let (command, output) = match &cli.command {
        Command::Simulate(a) => (CommandKind::Simulate, a.out.clone()),
        Command::Sweep(a) => (CommandKind::Sweep, a.out.clone()),
        Command::Figures(a) => (CommandKind::Figures, Some(a.out_dir.clone())),
        Command::Example(_) => (CommandKind::Example, None),
    };
    Ok(RunManifest {
        command,
        config,
        output: output.filter(|p| p.as_os_str() != "-"),
        overrides,
        workers: cli.workers,
        args: cli.command,
    })
}

/// Physical parameters in angular-frequency units, and whether the run is dissipative.
pub fn system_params(a: &SystemArgs) -> Result<(SystemParams, bool), CliError> {
    let (scale, default_g) = match a.units {
        Units::Dimensionless => (1.0, 1.0),
        Units::Hz => (TAU, DEFAULT_G_HZ),
    };
    let params = SystemParams {
        g: a.g.unwrap_or(default_g) * scale,
        delta2: a.delta2 * scale,
        polar_ratio: a.polar_ratio,
        gamma1: a.gamma1.or(a.gamma).unwrap_or(0.0) * scale,
        gamma2: a.gamma2.or(a.gamma).unwrap_or(0.0) * scale,
        kappa: a.kappa * scale,
    };
    params.validate()?;
    let dissipative = a.dissipative || !params.is_lossless();
    Ok((params, dissipative))
}

fn open_output(path: Option<&Path>) -> Result<Box<dyn Write>, CliError> {
    Ok(match path {
        None => Box::new(BufWriter::new(io::stdout().lock())),
        Some(p) => Box::new(BufWriter::new(File::create(p).map_err(|e| io_error(p, e))?)),
    })
}

fn io_error(path: &Path, source: io::Error) -> CliError {
    CliError::Io {
        path: path.display().to_string(),
        source,
    }
}

fn finish(
    mut w: Box<dyn Write>,
    path: Option<&Path>,
    written: io::Result<()>,
) -> Result<(), CliError> {
    let label = path.unwrap_or(Path::new("<stdout>"));
    match written.and_then(|_| w.flush()) {
        Err(e) if path.is_none() && e.kind() == io::ErrorKind::BrokenPipe => Ok(()),
        other => other.map_err(|e| io_error(label, e)),
    }
}

fn write_file(path: &Path, contents: &str) -> Result<(), CliError> {
    std::fs::write(path, contents).map_err(|e| io_error(path, e))
}

fn simulate(m: &RunManifest, a: &args::SimulateArgs) -> Result<(), CliError> {
    let (params, dissipative) = system_params(&a.system)?;
    let mut config = match a.pulse {
        PulseArg::Gaussian => {
            GateConfig::gsc(params, a.ratio.unwrap_or(crate::experiments::GSC_RATIO))
        }
        PulseArg::Rect => {
            GateConfig::rectangular(params, a.ratio.map_or_else(|| magic_ratio(1), Ok)?)
        }
    };
    if !(config.pulse.peak() > 0.0) || !config.pulse.peak().is_finite() {
        return Err(CliError::Invalid("--ratio must be positive".into()));
    }
    config.initial_state = match a.initial.as_str() {
        "product" => InitialState::ProductSuperposition,
        label => InitialState::Basis(
            BasisIndex::parse(label)
                .ok_or_else(|| CliError::Invalid(format!("unknown initial state `{label}`")))?,
        ),
    };
    config.dissipative = dissipative;
    config.duration_override = a.duration;
    let result = run_gate(&config)?;
    let mut w = open_output(m.output.as_deref())?;
    let written = output::write_trajectory(&mut w, &result);
    finish(w, m.output.as_deref(), written)
}

fn range_or(a: &args::SweepArgs, default: Range) -> Range {
    Range::new(
        a.min.unwrap_or(default.min),
        a.max.unwrap_or(default.max),
        a.points.unwrap_or(default.points),
    )
}

/// Runs the sweep described by `a`.
pub fn sweep_from_args(a: &args::SweepArgs, pool: &WorkerPool) -> Result<SweepResult, CliError> {
    let (params, dissipative) = system_params(&a.system)?;
    let comparison = |default_rect: f64| {
        let mut c = Comparison::new(params, a.gsc_ratio, a.rect_ratio.unwrap_or(default_rect));
        c.gsc.dissipative = dissipative;
        c.rect.dissipative = dissipative;
        c
    };
    let fastest = magic_ratio(1)?;
    let result = match a.axis {
        AxisArg::Ratio => sweep_ratio_both(range_or(a, DEFAULT_RATIO_RANGE), params, pool)?,
        AxisArg::RelErrT => comparison(fastest).sweep(
            SweepAxis::RelErrT,
            range_or(a, DEFAULT_REL_ERR_RANGE),
            pool,
        )?,
        AxisArg::RelErrG => comparison(fastest).sweep(
            SweepAxis::RelErrG,
            range_or(a, DEFAULT_REL_ERR_RANGE),
            pool,
        )?,
        AxisArg::Detuning => {
            let range = range_or(a, DEFAULT_DETUNING_RANGE);
            if a.rect_ratio.is_some() {
                comparison(fastest).sweep(SweepAxis::Detuning, range, pool)?
            } else {
                let base = GateConfig::gsc(params, a.gsc_ratio).with_dissipation(dissipative);
                sweep_single(SweepAxis::Detuning, range, base, pool)?
            }
        }
        AxisArg::Gamma => comparison(MATCHED_RECT_RATIO).sweep(
            SweepAxis::GammaDecay,
            range_or(a, DEFAULT_DECAY_RANGE),
            pool,
        )?,
        AxisArg::Kappa => comparison(MATCHED_RECT_RATIO).sweep(
            SweepAxis::KappaDecay,
            range_or(a, DEFAULT_DECAY_RANGE),
            pool,
        )?,
        AxisArg::Time => {
            let c = comparison(MATCHED_RECT_RATIO);
            let horizon = c.gsc.nominal_gate_time()?.max(c.rect.nominal_gate_time()?);
            c.sweep(
                SweepAxis::Time,
                range_or(a, Range::new(0.0, horizon, DEFAULT_TIME_POINTS)),
                pool,
            )?
        }
    };
    Ok(result)
}

fn sweep(m: &RunManifest, a: &args::SweepArgs) -> Result<(), CliError> {
    let result = sweep_from_args(a, &WorkerPool::with_workers(m.workers))?;
    let mut w = open_output(m.output.as_deref())?;
    let written = output::write_sweep(&mut w, &result);
    finish(w, m.output.as_deref(), written)
}

fn figures(m: &RunManifest) -> Result<(), CliError> {
    let dir = m.output.clone().unwrap_or_else(|| PathBuf::from("figures"));
    std::fs::create_dir_all(&dir).map_err(|e| io_error(&dir, e))?;
    let data = figure_data(&WorkerPool::with_workers(m.workers))?;

    let sweeps: [(&str, &str, &str, &SweepResult); 9] = [
        (
            "fig3",
            "Ideal fidelity vs coupling ratio",
            "g/Omega",
            &data.ratio,
        ),
        ("fig5", "Fidelity vs time", "g t", &data.trajectory),
        ("fig6a", "Gate-time error", "dT/T", &data.rel_err_time),
        ("fig6b", "Coupling error", "dg/g", &data.rel_err_coupling),
        ("fig7", "Stark detuning", "Delta_2/g", &data.detuning),
        (
            "fig8a",
            "Rydberg decay, matched gate time",
            "gamma/g",
            &data.gamma,
        ),
        (
            "fig8b",
            "Cavity decay, matched gate time",
            "kappa/g",
            &data.kappa,
        ),
        (
            "fig8a_fast",
            "Rydberg decay, fastest rectangular gate",
            "gamma/g",
            &data.gamma_fast,
        ),
        (
            "fig8b_fast",
            "Cavity decay, fastest rectangular gate",
            "kappa/g",
            &data.kappa_fast,
        ),
    ];
    for (name, title, xlabel, result) in sweeps {
        let csv = format!("{name}.csv");
        let mut buf = Vec::new();
        output::write_sweep(&mut buf, result).map_err(|e| io_error(&dir.join(&csv), e))?;
        write_file(&dir.join(&csv), std::str::from_utf8(&buf).expect("ascii"))?;
        write_file(
            &dir.join(format!("{name}.gp")),
            &output::sweep_script(&csv, title, xlabel, result),
        )?;
    }
    for (name, title, result) in [
        ("fig4a", "Populations from |1m1a>", &data.populations_11),
        ("fig4b", "Populations from |0m1a>", &data.populations_01),
    ] {
        let csv = format!("{name}.csv");
        let mut buf = Vec::new();
        output::write_trajectory(&mut buf, result).map_err(|e| io_error(&dir.join(&csv), e))?;
        write_file(&dir.join(&csv), std::str::from_utf8(&buf).expect("ascii"))?;
        write_file(
            &dir.join(format!("{name}.gp")),
            &output::trajectory_script(&csv, title),
        )?;
    }
    write_file(
        &dir.join("example.txt"),
        &format!("{}\n", output::format_value(data.cesium_fidelity)),
    )
}

fn example() -> Result<(), CliError> {
    let fidelity = cesium_example()?;
    println!("{}", output::format_value(fidelity));
    if fidelity > EXAMPLE_THRESHOLD {
        Ok(())
    } else {
        Err(CliError::BelowThreshold(fidelity))
    }
}

/// Executes a resolved manifest.
pub fn execute(m: &RunManifest) -> Result<(), CliError> {
    match &m.args {
        Command::Simulate(a) => simulate(m, a),
        Command::Sweep(a) => sweep(m, a),
        Command::Figures(_) => figures(m),
        Command::Example(_) => example(),
    }
}

/// Executes `m`, reporting failures on stderr; returns the process exit code.
pub fn run_manifest(m: &RunManifest) -> i32 {
    match execute(m) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("rydgate: {e}");
            e.exit_code()
        }
    }
}

pub fn main_with_args<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    match parse_args(argv) {
        Ok(m) => run_manifest(&m),
        Err(CliError::Usage(e)) => {
            let _ = e.print();
            e.exit_code()
        }
        Err(e) => {
            eprintln!("rydgate: {e}");
            e.exit_code()
        }
    }
}
