//! Command-line front end.

mod document;
mod output;

use std::f64::consts::PI;
use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};

pub use document::{parse_document, read_document, GeometryDocument, SetSpec, SCHEMA_VERSION};
pub use output::{Format, Table};
use output::{num, opt};

use crate::capacity::{riesz_energy, CapacityError, CapacityOptions, Grading, Resolutions};
use crate::energy::{
    charged_infimum, critical_thresholds, mist_configuration, multiball_energy_upper, nonexistence_witness,
    voltage_ball_infimum, BallConfiguration, EnergyError, EnergyReport, VoltageBallInfimum,
};
use crate::verify::{self, Fault, Profile, VerifyConfig, DEFAULT_SEED};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("input error: {0}")]
    Input(String),
    #[error("solver error: {0}")]
    Solver(String),
    #[error("infeasible construction: at least {minimal_count} satellite balls are needed")]
    Infeasible { minimal_count: usize },
    #[error("{failed} of {total} checks failed")]
    Verification { failed: usize, total: usize },
    #[error("output error: {0}")]
    Output(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Verification { .. } => 1,
            CliError::Input(_) | CliError::Output(_) => 2,
            CliError::Solver(_) => 3,
            CliError::Infeasible { .. } => 4,
        }
    }
}

impl From<CapacityError> for CliError {
    fn from(e: CapacityError) -> Self {
        match e {
            CapacityError::Geometry(g) => CliError::Input(g.to_string()),
            CapacityError::Resolution { .. }
            | CapacityError::TooFewCells { .. }
            | CapacityError::NoResolutions
            | CapacityError::TooFewResolutions(_)
            | CapacityError::NotGeometric => CliError::Input(e.to_string()),
            other => CliError::Solver(other.to_string()),
        }
    }
}

impl From<EnergyError> for CliError {
    fn from(e: EnergyError) -> Self {
        match e {
            EnergyError::Infeasible { minimal_count } => CliError::Infeasible { minimal_count },
            EnergyError::Capacity(c) => c.into(),
            other => CliError::Input(other.to_string()),
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "flatdrop", version, about = "Riesz capacities and charged flat-drop energies of planar sets")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Riesz energy of each set at every resolution.
    Capacity(CapacityArgs),
    /// Charged energy of each set, with the critical thresholds at its area.
    Energy(EnergyArgs),
    /// Energy and regime over a range of charge parameters.
    Sweep(SweepArgs),
    /// Many small far-apart balls sharing the charge.
    Mist(MistArgs),
    /// Competitor of fixed area beating every disk.
    Witness(WitnessArgs),
    /// Run the verification catalogue.
    Verify(VerifyArgs),
}

#[derive(Debug, Args)]
pub struct OutputArgs {
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    /// Write to this file instead of standard output.
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum GradingArg {
    Uniform,
    Boundary,
}

#[derive(Debug, Args)]
pub struct MeshArgs {
    /// Comma-separated absolute cell sizes, coarse to fine.
    #[arg(long, value_delimiter = ',')]
    pub resolutions: Option<Vec<f64>>,
    #[arg(long, value_enum)]
    pub grading: Option<GradingArg>,
    /// Report the Richardson limit (the default).
    #[arg(long, overrides_with = "no_extrapolate")]
    pub extrapolate: bool,
    /// Report the finest-mesh energy instead of the Richardson limit.
    #[arg(long)]
    pub no_extrapolate: bool,
}

impl MeshArgs {
    pub fn options(&self) -> CapacityOptions {
        let mut o = CapacityOptions::standard();
        if let Some(r) = &self.resolutions {
            o = o.with_resolutions(Resolutions::Absolute(r.clone()));
        }
        if let Some(g) = self.grading {
            o = o.with_grading(match g {
                GradingArg::Uniform => Grading::Uniform,
                GradingArg::Boundary => Grading::BoundaryGraded,
            });
        }
        o.with_extrapolation(!self.no_extrapolate)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    /// Fixed charge: perimeter plus lambda times the Riesz energy.
    #[value(name = "Q", alias = "q")]
    Q,
    /// Fixed voltage: perimeter minus lambda over the Riesz energy.
    #[value(name = "U", alias = "u")]
    U,
}

#[derive(Debug, Args)]
pub struct CapacityArgs {
    #[arg(long)]
    pub input: PathBuf,
    #[command(flatten)]
    pub mesh: MeshArgs,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Args)]
pub struct EnergyArgs {
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long)]
    pub lambda: f64,
    #[arg(long, value_enum, default_value_t = Mode::Q)]
    pub mode: Mode,
    #[command(flatten)]
    pub mesh: MeshArgs,
    #[command(flatten)]
    pub out: OutputArgs,
}

/// `LO:HI:STEPS`, evenly spaced and inclusive.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LambdaRange {
    pub lo: f64,
    pub hi: f64,
    pub steps: usize,
}

impl LambdaRange {
    pub fn values(&self) -> Vec<f64> {
        if self.steps == 1 {
            return vec![self.lo];
        }
        let d = (self.hi - self.lo) / (self.steps - 1) as f64;
        (0..self.steps).map(|i| if i + 1 == self.steps { self.hi } else { self.lo + d * i as f64 }).collect()
    }
}

impl FromStr for LambdaRange {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let parts: Vec<&str> = s.split(':').collect();
        let [lo, hi, steps] = parts.as_slice() else {
            return Err(format!("expected LO:HI:STEPS, got \"{s}\""));
        };
        let lo: f64 = lo.trim().parse().map_err(|e| format!("LO: {e}"))?;
        let hi: f64 = hi.trim().parse().map_err(|e| format!("HI: {e}"))?;
        let steps: usize = steps.trim().parse().map_err(|e| format!("STEPS: {e}"))?;
        if !(lo.is_finite() && hi.is_finite()) || lo <= 0.0 {
            return Err(format!("range bounds must be finite with LO > 0, got {lo}:{hi}"));
        }
        if hi < lo {
            return Err(format!("descending range {lo}:{hi}"));
        }
        if steps == 0 {
            return Err("STEPS must be at least 1".into());
        }
        Ok(Self { lo, hi, steps })
    }
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long, value_name = "LO:HI:STEPS")]
    pub lambda_range: LambdaRange,
    #[arg(long, value_enum, default_value_t = Mode::Q)]
    pub mode: Mode,
    #[command(flatten)]
    pub mesh: MeshArgs,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Args)]
pub struct MistArgs {
    #[arg(long)]
    pub lambda: f64,
    /// Number of balls.
    #[arg(long, short = 'n', default_value_t = 100)]
    pub count: usize,
    /// Distance between neighbouring centres.
    #[arg(long, default_value_t = 1e6)]
    pub separation: f64,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Args)]
pub struct WitnessArgs {
    /// Total area of the competitor.
    #[arg(long, default_value_t = PI)]
    pub area: f64,
    #[arg(long)]
    pub lambda: f64,
    /// Number of satellite balls.
    #[arg(long, short = 'n', default_value_t = 100)]
    pub count: usize,
    #[arg(long, default_value_t = 1e6)]
    pub separation: f64,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FaultArg {
    WrongDiskFormula,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long, default_value = "fast")]
    pub profile: Profile,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    /// Run only the named checks.
    #[arg(long = "check", value_name = "NAME")]
    pub checks: Vec<String>,
    /// Append a runtime column.
    #[arg(long)]
    pub timings: bool,
    #[arg(long, value_enum, hide = true)]
    pub inject_fault: Option<FaultArg>,
    #[command(flatten)]
    pub out: OutputArgs,
}

fn positive_lambda(lambda: f64) -> Result<f64, CliError> {
    if lambda.is_finite() && lambda > 0.0 {
        Ok(lambda)
    } else {
        Err(CliError::Input(format!("lambda must be positive and finite, got {lambda}")))
    }
}

fn emit(table: &Table, out: &OutputArgs) -> Result<(), CliError> {
    match &out.output {
        Some(path) => {
            let file = File::create(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
            let mut w = BufWriter::new(file);
            table.write(&mut w, out.format)?;
            w.flush()?;
        }
        None => table.write(std::io::stdout().lock(), out.format)?,
    }
    Ok(())
}

fn cmd_capacity(args: &CapacityArgs) -> Result<(), CliError> {
    let sets = read_document(&args.input)?;
    let opts = args.mesh.options();
    let mut t = Table::new(&["set", "h", "cells", "energy", "extrapolated", "p", "residual"]);
    for (name, set) in &sets {
        let r = riesz_energy(set, &opts)?;
        for s in &r.samples {
            t.push(vec![
                name.clone(),
                num(s.h),
                s.cells.to_string(),
                num(s.energy),
                num(r.extrapolated),
                opt(r.order),
                num(s.residual),
            ]);
        }
    }
    emit(&t, &args.out)
}

fn mode_energy(r: &EnergyReport, mode: Mode) -> f64 {
    match mode {
        Mode::Q => r.energy_q,
        Mode::U => r.energy_u,
    }
}

fn cmd_energy(args: &EnergyArgs) -> Result<(), CliError> {
    let lambda = positive_lambda(args.lambda)?;
    let sets = read_document(&args.input)?;
    let opts = args.mesh.options();
    let mut t = Table::new(&[
        "set",
        "perimeter",
        "area",
        "I1",
        "lambda",
        "mode",
        "energy",
        "lambda0_q",
        "lambda_c1_q",
        "lambda_c2_q",
        "lambda0_u",
    ]);
    for (name, set) in &sets {
        let riesz = riesz_energy(set, &opts)?.extrapolated;
        let r = EnergyReport::from_parts(set.perimeter(), set.area(), riesz, lambda);
        let th = critical_thresholds(r.area)?;
        t.push(vec![
            name.clone(),
            num(r.perimeter),
            num(r.area),
            num(r.riesz),
            num(lambda),
            format!("{:?}", args.mode),
            num(mode_energy(&r, args.mode)),
            num(th.lambda0_q),
            num(th.lambda_c1_q),
            num(th.lambda_c2_q),
            num(th.lambda0_u),
        ]);
    }
    emit(&t, &args.out)
}

fn voltage_label(v: VoltageBallInfimum) -> &'static str {
    match v {
        VoltageBallInfimum::ZeroNotAttained => "below-lambda0u",
        VoltageBallInfimum::ZeroAttainedEverywhere => "at-lambda0u",
        VoltageBallInfimum::Unbounded => "past-lambda0u",
    }
}

fn cmd_sweep(args: &SweepArgs) -> Result<(), CliError> {
    let sets = read_document(&args.input)?;
    let opts = args.mesh.options();
    let mut t = Table::new(&["set", "lambda", "energy", "regime"]);
    for (name, set) in &sets {
        let riesz = riesz_energy(set, &opts)?.extrapolated;
        let th = critical_thresholds(set.area())?;
        for lambda in args.lambda_range.values() {
            let r = EnergyReport::from_parts(set.perimeter(), set.area(), riesz, lambda);
            let regime = match args.mode {
                Mode::Q => th.regime(lambda).label(),
                Mode::U => voltage_label(voltage_ball_infimum(lambda)),
            };
            t.push(vec![name.clone(), num(lambda), num(mode_energy(&r, args.mode)), regime.into()]);
        }
    }
    emit(&t, &args.out)
}

const BALL_HEADER: [&str; 9] = ["row", "x", "y", "radius", "charge", "theta", "bound", "gap", "relative_gap"];

fn ball_table(cfg: &BallConfiguration, lambda: f64, theta: Option<f64>) -> Table {
    let mut t = Table::new(&BALL_HEADER);
    for (i, b) in cfg.balls().iter().enumerate() {
        let mut row = vec![i.to_string(), num(b.center.x), num(b.center.y), num(b.radius), num(b.charge)];
        row.resize(BALL_HEADER.len(), String::new());
        t.push(row);
    }
    let bound = multiball_energy_upper(cfg, lambda);
    let floor = charged_infimum(lambda);
    let mut summary = vec!["summary".to_string()];
    summary.resize(5, String::new());
    summary.extend([opt(theta), num(bound), num(bound - floor), num(bound / floor - 1.0)]);
    t.push(summary);
    t
}

fn cmd_mist(args: &MistArgs) -> Result<(), CliError> {
    let lambda = positive_lambda(args.lambda)?;
    let cfg = mist_configuration(lambda, args.count, args.separation)?;
    emit(&ball_table(&cfg, lambda, None), &args.out)
}

fn cmd_witness(args: &WitnessArgs) -> Result<(), CliError> {
    let lambda = positive_lambda(args.lambda)?;
    let w = nonexistence_witness(args.area, lambda, args.count, args.separation)?;
    emit(&ball_table(&w.configuration, lambda, Some(w.theta)), &args.out)
}

fn cmd_verify(args: &VerifyArgs) -> Result<(), CliError> {
    let config = VerifyConfig {
        profile: args.profile,
        seed: args.seed,
        fault: args.inject_fault.map(|f| match f {
            FaultArg::WrongDiskFormula => Fault::WrongDiskFormula,
        }),
    };
    let results = if args.checks.is_empty() {
        verify::run_all(&config)
    } else {
        let mut v = Vec::new();
        for name in &args.checks {
            v.push(verify::run_check(name, &config).map_err(|e| CliError::Input(e.to_string()))?);
        }
        v
    };
    let mut t = Table::new(if args.timings { &verify::REPORT_HEADER_TIMED } else { &verify::REPORT_HEADER });
    for r in &results {
        t.push(verify::report_row(r, args.timings));
    }
    emit(&t, &args.out)?;
    let failed = results.iter().filter(|r| !r.passed()).count();
    if failed > 0 {
        return Err(CliError::Verification { failed, total: results.len() });
    }
    Ok(())
}

pub fn run(cli: &Cli) -> Result<(), CliError> {
    match &cli.command {
        Command::Capacity(a) => cmd_capacity(a),
        Command::Energy(a) => cmd_energy(a),
        Command::Sweep(a) => cmd_sweep(a),
        Command::Mist(a) => cmd_mist(a),
        Command::Witness(a) => cmd_witness(a),
        Command::Verify(a) => cmd_verify(a),
    }
}

/// Parses the process arguments, runs the command and maps errors to exit codes.
pub fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("flatdrop: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
