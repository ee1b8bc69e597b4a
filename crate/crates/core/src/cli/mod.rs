//! Command-line front end: each subcommand writes one static table or
//! report. Exit codes are 0 on success, 2 for invalid input, 3 when a
//! numerical procedure fails, 1 for I/O failures.

mod output;

use std::fmt::Write as _;
use std::fs::File;
use std::io::BufReader;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::dynamics::{
    dissipative_flows, log1p_grid, uniform_grid, Channel, DephasingChannel, DissipativeChannel, OhmicParams,
};
use crate::error::{Error, Result};
use crate::nonmarkov::dephasing::s_grid;
use crate::nonmarkov::{
    measure_general, negative_rate_windows, nq_of_s, sweep, sweep_table, Alpha, Functional, MeasureConfig,
    MeasureResult, Optimizer, SignIntervals,
};
use crate::qubit::{is_incoherent_sufficient, is_unital_sufficient, load_terms, BlochState, FieldVector, DEFAULT_CHECK_TOL};
use crate::table::DEFAULT_PRECISION;
use crate::thermo::{accumulate_constant, dephasing_heat};

pub use output::write_atomically;

#[derive(Debug, Parser)]
#[command(name = "qthermo", version, about = "Qubit thermodynamics and non-Markovianity measures")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Thermodynamic trajectory of the σ_x dissipative channel.
    Dissipative(DissipativeArgs),
    /// Thermodynamic trajectory of the Ohmic σ_z dephasing channel.
    Dephasing(DephasingArgs),
    /// Heat and coherence measures of the dephasing channel.
    Measure(MeasureArgs),
    /// Sufficient unital/incoherent conditions for Lindblad operators.
    Check(CheckArgs),
}

#[derive(Debug, Clone, Args)]
pub struct OutputArgs {
    /// Output path, or `-` for standard output.
    #[arg(long, default_value = "-")]
    pub out: String,
    /// Significant digits of numeric output (17: shortest exact round-trip form).
    #[arg(long, default_value_t = DEFAULT_PRECISION)]
    pub precision: usize,
}

#[derive(Debug, Clone, Args)]
pub struct DissipativeArgs {
    /// Relaxation rate γ.
    #[arg(long, default_value_t = 0.1)]
    pub gamma: f64,
    /// Level splitting ω₀ (H = ω₀σ_z).
    #[arg(long, default_value_t = 1.0)]
    pub omega0: f64,
    /// Initial Bloch vector `x,y,z`.
    #[arg(long, default_value = "0.5,0,0.5")]
    pub r0: String,
    #[arg(long, default_value_t = 50.0)]
    pub t_max: f64,
    /// Number of output samples.
    #[arg(long, default_value_t = 2000)]
    pub steps: usize,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct DephasingArgs {
    /// Ohmicity s.
    #[arg(long, default_value_t = 3.5)]
    pub s: f64,
    /// Bath cutoff ω_c.
    #[arg(long, default_value_t = 1.0)]
    pub omega_c: f64,
    #[arg(long, default_value_t = 1.0)]
    pub omega0: f64,
    /// Initial purity, used with --z0 when --r0 is absent.
    #[arg(long, default_value_t = 1.0)]
    pub purity: f64,
    /// Initial z component, used with --purity when --r0 is absent.
    #[arg(long, default_value_t = 0.05)]
    pub z0: f64,
    /// Initial Bloch vector `x,y,z`; overrides --purity and --z0.
    #[arg(long)]
    pub r0: Option<String>,
    #[arg(long, default_value_t = 10.0)]
    pub t_max: f64,
    #[arg(long, default_value_t = 2000)]
    pub steps: usize,
    /// Report x and y in the laboratory frame instead of the co-rotating one.
    #[arg(long)]
    pub lab_frame: bool,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FunctionalArg {
    Heat,
    Work,
    Coherence,
    Entropy,
}

impl From<FunctionalArg> for Functional {
    fn from(f: FunctionalArg) -> Self {
        match f {
            FunctionalArg::Heat => Functional::Heat,
            FunctionalArg::Work => Functional::Work,
            FunctionalArg::Coherence => Functional::Coherence,
            FunctionalArg::Entropy => Functional::Entropy,
        }
    }
}

#[derive(Debug, Clone, Args)]
pub struct MeasureArgs {
    #[arg(long, default_value_t = 0.0)]
    pub s_min: f64,
    #[arg(long, default_value_t = 8.0)]
    pub s_max: f64,
    #[arg(long, default_value_t = 0.05)]
    pub s_step: f64,
    #[arg(long, default_value_t = 1.0)]
    pub omega_c: f64,
    #[arg(long, default_value_t = 1.0)]
    pub omega0: f64,
    /// Worker threads for the sweep and state search.
    #[arg(long, default_value_t = default_jobs())]
    pub jobs: usize,
    /// `csv`: sweep table over s. `json`: one report at --s.
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    /// Ohmicity for the JSON report.
    #[arg(long, default_value_t = 3.5)]
    pub s: f64,
    /// JSON report: search initial states numerically for this functional
    /// instead of using the closed-form heat measure.
    #[arg(long, value_enum)]
    pub general: Option<FunctionalArg>,
    /// Refinement passes of the numerical state search.
    #[arg(long, default_value_t = 1)]
    pub refinements: usize,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct CheckArgs {
    /// JSON array of Lindblad terms.
    pub operators: PathBuf,
    #[arg(long, default_value_t = 1.0)]
    pub omega0: f64,
    #[arg(long, default_value_t = DEFAULT_CHECK_TOL)]
    pub tol: f64,
    #[command(flatten)]
    pub output: OutputArgs,
}

fn default_jobs() -> usize {
    std::thread::available_parallelism().map_or(1, |n| n.get())
}

/// Parse `x,y,z` as a Bloch vector.
pub fn parse_state(flag: &'static str, text: &str) -> Result<BlochState> {
    let parts: Vec<&str> = text.split(',').map(str::trim).collect();
    if parts.len() != 3 {
        return Err(Error::param(flag, format!("expected three comma-separated numbers, got `{text}`")));
    }
    let mut v = [0.0; 3];
    for (slot, p) in v.iter_mut().zip(&parts) {
        *slot = p.parse().map_err(|_| Error::param(flag, format!("`{p}` is not a number")))?;
    }
    BlochState::new(v[0], v[1], v[2]).map_err(|e| Error::param(flag, e.to_string()))
}

fn positive(flag: &'static str, v: f64) -> Result<f64> {
    if v > 0.0 && v.is_finite() {
        Ok(v)
    } else {
        Err(Error::param(flag, format!("must be finite and > 0, got {v}")))
    }
}

fn check_steps(steps: usize) -> Result<usize> {
    if steps < 2 {
        return Err(Error::param("steps", format!("must be ≥ 2, got {steps}")));
    }
    Ok(steps)
}

fn check_precision(p: usize) -> Result<usize> {
    if !(1..=17).contains(&p) {
        return Err(Error::param("precision", format!("must be between 1 and 17, got {p}")));
    }
    Ok(p)
}

fn same_state(a: BlochState, b: BlochState) -> bool {
    (a.vec() - b.vec()).norm() < 1e-12
}

pub fn cmd_dissipative(args: &DissipativeArgs) -> Result<()> {
    let gamma = positive("gamma", args.gamma)?;
    let omega0 = positive("omega0", args.omega0)?;
    let t_max = positive("t-max", args.t_max)?;
    let steps = check_steps(args.steps)?;
    let precision = check_precision(args.output.precision)?;
    let r0 = parse_state("r0", &args.r0)?;
    let ch = DissipativeChannel::new(gamma, omega0)?;
    let grid = uniform_grid(t_max, steps);
    let thermo = accumulate_constant(&ch.trajectory(r0, &grid)?, ch.field())?;
    let mut table = thermo.to_table();
    if same_state(r0, BlochState::new(0.5, 0.0, 0.5)?) {
        let flows: Vec<(f64, f64)> = grid.iter().map(|&t| dissipative_flows(t, gamma, omega0)).collect();
        table.push_column("Qdot_ent", flows.iter().map(|f| f.0).collect())?;
        table.push_column("Cdot", flows.iter().map(|f| f.1).collect())?;
    }
    write_atomically(&args.output.out, |w| table.write_csv(w, precision))
}

pub fn cmd_dephasing(args: &DephasingArgs) -> Result<()> {
    let omega0 = positive("omega0", args.omega0)?;
    let t_max = positive("t-max", args.t_max)?;
    let steps = check_steps(args.steps)?;
    let precision = check_precision(args.output.precision)?;
    let p = OhmicParams::new(args.s, args.omega_c)?;
    let r0 = match &args.r0 {
        Some(text) => parse_state("r0", text)?,
        None => {
            if !(args.purity > 0.0 && args.purity <= 1.0) {
                return Err(Error::param("purity", format!("must be in (0, 1], got {}", args.purity)));
            }
            if !(args.z0.abs() <= args.purity) {
                return Err(Error::param("z0", format!("|z0| must not exceed the purity {}", args.purity)));
            }
            BlochState::new((args.purity.powi(2) - args.z0.powi(2)).sqrt(), 0.0, args.z0)?
        }
    };
    let ch = DephasingChannel::new(p, omega0)?;
    let grid = uniform_grid(t_max, steps);
    let states = grid
        .iter()
        .map(|&t| if args.lab_frame { ch.lab_state(t, r0) } else { ch.state(t, r0) })
        .collect::<Result<Vec<_>>>()?;
    let traj = crate::dynamics::Trajectory::new(grid.clone(), states)?;
    let thermo = accumulate_constant(&traj, ch.field())?;
    let mut table = thermo.to_table();
    let purity = r0.purity();
    let z_r0 = r0.z_r().unwrap_or(0.0);
    let closed = grid
        .iter()
        .map(|&t| Ok(dephasing_heat(ch.attenuation(t)?, z_r0, purity, omega0)))
        .collect::<Result<Vec<_>>>()?;
    table.push_column("Q_closed", closed)?;
    write_atomically(&args.output.out, |w| table.write_csv(w, precision))
}

fn pool(jobs: usize) -> Result<rayon::ThreadPool> {
    if jobs == 0 {
        return Err(Error::param("jobs", "must be ≥ 1"));
    }
    rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| Error::param("jobs", e.to_string()))
}

/// Time grid used for numerical measures of the dephasing channel.
pub fn dephasing_measure_grid(omega_c: f64) -> Vec<f64> {
    log1p_grid(omega_c, 1e6 / omega_c, 4000)
}

fn closed_form_report(p: OhmicParams, omega0: f64) -> Result<MeasureResult> {
    let nq = nq_of_s(p, omega0)?;
    Ok(MeasureResult {
        value: nq.n_q,
        optimizer: Optimizer::AbsZ0(nq.z_max.unwrap_or(0.0)),
        intervals: SignIntervals::new(negative_rate_windows(p))?,
        // a state with z₀ > 0 loses heat while it dephases
        alpha: Alpha::Decreasing,
    })
}

pub fn cmd_measure(args: &MeasureArgs) -> Result<()> {
    let omega0 = positive("omega0", args.omega0)?;
    let omega_c = positive("omega-c", args.omega_c)?;
    let precision = check_precision(args.output.precision)?;
    let pool = pool(args.jobs)?;
    match args.format {
        Format::Csv => {
            let grid = s_grid(args.s_min, args.s_max, args.s_step)?;
            let rows = pool.install(|| sweep(&grid, omega_c, omega0))?;
            let table = sweep_table(&rows);
            write_atomically(&args.output.out, |w| table.write_csv(w, precision))
        }
        Format::Json => {
            let p = OhmicParams::new(args.s, omega_c)?;
            let report = match args.general {
                None => closed_form_report(p, omega0)?,
                Some(f) => {
                    let f = Functional::from(f);
                    let ch = DephasingChannel::new(p, omega0)?;
                    let mut cfg = MeasureConfig::new(dephasing_measure_grid(omega_c));
                    cfg.search.refinements = args.refinements;
                    pool.install(|| measure_general(&ch, f, f.default_alpha_rule(), &cfg))?
                }
            };
            let json = report_json(&report, precision)?;
            write_atomically(&args.output.out, |w| Ok(writeln!(w, "{json}")?))
        }
    }
}

/// Serialise a report, rounding every number to `precision` significant
/// digits. Infinite interval ends become `null`.
pub fn report_json(report: &MeasureResult, precision: usize) -> Result<String> {
    let mut v = serde_json::to_value(report)?;
    round_json(&mut v, precision);
    Ok(serde_json::to_string_pretty(&v)?)
}

fn round_json(v: &mut serde_json::Value, precision: usize) {
    use serde_json::Value;
    match v {
        Value::Number(n) => {
            if let Some(x) = n.as_f64().filter(|_| n.is_f64()) {
                let rounded: f64 = crate::table::format_number(x, precision).parse().unwrap_or(x);
                if let Some(r) = serde_json::Number::from_f64(rounded) {
                    *n = r;
                }
            }
        }
        Value::Array(a) => a.iter_mut().for_each(|x| round_json(x, precision)),
        Value::Object(o) => o.values_mut().for_each(|x| round_json(x, precision)),
        _ => {}
    }
}

pub fn cmd_check(args: &CheckArgs) -> Result<()> {
    let omega0 = positive("omega0", args.omega0)?;
    let tol = positive("tol", args.tol)?;
    let file = File::open(&args.operators)?;
    let terms = load_terms(BufReader::new(file))?;
    let field = FieldVector::z_splitting(omega0);
    let mut report = String::new();
    let yes_no = |b: bool| if b { "yes" } else { "no" };
    for (i, (_, term)) in terms.iter().enumerate() {
        let one = std::slice::from_ref(term);
        let unital = is_unital_sufficient(one, tol);
        let incoherent = is_incoherent_sufficient(one, field, tol)?;
        writeln!(
            report,
            "term {i}: unital-sufficient {}, incoherent-sufficient {}",
            yes_no(unital),
            yes_no(incoherent)
        )
        .expect("writing to a String");
    }
    write_atomically(&args.output.out, |w| Ok(w.write_all(report.as_bytes())?))
}

/// Exit status for an error: 3 for numerical failures, 1 for I/O, 2 for
/// everything caused by the input.
pub fn exit_code(err: &Error) -> u8 {
    if err.is_numerical() {
        3
    } else if matches!(err, Error::Io(_)) {
        1
    } else {
        2
    }
}

pub fn run(cli: Cli) -> ExitCode {
    let result = match &cli.command {
        Command::Dissipative(a) => cmd_dissipative(a),
        Command::Dephasing(a) => cmd_dephasing(a),
        Command::Measure(a) => cmd_measure(a),
        Command::Check(a) => cmd_check(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
