use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use pellkit::christoffel::{christoffel_inverse_poly, grid_csv, pstar_density};
use pellkit::maxdet::{extension_sweep, solve_set, SolverConfig};
use pellkit::measures::{MeasureModel, SampleBudget, MODEL_KEYS};
use pellkit::momkit::{GeneratorSet, MomentSequence};
use pellkit::mvpoly::Poly;
use pellkit::pellcheck::{chebyshev_pell_identity, generalized_pell_residual, DEFAULT_TOLERANCE};
use pellkit::sets::{builtin, builtin_definition, SetDefinition, BUILTIN_SETS};
use pellkit::Error;

#[derive(Parser)]
#[command(name = "pellkit", version, about = "Christoffel functions, moment matrices and generalized Pell identities")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Source {
    /// Closed-form moments of the set's known equilibrium measure.
    Model,
    /// Optimum of the log-det program at order t.
    Solver,
}

#[derive(Clone, Copy, ValueEnum)]
enum Surface {
    /// vᵀ M_t(φ)⁻¹ v
    Christoffel,
    /// normalized sum over generators
    Pstar,
}

#[derive(clap::Args)]
struct SolverArgs {
    #[arg(long, env = "PELLKIT_MAX_ITER", default_value_t = 200)]
    max_iter: usize,
    /// Seed for the sampled feasible start.
    #[arg(long, env = "PELLKIT_SEED", default_value_t = SampleBudget::default().seed)]
    seed: u64,
    #[arg(long, default_value_t = SampleBudget::default().samples)]
    samples: usize,
}

impl SolverArgs {
    fn config(&self, tol: f64) -> SolverConfig {
        SolverConfig { tol, max_iter: self.max_iter, budget: SampleBudget { samples: self.samples, seed: self.seed } }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Moments up to degree 2t of a known measure.
    Moments {
        /// Model key (interval, box2d, ball2d, simplex2d, gaussian2d).
        #[arg(long, conflicts_with = "set", required_unless_present = "set")]
        model: Option<String>,
        /// Built-in set name or set-definition file with a known measure.
        #[arg(long)]
        set: Option<String>,
        #[arg(long)]
        t: u32,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check the generalized Pell identity at order t; exit 0 iff it holds.
    Verify {
        #[arg(long)]
        set: String,
        #[arg(long)]
        t: u32,
        #[arg(long, value_enum, default_value = "model")]
        source: Source,
        /// Largest admissible residual coefficient.
        #[arg(long, default_value_t = DEFAULT_TOLERANCE)]
        tol: f64,
        /// Solver stopping tolerance, with --source solver.
        #[arg(long, env = "PELLKIT_TOL", default_value_t = NEWTON_TOL)]
        newton_tol: f64,
        #[command(flatten)]
        solver: SolverArgs,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Solve the log-det program at order t.
    Solve {
        #[arg(long)]
        set: String,
        #[arg(long)]
        t: u32,
        /// Stop when half the squared Newton decrement drops below this.
        #[arg(long, env = "PELLKIT_TOL", default_value_t = NEWTON_TOL)]
        tol: f64,
        #[command(flatten)]
        solver: SolverArgs,
        /// Include the Newton iteration log.
        #[arg(long)]
        trace: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Solve each order in a range and compare consecutive optima.
    Extension {
        #[arg(long)]
        set: String,
        #[arg(long)]
        t_from: u32,
        #[arg(long)]
        t_to: u32,
        /// Distances at or below this count as an extension.
        #[arg(long, default_value_t = pellkit::maxdet::EXTENSION_TOL)]
        extension_tol: f64,
        /// Stop when half the squared Newton decrement drops below this.
        #[arg(long, env = "PELLKIT_TOL", default_value_t = NEWTON_TOL)]
        tol: f64,
        #[command(flatten)]
        solver: SolverArgs,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Exact check of T_n² + (1−x²)U_{n−1}² = 1.
    Cheb {
        #[arg(long)]
        n: u32,
        /// Check every order from 1 to n.
        #[arg(long)]
        all: bool,
    },
    /// Sample a Christoffel polynomial or p*_t on a grid, as CSV.
    Grid {
        #[arg(long)]
        set: String,
        #[arg(long)]
        t: u32,
        #[arg(long, value_enum, default_value = "model")]
        source: Source,
        #[arg(long, value_enum, default_value = "christoffel")]
        surface: Surface,
        #[arg(long, default_value_t = -1.5, allow_hyphen_values = true)]
        lo: f64,
        #[arg(long, default_value_t = 1.5, allow_hyphen_values = true)]
        hi: f64,
        #[arg(long, default_value_t = 101)]
        resolution: usize,
        /// Stop when half the squared Newton decrement drops below this.
        #[arg(long, env = "PELLKIT_TOL", default_value_t = NEWTON_TOL)]
        tol: f64,
        #[command(flatten)]
        solver: SolverArgs,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print a built-in set in the set-definition file format.
    ShowSet {
        /// One of the built-in names; omit to list them.
        name: Option<String>,
    },
}

enum Failure {
    /// Check ran and did not pass.
    Verified,
    Usage(String),
    Numerical(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::UnknownModel(_)
            | Error::Parse(_)
            | Error::Invalid(_)
            | Error::DimensionMismatch { .. }
            | Error::DegreeOverflow { .. }
            | Error::OrderTooSmall { .. }
            | Error::InvalidStep(_) => Failure::Usage(e.to_string()),
            _ => Failure::Numerical(e.to_string()),
        }
    }
}

type CmdResult = Result<(), Failure>;

const NEWTON_TOL: f64 = 1e-10;

fn load_set(arg: &str) -> Result<(GeneratorSet, Option<MeasureModel>), Failure> {
    if BUILTIN_SETS.contains(&arg) {
        return Ok(builtin(arg)?);
    }
    let path = Path::new(arg);
    if !path.exists() {
        return Err(Failure::Usage(format!(
            "`{arg}` is neither a built-in set ({}) nor a file",
            BUILTIN_SETS.join(", ")
        )));
    }
    let text = fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{arg}: {e}")))?;
    let def = SetDefinition::from_json(&text)?;
    Ok((def.build()?, def.known_model()?))
}

fn emit(text: &str, out: Option<&Path>) -> Result<(), Failure> {
    match out {
        Some(p) => fs::write(p, text).map_err(|e| Failure::Usage(format!("{}: {e}", p.display()))),
        None => {
            let mut stdout = io::stdout().lock();
            match writeln!(stdout, "{}", text.trim_end()) {
                Err(e) if e.kind() != io::ErrorKind::BrokenPipe => Err(Failure::Usage(format!("stdout: {e}"))),
                _ => Ok(()),
            }
        }
    }
}

fn json<T: serde::Serialize>(v: &T) -> String {
    serde_json::to_string_pretty(v).expect("reports always serialize")
}

/// Exact sequence for closed-form models, floating otherwise.
enum Moments {
    Exact(MomentSequence<pellkit::mvpoly::Rational>),
    Float(MomentSequence<f64>),
}

fn model_moments(model: &MeasureModel, order: u32) -> Result<Moments, Failure> {
    Ok(if model.has_exact_moments() {
        Moments::Exact(model.exact_sequence(order)?)
    } else {
        Moments::Float(model.sequence(order)?)
    })
}

fn require_model(set: &GeneratorSet, model: Option<MeasureModel>) -> Result<MeasureModel, Failure> {
    model.ok_or_else(|| {
        Failure::Usage(format!("set `{}` has no known measure; use --source solver", set.name()))
    })
}

fn cmd_moments(model: Option<String>, set: Option<String>, t: u32, format: Format, out: Option<PathBuf>) -> CmdResult {
    let model = match (model, set) {
        (Some(key), _) => MeasureModel::from_key(&key).map_err(|_| {
            Failure::Usage(format!("unknown model `{key}`; expected one of {}", MODEL_KEYS.join(", ")))
        })?,
        (None, Some(s)) => {
            let (set, model) = load_set(&s)?;
            require_model(&set, model)?
        }
        (None, None) => return Err(Failure::Usage("one of --model or --set is required".into())),
    };
    let table = match model_moments(&model, 2 * t)? {
        Moments::Exact(m) => m.to_exact_table(),
        Moments::Float(m) => m.to_table(),
    };
    let text = match format {
        Format::Json => json(&table),
        Format::Csv => table.to_csv(),
    };
    emit(&text, out.as_deref())
}

#[allow(clippy::too_many_arguments)]
fn cmd_verify(set: String, t: u32, source: Source, tol: f64, newton_tol: f64, solver: SolverArgs, out: Option<PathBuf>) -> CmdResult {
    let (set, model) = load_set(&set)?;
    let report = match source {
        Source::Model => match model_moments(&require_model(&set, model)?, 2 * t)? {
            Moments::Exact(phi) => generalized_pell_residual(&set, &phi, t, tol)?.0,
            Moments::Float(phi) => generalized_pell_residual(&set, &phi, t, tol)?.0,
        },
        Source::Solver => {
            let r = solve_set(&set, t, &solver.config(newton_tol))?;
            generalized_pell_residual(&set, &r.phi, t, tol)?.0
        }
    };
    emit(&json(&report), out.as_deref())?;
    if report.pass {
        Ok(())
    } else {
        Err(Failure::Verified)
    }
}

fn cmd_solve(set: String, t: u32, tol: f64, solver: SolverArgs, trace: bool, out: Option<PathBuf>) -> CmdResult {
    let (set, _) = load_set(&set)?;
    let report = solve_set(&set, t, &solver.config(tol))?;
    emit(&json(&report.to_json(trace)), out.as_deref())
}

#[allow(clippy::too_many_arguments)]
fn cmd_extension(
    set: String,
    t_from: u32,
    t_to: u32,
    extension_tol: f64,
    tol: f64,
    solver: SolverArgs,
    format: Format,
    out: Option<PathBuf>,
) -> CmdResult {
    if t_from > t_to {
        return Err(Failure::Usage(format!("--t-from ({t_from}) exceeds --t-to ({t_to})")));
    }
    let (set, _) = load_set(&set)?;
    let table = extension_sweep(&set, t_from, t_to, &solver.config(tol), extension_tol)?;
    let text = match format {
        Format::Json => json(&table),
        Format::Csv => table.to_csv(),
    };
    emit(&text, out.as_deref())?;
    match &table.aborted {
        Some(a) => Err(Failure::Numerical(format!("sweep aborted at t = {}: {}", a.t, a.error))),
        None => Ok(()),
    }
}

fn cmd_cheb(n: u32, all: bool) -> CmdResult {
    if n == 0 {
        return Err(Failure::Usage("--n must be at least 1".into()));
    }
    let orders: Vec<u32> = if all { (1..=n).collect() } else { vec![n] };
    let failing: Vec<u32> = orders.iter().copied().filter(|&k| !chebyshev_pell_identity(k).is_zero()).collect();
    let report = serde_json::json!({
        "orders": orders,
        "identity_holds": failing.is_empty(),
        "failing": failing,
    });
    emit(&json(&report), None)?;
    if failing.is_empty() {
        Ok(())
    } else {
        Err(Failure::Verified)
    }
}

#[allow(clippy::too_many_arguments)]
fn cmd_grid(
    set: String,
    t: u32,
    source: Source,
    surface: Surface,
    lo: f64,
    hi: f64,
    resolution: usize,
    tol: f64,
    solver: SolverArgs,
    out: Option<PathBuf>,
) -> CmdResult {
    let (set, model) = load_set(&set)?;
    let phi = match source {
        Source::Model => require_model(&set, model)?.sequence(2 * t)?,
        Source::Solver => solve_set(&set, t, &solver.config(tol))?.phi,
    };
    let poly: Poly<f64> = match surface {
        Surface::Christoffel => christoffel_inverse_poly(&phi.moment_matrix(t)?)?.poly,
        Surface::Pstar => pstar_density(&set, &phi, t)?,
    };
    emit(&grid_csv(&poly, lo, hi, resolution)?, out.as_deref())
}

fn cmd_show_set(name: Option<String>) -> CmdResult {
    match name {
        None => emit(&BUILTIN_SETS.join("\n"), None),
        Some(n) => emit(&builtin_definition(&n)?.to_json(), None),
    }
}

fn run(cli: Cli) -> CmdResult {
    match cli.command {
        Command::Moments { model, set, t, format, out } => cmd_moments(model, set, t, format, out),
        Command::Verify { set, t, source, tol, newton_tol, solver, out } => {
            cmd_verify(set, t, source, tol, newton_tol, solver, out)
        }
        Command::Solve { set, t, tol, solver, trace, out } => cmd_solve(set, t, tol, solver, trace, out),
        Command::Extension { set, t_from, t_to, extension_tol, tol, solver, format, out } => {
            cmd_extension(set, t_from, t_to, extension_tol, tol, solver, format, out)
        }
        Command::Cheb { n, all } => cmd_cheb(n, all),
        Command::Grid { set, t, source, surface, lo, hi, resolution, tol, solver, out } => {
            cmd_grid(set, t, source, surface, lo, hi, resolution, tol, solver, out)
        }
        Command::ShowSet { name } => cmd_show_set(name),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verified) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Numerical(msg)) => {
            eprintln!("numerical failure: {msg}");
            ExitCode::from(3)
        }
    }
}
