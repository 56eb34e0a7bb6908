mod render;

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use wywitness::criteria::{ComparisonRow, CriterionId, Evaluator};
use wywitness::matcore::{random, DensityMatrix};
use wywitness::scan::{Grid, ObservablePair, Sweep, ThresholdSearch, DEFAULT_BRACKET_TOL};
use wywitness::states::{load_state_file, FamilyId, StateSpec};
use wywitness::{tolerance_from_env, Error, Result};

use render::{Format, Subject};

#[derive(Parser)]
#[command(
    name = "wywitness",
    version,
    about = "Entanglement criteria from skew-information uncertainty relations"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate criteria on one state.
    Eval(EvalArgs),
    /// Evaluate criteria over a parameter grid.
    Sweep(SweepArgs),
    /// Locate the parameter value where a criterion changes verdict.
    Threshold(ThresholdArgs),
    /// Load a density matrix from a JSON file and evaluate criteria on it.
    Check(CheckArgs),
}

#[derive(Args)]
struct Common {
    /// Criterion name, or `all`.
    #[arg(long, default_value = "all")]
    criterion: String,
    /// Observable pair `A,B` of Pauli strings.
    #[arg(long)]
    obs: Option<String>,
    /// Verdict tolerance (overrides WYWITNESS_TOL).
    #[arg(long)]
    tol: Option<f64>,
    #[arg(long, value_enum, default_value_t = OutFormat::Table)]
    format: OutFormat,
    /// Write to this file instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct EvalArgs {
    /// State spec `family:key=val,...`, e.g. `werner:p=0.5`.
    #[arg(long, required_unless_present = "seed")]
    state: Option<String>,
    /// Without --state: evaluate a random two-qubit state drawn from this seed.
    #[arg(long)]
    seed: Option<u64>,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct CheckArgs {
    /// JSON density-matrix file.
    file: PathBuf,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct SweepArgs {
    /// State family with any fixed parameters, e.g. `werner_derivative:p=0.8`.
    #[arg(long)]
    state: String,
    /// Parameter to sweep (default depends on the family).
    #[arg(long)]
    param: Option<String>,
    /// Grid `lo:hi:step` (default: full domain, step 0.01).
    #[arg(long)]
    range: Option<String>,
    /// Comma-separated criteria, or `all`.
    #[arg(long, default_value = "all")]
    criterion: String,
    /// Observable pair `A,B`; repeat for several pairs.
    #[arg(long)]
    obs: Vec<String>,
    /// Verdict tolerance (overrides WYWITNESS_TOL).
    #[arg(long)]
    tol: Option<f64>,
    #[arg(long, value_enum, default_value_t = OutFormat::Csv)]
    format: OutFormat,
    #[arg(long)]
    out: Option<PathBuf>,
    /// Add the literature thresholds as NOT_COMPUTED comment rows.
    #[arg(long)]
    annotate: bool,
}

#[derive(Args)]
struct ThresholdArgs {
    /// State family with any fixed parameters.
    #[arg(value_name = "STATE")]
    state_pos: Option<String>,
    #[arg(value_name = "CRITERION")]
    criterion_pos: Option<String>,
    #[arg(value_name = "OBS")]
    obs_pos: Option<String>,
    #[arg(long, conflicts_with = "state_pos")]
    state: Option<String>,
    #[arg(long, conflicts_with = "criterion_pos")]
    criterion: Option<String>,
    #[arg(long, conflicts_with = "obs_pos")]
    obs: Option<String>,
    /// Parameter to bisect (default depends on the family).
    #[arg(long)]
    param: Option<String>,
    /// Search interval `lo:hi`, or `lo:hi:step` to set the prescan spacing.
    #[arg(long)]
    range: Option<String>,
    /// Bisection bracket width.
    #[arg(long, default_value_t = DEFAULT_BRACKET_TOL)]
    tol: f64,
    /// Number of prescan intervals used to detect several flips.
    #[arg(long)]
    prescan: Option<usize>,
    #[arg(long, value_enum, default_value_t = OutFormat::Table)]
    format: OutFormat,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum OutFormat {
    Csv,
    Json,
    Table,
}

impl From<OutFormat> for Format {
    fn from(f: OutFormat) -> Self {
        match f {
            OutFormat::Csv => Format::Csv,
            OutFormat::Json => Format::Json,
            OutFormat::Table => Format::Table,
        }
    }
}

const DEFAULT_PRESCAN: usize = 64;
const DEFAULT_SWEEP_STEP: f64 = 0.01;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(if e.is_numerical() { 3 } else { 2 })
        }
    }
}

fn run(command: Command) -> Result<()> {
    match command {
        Command::Eval(args) => eval(args),
        Command::Check(args) => check(args),
        Command::Sweep(args) => sweep(args),
        Command::Threshold(args) => threshold(args),
    }
}

fn verdict_tol(flag: Option<f64>) -> Result<f64> {
    match flag {
        Some(t) if t.is_finite() && t >= 0.0 => Ok(t),
        Some(t) => Err(input_error(format!(
            "--tol {t} must be a non-negative number"
        ))),
        None => tolerance_from_env(),
    }
}

fn input_error(message: impl Into<String>) -> Error {
    Error::Parse {
        position: 0,
        message: message.into(),
    }
}

fn parse_criteria(text: &str) -> Result<Vec<CriterionId>> {
    if text.trim() == "all" {
        return Ok(CriterionId::ALL.to_vec());
    }
    text.split(',').map(str::parse).collect()
}

fn observable_pair(flag: Option<&str>, family: FamilyId) -> Result<ObservablePair> {
    match flag {
        Some(text) => text.parse(),
        None => {
            let (a, b) = family.default_observables();
            format!("{a},{b}").parse()
        }
    }
}

fn open_output(path: Option<&Path>) -> Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn eval(args: EvalArgs) -> Result<()> {
    let (label, rho, family) = match (&args.state, args.seed) {
        (Some(text), _) => {
            let spec: StateSpec = text.parse()?;
            (spec.to_string(), spec.build()?, spec.family)
        }
        (None, Some(seed)) => (
            format!("random:seed={seed}"),
            random::random_density(2, 2, seed)?,
            FamilyId::Custom,
        ),
        (None, None) => return Err(input_error("eval needs --state or --seed")),
    };
    evaluate_and_render(&label, &rho, family, &args.common)
}

fn check(args: CheckArgs) -> Result<()> {
    let rho = load_state_file(&args.file)?;
    let label = args.file.display().to_string();
    evaluate_and_render(&label, &rho, FamilyId::Custom, &args.common)
}

fn evaluate_and_render(
    label: &str,
    rho: &DensityMatrix,
    family: FamilyId,
    common: &Common,
) -> Result<()> {
    let evaluator = Evaluator::with_tol(verdict_tol(common.tol)?);
    let pair = observable_pair(common.obs.as_deref(), family)?;
    let rows = if common.criterion.trim() == "all" {
        evaluator.evaluate_all(rho, &pair.a, &pair.b)?
    } else {
        parse_criteria(&common.criterion)?
            .into_iter()
            .map(|id| {
                evaluator
                    .evaluate(id, rho, &pair.a, &pair.b)
                    .map(ComparisonRow::Computed)
            })
            .collect::<Result<Vec<_>>>()?
    };
    let subject = Subject {
        state: label,
        observables: &pair.label,
        tol: evaluator.tol,
        min_pt_eigenvalue: rho.partial_transpose(evaluator.subsystem)?.min_eigenvalue(),
        valid_state: rho.is_valid_state(),
    };
    let mut out = open_output(common.out.as_deref())?;
    render::reports(&subject, &rows, common.format.into(), &mut out)?;
    out.flush()?;
    Ok(())
}

fn swept_param(spec: &StateSpec, flag: Option<String>) -> Result<String> {
    match flag {
        Some(p) => Ok(p),
        None => spec
            .family
            .default_sweep_param()
            .map(|(p, _, _)| p.to_string())
            .ok_or_else(|| {
                input_error(format!(
                    "{} has no default parameter; pass --param",
                    spec.family
                ))
            }),
    }
}

fn default_domain(spec: &StateSpec, param: &str) -> Result<(f64, f64)> {
    spec.family.param_domain(param).ok_or_else(|| {
        input_error(format!(
            "{} has no real parameter `{param}`; pass --range",
            spec.family
        ))
    })
}

fn sweep(args: SweepArgs) -> Result<()> {
    let spec: StateSpec = args.state.parse()?;
    let param = swept_param(&spec, args.param)?;
    let grid = match &args.range {
        Some(text) => text.parse()?,
        None => {
            let (lo, hi) = default_domain(&spec, &param)?;
            Grid::new(lo, hi, DEFAULT_SWEEP_STEP)?
        }
    };
    let observables = if args.obs.is_empty() {
        vec![observable_pair(None, spec.family)?]
    } else {
        args.obs
            .iter()
            .map(|s| s.parse())
            .collect::<Result<Vec<_>>>()?
    };
    let sweep = Sweep {
        spec,
        param,
        grid,
        criteria: parse_criteria(&args.criterion)?,
        observables,
        evaluator: Evaluator::with_tol(verdict_tol(args.tol)?),
    };
    let rows = sweep.run()?;
    let mut out = open_output(args.out.as_deref())?;
    match args.format {
        OutFormat::Csv => sweep.write_csv(&rows, args.annotate, &mut out)?,
        format => render::sweep(&sweep, &rows, args.annotate, format.into(), &mut out)?,
    }
    out.flush()?;
    Ok(())
}

fn parse_interval(text: &str) -> Result<(f64, f64, Option<f64>)> {
    let parts: Vec<&str> = text.split(':').collect();
    let num = |s: &str| -> Result<f64> {
        s.trim()
            .parse()
            .map_err(|_| input_error(format!("{s:?} is not a number in range {text:?}")))
    };
    match parts.as_slice() {
        [lo, hi] => Ok((num(lo)?, num(hi)?, None)),
        [lo, hi, step] => Ok((num(lo)?, num(hi)?, Some(num(step)?))),
        _ => Err(input_error(format!(
            "expected lo:hi or lo:hi:step, got {text:?}"
        ))),
    }
}

fn threshold(args: ThresholdArgs) -> Result<()> {
    let state = args
        .state
        .or(args.state_pos)
        .ok_or_else(|| input_error("threshold needs a state family"))?;
    let spec: StateSpec = state.parse()?;
    let criterion: CriterionId = args
        .criterion
        .or(args.criterion_pos)
        .as_deref()
        .unwrap_or("proposed")
        .parse()?;
    let pair = observable_pair(args.obs.or(args.obs_pos).as_deref(), spec.family)?;
    let param = swept_param(&spec, args.param)?;
    let (lo, hi, step) = match &args.range {
        Some(text) => parse_interval(text)?,
        None => {
            let (lo, hi) = default_domain(&spec, &param)?;
            (lo, hi, None)
        }
    };
    if args.tol.is_nan() || args.tol <= 0.0 {
        return Err(input_error(format!("--tol {} must be positive", args.tol)));
    }
    let prescan = match (args.prescan, step) {
        (Some(n), _) => n,
        (None, Some(step)) if step > 0.0 => ((hi - lo) / step).ceil() as usize,
        (None, Some(step)) => {
            return Err(input_error(format!("prescan step {step} must be positive")))
        }
        (None, None) => DEFAULT_PRESCAN,
    };
    let search = ThresholdSearch {
        spec,
        param,
        lo,
        hi,
        criterion,
        a: pair.a,
        b: pair.b,
        evaluator: Evaluator::with_tol(tolerance_from_env()?),
        bracket_tol: args.tol,
        prescan,
    };
    let result = search.run()?;
    if result.non_monotonic {
        eprintln!(
            "warning: NonMonotonic: {} verdict flips found; all brackets are reported",
            result.flips.len()
        );
    }
    let mut out = open_output(args.out.as_deref())?;
    render::threshold(&search, &pair.label, &result, args.format.into(), &mut out)?;
    out.flush()?;
    Ok(())
}
