//! The `meroscope` command line.
//!
//! Every command writes one JSON document (or JSON lines for `transform`)
//! to stdout or `--output`. Failures print a single-line JSON error record
//! on stderr. Exit codes: 0 success, 1 usage or input error, 2 function not
//! meromorphic within `--max-m`, 3 a verification suite failed.

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde::Serialize;
use serde_json::{json, Value};

use crate::cauchy::split;
use crate::error::Error;
use crate::funcspec::{parse_complex_list, FunctionSpec};
use crate::grid::{analyze_grid, check_grid_size};
use crate::poles::{
    check_necessity_on_grid, minimal_pole_count, NecessityOptions, PoleCount, PoleOptions,
    DEFAULT_GAP_THRESHOLD, DEFAULT_REL_FLOOR, DEFAULT_RESIDUAL_TOL,
};
use crate::poly::ComplexPoly;
use crate::rigidity::{
    equivalence_suite, find_witness, rational_minus, WitnessSearch, DEFAULT_BUDGET,
};
use crate::rng::trial_rng;
use crate::series::TaylorSeries;
use crate::suites::{self, Suite, VerifyOptions, DEFAULT_TRIALS};
use crate::valence::{
    ell_polynomials, is_bm_with, iterate_transform, random_level, BmFn, ValentFn,
    DEFAULT_SLIT_MARGIN, WORKING_LEN,
};
use crate::winding::{winding, winding_via_zeros};
use crate::zeros::{count_zeros_disk_retrying, count_zeros_exterior};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 1;
pub const EXIT_NOT_MEROMORPHIC: i32 = 2;
pub const EXIT_VERIFY_FAILED: i32 = 3;

/// Tolerance for `is_Bm` in the `valence` and `transform` commands.
const BM_TOL: f64 = 1e-10;

#[derive(Debug, Parser)]
#[command(
    name = "meroscope",
    version,
    about = "Meromorphic extension from boundary values"
)]
pub struct Cli {
    #[command(flatten)]
    pub config: RunConfig,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct RunConfig {
    /// Boundary samples; a power of two.
    #[arg(long, global = true, default_value_t = 4096)]
    pub grid_size: usize,
    /// Largest pole count tried.
    #[arg(long, global = true, default_value_t = 8)]
    pub max_m: usize,
    /// Singular value ratio accepted as a rank gap.
    #[arg(long, global = true, default_value_t = DEFAULT_GAP_THRESHOLD)]
    pub gap_threshold: f64,
    /// Reconstruction residual, relative to `sup|f₋|`.
    #[arg(long, global = true, default_value_t = DEFAULT_RESIDUAL_TOL)]
    pub residual_tol: f64,
    #[arg(long, global = true, env = "MEROSCOPE_SEED", default_value_t = 0)]
    pub seed: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Write the result here instead of stdout.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Minimal pole count, poles, necessity trials and a witness search one level down.
    Analyze {
        spec: PathBuf,
        /// Random `h` drawn for the necessity check.
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: usize,
    },
    /// Winding number of the sampled function.
    Winding { spec: PathBuf },
    /// Zeros of `f₋ + q` outside the disk, or of the function in `|z| < radius`.
    Zeros {
        spec: PathBuf,
        /// Polynomial `q` as `[[re, im], ...]`, constant term first.
        #[arg(long, default_value = "[]")]
        q: String,
        /// Count zeros of the analytic part `f₊ + q` in `|z| < radius` instead.
        #[arg(long)]
        radius: Option<f64>,
    },
    /// Equivalence trials and a witness search at level `m`.
    Rigidity {
        spec: PathBuf,
        /// Level tested; defaults to the detected pole count.
        #[arg(long)]
        m: Option<usize>,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: usize,
    },
    /// Coefficient polynomials, and the `B_m` test for a given function.
    Valence {
        #[arg(long)]
        m: usize,
        #[arg(long, default_value_t = 10)]
        k_max: usize,
        #[command(flatten)]
        function: ValentInput,
    },
    /// Iterate the level transform; one JSON line per step.
    Transform {
        #[arg(long)]
        m: usize,
        #[arg(long, default_value_t = 10)]
        k_max: usize,
        #[command(flatten)]
        function: ValentInput,
        /// Levels as `[[re, im], ...]`.
        #[arg(long, conflicts_with = "steps")]
        schedule: Option<String>,
        /// Number of random levels drawn from the seed.
        #[arg(long, default_value_t = 5)]
        steps: usize,
    },
    /// Seeded verification suites: rigidity, necessity, valence or all.
    Verify {
        suite: String,
        #[arg(long, default_value_t = DEFAULT_TRIALS)]
        trials: usize,
    },
}

#[derive(Debug, Clone, Args)]
pub struct ValentInput {
    /// Denominator `d` of `z^m / d` as `[[re, im], ...]`, `d(0) = 1`.
    #[arg(long, conflicts_with = "coeffs")]
    pub d: Option<String>,
    /// Taylor coefficients of `g` from `z^0`.
    #[arg(long)]
    pub coeffs: Option<String>,
}

/// Outcome of a command: the document to print and the exit code.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub body: Body,
    pub code: i32,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Body {
    Document(Value),
    Lines(Vec<Value>),
}

/// Error record for stderr.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ErrorRecord {
    pub error: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub field: Option<String>,
    pub message: String,
}

impl ErrorRecord {
    pub fn usage(message: impl Into<String>) -> Self {
        ErrorRecord {
            error: "usage",
            field: None,
            message: message.into(),
        }
    }

    pub fn from_error(e: &Error) -> Self {
        let (error, field) = match e {
            Error::InvalidInput { field, .. } => ("invalid_input", Some(field.clone())),
            Error::NonConvergence { .. } => ("non_convergence", None),
            Error::VanishingOnCircle { .. } | Error::VanishingOnContour { .. } => {
                ("vanishing", None)
            }
            Error::UnderResolved { .. } => ("under_resolved", None),
            Error::AmbiguousRank { .. } => ("ambiguous_rank", None),
            _ => ("numerical", None),
        };
        ErrorRecord {
            error,
            field,
            message: e.to_string(),
        }
    }

    pub fn to_line(&self) -> String {
        serde_json::to_string(self).expect("error records serialize")
    }
}

impl RunConfig {
    pub fn validate(&self) -> Result<(), Error> {
        check_grid_size(self.grid_size).map_err(|e| invalid("grid-size", e.to_string()))?;
        for (name, value) in [
            ("gap-threshold", self.gap_threshold),
            ("residual-tol", self.residual_tol),
        ] {
            if !(value.is_finite() && value > 0.0) {
                return Err(invalid(name, "must be a positive number"));
            }
        }
        Ok(())
    }

    fn pole_options(&self) -> PoleOptions {
        PoleOptions {
            max_m: self.max_m,
            hankel_size: None,
            gap_threshold: self.gap_threshold,
            rel_floor: DEFAULT_REL_FLOOR,
            residual_tol: self.residual_tol,
        }
    }
}

fn invalid(field: &str, message: impl Into<String>) -> Error {
    Error::InvalidInput {
        field: field.to_string(),
        message: message.into(),
    }
}

/// Parse arguments and run; returns the process exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                print!("{e}");
                return EXIT_OK;
            }
            let message = e.kind().to_string();
            let detail = e.to_string();
            let first = detail
                .lines()
                .next()
                .unwrap_or(&message)
                .trim_start_matches("error: ");
            eprintln!("{}", ErrorRecord::usage(first).to_line());
            return EXIT_INPUT;
        }
    };
    match run(&cli) {
        Ok(outcome) => match emit(&outcome.body, &cli.config) {
            Ok(()) => outcome.code,
            Err(e) => {
                eprintln!(
                    "{}",
                    ErrorRecord::usage(format!("cannot write output: {e}")).to_line()
                );
                EXIT_INPUT
            }
        },
        Err(e) => {
            eprintln!("{}", ErrorRecord::from_error(&e).to_line());
            EXIT_INPUT
        }
    }
}

pub fn run(cli: &Cli) -> Result<Outcome, Error> {
    let config = &cli.config;
    config.validate()?;
    match &cli.command {
        Command::Analyze {
            spec,
            trials,
            budget,
        } => analyze(&read_spec(spec)?, config, *trials, *budget),
        Command::Winding { spec } => {
            let grid = read_spec(spec)?.grid(config.grid_size)?;
            Ok(document(json!({ "winding": winding(&grid)? })))
        }
        Command::Zeros { spec, q, radius } => zeros(&read_spec(spec)?, config, q, *radius),
        Command::Rigidity {
            spec,
            m,
            trials,
            budget,
        } => rigidity(&read_spec(spec)?, config, *m, *trials, *budget),
        Command::Valence { m, k_max, function } => valence(*m, *k_max, function),
        Command::Transform {
            m,
            k_max,
            function,
            schedule,
            steps,
        } => transform(config, *m, *k_max, function, schedule.as_deref(), *steps),
        Command::Verify { suite, trials } => verify(config, suite, *trials),
    }
}

fn document(value: Value) -> Outcome {
    Outcome {
        body: Body::Document(value),
        code: EXIT_OK,
    }
}

fn read_spec(path: &Path) -> Result<FunctionSpec, Error> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| invalid("spec", format!("{}: {e}", path.display())))?;
    FunctionSpec::parse(&text)
}

fn analyze(
    spec: &FunctionSpec,
    config: &RunConfig,
    trials: usize,
    budget: usize,
) -> Result<Outcome, Error> {
    let grid = spec.grid(config.grid_size)?;
    let f = analyze_grid(&grid);
    let report = minimal_pole_count(&f, &config.pole_options())?;
    let mut out = serde_json::to_value(&report).expect("pole reports serialize");
    let PoleCount::Finite(m) = report.m else {
        return Ok(Outcome {
            body: Body::Document(out),
            code: EXIT_NOT_MEROMORPHIC,
        });
    };
    let necessity_opts = NecessityOptions {
        grid_size: config.grid_size,
        ..NecessityOptions::default()
    };
    let necessity = check_necessity_on_grid(&grid, m, trials, config.seed, &necessity_opts)?;
    out["necessity"] = json!({
        "trials": necessity.trials,
        "violations": necessity.violations,
        "abandoned": necessity.abandoned,
        "min_winding": necessity.min_winding,
        "histogram": necessity.histogram,
    });
    out["witness"] = match m.checked_sub(1) {
        Some(level) => witness_summary(&find_witness(&f, level, budget)?),
        None => Value::Null,
    };
    Ok(document(out))
}

fn witness_summary(search: &WitnessSearch) -> Value {
    json!({
        "level": search.m,
        "found": search.witness.is_some(),
        "layer": search.layer,
        "n": search.witness.as_ref().map(|w| w.n),
        "p": search.witness.as_ref().map(|w| &w.p),
        "zero_count": search.witness.as_ref().map(|w| w.zero_count),
        "candidates": search.log.len(),
    })
}

fn zeros(
    spec: &FunctionSpec,
    config: &RunConfig,
    q: &str,
    radius: Option<f64>,
) -> Result<Outcome, Error> {
    let q = ComplexPoly::new(parse_complex_list(q, "q")?);
    let f = spec.laurent(config.grid_size)?;
    let parts = split(&f);
    if let Some(rho) = radius {
        if !(rho > 0.0 && rho < 1.0) {
            return Err(invalid("radius", "must lie in (0, 1)"));
        }
        let plus = parts.plus.to_poly();
        let (used, count) = count_zeros_disk_retrying(|z| plus.eval(z) + q.eval(z), rho)?;
        return Ok(document(json!({ "radius": used, "disk_zeros": count })));
    }
    let minus = parts.minus.trimmed(1e-15);
    let exterior = count_zeros_exterior(&minus, &q)?;
    let winding = winding_via_zeros(&minus, &q, exterior, config.grid_size).ok();
    Ok(document(json!({
        "deg_q": q.degree(),
        "exterior_zeros": exterior,
        "winding": winding,
    })))
}

fn rigidity(
    spec: &FunctionSpec,
    config: &RunConfig,
    m: Option<usize>,
    trials: usize,
    budget: usize,
) -> Result<Outcome, Error> {
    let f = spec.laurent(config.grid_size)?;
    let minus = rational_minus(&f, config.max_m)?;
    let poles = minus.poles()?.len();
    let m = m.unwrap_or(poles);
    let report = equivalence_suite(&minus, m, trials, config.seed)?;
    let search = find_witness(&f, m, budget)?;
    Ok(document(json!({
        "m": m,
        "poles": poles,
        "trials": report.trials,
        "matches": report.matches,
        "mismatches": report.mismatches,
        "violations": report.violations,
        "winding_checked": report.winding_checked,
        "winding_failures": report.winding_failures,
        "witness": witness_summary(&search),
        "records": report.records,
    })))
}

fn valent_function(m: usize, input: &ValentInput) -> Result<Option<ValentFn>, Error> {
    if let Some(d) = &input.d {
        let d = ComplexPoly::new(parse_complex_list(d, "d")?);
        return BmFn::new(d, m)?.valent(WORKING_LEN).map(Some);
    }
    if let Some(coeffs) = &input.coeffs {
        let mut c = parse_complex_list(coeffs, "coeffs")?;
        if c.len() > WORKING_LEN {
            return Err(invalid(
                "coeffs",
                format!("at most {WORKING_LEN} coefficients"),
            ));
        }
        c.resize(WORKING_LEN, Complex64::new(0.0, 0.0));
        return ValentFn::new(TaylorSeries::new(c), m).map(Some);
    }
    Ok(None)
}

fn valence(m: usize, k_max: usize, input: &ValentInput) -> Result<Outcome, Error> {
    let table = ell_polynomials(m, k_max)?;
    let mut out = serde_json::to_value(&table).expect("tables serialize");
    if let Some(g) = valent_function(m, input)? {
        let check = is_bm_with(&table, &g, BM_TOL)?;
        out["is_bm"] = json!(check.member);
        out["deviation"] = json!(check.deviation);
        out["leading"] = json!(g.leading());
    }
    Ok(document(out))
}

fn transform(
    config: &RunConfig,
    m: usize,
    k_max: usize,
    input: &ValentInput,
    schedule: Option<&str>,
    steps: usize,
) -> Result<Outcome, Error> {
    let g = match valent_function(m, input)? {
        Some(g) => g,
        None => return Err(invalid("d", "one of --d or --coeffs is required")),
    };
    let levels = match schedule {
        Some(text) => parse_complex_list(text, "schedule")?,
        None => (0..steps as u64)
            .map(|i| {
                random_level(
                    &mut trial_rng(config.seed, i),
                    m,
                    0.2,
                    0.9,
                    DEFAULT_SLIT_MARGIN,
                )
            })
            .collect(),
    };
    let trajectory = iterate_transform(&g, &levels, k_max)?;
    let lines = trajectory
        .steps
        .iter()
        .map(|s| serde_json::to_value(s).expect("steps serialize"))
        .collect();
    Ok(Outcome {
        body: Body::Lines(lines),
        code: EXIT_OK,
    })
}

fn verify(config: &RunConfig, suite: &str, trials: usize) -> Result<Outcome, Error> {
    let suite = Suite::parse(suite).ok_or_else(|| {
        invalid(
            "suite",
            format!("unknown suite `{suite}`; expected rigidity, necessity, valence or all"),
        )
    })?;
    let report = suites::run(
        suite,
        &VerifyOptions {
            seed: config.seed,
            trials,
            grid_size: config.grid_size,
        },
    );
    let code = if report.passed {
        EXIT_OK
    } else {
        EXIT_VERIFY_FAILED
    };
    Ok(Outcome {
        body: Body::Document(serde_json::to_value(&report).expect("reports serialize")),
        code,
    })
}

/// Render a body in the chosen format.
pub fn render(body: &Body, format: Format) -> String {
    let one = |v: &Value| match format {
        Format::Json => serde_json::to_string(v).expect("values serialize"),
        Format::Text => text(v),
    };
    match body {
        Body::Document(v) => match format {
            Format::Json => serde_json::to_string_pretty(v).expect("values serialize") + "\n",
            Format::Text => text(v) + "\n",
        },
        Body::Lines(lines) => lines.iter().map(|v| one(v) + "\n").collect(),
    }
}

/// `key: value` per top-level field, nested values as compact JSON.
fn text(v: &Value) -> String {
    match v {
        Value::Object(map) => map
            .iter()
            .map(|(k, v)| match v {
                Value::String(s) => format!("{k}: {s}"),
                other => format!("{k}: {other}"),
            })
            .collect::<Vec<_>>()
            .join("\n"),
        other => other.to_string(),
    }
}

fn emit(body: &Body, config: &RunConfig) -> std::io::Result<()> {
    let rendered = render(body, config.format);
    match &config.output {
        Some(path) => std::fs::write(path, rendered),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(rendered.as_bytes())?;
            out.flush()
        }
    }
}
