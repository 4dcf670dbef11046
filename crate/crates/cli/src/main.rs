//! Command-line front end: evaluate programs, check axioms on models, build
//! isomorphism prefixes, and extract reals from cuts.
//!
//! Exit codes are a total function of the outcome class:
//! 0 success, 1 usage or parse error, 2 fuel exhausted, 3 axiom failure,
//! 4 invariant violation.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;
use serde::Deserialize;
use serde_json::json;

use numforge_core::cuts::{Cut, CutError};
use numforge_core::dsl;
use numforge_core::numbers::RatClass;
use numforge_core::peano::{build_iso, BuiltinModel, IsoError, PointedStructure};
use numforge_core::recfn::{eval, EvalBudget, EvalOutcome, RecTerm};

const EXIT_USAGE: u8 = 1;
const EXIT_FUEL: u8 = 2;
const EXIT_AXIOMS: u8 = 3;
const EXIT_INVARIANT: u8 = 4;

#[derive(Parser)]
#[command(
    name = "numforge",
    version,
    about = "Recursive arithmetic from first principles: programs, models, and cuts"
)]
struct Cli {
    /// Optional JSON config file ({"fuel": .., "eps": "..", "format": ".."}).
    #[arg(long, global = true, value_name = "PATH")]
    config: Option<PathBuf>,

    /// Output format; flags override the config file.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "lowercase")]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate a defined function from a .rf program on natural arguments.
    Eval {
        /// Program file.
        file: PathBuf,
        /// Name of the definition to apply.
        name: String,
        /// Natural-number arguments.
        args: Vec<String>,
        /// Evaluation step budget.
        #[arg(long)]
        fuel: Option<u64>,
    },
    /// Parse and arity-check a .rf program.
    Check {
        /// Program file.
        file: PathBuf,
    },
    /// Check the axioms on a model file or a built-in fragment.
    Axioms {
        /// Model file path, or builtin:linear for a generated fragment.
        #[arg(long)]
        model: String,
        /// Number of elements for built-in fragments.
        #[arg(long, default_value_t = 16)]
        depth: usize,
    },
    /// Build the isomorphism prefix between two models.
    Iso {
        /// unary | binary | decimal, or a model file path.
        #[arg(long = "model-a")]
        model_a: String,
        /// unary | binary | decimal, or a model file path.
        #[arg(long = "model-b")]
        model_b: String,
        /// Number of matched pairs.
        #[arg(long)]
        depth: usize,
    },
    /// Approximate a real given by a cut, to a precision bound.
    Cut {
        #[command(subcommand)]
        target: CutTarget,
    },
}

#[derive(Subcommand)]
enum CutTarget {
    /// Square root of a natural number.
    Sqrt {
        n: String,
        /// Precision bound (rational text, e.g. 1e-6 or 1/1000).
        #[arg(long)]
        eps: Option<String>,
    },
    /// A rational, e.g. 1/3 or -2.
    Rat {
        #[arg(allow_hyphen_values = true)]
        value: String,
        /// Precision bound (rational text, e.g. 1e-6 or 1/1000).
        #[arg(long)]
        eps: Option<String>,
    },
}

// ---------------------------------------------------------------------------
// Config
// ---------------------------------------------------------------------------

#[derive(Debug, Deserialize, Default)]
#[serde(deny_unknown_fields)]
struct ConfigFile {
    fuel: Option<u64>,
    eps: Option<String>,
    format: Option<Format>,
}

struct Settings {
    fuel: u64,
    eps: String,
    format: Format,
}

fn load_settings(cli: &Cli) -> Result<Settings, Failure> {
    let mut file = ConfigFile::default();
    if let Some(path) = &cli.config {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Failure::usage(format!("cannot read config {}: {e}", path.display())))?;
        file = serde_json::from_str(&text)
            .map_err(|e| Failure::usage(format!("bad config {}: {e}", path.display())))?;
        if let Some(fuel) = file.fuel {
            if fuel == 0 {
                return Err(Failure::usage("config fuel must be at least 1".to_string()));
            }
        }
        if let Some(eps) = &file.eps {
            let parsed: RatClass = eps
                .parse()
                .map_err(|e| Failure::usage(format!("bad config eps: {e}")))?;
            if !parsed.is_positive() {
                return Err(Failure::usage("config eps must be positive".to_string()));
            }
        }
    }
    Ok(Settings {
        fuel: file.fuel.unwrap_or(1_000_000),
        eps: file.eps.unwrap_or_else(|| "1e-6".to_string()),
        format: cli.format.or(file.format).unwrap_or(Format::Text),
    })
}

// ---------------------------------------------------------------------------
// Reports and failures
// ---------------------------------------------------------------------------

/// A finished command: text rendering, JSON rendering, exit code.
struct Report {
    text: String,
    json: serde_json::Value,
    code: u8,
}

impl Report {
    fn ok(text: String, json: serde_json::Value) -> Self {
        Self {
            text,
            json,
            code: 0,
        }
    }
}

struct Failure {
    class: &'static str,
    message: String,
    code: u8,
}

impl Failure {
    fn usage(message: String) -> Self {
        Self {
            class: "usage",
            message,
            code: EXIT_USAGE,
        }
    }

    fn parse(message: String) -> Self {
        Self {
            class: "parse",
            message,
            code: EXIT_USAGE,
        }
    }

    fn invariant(message: String) -> Self {
        Self {
            class: "invariant",
            message,
            code: EXIT_INVARIANT,
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // Keep clap's help/version on stdout with success; everything
            // else is a usage error.
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                print!("{e}");
                return ExitCode::SUCCESS;
            }
            eprint!("{e}");
            return ExitCode::from(EXIT_USAGE);
        }
    };

    let settings = match load_settings(&cli) {
        Ok(s) => s,
        Err(f) => return emit_failure(&f, cli.format.unwrap_or(Format::Text)),
    };

    let result = match &cli.command {
        Command::Eval {
            file,
            name,
            args,
            fuel,
        } => cmd_eval(file, name, args, fuel.unwrap_or(settings.fuel)),
        Command::Check { file } => cmd_check(file),
        Command::Axioms { model, depth } => cmd_axioms(model, *depth),
        Command::Iso {
            model_a,
            model_b,
            depth,
        } => cmd_iso(model_a, model_b, *depth),
        Command::Cut { target } => match target {
            CutTarget::Sqrt { n, eps } => cmd_cut_sqrt(n, eps.as_deref().unwrap_or(&settings.eps)),
            CutTarget::Rat { value, eps } => {
                cmd_cut_rat(value, eps.as_deref().unwrap_or(&settings.eps))
            }
        },
    };

    match result {
        Ok(report) => {
            match settings.format {
                Format::Text => println!("{}", report.text),
                Format::Json => println!("{}", report.json),
            }
            ExitCode::from(report.code)
        }
        Err(failure) => emit_failure(&failure, settings.format),
    }
}

fn emit_failure(failure: &Failure, format: Format) -> ExitCode {
    match format {
        Format::Text => eprintln!("error: {}", failure.message),
        Format::Json => println!(
            "{}",
            json!({
                "kind": "error",
                "class": failure.class,
                "message": failure.message,
            })
        ),
    }
    ExitCode::from(failure.code)
}

// ---------------------------------------------------------------------------
// Commands
// ---------------------------------------------------------------------------

fn read_source(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path)
        .map_err(|e| Failure::usage(format!("cannot read {}: {e}", path.display())))
}

fn parse_program(path: &Path) -> Result<dsl::Program, Failure> {
    let source = read_source(path)?;
    dsl::parse(&source).map_err(|d| Failure::parse(format!("{}: {d}", path.display())))
}

fn cmd_eval(file: &Path, name: &str, args: &[String], fuel: u64) -> Result<Report, Failure> {
    let program = parse_program(file)?;
    if program.lookup(name).is_none() {
        return Err(Failure::usage(format!(
            "{} does not define `{name}`",
            file.display()
        )));
    }
    let env = program.env();
    let args: Vec<BigUint> = args
        .iter()
        .map(|a| {
            a.parse()
                .map_err(|_| Failure::usage(format!("argument {a:?} is not a natural number")))
        })
        .collect::<Result<_, _>>()?;

    let mut budget = EvalBudget::new(fuel);
    let outcome = eval(&RecTerm::name(name), &args, &mut budget, &env)
        .map_err(|e| Failure::usage(format!("{e}")))?;
    match outcome {
        EvalOutcome::Value(v) => Ok(Report::ok(
            v.to_string(),
            json!({
                "kind": "eval",
                "status": "value",
                "value": v.to_string(),
                "consumed": budget.consumed(),
            }),
        )),
        EvalOutcome::FuelExhausted { consumed } => Ok(Report {
            text: format!("fuel exhausted after {consumed} steps"),
            json: json!({
                "kind": "eval",
                "status": "fuel-exhausted",
                "consumed": consumed,
            }),
            code: EXIT_FUEL,
        }),
    }
}

fn cmd_check(file: &Path) -> Result<Report, Failure> {
    let program = parse_program(file)?;
    let names: Vec<&str> = program.defs().iter().map(|d| d.name.as_str()).collect();
    Ok(Report::ok(
        format!("ok: {} definitions ({})", program.len(), names.join(", ")),
        json!({
            "kind": "check",
            "definitions": program.len(),
            "names": names,
        }),
    ))
}

fn load_model(selector: &str, depth: usize) -> Result<PointedStructure, Failure> {
    if let Some(builtin) = selector.strip_prefix("builtin:") {
        let model = match builtin {
            "linear" => BuiltinModel::Decimal,
            other => BuiltinModel::parse_name(other).ok_or_else(|| {
                Failure::usage(format!(
                    "unknown builtin model {other:?} (try linear, unary, binary, decimal)"
                ))
            })?,
        };
        if depth == 0 {
            return Err(Failure::usage("--depth must be at least 1".to_string()));
        }
        return Ok(model.fragment(depth));
    }
    if let Some(model) = BuiltinModel::parse_name(selector) {
        if depth == 0 {
            return Err(Failure::usage("--depth must be at least 1".to_string()));
        }
        return Ok(model.fragment(depth));
    }
    let text = read_source(Path::new(selector))?;
    PointedStructure::from_text(&text).map_err(|e| Failure::parse(format!("{selector}: {e}")))
}

fn cmd_axioms(model: &str, depth: usize) -> Result<Report, Failure> {
    let structure = load_model(model, depth)?;
    let report = structure.check_axioms();
    let code = if report.all_hold() { 0 } else { EXIT_AXIOMS };
    Ok(Report {
        text: report.to_string(),
        json: json!({
            "kind": "axioms",
            "model": model,
            "report": report,
        }),
        code,
    })
}

fn cmd_iso(model_a: &str, model_b: &str, depth: usize) -> Result<Report, Failure> {
    let a = load_model(model_a, depth)?;
    let b = load_model(model_b, depth)?;
    let iso = build_iso(&a, &b, depth).map_err(|e| match e {
        IsoError::AxiomFailure { .. } => Failure {
            class: "axioms",
            message: e.to_string(),
            code: EXIT_AXIOMS,
        },
        IsoError::FragmentTooShort { .. } => Failure::usage(e.to_string()),
    })?;
    let text = iso
        .pairs()
        .iter()
        .map(|(x, y)| format!("{x:?} ~ {y:?}"))
        .collect::<Vec<_>>()
        .join("\n");
    Ok(Report::ok(
        text,
        json!({
            "kind": "iso",
            "model_a": model_a,
            "model_b": model_b,
            "pairs": iso.pairs(),
        }),
    ))
}

fn parse_eps(eps: &str) -> Result<RatClass, Failure> {
    let value: RatClass = eps
        .parse()
        .map_err(|e| Failure::usage(format!("bad --eps: {e}")))?;
    if !value.is_positive() {
        return Err(Failure::usage("--eps must be positive".to_string()));
    }
    Ok(value)
}

/// Decimal places needed so that 10^-digits <= eps.
fn digits_for(eps: &RatClass) -> usize {
    let mut digits = 0;
    let mut scale = RatClass::one();
    let tenth = RatClass::make(
        &numforge_core::numbers::IntClass::from(1i64),
        &numforge_core::numbers::IntClass::from(10i64),
    )
    .expect("ten is nonzero");
    while &scale > eps && digits < 64 {
        scale = scale.mul(&tenth);
        digits += 1;
    }
    digits
}

fn render_cut(cut: &Cut, eps_text: &str) -> Result<Report, Failure> {
    let eps = parse_eps(eps_text)?;
    let (lo, hi) = cut.approx_bracket(&eps).map_err(|e| match e {
        CutError::NonpositiveEpsilon => Failure::usage(e.to_string()),
        CutError::InconsistentBracket => Failure::invariant(e.to_string()),
    })?;
    // Display the bracket midpoint: within eps/2 of the real, so the
    // rounded decimal plus the printed ± bound always covers it.
    let half = RatClass::make(
        &numforge_core::numbers::IntClass::from(1i64),
        &numforge_core::numbers::IntClass::from(2i64),
    )
    .expect("two is nonzero");
    let mid = lo.add(&hi).mul(&half);
    let decimal = mid.to_decimal_rounded(digits_for(&eps));
    Ok(Report::ok(
        format!("{decimal} ± {eps_text}"),
        json!({
            "kind": "cut",
            "value": decimal,
            "eps": eps_text,
            "rational": mid.to_string(),
            "bracket": [lo.to_string(), hi.to_string()],
        }),
    ))
}

fn cmd_cut_sqrt(n: &str, eps_text: &str) -> Result<Report, Failure> {
    let n: BigUint = n
        .parse()
        .map_err(|_| Failure::usage(format!("{n:?} is not a natural number")))?;
    render_cut(&Cut::sqrt_nat(&n), eps_text)
}

fn cmd_cut_rat(value: &str, eps_text: &str) -> Result<Report, Failure> {
    let q: RatClass = value
        .parse()
        .map_err(|e| Failure::usage(format!("bad rational: {e}")))?;
    render_cut(&Cut::from_rational(&q), eps_text)
}
