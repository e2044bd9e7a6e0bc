//! `qshape`: batch front end. Reads algebra files, writes JSON reports, and
//! signals the verdict through the exit code.

mod commands;
mod input;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use qshape::algebra::Family;
use qshape::tilt::DEFAULT_GLDIM_BOUND;
use qshape::{Error, FieldSpec, Fp, Rat, Result};
use serde_json::{json, Value};

use commands::{Outcome, Reference};
use input::Input;
use report::{error_code, Code};

const SEED_VAR: &str = "QSHAPE_SEED";

#[derive(Parser, Debug)]
#[command(name = "qshape", version, about = "Tilting data and stable endomorphism algebras of graded self-injective algebras")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Seed for idempotent searches; QSHAPE_SEED takes precedence.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Largest projective dimension explored when bounding gldim Λ₀.
    #[arg(long, global = true, default_value_t = DEFAULT_GLDIM_BOUND)]
    gldim_bound: usize,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Args, Debug)]
#[group(required = true, multiple = false)]
struct AlgebraArg {
    /// Algebra file (JSON).
    file: Option<PathBuf>,
    /// A builtin family instead of a file, e.g. `--builtin exterior 2`.
    #[arg(long, num_args = 2, value_names = ["FAMILY", "PARAMETER"])]
    builtin: Option<Vec<String>>,
}

#[derive(Args, Debug)]
struct FieldArg {
    /// Characteristic for `--builtin` (0 for ℚ).
    #[arg(long = "char", default_value_t = 0)]
    characteristic: u32,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Standing hypotheses: grading, self-injectivity, gldim Λ₀ and ℓ.
    Check {
        #[command(flatten)]
        algebra: AlgebraArg,
        #[command(flatten)]
        field: FieldArg,
    },
    /// The tilting module T and its summands.
    Tilt {
        #[command(flatten)]
        algebra: AlgebraArg,
        #[command(flatten)]
        field: FieldArg,
    },
    /// Γ = End(T) in the stable category, its fingerprint and a comparison.
    Gamma {
        #[command(flatten)]
        algebra: AlgebraArg,
        #[command(flatten)]
        field: FieldArg,
        /// auto | none | upper_triangular:M | auslander:M | subcategory
        #[arg(long, default_value = "none")]
        compare: String,
    },
    /// Stable Ext(T, T(i)) for |i| ≤ range.
    Ext {
        #[command(flatten)]
        algebra: AlgebraArg,
        #[command(flatten)]
        field: FieldArg,
        #[arg(long, default_value_t = 5)]
        range: usize,
    },
    /// Properties of a window of the companion category.
    Window {
        #[command(flatten)]
        algebra: AlgebraArg,
        #[command(flatten)]
        field: FieldArg,
        #[arg(long, allow_negative_numbers = true)]
        lo: i32,
        #[arg(long, allow_negative_numbers = true)]
        hi: i32,
        /// Also check the Serre functor.
        #[arg(long)]
        serre: bool,
    },
    /// Base change along k → A for the coefficient algebra in `--with`.
    Basechange {
        #[command(flatten)]
        algebra: AlgebraArg,
        #[command(flatten)]
        field: FieldArg,
        #[arg(long = "with", value_name = "FILE")]
        with: PathBuf,
    },
    /// Every applicable acceptance check for one builtin instance.
    Verify {
        family: String,
        parameter: usize,
        #[command(flatten)]
        field: FieldArg,
    },
}

fn read_file(path: &PathBuf) -> Result<Input> {
    let bytes = std::fs::read(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    Input::from_bytes(&bytes)
}

fn read_algebra(a: &AlgebraArg, f: &FieldArg) -> Result<Input> {
    match (&a.file, &a.builtin) {
        (Some(p), _) => read_file(p),
        (None, Some(b)) => {
            let n = b[1].parse().map_err(|_| Error::Parse(format!("bad parameter {:?}", b[1])))?;
            Input::builtin(&b[0], n, f.characteristic)
        }
        (None, None) => Err(Error::Parse("no algebra given".into())),
    }
}

fn seed(flag: u64) -> Result<u64> {
    match std::env::var(SEED_VAR) {
        Ok(s) => s.trim().parse().map_err(|_| Error::Parse(format!("{SEED_VAR}={s:?} is not a seed"))),
        Err(_) => Ok(flag),
    }
}

/// Dispatch a generic command on the field of the input.
macro_rules! over_field {
    ($field:expr, $f:ident ( $($arg:expr),* )) => {
        if $field.characteristic == 0 {
            commands::$f::<Rat>($($arg),*)
        } else {
            commands::$f::<Fp>($($arg),*)
        }
    };
}

struct Run {
    echo: Value,
    hash: Option<String>,
    field: Option<FieldSpec>,
    outcome: Result<Outcome>,
}

fn execute(cli: &Cli, seed: u64) -> Run {
    let bound = cli.gldim_bound;
    let (echo, input) = match &cli.command {
        Command::Check { algebra, field } => (json!({"name": "check"}), read_algebra(algebra, field)),
        Command::Tilt { algebra, field } => (json!({"name": "tilt"}), read_algebra(algebra, field)),
        Command::Gamma { algebra, field, compare } => {
            (json!({"name": "gamma", "compare": compare}), read_algebra(algebra, field))
        }
        Command::Ext { algebra, field, range } => (json!({"name": "ext", "range": range}), read_algebra(algebra, field)),
        Command::Window { algebra, field, lo, hi, serre } => {
            (json!({"name": "window", "lo": lo, "hi": hi, "serre": serre}), read_algebra(algebra, field))
        }
        Command::Basechange { algebra, field, .. } => (json!({"name": "basechange"}), read_algebra(algebra, field)),
        Command::Verify { family, parameter, field } => (
            json!({"name": "verify", "family": family, "parameter": parameter}),
            Input::builtin(family, *parameter, field.characteristic),
        ),
    };
    let mut echo = echo;
    echo["gldim_bound"] = json!(bound);
    let input = match input {
        Ok(i) => i,
        Err(e) => return Run { echo, hash: None, field: None, outcome: Err(e) },
    };
    let fs = input.field;
    let outcome = match &cli.command {
        Command::Check { .. } => over_field!(fs, check(&input, bound)),
        Command::Tilt { .. } => over_field!(fs, tilt(&input, bound)),
        Command::Gamma { compare, .. } => match compare.parse::<Reference>() {
            Ok(r) => over_field!(fs, gamma_cmd(&input, bound, &r, seed)),
            Err(e) => Err(e),
        },
        Command::Ext { range, .. } => over_field!(fs, ext(&input, bound, *range)),
        Command::Window { lo, hi, serre, .. } => over_field!(fs, window(&input, bound, *lo, *hi, *serre)),
        Command::Basechange { with, .. } => match read_file(with) {
            Ok(c) => over_field!(fs, basechange(&input, &c, bound)),
            Err(e) => Err(e),
        },
        Command::Verify { family, parameter, .. } => match family.parse::<Family>() {
            Ok(f) if *parameter > 0 => {
                if fs.characteristic == 0 {
                    Ok(commands::verify::<Rat>(f, *parameter, fs, bound, seed))
                } else {
                    Ok(commands::verify::<Fp>(f, *parameter, fs, bound, seed))
                }
            }
            Ok(_) => Err(Error::Parse("parameter must be at least 1".into())),
            Err(e) => Err(e),
        },
    };
    Run { echo, hash: Some(input.hash), field: Some(fs), outcome }
}

fn render(run: Run, seed: u64) -> (Code, Value) {
    let field = run.field.map_or(Value::Null, |f| json!({"char": f.characteristic, "name": f.to_string()}));
    let (code, hypotheses, result, error) = match run.outcome {
        Ok(o) => (o.code, o.hypotheses, o.result, None),
        Err(e) => (error_code(&e), None, Value::Null, Some(e.to_string())),
    };
    let mut report = json!({
        "command": run.echo,
        "input_hash": run.hash,
        "field": field,
        "seed": seed,
        "version": env!("CARGO_PKG_VERSION"),
        "status": code.status(),
        "exit_code": code as i32,
        "hypotheses": hypotheses,
        "result": result,
    });
    if let Some(e) = error {
        report["error"] = json!(e);
    }
    (code, report)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (code, report) = match seed(cli.seed) {
        Ok(seed) => render(execute(&cli, seed), seed),
        Err(e) => {
            let run = Run { echo: Value::Null, hash: None, field: None, outcome: Err(e) };
            render(run, cli.seed)
        }
    };
    if let Some(e) = report.get("error").and_then(Value::as_str) {
        eprintln!("qshape: {e}");
    }
    match cli.format {
        Format::Json => println!("{}", serde_json::to_string_pretty(&report).expect("serializable")),
        Format::Text => print!("{}", report::text(&report)),
    }
    ExitCode::from(code as u8)
}
