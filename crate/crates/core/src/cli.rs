//! The `qlmass` command line.

use std::ffi::OsString;
use std::io::Read;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::Value;

use crate::algebra::{self, MassFunctional};
use crate::critical;
use crate::embedding;
use crate::error::Error;
use crate::format::{self, fmt_f64};
use crate::generators::{self, GeneratorKind, GeneratorSpec};
use crate::io;
use crate::masses;
use crate::schwarzschild;
use crate::surface::{self, BartnikData};
use crate::verify::{self, Suite};

/// Environment variable holding the default sample count.
pub const SAMPLES_ENV: &str = "QLMASS_SAMPLES";
pub const DEFAULT_SAMPLES: usize = 1024;

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 1;
pub const EXIT_FAILURE: i32 = 2;

/// Outcome of one invocation: exit status, stdout payload, stderr lines.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CommandResult {
    pub status: i32,
    pub payload: String,
    pub diagnostics: Vec<String>,
}

impl CommandResult {
    fn ok(payload: String) -> Self {
        CommandResult {
            status: EXIT_OK,
            payload,
            diagnostics: Vec::new(),
        }
    }

    fn fail(status: i32, message: impl Into<String>) -> Self {
        CommandResult {
            status,
            payload: String::new(),
            diagnostics: vec![message.into()],
        }
    }
}

#[derive(Parser, Debug)]
#[command(
    name = "qlmass",
    version,
    about = "Quasi-local masses of rotationally symmetric Bartnik data"
)]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, global = true)]
    format: Option<Format>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Generate a dataset.
    Gen {
        #[command(subcommand)]
        kind: GenKind,
    },
    /// Check the Bartnik hypotheses and report the geometry.
    Validate {
        /// Dataset path; `-` or omitted reads stdin.
        path: Option<PathBuf>,
        /// Also write the Euclidean profile curve as CSV.
        #[arg(long)]
        embedding_csv: Option<PathBuf>,
    },
    /// Evaluate one mass functional.
    Mass {
        #[arg(long)]
        functional: String,
        path: Option<PathBuf>,
    },
    /// Bracket the critical parameter.
    Lambda0 { path: Option<PathBuf> },
    /// Evaluate `left * right`.
    Star {
        #[arg(long)]
        left: String,
        #[arg(long)]
        right: String,
        path: Option<PathBuf>,
    },
    /// Sample the Schwarzschild inner-mass curve m(λ) on (0, λ_r].
    Curve {
        #[arg(long)]
        mass: f64,
        #[arg(long = "r")]
        r: f64,
        #[arg(long, default_value_t = 100)]
        steps: usize,
    },
    /// Check the curvature identities.
    Verify {
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(short = 'n', long)]
        samples: Option<usize>,
    },
}

#[derive(Args, Debug)]
struct GenOutput {
    #[arg(short = 'n', long)]
    samples: Option<usize>,
    #[arg(short = 'o', long)]
    output: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum GenKind {
    Round {
        #[arg(long)]
        radius: f64,
        #[arg(long = "H")]
        h: f64,
        #[command(flatten)]
        out: GenOutput,
    },
    Schwarzschild {
        #[arg(long)]
        mass: f64,
        #[arg(long = "r")]
        r: f64,
        #[command(flatten)]
        out: GenOutput,
    },
    Ellipsoid {
        #[arg(long = "a")]
        a: f64,
        #[arg(long = "c")]
        c: f64,
        #[command(flatten)]
        out: GenOutput,
    },
    Perturbed {
        #[arg(long)]
        radius: f64,
        #[arg(long = "H")]
        h: f64,
        #[arg(long)]
        amp: f64,
        #[arg(long, default_value_t = 2)]
        mode: u32,
        #[command(flatten)]
        out: GenOutput,
    },
}

fn status_for(err: &Error) -> i32 {
    match err {
        Error::TooFewSamples(_)
        | Error::NonMonotoneGrid(_)
        | Error::GridMismatch { .. }
        | Error::NonPositiveAlpha { .. }
        | Error::NonClosedPole(_)
        | Error::NonFinite(_)
        | Error::NotBartnikData(_)
        | Error::InvalidDocument(_) => EXIT_INVALID,
        _ => EXIT_FAILURE,
    }
}

impl From<Error> for CommandResult {
    fn from(err: Error) -> Self {
        CommandResult::fail(status_for(&err), format!("error: {err}"))
    }
}

fn default_samples() -> Result<usize, CommandResult> {
    match std::env::var(SAMPLES_ENV) {
        Ok(v) => v.trim().parse().map_err(|_| {
            CommandResult::fail(
                EXIT_FAILURE,
                format!("error: {SAMPLES_ENV}={v} is not a sample count"),
            )
        }),
        Err(_) => Ok(DEFAULT_SAMPLES),
    }
}

fn read_input(path: &Option<PathBuf>, stdin: &mut dyn Read) -> Result<BartnikData, CommandResult> {
    let text = match path {
        Some(p) if p.as_os_str() != "-" => std::fs::read_to_string(p).map_err(|e| {
            CommandResult::fail(EXIT_FAILURE, format!("error: {}: {e}", p.display()))
        })?,
        _ => {
            let mut s = String::new();
            stdin
                .read_to_string(&mut s)
                .map_err(|e| CommandResult::fail(EXIT_FAILURE, format!("error: stdin: {e}")))?;
            s
        }
    };
    Ok(io::from_json(&text)?)
}

/// One header line and one row from the scalar leaves of a JSON object;
/// nested keys are joined with `.` and arrays are indexed.
fn json_to_csv(json: &str) -> String {
    fn walk(prefix: &str, v: &Value, keys: &mut Vec<String>, cells: &mut Vec<String>) {
        let key = |k: &str| {
            if prefix.is_empty() {
                k.to_string()
            } else {
                format!("{prefix}.{k}")
            }
        };
        match v {
            Value::Object(map) => map.iter().for_each(|(k, v)| walk(&key(k), v, keys, cells)),
            Value::Array(items) => items
                .iter()
                .enumerate()
                .for_each(|(i, v)| walk(&key(&i.to_string()), v, keys, cells)),
            Value::Number(n) => {
                keys.push(prefix.to_string());
                cells.push(match n.as_f64() {
                    Some(x) if !n.is_i64() && !n.is_u64() => fmt_f64(x),
                    _ => n.to_string(),
                });
            }
            Value::String(s) => {
                keys.push(prefix.to_string());
                cells.push(s.clone());
            }
            Value::Bool(b) => {
                keys.push(prefix.to_string());
                cells.push(b.to_string());
            }
            Value::Null => {
                keys.push(prefix.to_string());
                cells.push(String::new());
            }
        }
    }
    let value: Value = serde_json::from_str(json).expect("payload is JSON");
    let (mut keys, mut cells) = (Vec::new(), Vec::new());
    walk("", &value, &mut keys, &mut cells);
    format!("{}\n{}\n", keys.join(","), cells.join(","))
}

fn emit<T: Serialize>(value: &T, fmt: Format) -> String {
    let json = format::to_json(value);
    match fmt {
        Format::Json => json + "\n",
        Format::Csv => json_to_csv(&json),
    }
}

#[derive(Serialize)]
struct MassReport<'a> {
    functional: String,
    #[serde(flatten)]
    mass: &'a masses::MassValue,
}

#[derive(Serialize)]
struct StarReport {
    left: String,
    right: String,
    left_lambda: f64,
    right_lambda: f64,
    value: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    bounds: Option<[f64; 2]>,
}

#[derive(Serialize)]
struct Written {
    written: String,
    samples: usize,
}

fn evaluate_mass(name: &str, data: &BartnikData) -> Result<masses::MassValue, Error> {
    match name.parse::<MassFunctional>()? {
        MassFunctional::Hawking => masses::hawking(data),
        MassFunctional::BrownYork => masses::brown_york(data),
        MassFunctional::Miao => masses::miao(data),
        MassFunctional::Critical => masses::critical_mass(data, &critical::bracket(data)?),
        f => {
            let e = f.evaluate(data)?;
            Ok(masses::MassValue {
                value: e.value,
                method: if e.bounds.is_some() {
                    masses::Method::Bracketed
                } else {
                    masses::Method::ClosedForm
                },
                bracket: e.bounds,
            })
        }
    }
}

fn dispatch(cli: Cli, stdin: &mut dyn Read) -> Result<CommandResult, CommandResult> {
    let fmt = cli.format;
    let json = fmt.unwrap_or(Format::Json);
    match cli.command {
        Command::Gen { kind } => {
            let (kind, out) = match kind {
                GenKind::Round { radius, h, out } => (GeneratorKind::Round { radius, h }, out),
                GenKind::Schwarzschild { mass, r, out } => {
                    (GeneratorKind::Schwarzschild { mass, r }, out)
                }
                GenKind::Ellipsoid { a, c, out } => (GeneratorKind::Ellipsoid { a, c }, out),
                GenKind::Perturbed {
                    radius,
                    h,
                    amp,
                    mode,
                    out,
                } => (
                    GeneratorKind::PerturbedRound {
                        radius,
                        h,
                        amplitude: amp,
                        mode,
                    },
                    out,
                ),
            };
            let samples = match out.samples {
                Some(n) => n,
                None => default_samples()?,
            };
            let data = generators::generate(&GeneratorSpec::new(kind, samples))?;
            let text = io::to_json(&data) + "\n";
            match out.output {
                Some(path) => {
                    std::fs::write(&path, text).map_err(|e| {
                        CommandResult::fail(EXIT_FAILURE, format!("error: {}: {e}", path.display()))
                    })?;
                    Ok(CommandResult::ok(emit(
                        &Written {
                            written: path.display().to_string(),
                            samples,
                        },
                        json,
                    )))
                }
                None => Ok(CommandResult::ok(text)),
            }
        }
        Command::Validate {
            path,
            embedding_csv,
        } => {
            let data = read_input(&path, stdin)?;
            let report = surface::validate(&data);
            if let Some(csv) = embedding_csv {
                let embedded = embedding::embed_revolution(&data.profile)?;
                embedded.save_csv(&csv).map_err(|e| {
                    CommandResult::fail(EXIT_FAILURE, format!("error: {}: {e}", csv.display()))
                })?;
            }
            let status = if report.diagnostics.is_empty() {
                EXIT_OK
            } else {
                EXIT_INVALID
            };
            Ok(CommandResult {
                status,
                payload: emit(&report, json),
                diagnostics: report.diagnostics.clone(),
            })
        }
        Command::Mass { functional, path } => {
            let data = read_input(&path, stdin)?;
            let mass = evaluate_mass(&functional, &data)?;
            let name = functional.parse::<MassFunctional>()?.to_string();
            Ok(CommandResult::ok(emit(
                &MassReport {
                    functional: name,
                    mass: &mass,
                },
                json,
            )))
        }
        Command::Lambda0 { path } => {
            let data = read_input(&path, stdin)?;
            Ok(CommandResult::ok(emit(&critical::bracket(&data)?, json)))
        }
        Command::Star { left, right, path } => {
            let data = read_input(&path, stdin)?;
            let (f1, f2): (MassFunctional, MassFunctional) = (left.parse()?, right.parse()?);
            let left_lambda = algebra::lambda_of(&f1, &data)?.value;
            let right_lambda = algebra::lambda_of(&f2, &data)?.value;
            let e = algebra::star(f1.clone(), f2.clone()).evaluate(&data)?;
            Ok(CommandResult::ok(emit(
                &StarReport {
                    left: f1.to_string(),
                    right: f2.to_string(),
                    left_lambda,
                    right_lambda,
                    value: e.value,
                    bounds: e.bounds,
                },
                json,
            )))
        }
        Command::Curve { mass, r, steps } => {
            if steps == 0 {
                return Err(CommandResult::fail(
                    EXIT_FAILURE,
                    "error: --steps must be positive",
                ));
            }
            let lambda_r = schwarzschild::lambda_exact(mass, r)?;
            let mut rows = Vec::with_capacity(steps);
            for i in 1..=steps {
                let lambda = if i == steps {
                    lambda_r
                } else {
                    lambda_r * (i as f64 / steps as f64)
                };
                rows.push((lambda, schwarzschild::inner_mass_curve(mass, r, lambda)?));
            }
            let payload = match fmt.unwrap_or(Format::Csv) {
                Format::Csv => {
                    let mut s = String::from("lambda,m_lambda\n");
                    for (l, m) in rows {
                        s += &format!("{},{}\n", fmt_f64(l), fmt_f64(m));
                    }
                    s
                }
                Format::Json => {
                    #[derive(Serialize)]
                    struct Point {
                        lambda: f64,
                        m_lambda: f64,
                    }
                    let points: Vec<Point> = rows
                        .into_iter()
                        .map(|(lambda, m_lambda)| Point { lambda, m_lambda })
                        .collect();
                    format::to_json(&points) + "\n"
                }
            };
            Ok(CommandResult::ok(payload))
        }
        Command::Verify { suite, samples } => {
            let suite: Suite = suite.parse()?;
            let samples = match samples {
                Some(n) => n,
                None => default_samples()?,
            };
            let report = verify::run_suite(suite, samples)?;
            let status = if report.passed() {
                EXIT_OK
            } else {
                EXIT_INVALID
            };
            let diagnostics = report
                .checks
                .iter()
                .filter(|c| !c.passed)
                .map(|c| format!("check failed: {} = {}", c.name, fmt_f64(c.value)))
                .collect();
            Ok(CommandResult {
                status,
                payload: emit(&report, json),
                diagnostics,
            })
        }
    }
}

/// Runs one command with the process stdin.
pub fn run<I, T>(argv: I) -> CommandResult
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    run_with_input(argv, &mut std::io::stdin())
}

pub fn run_with_input<I, T>(argv: I, stdin: &mut dyn Read) -> CommandResult
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => {
                    CommandResult::ok(text)
                }
                _ => CommandResult::fail(EXIT_FAILURE, text.trim_end().to_string()),
            };
        }
    };
    dispatch(cli, stdin).unwrap_or_else(|e| e)
}
