//! Front end for `twind-core`: problem documents in, result documents out.
//!
//! Every subcommand reads an optional JSON problem document (`--problem`)
//! and folds the remaining flags into it, flags taking precedence. The
//! result is printed as one JSON document on standard output. Exit status is
//! 0 on success, 1 on domain errors, schema violations or failed checks, and
//! 2 on usage errors.

pub mod commands;
pub mod context;
pub mod error;
pub mod expr;
pub mod problem;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser};
use serde_json::{json, Map, Value};

pub use commands::Command;
pub use error::CliError;
pub use problem::{parse_problem, ProblemDocument};

#[derive(Debug, Parser)]
#[command(
    name = "twind",
    version,
    about = "Twisted Spin^c-induction for compact Lie groups"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    opts: Opts,
}

#[derive(Debug, Args)]
struct Opts {
    /// JSON problem document; flags override its fields.
    #[arg(long, global = true, value_name = "FILE")]
    problem: Option<PathBuf>,
    /// Root datum label, e.g. G2, B3:spin, A2:adj, A1xA1xT1.
    #[arg(long, global = true)]
    group: Option<String>,
    /// Preset (t, g, long, levi:1,2, so3xso4, a2long, b4, a1xa1),
    /// `roots:i,j,..` (0-based positive roots) or `simple:i,j,..` (0-based).
    #[arg(long, global = true)]
    subgroup: Option<String>,
    /// Twist σ as a weight expression.
    #[arg(long, global = true)]
    twist: Option<String>,
    /// Torus element expression, e.g. `e^rhoG`, `unit`, `VH(w1)*e^rhoM`.
    #[arg(long, global = true, allow_hyphen_values = true)]
    input: Option<String>,
    /// Weight expression, e.g. `rhoM + w1` or `[1, 0, -1]`.
    #[arg(long, global = true, allow_hyphen_values = true)]
    weight: Option<String>,
    /// Pairing twist τ as a weight expression.
    #[arg(long, global = true, allow_hyphen_values = true)]
    tau: Option<String>,
    /// Character γ in X(H), comma-separated integers.
    #[arg(long, global = true, allow_hyphen_values = true)]
    gamma: Option<String>,
    /// Signs ±1 over the positive roots of M, comma-separated.
    #[arg(long, global = true, allow_hyphen_values = true)]
    signs: Option<String>,
    #[arg(long, global = true, value_parser = ["twisted", "holomorphic", "spin", "spinc"])]
    kind: Option<String>,
    /// Euler class for `lefschetz`.
    #[arg(long, global = true, value_parser = ["dirac", "hdr"])]
    euler: Option<String>,
    /// Sample points for `lefschetz`.
    #[arg(long, global = true)]
    trials: Option<u64>,
    /// Comma-separated suites for `verify`, or `all`.
    #[arg(long, global = true)]
    suite: Option<String>,
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Refuse to enumerate Weyl groups larger than this.
    #[arg(long, global = true)]
    max_weyl_order: Option<u64>,
    /// Include wall-clock timing in the result document.
    #[arg(long, global = true)]
    timing: bool,
}

fn int_list(text: &str, pointer: &str) -> Result<Value, CliError> {
    let inner = text.trim().trim_start_matches('[').trim_end_matches(']');
    let mut out = Vec::new();
    for (i, t) in inner
        .split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .enumerate()
    {
        let x: i64 = t.parse().map_err(|_| CliError::Schema {
            pointer: format!("{pointer}/{i}"),
            message: format!("expected an integer, found `{t}`"),
        })?;
        out.push(json!(x));
    }
    Ok(Value::Array(out))
}

fn subgroup_value(text: &str) -> Result<Value, CliError> {
    for key in ["roots", "simple"] {
        if let Some(rest) = text.strip_prefix(key).and_then(|r| r.strip_prefix(':')) {
            let list = int_list(rest, &format!("/subgroup/{key}"))?;
            return Ok(json!({ key: list }));
        }
    }
    Ok(json!(text))
}

/// Reads the problem file (if any) and overlays the flags.
fn assemble(opts: &Opts) -> Result<ProblemDocument, CliError> {
    let mut doc = match &opts.problem {
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| CliError::Io(format!("cannot read {}: {e}", path.display())))?;
            let v: Value = serde_json::from_str(&text).map_err(|e| CliError::Schema {
                pointer: String::new(),
                message: format!("malformed JSON: {e}"),
            })?;
            match v {
                Value::Object(m) => m,
                other => {
                    return Err(CliError::Schema {
                        pointer: String::new(),
                        message: format!("expected an object, found {other}"),
                    })
                }
            }
        }
        None => Map::new(),
    };
    let mut set = |k: &str, v: Value| {
        doc.insert(k.to_string(), v);
    };
    let strings = [
        ("group", &opts.group),
        ("twist", &opts.twist),
        ("input", &opts.input),
        ("weight", &opts.weight),
        ("tau", &opts.tau),
        ("kind", &opts.kind),
        ("euler", &opts.euler),
        ("suite", &opts.suite),
    ];
    for (k, v) in strings {
        if let Some(s) = v {
            set(k, json!(s));
        }
    }
    if let Some(s) = &opts.subgroup {
        set("subgroup", subgroup_value(s)?);
    }
    if let Some(s) = &opts.gamma {
        set("gamma", int_list(s, "/gamma")?);
    }
    if let Some(s) = &opts.signs {
        set("signs", int_list(s, "/signs")?);
    }
    for (k, v) in [
        ("trials", opts.trials),
        ("seed", opts.seed),
        ("max_weyl_order", opts.max_weyl_order),
    ] {
        if let Some(x) = v {
            set(k, json!(x));
        }
    }
    problem::problem_from_value(&Value::Object(doc))
}

fn emit(out: &mut dyn Write, v: &Value) {
    let text = serde_json::to_string_pretty(v).expect("documents serialize");
    // A closed pipe is not worth a panic.
    let _ = writeln!(out, "{text}").and_then(|_| out.flush());
}

/// Runs `f`, turning a panic into an error record. Arithmetic overflow
/// panics because overflow checks are on in every profile.
fn guarded<T>(f: impl FnOnce() -> Result<T, CliError>) -> Result<T, CliError> {
    let prev = std::panic::take_hook();
    std::panic::set_hook(Box::new(|_| {}));
    let r = std::panic::catch_unwind(std::panic::AssertUnwindSafe(f));
    std::panic::set_hook(prev);
    r.unwrap_or_else(|payload| {
        let msg = payload
            .downcast_ref::<&str>()
            .map(|s| s.to_string())
            .or_else(|| payload.downcast_ref::<String>().cloned())
            .unwrap_or_else(|| "unknown panic".into());
        Err(if msg.contains("overflow") {
            CliError::Core(twind_core::Error::Overflow("arithmetic"))
        } else {
            CliError::Core(twind_core::Error::InternalInconsistency(msg))
        })
    })
}

/// Runs one invocation and returns the exit status.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let sink: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(sink, "{}", e.render());
            return code;
        }
    };
    let start = Instant::now();
    let outcome = assemble(&cli.opts)
        .and_then(|doc| guarded(|| commands::execute(cli.command, &doc)).map(|o| (doc, o)));
    match outcome {
        Ok((doc, o)) => {
            let mut v = json!({
                "command": cli.command.name(),
                "problem": doc.to_value(),
            });
            if let Some(d) = o.diagnostics {
                v["diagnostics"] = d;
            }
            v["result"] = o.result;
            v["passed"] = json!(o.passed);
            if cli.opts.timing {
                v["timing"] = json!({"seconds": start.elapsed().as_secs_f64()});
            }
            emit(out, &v);
            if o.passed {
                0
            } else {
                1
            }
        }
        Err(e) => {
            emit(out, &e.to_value());
            let _ = writeln!(err, "twind: {e}");
            1
        }
    }
}
