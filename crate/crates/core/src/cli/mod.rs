//! The `difftrans` command line: `certify`, `solve`, `iterate`, `gauge` and
//! `verify`, each printing one canonical JSON document.
//!
//! Exit codes: 0 success, 1 failed re-verification, 2 usage or input error,
//! 10 obstruction (witness or transcendence verdict).

pub mod json;
pub mod parse;

use std::ffi::OsString;
use std::io::{Read, Write};

use clap::{ArgAction, Parser, Subcommand};
use serde_json::{json, Value};

use crate::certify::coboundary_certify;
use crate::error::{Error, Result};
use crate::shift::{gauge_transform, iterate_system, StepH};
use crate::solver::solve_order1;
use crate::verify::{
    numeric_crosscheck_many, verify_certificate, verify_verdict, verify_witness, DEFAULT_STEPS,
    DEFAULT_TOLERANCE,
};
use json::Checkable;
use parse::{parse_integer, parse_ratfunc, parse_rational};

pub const EXIT_OK: i32 = 0;
pub const EXIT_REJECTED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_OBSTRUCTED: i32 = 10;

/// Fixed start points keep `--crosscheck` output reproducible.
pub const CROSSCHECK_STARTS: [f64; 3] = [0.3125, 1.4375, 2.6875];

#[derive(Parser, Debug)]
#[command(
    name = "difftrans",
    about = "Certify differential algebraicity of solutions of ρ(y) = a·y + b",
    disable_help_flag = true,
    disable_help_subcommand = true
)]
struct Cli {
    #[arg(long, action = ArgAction::Help, global = true, help = "Print help")]
    help: Option<bool>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Decide whether a = c·ρ(g)/g
    #[command(disable_help_flag = true)]
    Certify {
        /// Coefficient a as a rational function of x
        #[arg(short = 'a', allow_hyphen_values = true)]
        a: String,
        /// Shift step h, a nonzero rational
        #[arg(short = 'h', allow_hyphen_values = true)]
        h: String,
    },
    /// Decide ρ(y) = a·y + b
    #[command(disable_help_flag = true)]
    Solve {
        /// Coefficient a as a rational function of x
        #[arg(short = 'a', allow_hyphen_values = true)]
        a: String,
        /// Right-hand side: a rational function or a JSON multiplier map
        #[arg(short = 'b', allow_hyphen_values = true)]
        b: String,
        /// Shift step h, a nonzero rational
        #[arg(short = 'h', allow_hyphen_values = true)]
        h: String,
        /// Also compare the closed form against the recurrence in floating point
        #[arg(long)]
        crosscheck: bool,
    },
    /// Iterate a system ℓ times
    #[command(disable_help_flag = true)]
    Iterate {
        /// System document: inline JSON, a file path, or '-'
        #[arg(short = 'A')]
        matrix: String,
        /// Number of iterations, at least 1
        #[arg(short = 'l', allow_hyphen_values = true)]
        l: String,
    },
    /// Apply the gauge transformation ρ(T)·A·T⁻¹
    #[command(disable_help_flag = true)]
    Gauge {
        /// System document: inline JSON, a file path, or '-'
        #[arg(short = 'A')]
        matrix: String,
        /// Gauge matrix document: inline JSON, a file path, or '-'
        #[arg(short = 'T')]
        gauge: String,
    },
    /// Re-verify a certificate, witness or verdict document
    #[command(disable_help_flag = true)]
    Verify {
        /// JSON text, a file path, or '-' for standard input
        input: String,
    },
}

/// Runs the command line against the process's standard streams.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with(args, &mut stdout.lock(), &mut stderr.lock())
}

pub fn run_with<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            if e.use_stderr() {
                let _ = err.write_all(text.as_bytes());
            } else {
                let _ = out.write_all(text.as_bytes());
            }
            return code;
        }
    };
    match dispatch(cli.command) {
        Ok((doc, code)) => {
            let text = serde_json::to_string_pretty(&doc).expect("JSON values serialize");
            let _ = writeln!(out, "{text}");
            code
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_USAGE
        }
    }
}

fn dispatch(command: Command) -> Result<(Value, i32)> {
    match command {
        Command::Certify { a, h } => {
            let a = parse_ratfunc(&a)?;
            let step = StepH::new(parse_rational(&h)?)?;
            let c = coboundary_certify(&a, &step)?;
            let code = if c.is_certificate() {
                EXIT_OK
            } else {
                EXIT_OBSTRUCTED
            };
            Ok((json::certification_json(&a, &step, &c), code))
        }
        Command::Solve {
            a,
            b,
            h,
            crosscheck,
        } => {
            let a = parse_ratfunc(&a)?;
            let b = json::parse_expoly_spec(&b)?;
            let step = StepH::new(parse_rational(&h)?)?;
            let verdict = solve_order1(&a, &b, &step)?;
            let report = match (crosscheck, verdict.form()) {
                (true, Some(form)) => Some(numeric_crosscheck_many(
                    &a,
                    &b,
                    form,
                    &step,
                    &CROSSCHECK_STARTS,
                    DEFAULT_STEPS,
                    DEFAULT_TOLERANCE,
                )?),
                _ => None,
            };
            let code = if verdict.is_algebraic() {
                EXIT_OK
            } else {
                EXIT_OBSTRUCTED
            };
            Ok((
                json::verdict_json(&a, &b, &step, &verdict, report.as_ref()),
                code,
            ))
        }
        Command::Iterate { matrix, l } => {
            let sys = json::system_from_json(&load_json(&matrix)?)?;
            let l = parse_integer(&l)?;
            Ok((json::system_json(&iterate_system(&sys, l)?), EXIT_OK))
        }
        Command::Gauge { matrix, gauge } => {
            let sys = json::system_from_json(&load_json(&matrix)?)?;
            let t = json::gauge_from_json(&load_json(&gauge)?)?;
            Ok((json::system_json(&gauge_transform(&sys, &t)?), EXIT_OK))
        }
        Command::Verify { input } => {
            let doc = load_json(&input)?;
            let (kind, ok) = match json::checkable_from_json(&doc)? {
                Checkable::Certificate { a, step, cert } => {
                    ("certificate", verify_certificate(&a, &cert, &step))
                }
                Checkable::Witness { a, step, witness } => {
                    ("witness", verify_witness(&a, &witness, &step))
                }
                Checkable::Verdict {
                    a,
                    b,
                    step,
                    verdict,
                } => ("verdict", verify_verdict(&a, &b, &verdict, &step)),
            };
            let code = if ok { EXIT_OK } else { EXIT_REJECTED };
            Ok((json!({ "kind": kind, "verified": ok }), code))
        }
    }
}

/// Inline JSON, `-` for standard input, or a file path.
fn load_json(source: &str) -> Result<Value> {
    let text = if source.trim_start().starts_with('{') {
        source.to_string()
    } else if source == "-" {
        let mut buf = String::new();
        std::io::stdin()
            .read_to_string(&mut buf)
            .map_err(|e| Error::InvalidInput(format!("cannot read standard input: {e}")))?;
        buf
    } else {
        std::fs::read_to_string(source)
            .map_err(|e| Error::InvalidInput(format!("cannot read '{source}': {e}")))?
    };
    serde_json::from_str(&text).map_err(|e| Error::Format(format!("invalid JSON: {e}")))
}
