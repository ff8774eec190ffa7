//! Compares a closed form against the floating-point recurrence it claims to
//! solve.
//!
//! ```text
//! cargo run --example numeric_crosscheck
//! ```

use difftrans::cli::json::parse_expoly_spec;
use difftrans::cli::parse::parse_ratfunc;
use difftrans::shift::StepH;
use difftrans::solver::solve_order1;
use difftrans::verify::{numeric_crosscheck_many, DEFAULT_STEPS, DEFAULT_TOLERANCE};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let step = StepH::one();
    let starts = [0.3125, 1.4375, 2.6875];
    for (a, b) in [
        ("2", "0"),
        ("(x+1)/x", "x+1"),
        ("1", r#"{"3": "x", "1": "1/(x^2+x)"}"#),
        ("1/2", r#"{"2^(1/2)": "1"}"#),
    ] {
        let a = parse_ratfunc(a)?;
        let b = parse_expoly_spec(b)?;
        let verdict = solve_order1(&a, &b, &step)?;
        let Some(form) = verdict.form() else {
            println!("a = {a}, b = {b}: no closed form");
            continue;
        };
        let report = numeric_crosscheck_many(
            &a,
            &b,
            form,
            &step,
            &starts,
            DEFAULT_STEPS,
            DEFAULT_TOLERANCE,
        )?;
        println!(
            "a = {a}, b = {b}: y = {}, max relative error {:.2e}, passed {}",
            form.value, report.max_relative_error, report.passed
        );
    }
    Ok(())
}
