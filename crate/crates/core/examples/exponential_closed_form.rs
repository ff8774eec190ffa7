//! Solves homogeneous and affine first-order equations `y(x + h) = a·y + b`
//! and prints the closed forms, which hold modulo h-periodic constants.
//!
//! ```text
//! cargo run --example exponential_closed_form
//! ```

use difftrans::cli::json::parse_expoly_spec;
use difftrans::cli::parse::{parse_ratfunc, parse_rational};
use difftrans::shift::StepH;
use difftrans::solver::{solve_order1, Obstruction, Verdict};
use difftrans::verify::verify_verdict;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let problems = [
        ("2", "0", "1"),
        ("3*(x+1)/x", "0", "1"),
        ("1", "1", "1"),
        ("2", "x", "1/2"),
        ("1", r#"{"3": "x", "1": "1/(x^2+x)"}"#, "1"),
        ("(x+1)/x", r#"{"2^(1/2)": "1"}"#, "1"),
        ("1", "1/x", "1"),
    ];
    for (a, b, h) in problems {
        let a = parse_ratfunc(a)?;
        let b = parse_expoly_spec(b)?;
        let step = StepH::new(parse_rational(h)?)?;
        let verdict = solve_order1(&a, &b, &step)?;
        let ok = verify_verdict(&a, &b, &verdict, &step);
        match &verdict {
            Verdict::Algebraic { form, .. } => println!(
                "a = {a}, b = {b}, h = {h}: y = {} + C·{}  (verified: {ok})",
                form.value, form.homogeneous
            ),
            Verdict::Transcendental(Obstruction::Witness(w)) => {
                println!(
                    "a = {a}, b = {b}, h = {h}: transcendental, residual {}",
                    w.residual
                )
            }
            Verdict::Transcendental(Obstruction::Telescope(f)) => {
                println!(
                    "a = {a}, b = {b}, h = {h}: transcendental, {} for multiplier {}",
                    f.reason, f.multiplier
                )
            }
        }
    }
    Ok(())
}
