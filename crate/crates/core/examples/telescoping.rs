//! Rational solutions of `μ·g(x + h) − g(x) = b(x)`.
//!
//! ```text
//! cargo run --example telescoping
//! ```

use difftrans::cli::parse::{parse_expconst, parse_ratfunc};
use difftrans::shift::{ExpPoly, StepH};
use difftrans::solver::{rational_telescope, telescope_component};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let step = StepH::one();
    for (mu, b) in [
        ("1", "1"),
        ("1", "1/(x*(x+1))"),
        ("2", "x"),
        ("1", "x^3"),
        ("1", "1/x"),
        ("1/3", "1/(x^2+1)"),
    ] {
        let mu = parse_expconst(mu)?;
        let b = parse_ratfunc(b)?;
        match rational_telescope(&mu, &b, &step)? {
            Ok(g) => println!("{mu}·g(x+1) - g(x) = {b}: g = {g}"),
            Err(f) => println!(
                "{mu}·g(x+1) - g(x) = {b}: no rational solution ({})",
                f.reason
            ),
        }
    }

    // irrational multipliers mix radical classes
    let mu = parse_expconst("2^(1/2)")?;
    let rhs = ExpPoly::from_ratfunc(parse_ratfunc("x")?);
    match telescope_component(&mu, &rhs, &step)? {
        Ok(g) => println!("{mu}·g(x+1) - g(x) = x: g = {g}"),
        Err(f) => println!("{mu}·g(x+1) - g(x) = x: {}", f.reason),
    }
    Ok(())
}
