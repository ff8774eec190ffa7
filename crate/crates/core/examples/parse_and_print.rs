//! Parses rational functions and exponential polynomials, prints their
//! canonical forms and the JSON the command line emits.
//!
//! ```text
//! cargo run --example parse_and_print
//! ```

use difftrans::cli::json::{expoly_json, parse_expoly_spec};
use difftrans::cli::parse::{parse_expconst, parse_ratfunc};

fn main() {
    for text in [
        "(x+2)/x",
        "x^2 - 3*x + 1/2",
        "(2*x^2-2)/(4*x-4)",
        "x^(-2)",
        "x+",
    ] {
        match parse_ratfunc(text) {
            Ok(f) => println!("{text:>20} -> {f}  (num {}, den {})", f.num(), f.den()),
            Err(e) => println!("{text:>20} -> error: {e}"),
        }
    }
    for text in ["12^(1/2)", "-8^(1/3)", "(2/3)^(-2)"] {
        match parse_expconst(text) {
            Ok(c) => println!("{text:>20} -> {c}"),
            Err(e) => println!("{text:>20} -> error: {e}"),
        }
    }
    let f = parse_expoly_spec(r#"{"2": "x", "1": "1/x", "3": {"2^(1/2)": "x+1"}}"#)
        .expect("valid spec");
    println!("{f}");
    println!(
        "{}",
        serde_json::to_string_pretty(&expoly_json(&f)).expect("serializable")
    );
}
