//! The Gamma recurrence `Γ(x + 1) = x·Γ(x)` admits no coboundary
//! `x = c·g(x + 1)/g(x)`, so Γ is differentially transcendental.
//!
//! ```text
//! cargo run --example gamma_witness
//! ```

use difftrans::certify::{coboundary_certify, Certification};
use difftrans::cli::parse::parse_ratfunc;
use difftrans::shift::StepH;
use difftrans::verify::verify_witness;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let step = StepH::one();
    for text in ["x", "(x+2)/x", "x*(x+1)/((x+3)*(x+4))", "(x^2+1)/x"] {
        let a = parse_ratfunc(text)?;
        match coboundary_certify(&a, &step)? {
            Certification::Certificate(cert) => {
                println!("a = {a}: certificate c = {}, g = {}", cert.c, cert.g);
            }
            Certification::Witness(w) => {
                let note = &w.orbit_note;
                println!(
                    "a = {a}: witness, residual {}, orbit of {} with exponent sum {} (verified: {})",
                    w.residual,
                    note.representative,
                    note.exponent_sum,
                    verify_witness(&a, &w, &step)
                );
            }
        }
    }
    Ok(())
}
