//! Certifies `det A = c·ρ(g)/g` and rescales the system by `c^(−1/n)`.
//!
//! ```text
//! cargo run --example det_criterion
//! ```

use difftrans::certify::{det_criterion_rescale, DetCriterion};
use difftrans::cli::parse::parse_ratfunc;
use difftrans::exact::RatFunc;
use difftrans::shift::{system_det, DiffSystem, Matrix, StepH};

fn system(rows: &[&[&str]]) -> Result<DiffSystem, Box<dyn std::error::Error>> {
    let rows = rows
        .iter()
        .map(|r| {
            r.iter()
                .map(|e| parse_ratfunc(e))
                .collect::<Result<Vec<RatFunc>, _>>()
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(DiffSystem::new(StepH::one(), Matrix::from_rows(rows)?)?)
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let cases = [
        system(&[&["(x+1)/x", "0"], &["0", "2"]])?,
        system(&[&["2", "1"], &["0", "3"]])?,
        system(&[&["x", "1"], &["0", "1"]])?,
    ];
    for a in &cases {
        print!("det A = {}: ", system_det(a));
        match det_criterion_rescale(a)? {
            DetCriterion::Rescaled {
                certificate,
                system,
            } => {
                println!(
                    "c = {}, g = {}, scalar c^(-1/{}) = {}",
                    certificate.c,
                    certificate.g,
                    a.dim(),
                    system.scalar
                );
                if let Some(b) = system.to_rational_system() {
                    println!("  rescaled det = {}", system_det(&b));
                }
            }
            DetCriterion::Witness(w) => println!("witness with residual {}", w.residual),
        }
    }
    Ok(())
}
