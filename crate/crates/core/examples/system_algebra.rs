//! Iteration, gauge transformation and companion systems for `Y(x + h) = A·Y`.
//!
//! ```text
//! cargo run --example system_algebra
//! ```

use difftrans::cli::parse::parse_ratfunc;
use difftrans::exact::RatFunc;
use difftrans::shift::{
    companion_from_scalar, gauge_transform, iterate_system, scalar_relation, system_det,
    DiffSystem, ExpConst, ExpPoly, Matrix, StepH,
};

fn matrix(rows: &[&[&str]]) -> Result<Matrix, Box<dyn std::error::Error>> {
    let rows = rows
        .iter()
        .map(|r| {
            r.iter()
                .map(|e| parse_ratfunc(e))
                .collect::<Result<Vec<RatFunc>, _>>()
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Matrix::from_rows(rows)?)
}

fn show(label: &str, m: &Matrix) {
    println!("{label}:");
    for row in m.rows() {
        let cells: Vec<String> = row.iter().map(ToString::to_string).collect();
        println!("  [{}]", cells.join(", "));
    }
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let step = StepH::one();
    let a = DiffSystem::new(step.clone(), matrix(&[&["x", "1"], &["0", "2"]])?)?;
    show("A", a.matrix());

    let a3 = iterate_system(&a, 3)?;
    show("A_[3] (step 3)", a3.matrix());
    println!("det A_[3] = {}", system_det(&a3));

    let t = matrix(&[&["1", "x"], &["0", "1"]])?;
    show("rho(T)·A·T^-1", gauge_transform(&a, &t)?.matrix());

    // f = 2^x·x + 3^x satisfies a second-order relation; its companion system
    // acts on (f, rho(f))
    let f = &ExpPoly::term(ExpConst::from_int(2)?, parse_ratfunc("x")?)?
        + &ExpPoly::unit(ExpConst::from_int(3)?)?;
    let coeffs = scalar_relation(&f, &step)?;
    let rendered: Vec<String> = coeffs.iter().map(ToString::to_string).collect();
    println!(
        "relation coefficients for f = {f}: [{}]",
        rendered.join(", ")
    );
    let companion = companion_from_scalar(&coeffs, &step)?;
    show("companion", companion.matrix());
    let y: Vec<ExpPoly> = (0..companion.dim() as i64)
        .map(|k| f.rho(&step, k))
        .collect();
    let lhs: Vec<ExpPoly> = y.iter().map(|e| e.rho(&step, 1)).collect();
    println!("rho(Y) = A·Y: {}", companion.matrix().apply(&y)? == lhs);
    Ok(())
}
