//! Independent checks of certifier and solver output: exact identities and a
//! floating-point recurrence cross-check.

use num_traits::One;

use crate::certify::{Certificate, ObstructionWitness};
use crate::error::{Error, Result};
use crate::exact::{dispersion_set, rat_to_f64, Poly, Rat, RatFunc};
use crate::shift::{ClosedForm, ExpPoly, StepH};
use crate::solver::{equation_defect, telescope_component, Obstruction, TelescopeFailure, Verdict};

pub const DEFAULT_TOLERANCE: f64 = 1e-9;
pub const DEFAULT_STEPS: usize = 50;
pub const DEFAULT_START_POINTS: usize = 3;

/// `a·g = c·ρ(g)` exactly.
pub fn verify_certificate(a: &RatFunc, cert: &Certificate, step: &StepH) -> bool {
    let Some(c) = cert.c.to_rat() else {
        return false;
    };
    !cert.g.is_zero() && a * &cert.g == cert.g.shift(step.value()).scale(&c)
}

/// `ρ(F) = a·F + b` exactly, term by term.
pub fn verify_closed_form(a: &RatFunc, b: &ExpPoly, form: &ClosedForm, step: &StepH) -> bool {
    equation_defect(a, b, &form.value, step).is_zero()
        && !form.homogeneous.is_zero()
        && equation_defect(a, &ExpPoly::zero(), &form.homogeneous, step).is_zero()
}

/// Checks every stated property of a witness: the identity
/// `a·g = c·ρ(g)·residual`, that no shift relation is left, and that the orbit
/// note describes factors of the residual with a nonzero exponent sum.
pub fn verify_witness(a: &RatFunc, w: &ObstructionWitness, step: &StepH) -> bool {
    let Some(c) = w.c.to_rat() else {
        return false;
    };
    if w.residual.is_one() || w.g.is_zero() || w.residual.leading_quotient() != Rat::one() {
        return false;
    }
    if a * &w.g != &w.g.shift(step.value()).scale(&c) * &w.residual {
        return false;
    }
    let (num, den) = (w.residual.num(), w.residual.den());
    if !num.is_monic() || !dispersion_set(num, den, step.value()).is_ok_and(|s| s.is_empty()) {
        return false;
    }
    let note = &w.orbit_note;
    if note.exponent_sum == 0 || note.representative.is_constant() || note.members.is_empty() {
        return false;
    }
    let side = if note.exponent_sum > 0 { num } else { den };
    let mut total = 0i64;
    for &(k, m) in &note.members {
        let factor = note.representative.shift(&step.times(k)).pow(m as u32);
        if !factor.divides(side) {
            return false;
        }
        total += m as i64;
    }
    total == note.exponent_sum.abs()
}

/// Re-running the telescoper on the recorded problem reproduces the failure.
pub fn verify_telescope_failure(f: &TelescopeFailure, step: &StepH) -> bool {
    matches!(telescope_component(&f.multiplier, &f.rhs, step), Ok(Err(ref g)) if g == f)
}

/// Re-verifies any verdict for `ρ(y) = a·y + b` without trusting the solver.
pub fn verify_verdict(a: &RatFunc, b: &ExpPoly, verdict: &Verdict, step: &StepH) -> bool {
    match verdict {
        Verdict::Algebraic { form, certificate } => {
            verify_certificate(a, certificate, step) && verify_closed_form(a, b, form, step)
        }
        Verdict::Transcendental(Obstruction::Witness(w)) => verify_witness(a, w, step),
        Verdict::Transcendental(Obstruction::Telescope(f)) => verify_telescope_failure(f, step),
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct NumericReport {
    pub sample_points: Vec<(f64, usize)>,
    pub max_relative_error: f64,
    pub passed: bool,
}

/// Iterates `y_{k+1} = a(x₀ + kh)·y_k + b(x₀ + kh)` from `y₀ = F(x₀)` and
/// compares with `F(x₀ + kh)`, scaling errors by `max(|F|, 1)`.
pub fn numeric_crosscheck(
    a: &RatFunc,
    b: &ExpPoly,
    form: &ClosedForm,
    step: &StepH,
    x0: f64,
    steps: usize,
    tol: f64,
) -> Result<NumericReport> {
    numeric_crosscheck_many(a, b, form, step, &[x0], steps, tol)
}

pub fn numeric_crosscheck_many(
    a: &RatFunc,
    b: &ExpPoly,
    form: &ClosedForm,
    step: &StepH,
    starts: &[f64],
    steps: usize,
    tol: f64,
) -> Result<NumericReport> {
    for unit in form.value.terms().chain(b.terms()) {
        if !unit.multiplier.is_positive() {
            return Err(Error::UnsupportedEvaluation(format!(
                "multiplier {} has no real logarithm",
                unit.multiplier
            )));
        }
    }
    let h = rat_to_f64(step.value());
    let mut max_err: f64 = 0.0;
    let mut finite = true;
    for &x0 in starts {
        let mut y = form.value.eval_f64(x0, step)?.ok_or(Error::Pole(0))?;
        for k in 0..steps {
            let x = x0 + k as f64 * h;
            let ak = a.eval_f64(x).ok_or(Error::Pole(k))?;
            let bk = b.eval_f64(x, step)?.ok_or(Error::Pole(k))?;
            y = ak * y + bk;
            let expected = form
                .value
                .eval_f64(x + h, step)?
                .ok_or(Error::Pole(k + 1))?;
            if !y.is_finite() || !expected.is_finite() {
                finite = false;
                break;
            }
            let err = (y - expected).abs() / expected.abs().max(1.0);
            max_err = max_err.max(err);
        }
    }
    Ok(NumericReport {
        sample_points: starts.iter().map(|&x| (x, steps)).collect(),
        max_relative_error: max_err,
        passed: finite && max_err <= tol,
    })
}

/// True when `p` vanishes nowhere on `x₀ + k·h` for `0 ≤ k ≤ steps`, within
/// a margin that keeps floating evaluation well conditioned.
pub fn orbit_avoids_roots(p: &Poly, x0: f64, h: f64, steps: usize) -> bool {
    (0..=steps).all(|k| p.eval_f64(x0 + k as f64 * h).abs() > 1e-6)
}
