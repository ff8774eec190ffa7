//! Canonical JSON for certificates, witnesses, verdicts, matrix files and
//! numeric reports. Objects are `serde_json::Map`s, whose keys are sorted, and
//! every exact number is a string.

use serde_json::{json, Map, Value};

use super::parse::{parse_expconst, parse_ratfunc, parse_rational};
use crate::certify::{Certificate, Certification, ObstructionWitness, OrbitNote};
use crate::error::{Error, Result};
use crate::exact::{Poly, Rat, RatFunc};
use crate::shift::{ClosedForm, DiffSystem, ExpConst, ExpPoly, Matrix, StepH};
use crate::solver::{FailureReason, Obstruction, TelescopeFailure, Verdict};
use crate::verify::NumericReport;

/// Attached to every transcendence verdict.
pub const SCOPE: &str = "relative to the rational constant tower: coefficients in Q(x), \
constants in Q and its real radicals; descent to complex constants is assumed, not checked";

fn format_err(message: impl Into<String>) -> Error {
    Error::Format(message.into())
}

fn field<'a>(v: &'a Value, key: &str) -> Result<&'a Value> {
    v.get(key)
        .ok_or_else(|| format_err(format!("missing field '{key}'")))
}

fn str_field<'a>(v: &'a Value, key: &str) -> Result<&'a str> {
    field(v, key)?
        .as_str()
        .ok_or_else(|| format_err(format!("field '{key}' must be a string")))
}

fn int_field(v: &Value, key: &str) -> Result<i64> {
    field(v, key)?
        .as_i64()
        .ok_or_else(|| format_err(format!("field '{key}' must be an integer")))
}

pub fn ratfunc_field(v: &Value, key: &str) -> Result<RatFunc> {
    parse_ratfunc(str_field(v, key)?)
}

pub fn step_field(v: &Value, key: &str) -> Result<StepH> {
    StepH::new(parse_rational(str_field(v, key)?)?)
}

fn poly_field(v: &Value, key: &str) -> Result<Poly> {
    let f = ratfunc_field(v, key)?;
    if !f.is_polynomial() {
        return Err(format_err(format!("field '{key}' must be a polynomial")));
    }
    Ok(f.into_parts().0)
}

fn expconst_field(v: &Value, key: &str) -> Result<ExpConst> {
    parse_expconst(str_field(v, key)?)
}

pub fn rat_json(r: &Rat) -> Value {
    Value::String(r.to_string())
}

/// `{multiplier: coefficient}`; a coefficient is an expression string when
/// it is rational and `{radical: expression}` otherwise.
pub fn expoly_json(f: &ExpPoly) -> Value {
    let mut out = Map::new();
    for (mu, parts) in f.components() {
        let value = match parts.as_slice() {
            [(kappa, coeff)] if kappa.is_one() => Value::String(coeff.to_string()),
            _ => Value::Object(
                parts
                    .iter()
                    .map(|(kappa, coeff)| (kappa.to_string(), Value::String(coeff.to_string())))
                    .collect(),
            ),
        };
        out.insert(mu.to_string(), value);
    }
    Value::Object(out)
}

pub fn expoly_from_json(v: &Value) -> Result<ExpPoly> {
    match v {
        Value::String(s) => Ok(ExpPoly::from_ratfunc(parse_ratfunc(s)?)),
        Value::Object(map) => {
            let mut acc = ExpPoly::zero();
            for (mu, coeff) in map {
                let mu = parse_expconst(mu)?;
                match coeff {
                    Value::String(s) => {
                        acc = &acc + &ExpPoly::term(mu, parse_ratfunc(s)?)?;
                    }
                    Value::Object(parts) => {
                        for (kappa, s) in parts {
                            let s = s.as_str().ok_or_else(|| {
                                format_err("radical coefficients must be strings")
                            })?;
                            let kappa = parse_expconst(kappa)?;
                            acc = &acc
                                + &ExpPoly::scaled_term(mu.clone(), &kappa, parse_ratfunc(s)?)?;
                        }
                    }
                    _ => return Err(format_err("coefficients must be strings or objects")),
                }
            }
            Ok(acc)
        }
        _ => Err(format_err(
            "an exponential polynomial is a string or an object",
        )),
    }
}

/// The `-b` argument: JSON object text, or a plain expression for `μ = 1`.
pub fn parse_expoly_spec(text: &str) -> Result<ExpPoly> {
    if text.trim_start().starts_with('{') {
        let v: Value = serde_json::from_str(text).map_err(|e| format_err(e.to_string()))?;
        expoly_from_json(&v)
    } else {
        Ok(ExpPoly::from_ratfunc(parse_ratfunc(text)?))
    }
}

fn certificate_body(cert: &Certificate) -> Map<String, Value> {
    let mut m = Map::new();
    m.insert("c".into(), Value::String(cert.c.to_string()));
    m.insert("g".into(), Value::String(cert.g.to_string()));
    m
}

fn certificate_from_body(v: &Value) -> Result<Certificate> {
    Ok(Certificate {
        c: expconst_field(v, "c")?,
        g: ratfunc_field(v, "g")?,
    })
}

fn orbit_json(note: &OrbitNote) -> Value {
    json!({
        "representative": note.representative.to_string(),
        "members": note
            .members
            .iter()
            .map(|&(k, m)| json!({ "offset": k, "multiplicity": m }))
            .collect::<Vec<_>>(),
        "exponent_sum": note.exponent_sum,
    })
}

fn orbit_from_json(v: &Value) -> Result<OrbitNote> {
    let members = field(v, "members")?
        .as_array()
        .ok_or_else(|| format_err("'members' must be an array"))?
        .iter()
        .map(|m| {
            let k = int_field(m, "offset")?;
            let mult = usize::try_from(int_field(m, "multiplicity")?)
                .map_err(|_| format_err("multiplicity must be nonnegative"))?;
            Ok((k, mult))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(OrbitNote {
        representative: poly_field(v, "representative")?,
        members,
        exponent_sum: int_field(v, "exponent_sum")?,
    })
}

fn witness_body(w: &ObstructionWitness) -> Map<String, Value> {
    let mut m = Map::new();
    m.insert("kind".into(), json!("witness"));
    m.insert("residual".into(), Value::String(w.residual.to_string()));
    m.insert("c".into(), Value::String(w.c.to_string()));
    m.insert("g".into(), Value::String(w.g.to_string()));
    m.insert("orbit_note".into(), orbit_json(&w.orbit_note));
    m
}

fn witness_from_body(v: &Value) -> Result<ObstructionWitness> {
    Ok(ObstructionWitness {
        residual: ratfunc_field(v, "residual")?,
        c: expconst_field(v, "c")?,
        g: ratfunc_field(v, "g")?,
        orbit_note: orbit_from_json(field(v, "orbit_note")?)?,
    })
}

fn failure_json(f: &TelescopeFailure) -> Value {
    json!({
        "kind": "telescope_failure",
        "multiplier": f.multiplier.to_string(),
        "rhs": expoly_json(&f.rhs),
        "reason": f.reason.to_string(),
    })
}

fn failure_from_json(v: &Value) -> Result<TelescopeFailure> {
    let reason = match str_field(v, "reason")? {
        s if s == FailureReason::BoundExhausted.to_string() => FailureReason::BoundExhausted,
        s if s == FailureReason::Inconsistent.to_string() => FailureReason::Inconsistent,
        other => return Err(format_err(format!("unknown failure reason '{other}'"))),
    };
    Ok(TelescopeFailure {
        multiplier: expconst_field(v, "multiplier")?,
        rhs: expoly_from_json(field(v, "rhs")?)?,
        reason,
    })
}

fn header(kind: &str, a: &RatFunc, step: &StepH) -> Map<String, Value> {
    let mut m = Map::new();
    m.insert("kind".into(), json!(kind));
    m.insert("a".into(), Value::String(a.to_string()));
    m.insert("h".into(), rat_json(step.value()));
    m
}

/// Output of `certify`.
pub fn certification_json(a: &RatFunc, step: &StepH, c: &Certification) -> Value {
    match c {
        Certification::Certificate(cert) => {
            let mut m = header("certificate", a, step);
            m.extend(certificate_body(cert));
            Value::Object(m)
        }
        Certification::Witness(w) => {
            let mut m = header("witness", a, step);
            m.extend(witness_body(w));
            m.insert("scope".into(), json!(SCOPE));
            Value::Object(m)
        }
    }
}

pub fn closed_form_json(form: &ClosedForm) -> Value {
    json!({
        "value": expoly_json(&form.value),
        "homogeneous": expoly_json(&form.homogeneous),
        "modulo_periodic": form.modulo_periodic,
        "text": form.value.to_string(),
    })
}

/// Output of `solve`.
pub fn verdict_json(
    a: &RatFunc,
    b: &ExpPoly,
    step: &StepH,
    verdict: &Verdict,
    numeric: Option<&NumericReport>,
) -> Value {
    let mut m = header("verdict", a, step);
    m.insert("b".into(), expoly_json(b));
    match verdict {
        Verdict::Algebraic { form, certificate } => {
            m.insert("verdict".into(), json!("DA"));
            m.insert(
                "certificate".into(),
                Value::Object(certificate_body(certificate)),
            );
            m.insert("form".into(), closed_form_json(form));
        }
        Verdict::Transcendental(ob) => {
            m.insert("verdict".into(), json!("DT"));
            m.insert("scope".into(), json!(SCOPE));
            let body = match ob {
                Obstruction::Witness(w) => Value::Object(witness_body(w)),
                Obstruction::Telescope(f) => failure_json(f),
            };
            m.insert("obstruction".into(), body);
        }
    }
    if let Some(r) = numeric {
        m.insert("numeric".into(), numeric_report_json(r));
    }
    Value::Object(m)
}

pub fn numeric_report_json(r: &NumericReport) -> Value {
    json!({
        "sample_points": r
            .sample_points
            .iter()
            .map(|&(x0, steps)| json!({ "x0": x0, "steps": steps }))
            .collect::<Vec<_>>(),
        "max_relative_error": r.max_relative_error,
        "passed": r.passed,
    })
}

/// A document `verify` can re-check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Checkable {
    Certificate {
        a: RatFunc,
        step: StepH,
        cert: Certificate,
    },
    Witness {
        a: RatFunc,
        step: StepH,
        witness: ObstructionWitness,
    },
    Verdict {
        a: RatFunc,
        b: ExpPoly,
        step: StepH,
        verdict: Verdict,
    },
}

pub fn checkable_from_json(v: &Value) -> Result<Checkable> {
    let a = ratfunc_field(v, "a")?;
    let step = step_field(v, "h")?;
    match str_field(v, "kind")? {
        "certificate" => Ok(Checkable::Certificate {
            a,
            step,
            cert: certificate_from_body(v)?,
        }),
        "witness" => Ok(Checkable::Witness {
            a,
            step,
            witness: witness_from_body(v)?,
        }),
        "verdict" => {
            let b = expoly_from_json(field(v, "b")?)?;
            let verdict = match str_field(v, "verdict")? {
                "DA" => {
                    let form = field(v, "form")?;
                    Verdict::Algebraic {
                        certificate: certificate_from_body(field(v, "certificate")?)?,
                        form: ClosedForm {
                            value: expoly_from_json(field(form, "value")?)?,
                            homogeneous: expoly_from_json(field(form, "homogeneous")?)?,
                            modulo_periodic: field(form, "modulo_periodic")?
                                .as_bool()
                                .ok_or_else(|| format_err("'modulo_periodic' must be a boolean"))?,
                        },
                    }
                }
                "DT" => {
                    let ob = field(v, "obstruction")?;
                    Verdict::Transcendental(match str_field(ob, "kind")? {
                        "witness" => Obstruction::Witness(witness_from_body(ob)?),
                        "telescope_failure" => Obstruction::Telescope(failure_from_json(ob)?),
                        other => {
                            return Err(format_err(format!("unknown obstruction kind '{other}'")))
                        }
                    })
                }
                other => return Err(format_err(format!("unknown verdict '{other}'"))),
            };
            Ok(Checkable::Verdict {
                a,
                b,
                step,
                verdict,
            })
        }
        other => Err(format_err(format!("unknown document kind '{other}'"))),
    }
}

/// `{"h": "<rat>", "matrix": [["<expr>", ...], ...]}`
pub fn system_json(sys: &DiffSystem) -> Value {
    json!({
        "h": rat_json(sys.step().value()),
        "matrix": sys
            .matrix()
            .rows()
            .map(|row| row.iter().map(|e| e.to_string()).collect::<Vec<_>>())
            .collect::<Vec<_>>(),
    })
}

fn matrix_from_json(v: &Value) -> Result<Matrix> {
    let rows = field(v, "matrix")?
        .as_array()
        .ok_or_else(|| format_err("'matrix' must be an array of rows"))?
        .iter()
        .map(|row| {
            row.as_array()
                .ok_or_else(|| format_err("each matrix row must be an array"))?
                .iter()
                .map(|e| {
                    e.as_str()
                        .ok_or_else(|| format_err("matrix entries must be strings"))
                        .and_then(parse_ratfunc)
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    Matrix::from_rows(rows)
}

pub fn system_from_json(v: &Value) -> Result<DiffSystem> {
    DiffSystem::new(step_field(v, "h")?, matrix_from_json(v)?)
}

/// A gauge file: the same layout; `h` is optional and ignored.
pub fn gauge_from_json(v: &Value) -> Result<Matrix> {
    matrix_from_json(v)
}
