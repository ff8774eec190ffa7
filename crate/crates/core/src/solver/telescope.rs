use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exact::{dispersion_set, poly_gcd, Poly, Rat, RatFunc};
use crate::shift::{ExpConst, ExpPoly, StepH};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FailureReason {
    /// The numerator degree bound is negative: no polynomial numerator fits.
    BoundExhausted,
    /// The undetermined-coefficient system has no solution.
    Inconsistent,
}

impl fmt::Display for FailureReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FailureReason::BoundExhausted => "denominator-bound exhausted",
            FailureReason::Inconsistent => "linear-system inconsistent",
        })
    }
}

/// No `ĝ` with coefficients in `ℚ(x)` solves `μ·ρ(ĝ) − ĝ = rhs`.
///
/// `rhs` carries only the unit multiplier 1; radical coefficients appear as
/// separate terms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TelescopeFailure {
    pub multiplier: ExpConst,
    pub rhs: ExpPoly,
    pub reason: FailureReason,
}

/// Solves `μ·ĝ(x + h) − ĝ(x) = b(x)` for `ĝ ∈ ℚ(x)` with rational `μ`.
///
/// `Ok(Err(_))` means no rational solution exists; among several solutions
/// (only possible for `μ = 1`) the one with zero constant term in the
/// numerator basis is returned.
pub fn rational_telescope(
    mu: &ExpConst,
    b: &RatFunc,
    step: &StepH,
) -> Result<std::result::Result<RatFunc, TelescopeFailure>> {
    let r = mu.to_rat().ok_or_else(|| {
        Error::InvalidMultiplier(format!("{mu} is not rational; use telescope_component"))
    })?;
    Ok(
        solve_rational(&r, b, step.value()).map_err(|reason| TelescopeFailure {
            multiplier: mu.clone(),
            rhs: ExpPoly::from_ratfunc(b.clone()),
            reason,
        }),
    )
}

/// Solves `μ·ρ(ĝ) − ĝ = rhs` for any real `μ`, where `rhs` and the solution
/// are radical-coefficient combinations (unit multiplier 1 only).
///
/// With `m` the least power making `μ^m = r` rational, applying
/// `S = Σ_{k<m} (μρ)^k` to both sides gives `r·ρ^m(ĝ) − ĝ = S(rhs)`, which
/// splits over the radical classes into rational problems with step `m·h`.
pub fn telescope_component(
    mu: &ExpConst,
    rhs: &ExpPoly,
    step: &StepH,
) -> Result<std::result::Result<ExpPoly, TelescopeFailure>> {
    if !mu.is_real() {
        return Err(Error::InvalidMultiplier(format!("{mu} is not real")));
    }
    if rhs.terms().any(|t| !t.multiplier.is_one()) {
        return Err(Error::InvalidArgument(
            "telescope right-hand side must have unit multiplier 1".into(),
        ));
    }
    let fail = |reason| TelescopeFailure {
        multiplier: mu.clone(),
        rhs: rhs.clone(),
        reason,
    };
    let m = mu.rational_order() as i64;
    let r = mu.powi(m).to_rat().expect("μ^m is rational");
    let mut reduced = ExpPoly::zero();
    for k in 0..m {
        reduced = &reduced + &rhs.rho(step, k).scale_const(&mu.powi(k))?;
    }
    let big_step = step.times(m);
    let mut solution = ExpPoly::zero();
    for term in reduced.terms() {
        match solve_rational(&r, term.coeff, &big_step) {
            Ok(g) => {
                solution = &solution + &ExpPoly::scaled_term(ExpConst::one(), term.radical, g)?;
            }
            Err(reason) => return Ok(Err(fail(reason))),
        }
    }
    if m > 1 {
        let check = &solution.rho(step, 1).scale_const(mu)? - &solution;
        if &check != rhs {
            return Ok(Err(fail(FailureReason::Inconsistent)));
        }
    }
    Ok(Ok(solution))
}

fn solve_rational(mu: &Rat, b: &RatFunc, h: &Rat) -> std::result::Result<RatFunc, FailureReason> {
    if b.is_zero() {
        return Ok(RatFunc::zero());
    }
    // x = h·t turns the step into 1.
    let bt = b.scale_var(h);
    let u = universal_denominator(bt.den());
    let one = Rat::one();
    let u1 = u.shift(&one);

    // μ·P(t+1)/U(t+1) − P(t)/U(t) = Bn/Bd, cleared of denominators.
    let mut p1 = (&u * bt.den()).scale(mu);
    let mut p0 = -(&u1 * bt.den());
    let mut rhs = &(bt.num() * &u) * &u1;
    let common = poly_gcd(&poly_gcd(&p1, &p0).expect("p1 ≠ 0"), &rhs).expect("nonzero");
    if !common.is_one() {
        p1 = p1.exact_div(&common).expect("gcd divides");
        p0 = p0.exact_div(&common).expect("gcd divides");
        rhs = rhs.exact_div(&common).expect("gcd divides");
    }

    let Some(bound) = degree_bound(&p1, &p0, &rhs) else {
        return Err(FailureReason::BoundExhausted);
    };
    let p = solve_undetermined(&p1, &p0, &rhs, bound).ok_or(FailureReason::Inconsistent)?;
    let g = RatFunc::new(p, u).expect("U is nonzero");
    Ok(g.scale_var(&h.recip()))
}

/// Every denominator of a solution of `μ·y(t+1) − y(t) = B` divides the
/// result, given `den B`.
fn universal_denominator(den_b: &Poly) -> Poly {
    let one = Rat::one();
    let mut a = den_b.shift(&-&one);
    let mut b = den_b.clone();
    let mut u = Poly::one();
    let Some(top) = dispersion_set(&a, &b, &one)
        .expect("nonzero inputs")
        .into_iter()
        .filter(|&k| k >= 0)
        .max()
    else {
        return u;
    };
    for i in (0..=top).rev() {
        let ri = Rat::from_integer(i.into());
        let d = poly_gcd(&a, &b.shift(&ri)).expect("nonzero");
        if d.is_one() {
            continue;
        }
        a = a.exact_div(&d).expect("gcd divides");
        b = b.exact_div(&d.shift(&-&ri)).expect("shifted gcd divides");
        for j in 0..=i {
            u = &u * &d.shift(&-Rat::from_integer(j.into()));
        }
    }
    u
}

/// Upper bound on `deg P` for polynomial solutions of
/// `p1·P(t+1) + p0·P(t) = rhs`; `None` when it is negative.
fn degree_bound(p1: &Poly, p0: &Poly, rhs: &Poly) -> Option<usize> {
    // p1·ΔP + (p1 + p0)·P = rhs
    let q1 = p1;
    let q0 = p1 + p0;
    let b = q0.deg().max(q1.deg() - 1);
    let mut bound = rhs.deg() - b;
    if q0.deg() == b && q1.deg() - 1 == b {
        // leading coefficient of the left side is (lc q0 + d·lc q1)·lc P
        let d = -(q0.lc() / q1.lc());
        if d.is_integer() && !d.is_negative() {
            bound = bound.max(d.to_integer().try_into().unwrap_or(i64::MAX));
        }
    } else if q1.deg() - 1 == b {
        bound = bound.max(0);
    }
    usize::try_from(bound).ok()
}

/// Finds `P` of degree `≤ bound` by undetermined coefficients.
fn solve_undetermined(p1: &Poly, p0: &Poly, rhs: &Poly, bound: usize) -> Option<Poly> {
    let one = Rat::one();
    let columns: Vec<Poly> = (0..=bound)
        .map(|i| {
            let mono = Poly::monomial(Rat::one(), i);
            &(p1 * &mono.shift(&one)) + &(p0 * &mono)
        })
        .collect();
    let rows = columns
        .iter()
        .filter_map(|c| c.degree())
        .chain(rhs.degree())
        .max()
        .map_or(0, |d| d + 1);
    let system: Vec<Vec<Rat>> = (0..rows)
        .map(|r| columns.iter().map(|c| c.coeff(r)).collect())
        .collect();
    let target: Vec<Rat> = (0..rows).map(|r| rhs.coeff(r)).collect();
    solve_linear(system, target).map(Poly::new)
}

/// Gauss–Jordan over ℚ; free variables are set to zero.
pub(crate) fn solve_linear(mut rows: Vec<Vec<Rat>>, mut rhs: Vec<Rat>) -> Option<Vec<Rat>> {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..ncols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        rhs.swap(r, p);
        let inv = rows[r][col].recip();
        for v in rows[r].iter_mut() {
            *v *= &inv;
        }
        rhs[r] *= &inv;
        for i in 0..rows.len() {
            if i == r || rows[i][col].is_zero() {
                continue;
            }
            let factor = rows[i][col].clone();
            let pivot = rows[r].clone();
            for (e, p) in rows[i].iter_mut().zip(&pivot).skip(col) {
                *e -= p * &factor;
            }
            let v = &rhs[r] * &factor;
            rhs[i] -= v;
        }
        pivots.push(col);
        r += 1;
    }
    if rhs[r..].iter().any(|v| !v.is_zero()) {
        return None;
    }
    let mut x = vec![Rat::zero(); ncols];
    for (i, &c) in pivots.iter().enumerate() {
        x[c] = rhs[i].clone();
    }
    Some(x)
}
