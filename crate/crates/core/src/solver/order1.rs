use super::telescope::{telescope_component, TelescopeFailure};
use crate::certify::{coboundary_certify, Certificate, Certification, ObstructionWitness};
use crate::error::{Error, Result};
use crate::exact::RatFunc;
use crate::shift::{ClosedForm, ExpConst, ExpPoly, StepH};

/// Why a solution is differentially transcendental.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Obstruction {
    Witness(ObstructionWitness),
    Telescope(TelescopeFailure),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    /// Differentially algebraic, with an explicit closed form.
    Algebraic {
        form: ClosedForm,
        certificate: Certificate,
    },
    /// Differentially transcendental relative to the rational constant tower.
    Transcendental(Obstruction),
}

impl Verdict {
    pub fn is_algebraic(&self) -> bool {
        matches!(self, Verdict::Algebraic { .. })
    }

    pub fn form(&self) -> Option<&ClosedForm> {
        match self {
            Verdict::Algebraic { form, .. } => Some(form),
            Verdict::Transcendental(_) => None,
        }
    }
}

/// Decides `ρ(y) = a·y + b`.
///
/// After certifying `a = c·ρ(g)/g`, the substitution `y = E_c·g·ŷ` leaves
/// `ρ(ŷ) = ŷ + b′` with `b′ = b/(c·ρ(g)·E_c)`, solved one unit multiplier at a
/// time.
pub fn solve_order1(a: &RatFunc, b: &ExpPoly, step: &StepH) -> Result<Verdict> {
    if a.is_zero() {
        return Err(Error::InvalidEquation("a = 0".into()));
    }
    let cert = match coboundary_certify(a, step)? {
        Certification::Witness(w) => return Ok(Verdict::Transcendental(Obstruction::Witness(w))),
        Certification::Certificate(c) => c,
    };
    let c = &cert.c;
    let g = &cert.g;
    let homogeneous = ExpPoly::term(c.clone(), g.clone())?;
    if b.is_zero() {
        return Ok(Verdict::Algebraic {
            form: ClosedForm {
                value: homogeneous.clone(),
                homogeneous,
                modulo_periodic: true,
            },
            certificate: cert,
        });
    }

    let c_rat = c.to_rat().expect("certificates have rational c");
    let inv = g
        .shift(step.value())
        .scale(&c_rat)
        .recip()
        .expect("g is nonzero");
    let b_prime = b.scale(&inv).mul_unit(&c.inv())?;

    let mut y_hat = ExpPoly::zero();
    for (nu, parts) in b_prime.components() {
        let mut rhs = ExpPoly::zero();
        for (kappa, f) in parts {
            rhs = &rhs + &ExpPoly::scaled_term(ExpConst::one(), &kappa, f)?;
        }
        match telescope_component(&nu, &rhs, step)? {
            Ok(sol) => y_hat = &y_hat + &sol.mul_unit(&nu)?,
            Err(f) => return Ok(Verdict::Transcendental(Obstruction::Telescope(f))),
        }
    }
    let value = y_hat.scale(g).mul_unit(c)?;
    Ok(Verdict::Algebraic {
        form: ClosedForm {
            value,
            homogeneous,
            modulo_periodic: true,
        },
        certificate: cert,
    })
}

/// `ρ(F) − a·F − b`, zero exactly when `F` solves the equation.
pub(crate) fn equation_defect(a: &RatFunc, b: &ExpPoly, f: &ExpPoly, step: &StepH) -> ExpPoly {
    &(&f.rho(step, 1) - &f.scale(a)) - b
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{Poly, Rat};
    use crate::solver::FailureReason;

    fn rf(c: &[i64]) -> RatFunc {
        RatFunc::from_poly(Poly::from_ints(c))
    }

    fn frac(n: &[i64], d: &[i64]) -> RatFunc {
        RatFunc::new(Poly::from_ints(n), Poly::from_ints(d)).unwrap()
    }

    fn e(n: i64) -> ExpConst {
        ExpConst::from_int(n).unwrap()
    }

    #[test]
    fn gamma_is_transcendental() {
        let v = solve_order1(&rf(&[0, 1]), &ExpPoly::zero(), &StepH::one()).unwrap();
        assert!(matches!(
            v,
            Verdict::Transcendental(Obstruction::Witness(_))
        ));
    }

    #[test]
    fn exponential_closed_form() {
        let v = solve_order1(&rf(&[2]), &ExpPoly::zero(), &StepH::one()).unwrap();
        let form = v.form().unwrap();
        assert_eq!(form.value, ExpPoly::unit(e(2)).unwrap());
        assert!(form.modulo_periodic);
    }

    #[test]
    fn affine_examples() {
        let step = StepH::one();
        let v = solve_order1(&RatFunc::one(), &ExpPoly::one(), &step).unwrap();
        assert_eq!(v.form().unwrap().value, ExpPoly::from_ratfunc(rf(&[0, 1])));

        let v = solve_order1(
            &RatFunc::one(),
            &ExpPoly::from_ratfunc(frac(&[1], &[0, 1])),
            &step,
        )
        .unwrap();
        let Verdict::Transcendental(Obstruction::Telescope(f)) = v else {
            panic!("expected a telescoping failure");
        };
        assert_eq!(f.reason, FailureReason::Inconsistent);
    }

    #[test]
    fn forms_satisfy_the_equation() {
        let step = StepH::new(Rat::new(2.into(), 3.into())).unwrap();
        let a = frac(&[-6, -3], &[0, 1]);
        let sqrt3 = e(3).pow(&Rat::new(1.into(), 2.into()));
        // b = ρ(F) − a·F for a planted F
        let planted = &(&ExpPoly::term(e(5), frac(&[1, 1], &[3, 1])).unwrap()
            + &ExpPoly::from_ratfunc(rf(&[0, 0, 1])))
            + &ExpPoly::term(sqrt3, rf(&[0, 1])).unwrap();
        let b = equation_defect(&a, &ExpPoly::zero(), &planted, &step);
        let v = solve_order1(&a, &b, &step).unwrap();
        let form = v.form().expect("closed form");
        assert!(equation_defect(&a, &b, &planted, &step).is_zero());
        assert!(equation_defect(&a, &b, &form.value, &step).is_zero());
        assert!(equation_defect(&a, &ExpPoly::zero(), &form.homogeneous, &step).is_zero());
    }

    #[test]
    fn zero_coefficient_is_rejected() {
        assert!(matches!(
            solve_order1(&RatFunc::zero(), &ExpPoly::one(), &StepH::one()),
            Err(Error::InvalidEquation(_))
        ));
    }
}
