//! Exponential polynomials `Σ κ·f(x)·E_μ` over ℚ(x).

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::{ExpConst, StepH};
use crate::error::{Error, Result};
use crate::exact::{rat_to_f64, RatFunc};

/// A finite sum of terms `κ · f(x) · E_μ`.
///
/// * `μ` is a real [`ExpConst`] naming the exponential unit, `ρ(E_μ) = μ·E_μ`.
/// * `κ` is a positive radical constant with exponents in `[0, 1)`; it is `1`
///   whenever every multiplier involved is rational, and only appears when
///   shifting a unit with an irrational multiplier.
/// * `f` is a nonzero rational function.
///
/// Distinct `(μ, κ)` keys are linearly independent over ℚ(x), so the map is a
/// canonical form and structural equality is equality of functions.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct ExpPoly {
    terms: BTreeMap<(ExpConst, ExpConst), RatFunc>,
}

/// One term of an [`ExpPoly`].
#[derive(Clone, Copy, Debug)]
pub struct ExpTerm<'a> {
    pub multiplier: &'a ExpConst,
    pub radical: &'a ExpConst,
    pub coeff: &'a RatFunc,
}

fn check_real(mu: &ExpConst) -> Result<()> {
    if mu.is_real() {
        Ok(())
    } else {
        Err(Error::InvalidMultiplier(format!(
            "{mu} is not real; exponential units need real multipliers"
        )))
    }
}

impl ExpPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from_ratfunc(RatFunc::one())
    }

    pub fn from_ratfunc(f: RatFunc) -> Self {
        let mut out = Self::zero();
        out.add_term(ExpConst::one(), ExpConst::one(), f);
        out
    }

    /// `f · E_μ`.
    pub fn term(mu: ExpConst, f: RatFunc) -> Result<Self> {
        check_real(&mu)?;
        let mut out = Self::zero();
        out.add_term(mu, ExpConst::one(), f);
        Ok(out)
    }

    /// The bare unit `E_μ`.
    pub fn unit(mu: ExpConst) -> Result<Self> {
        Self::term(mu, RatFunc::one())
    }

    /// `c · f · E_μ` for any real constant `c`.
    pub fn scaled_term(mu: ExpConst, c: &ExpConst, f: RatFunc) -> Result<Self> {
        check_real(&mu)?;
        let (r, kappa) = c
            .split_rational()
            .ok_or_else(|| Error::InvalidMultiplier(format!("{c} is not real")))?;
        let mut out = Self::zero();
        out.add_term(mu, kappa, f.scale(&r));
        Ok(out)
    }

    fn add_term(&mut self, mu: ExpConst, kappa: ExpConst, f: RatFunc) {
        if f.is_zero() {
            return;
        }
        let key = (mu, kappa);
        match self.terms.remove(&key) {
            None => {
                self.terms.insert(key, f);
            }
            Some(old) => {
                let sum = &old + &f;
                if !sum.is_zero() {
                    self.terms.insert(key, sum);
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = ExpTerm<'_>> {
        self.terms.iter().map(|((mu, kappa), f)| ExpTerm {
            multiplier: mu,
            radical: kappa,
            coeff: f,
        })
    }

    /// The plain ℚ(x) value when the only unit present is `E_1` with `κ = 1`.
    pub fn as_ratfunc(&self) -> Option<RatFunc> {
        match self.terms.len() {
            0 => Some(RatFunc::zero()),
            1 => {
                let ((mu, kappa), f) = self.terms.iter().next().unwrap();
                (mu.is_one() && kappa.is_one()).then(|| f.clone())
            }
            _ => None,
        }
    }

    /// Groups the terms by multiplier: `μ ↦ [(κ, f)]`.
    pub fn components(&self) -> BTreeMap<ExpConst, Vec<(ExpConst, RatFunc)>> {
        let mut out: BTreeMap<ExpConst, Vec<(ExpConst, RatFunc)>> = BTreeMap::new();
        for ((mu, kappa), f) in &self.terms {
            out.entry(mu.clone())
                .or_default()
                .push((kappa.clone(), f.clone()));
        }
        out
    }

    pub fn all_multipliers_positive(&self) -> bool {
        self.terms.keys().all(|(mu, _)| mu.is_positive())
    }

    pub fn scale(&self, g: &RatFunc) -> Self {
        let mut out = Self::zero();
        for ((mu, kappa), f) in &self.terms {
            out.add_term(mu.clone(), kappa.clone(), f * g);
        }
        out
    }

    /// Multiplication by a real constant.
    pub fn scale_const(&self, c: &ExpConst) -> Result<Self> {
        let (r, k) = c
            .split_rational()
            .ok_or_else(|| Error::InvalidMultiplier(format!("{c} is not real")))?;
        let mut out = Self::zero();
        for ((mu, kappa), f) in &self.terms {
            let (r2, kappa2) = (&k * kappa).split_rational().expect("real");
            out.add_term(mu.clone(), kappa2, f.scale(&(&r * &r2)));
        }
        Ok(out)
    }

    /// Multiplication by the unit `E_ν`.
    pub fn mul_unit(&self, nu: &ExpConst) -> Result<Self> {
        check_real(nu)?;
        let mut out = Self::zero();
        for ((mu, kappa), f) in &self.terms {
            out.add_term(mu * nu, kappa.clone(), f.clone());
        }
        Ok(out)
    }

    /// `ρ^k`: each term `κ·f·E_μ` becomes `μ^k·κ·f(x + k·h)·E_μ`.
    pub fn rho(&self, step: &StepH, k: i64) -> Self {
        if k == 0 {
            return self.clone();
        }
        let tau = step.times(k);
        let mut out = Self::zero();
        for ((mu, kappa), f) in &self.terms {
            let factor = &mu.powi(k) * kappa;
            let (r, kappa2) = factor.split_rational().expect("real multipliers");
            out.add_term(mu.clone(), kappa2, f.shift(&tau).scale(&r));
        }
        out
    }

    /// Numeric value at `x` with unit `E_μ = μ^(x/h)`. `Ok(None)` at a pole.
    pub fn eval_f64(&self, x: f64, step: &StepH) -> Result<Option<f64>> {
        let h = rat_to_f64(step.value());
        let mut acc = 0.0;
        for ((mu, kappa), f) in &self.terms {
            if !mu.is_positive() {
                return Err(Error::UnsupportedEvaluation(format!(
                    "multiplier {mu} is not positive"
                )));
            }
            let Some(fx) = f.eval_f64(x) else {
                return Ok(None);
            };
            let unit = if mu.is_one() {
                1.0
            } else {
                (mu.ln() * x / h).exp()
            };
            let k = kappa.to_f64().expect("radicals are positive");
            acc += k * fx * unit;
        }
        Ok(Some(acc))
    }
}

impl From<RatFunc> for ExpPoly {
    fn from(f: RatFunc) -> Self {
        Self::from_ratfunc(f)
    }
}

impl<'a> Add<&'a ExpPoly> for &'a ExpPoly {
    type Output = ExpPoly;
    fn add(self, rhs: &'a ExpPoly) -> ExpPoly {
        let mut out = self.clone();
        for ((mu, kappa), f) in &rhs.terms {
            out.add_term(mu.clone(), kappa.clone(), f.clone());
        }
        out
    }
}

impl Neg for &ExpPoly {
    type Output = ExpPoly;
    fn neg(self) -> ExpPoly {
        ExpPoly {
            terms: self.terms.iter().map(|(k, f)| (k.clone(), -f)).collect(),
        }
    }
}

impl Neg for ExpPoly {
    type Output = ExpPoly;
    fn neg(self) -> ExpPoly {
        -&self
    }
}

impl<'a> Sub<&'a ExpPoly> for &'a ExpPoly {
    type Output = ExpPoly;
    fn sub(self, rhs: &'a ExpPoly) -> ExpPoly {
        self + &(-rhs)
    }
}

impl<'a> Mul<&'a ExpPoly> for &'a ExpPoly {
    type Output = ExpPoly;
    fn mul(self, rhs: &'a ExpPoly) -> ExpPoly {
        let mut out = ExpPoly::zero();
        for ((mu1, k1), f1) in &self.terms {
            for ((mu2, k2), f2) in &rhs.terms {
                let (r, kappa) = (k1 * k2).split_rational().expect("positive radicals");
                out.add_term(mu1 * mu2, kappa, (f1 * f2).scale(&r));
            }
        }
        out
    }
}

crate::exact::forward_owned_binop!(ExpPoly, Add, add);
crate::exact::forward_owned_binop!(ExpPoly, Sub, sub);
crate::exact::forward_owned_binop!(ExpPoly, Mul, mul);

/// Human-readable form such as `x + (x+1)*E[2]`; the unit `E[μ]` stands for
/// `μ^(x/h)`. Machine-readable output goes through the JSON codec instead.
impl fmt::Display for ExpPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut pieces = Vec::new();
        for ((mu, kappa), coeff) in &self.terms {
            let mut factors = Vec::new();
            if !kappa.is_one() {
                factors.push(kappa.to_string());
            }
            let text = coeff.to_string();
            let bare = factors.is_empty() && mu.is_one();
            if !coeff.is_one() || bare {
                let simple = text
                    .chars()
                    .skip(1)
                    .all(|c| c != '+' && c != '-' && c != '/');
                if simple || bare {
                    factors.push(text);
                } else {
                    factors.push(format!("({text})"));
                }
            }
            if !mu.is_one() {
                factors.push(format!("E[{mu}]"));
            }
            pieces.push(factors.join("*"));
        }
        write!(f, "{}", pieces.join(" + "))
    }
}
