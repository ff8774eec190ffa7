//! Exact multiplicative constants `(-1)^φ · ∏ p^(e_p)` with rational exponents.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Div, Mul};

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::exact::factor::factorize;
use crate::exact::Rat;

/// A nonzero constant `(-1)^phase · ∏ p^(e_p)` over primes `p`.
///
/// `phase` lives in `[0, 2)`; real constants have phase 0 or 1 and are the
/// usual `sign · ∏ p^e`. Non-integer phases only arise as roots of negative
/// constants. Exponents are stored in lowest terms and zero exponents are
/// dropped, so equal values have equal representations.
///
/// An `ExpConst` μ also names the exponential unit `E_μ = μ^(x/h)`, for which
/// the shift acts as `ρ(E_μ) = μ·E_μ`. The formal logarithm `λ = log(μ)/h` is
/// never evaluated unless `μ > 0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ExpConst {
    phase: Rat,
    exponents: BTreeMap<BigUint, Rat>,
}

impl ExpConst {
    pub fn one() -> Self {
        ExpConst {
            phase: Rat::zero(),
            exponents: BTreeMap::new(),
        }
    }

    pub fn from_rat(r: &Rat) -> Result<Self> {
        if r.is_zero() {
            return Err(Error::InvalidMultiplier("zero is not a multiplier".into()));
        }
        let mut exponents = BTreeMap::new();
        for (p, e) in factorize(r.numer().magnitude()) {
            exponents.insert(p, Rat::from_integer(e.into()));
        }
        for (p, e) in factorize(r.denom().magnitude()) {
            exponents.insert(p, Rat::from_integer(-BigInt::from(e)));
        }
        let phase = if r.is_negative() {
            Rat::one()
        } else {
            Rat::zero()
        };
        Ok(ExpConst { phase, exponents })
    }

    pub fn from_int(n: i64) -> Result<Self> {
        Self::from_rat(&Rat::from_integer(n.into()))
    }

    /// `(-1)^phase`.
    pub fn root_of_unity(phase: &Rat) -> Self {
        ExpConst {
            phase: reduce_phase(phase),
            exponents: BTreeMap::new(),
        }
    }

    pub fn phase(&self) -> &Rat {
        &self.phase
    }

    pub fn exponents(&self) -> &BTreeMap<BigUint, Rat> {
        &self.exponents
    }

    pub fn is_one(&self) -> bool {
        self.phase.is_zero() && self.exponents.is_empty()
    }

    pub fn is_real(&self) -> bool {
        self.phase.is_integer()
    }

    pub fn is_positive(&self) -> bool {
        self.phase.is_zero()
    }

    /// `±1` for real constants.
    pub fn sign(&self) -> Option<i8> {
        if self.phase.is_zero() {
            Some(1)
        } else if self.phase.is_one() {
            Some(-1)
        } else {
            None
        }
    }

    pub fn is_rational(&self) -> bool {
        self.is_real() && self.exponents.values().all(Rat::is_integer)
    }

    pub fn to_rat(&self) -> Option<Rat> {
        if !self.is_rational() {
            return None;
        }
        let mut acc = Rat::one();
        for (p, e) in &self.exponents {
            let base = Rat::from_integer(BigInt::from(p.clone()));
            let k = e.to_integer().to_i32()?;
            acc *= num_traits::pow::Pow::pow(&base, k);
        }
        if self.phase.is_one() {
            acc = -acc;
        }
        Some(acc)
    }

    pub fn inv(&self) -> Self {
        self.pow(&Rat::from_integer((-1).into()))
    }

    /// `self^e`, exponents and phase multiplied formally by `e`.
    pub fn pow(&self, e: &Rat) -> Self {
        if e.is_zero() {
            return Self::one();
        }
        ExpConst {
            phase: reduce_phase(&(&self.phase * e)),
            exponents: self
                .exponents
                .iter()
                .map(|(p, x)| (p.clone(), x * e))
                .collect(),
        }
    }

    pub fn powi(&self, k: i64) -> Self {
        self.pow(&Rat::from_integer(k.into()))
    }

    /// Smallest `m ≥ 1` with `self^m` rational.
    pub fn rational_order(&self) -> u64 {
        let mut m = self.phase.denom().clone();
        for e in self.exponents.values() {
            m = m.lcm(e.denom());
        }
        m.to_u64().expect("order fits in u64")
    }

    /// Splits a real constant as `r · κ` with `r` rational and `κ` a positive
    /// radical whose exponents lie in `[0, 1)`.
    pub fn split_rational(&self) -> Option<(Rat, ExpConst)> {
        if !self.is_real() {
            return None;
        }
        let mut r = Rat::one();
        let mut radical = BTreeMap::new();
        for (p, e) in &self.exponents {
            let whole = e.floor();
            let frac = e - &whole;
            let base = Rat::from_integer(BigInt::from(p.clone()));
            r *= num_traits::pow::Pow::pow(&base, whole.to_integer().to_i32()?);
            if !frac.is_zero() {
                radical.insert(p.clone(), frac);
            }
        }
        if self.phase.is_one() {
            r = -r;
        }
        Some((
            r,
            ExpConst {
                phase: Rat::zero(),
                exponents: radical,
            },
        ))
    }

    /// Numeric value; only defined for positive constants.
    pub fn to_f64(&self) -> Option<f64> {
        if !self.is_positive() {
            return None;
        }
        self.to_f64_signed()
    }

    /// Real value for real constants.
    pub fn to_f64_signed(&self) -> Option<f64> {
        let s = self.sign()?;
        if let Some(r) = self.to_rat() {
            return Some(crate::exact::rat_to_f64(&r));
        }
        Some(f64::from(s) * self.ln().exp())
    }

    /// `Σ e_p · ln p`, the logarithm of the modulus.
    pub fn ln(&self) -> f64 {
        self.exponents
            .iter()
            .map(|(p, e)| crate::exact::rat_to_f64(e) * ln_biguint(p))
            .sum()
    }
}

fn ln_biguint(p: &BigUint) -> f64 {
    match p.to_f64() {
        Some(v) if v.is_finite() => v.ln(),
        _ => {
            let shift = p.bits() - 64;
            (p >> shift).to_f64().unwrap().ln() + shift as f64 * std::f64::consts::LN_2
        }
    }
}

fn reduce_phase(phase: &Rat) -> Rat {
    let two = Rat::from_integer(2.into());
    let q = (phase / &two).floor();
    phase - q * two
}

impl<'a> Mul<&'a ExpConst> for &'a ExpConst {
    type Output = ExpConst;
    fn mul(self, rhs: &'a ExpConst) -> ExpConst {
        let mut exponents = self.exponents.clone();
        for (p, e) in &rhs.exponents {
            let entry = exponents.entry(p.clone()).or_insert_with(Rat::zero);
            *entry += e;
            if entry.is_zero() {
                exponents.remove(p);
            }
        }
        ExpConst {
            phase: reduce_phase(&(&self.phase + &rhs.phase)),
            exponents,
        }
    }
}

#[allow(clippy::suspicious_arithmetic_impl)]
impl<'a> Div<&'a ExpConst> for &'a ExpConst {
    type Output = ExpConst;
    fn div(self, rhs: &'a ExpConst) -> ExpConst {
        self * &rhs.inv()
    }
}

impl Mul for ExpConst {
    type Output = ExpConst;
    fn mul(self, rhs: ExpConst) -> ExpConst {
        &self * &rhs
    }
}

impl Div for ExpConst {
    type Output = ExpConst;
    fn div(self, rhs: ExpConst) -> ExpConst {
        &self / &rhs
    }
}

fn fmt_exponent(e: &Rat) -> String {
    if e.is_integer() && !e.is_negative() {
        e.to_string()
    } else {
        format!("({e})")
    }
}

/// Canonical text: a rational prefix followed by `(-1)^(φ)` and `p^(e)` factors
/// with fractional parts in `(0, 1)`, e.g. `-2*3^(1/2)`, `(-1)^(1/2)*2^(1/3)`.
impl fmt::Display for ExpConst {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut rational = Rat::one();
        let mut factors = Vec::new();
        let whole_phase = self.phase.floor();
        let frac_phase = &self.phase - &whole_phase;
        if !frac_phase.is_zero() {
            factors.push(format!("(-1)^{}", fmt_exponent(&frac_phase)));
        }
        for (p, e) in &self.exponents {
            let whole = e.floor();
            let frac = e - &whole;
            let base = Rat::from_integer(BigInt::from(p.clone()));
            let k = whole.to_integer();
            let kk = k.magnitude().to_u32().unwrap_or(u32::MAX);
            let power = num_traits::pow::Pow::pow(&base, kk);
            if k.sign() == Sign::Minus {
                rational /= power;
            } else {
                rational *= power;
            }
            if !frac.is_zero() {
                factors.push(format!("{p}^{}", fmt_exponent(&frac)));
            }
        }
        if whole_phase.is_one() {
            rational = -rational;
        }
        if factors.is_empty() {
            return write!(f, "{rational}");
        }
        let body = factors.join("*");
        if rational.is_one() {
            write!(f, "{body}")
        } else if (-&rational).is_one() {
            write!(f, "-{body}")
        } else {
            write!(f, "{rational}*{body}")
        }
    }
}
