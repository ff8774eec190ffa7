//! Dense univariate polynomials over ℚ.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::Rat;
use crate::error::{Error, Result};

/// A polynomial with rational coefficients stored in ascending degree order.
///
/// The coefficient vector never carries trailing zeros, so the zero polynomial
/// is the empty vector and `degree() == len - 1` otherwise.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Poly {
    coeffs: Vec<Rat>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<Rat>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::new(
            coeffs
                .iter()
                .map(|&c| Rat::from_integer(c.into()))
                .collect(),
        )
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rat::one())
    }

    /// The identity polynomial `x`.
    pub fn x() -> Self {
        Poly {
            coeffs: vec![Rat::zero(), Rat::one()],
        }
    }

    pub fn constant(c: Rat) -> Self {
        Self::new(vec![c])
    }

    pub fn monomial(c: Rat, degree: usize) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![Rat::zero(); degree + 1];
        coeffs[degree] = c;
        Poly { coeffs }
    }

    /// `x - r`
    pub fn linear_root(r: &Rat) -> Self {
        Poly {
            coeffs: vec![-r.clone(), Rat::one()],
        }
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Rat {
        self.coeffs.get(i).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree with the zero polynomial mapped to `-1`.
    pub fn deg(&self) -> i64 {
        self.coeffs.len() as i64 - 1
    }

    pub fn lc(&self) -> Rat {
        self.coeffs.last().cloned().unwrap_or_else(Rat::zero)
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(One::is_one)
    }

    /// Number of nonzero coefficients.
    pub fn term_count(&self) -> usize {
        self.coeffs.iter().filter(|c| !c.is_zero()).count()
    }

    pub fn scale(&self, c: &Rat) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// Divides by the leading coefficient; the zero polynomial is returned unchanged.
    pub fn monic(&self) -> Poly {
        match self.coeffs.last() {
            None => Poly::zero(),
            Some(lc) if lc.is_one() => self.clone(),
            Some(lc) => self.scale(&lc.recip()),
        }
    }

    pub fn eval(&self, x: &Rat) -> Rat {
        let mut acc = Rat::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        let mut acc = 0.0;
        for c in self.coeffs.iter().rev() {
            acc = acc * x + rat_to_f64(c);
        }
        acc
    }

    pub fn derivative(&self) -> Poly {
        Poly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * Rat::from_integer(BigInt::from(i)))
                .collect(),
        )
    }

    pub fn pow(&self, n: u32) -> Poly {
        let mut result = Poly::one();
        let mut base = self.clone();
        let mut e = n;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// The substitution `x ↦ x + tau`.
    pub fn shift(&self, tau: &Rat) -> Poly {
        if tau.is_zero() || self.is_constant() {
            return self.clone();
        }
        // With τ = p/q and K(y) = qⁿ·F(y/q): F(x + τ) = q⁻ⁿ·K(qx + p).
        let (scale, ints) = self.integer_form();
        let n = ints.len() - 1;
        let (p, q) = (tau.numer(), tau.denom());
        let mut q_pows = vec![BigInt::one()];
        for i in 1..=n {
            q_pows.push(&q_pows[i - 1] * q);
        }
        let mut k: Vec<BigInt> = ints
            .iter()
            .enumerate()
            .map(|(i, c)| c * &q_pows[n - i])
            .collect();
        for i in 0..n {
            for j in (i..n).rev() {
                let t = p * &k[j + 1];
                k[j] += t;
            }
        }
        let coeffs = k
            .iter()
            .enumerate()
            .map(|(i, c)| make_rat(scale.numer() * c, scale.denom() * &q_pows[n - i]))
            .collect();
        Poly::new(coeffs)
    }

    /// `self = scale·ints` with `ints` primitive and `scale` carrying the sign.
    pub(crate) fn integer_form(&self) -> (Rat, Vec<BigInt>) {
        if self.is_zero() {
            return (Rat::one(), Vec::new());
        }
        let mut lcm = BigInt::one();
        for c in &self.coeffs {
            if !c.denom().is_one() {
                let g = int_gcd(&lcm, c.denom());
                lcm = &lcm / g * c.denom();
            }
        }
        let mut ints: Vec<BigInt> = self
            .coeffs
            .iter()
            .map(|c| {
                if lcm.is_one() {
                    c.numer().clone()
                } else {
                    c.numer() * (&lcm / c.denom())
                }
            })
            .collect();
        let mut content = BigInt::zero();
        for c in &ints {
            content = int_gcd(&content, c);
            if content.is_one() {
                break;
            }
        }
        if !content.is_one() {
            for c in &mut ints {
                *c = &*c / &content;
            }
        }
        (make_rat(content, lcm), ints)
    }

    pub(crate) fn from_scaled_ints(scale: &Rat, ints: &[BigInt]) -> Poly {
        Poly::new(
            ints.iter()
                .map(|c| make_rat(scale.numer() * c, scale.denom().clone()))
                .collect(),
        )
    }

    /// The substitution `x ↦ s·x`.
    pub fn scale_var(&self, s: &Rat) -> Poly {
        let mut power = Rat::one();
        let mut coeffs = Vec::with_capacity(self.coeffs.len());
        for c in &self.coeffs {
            coeffs.push(c * &power);
            power *= s;
        }
        Poly::new(coeffs)
    }

    pub fn div_rem(&self, divisor: &Poly) -> Result<(Poly, Poly)> {
        let dd = divisor.degree().ok_or(Error::DivisionByZero)?;
        let Some(nd) = self.degree() else {
            return Ok((Poly::zero(), Poly::zero()));
        };
        if nd < dd {
            return Ok((Poly::zero(), self.clone()));
        }
        // Pseudo-division over ℤ: β^k·A = Q·B + R with β = lc(B).
        let (sa, a) = self.integer_form();
        let (sb, b) = divisor.integer_form();
        let beta = &b[dd];
        let unit = beta.is_one();
        let mut rem = a;
        let mut quot = vec![BigInt::zero(); nd - dd + 1];
        for k in (0..=nd - dd).rev() {
            let c = rem[k + dd].clone();
            if !unit {
                for x in rem[..k + dd].iter_mut().chain(quot[k + 1..].iter_mut()) {
                    *x *= beta;
                }
            }
            if !c.is_zero() {
                for (j, d) in b.iter().enumerate() {
                    rem[k + j] -= &c * d;
                }
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        let beta_k = num_traits::pow(beta.clone(), if unit { 0 } else { nd - dd + 1 });
        let q_scale = &sa / &sb / Rat::from_integer(beta_k.clone());
        let r_scale = &sa / Rat::from_integer(beta_k);
        Ok((
            Poly::from_scaled_ints(&q_scale, &quot),
            Poly::from_scaled_ints(&r_scale, &rem),
        ))
    }

    /// Exact quotient, or `None` when `divisor` does not divide `self`.
    pub fn exact_div(&self, divisor: &Poly) -> Option<Poly> {
        match self.div_rem(divisor) {
            Ok((q, r)) if r.is_zero() => Some(q),
            _ => None,
        }
    }

    pub fn divides(&self, other: &Poly) -> bool {
        other.exact_div(self).is_some()
    }

    /// Integer coefficients of the primitive part, with positive leading coefficient.
    pub fn primitive_integer_coeffs(&self) -> Vec<BigInt> {
        if self.is_zero() {
            return Vec::new();
        }
        let lcm = self
            .coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let mut ints: Vec<BigInt> = self
            .coeffs
            .iter()
            .map(|c| c.numer() * (&lcm / c.denom()))
            .collect();
        let content = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
        let sign = if ints.last().is_some_and(Signed::is_negative) {
            -BigInt::one()
        } else {
            BigInt::one()
        };
        for c in &mut ints {
            *c = &*c / &content * &sign;
        }
        ints
    }

    pub fn from_integer_coeffs(coeffs: &[BigInt]) -> Poly {
        Poly::new(
            coeffs
                .iter()
                .map(|c| Rat::from_integer(c.clone()))
                .collect(),
        )
    }
}

/// Nonnegative gcd, reducing badly unbalanced operands by division first.
pub(crate) fn int_gcd(a: &BigInt, b: &BigInt) -> BigInt {
    let mut a = a.magnitude().clone();
    let mut b = b.magnitude().clone();
    loop {
        if a.is_zero() {
            return BigInt::from(b);
        }
        if b.is_zero() || b.is_one() || a.is_one() {
            return BigInt::from(if b.is_zero() { a } else { BigUint::one() });
        }
        if a.bits().abs_diff(b.bits()) < 64 {
            return BigInt::from(a.gcd(&b));
        }
        if a > b {
            a %= &b;
        } else {
            b %= &a;
        }
    }
}

/// `n/d` in lowest terms without a gcd when `d = 1`.
pub(crate) fn make_rat(n: BigInt, d: BigInt) -> Rat {
    if d.is_one() {
        return Rat::from_integer(n);
    }
    let g = int_gcd(&n, &d);
    let (n, d) = if g.is_one() { (n, d) } else { (n / &g, d / &g) };
    if d.is_negative() {
        Rat::new_raw(-n, -d)
    } else {
        Rat::new_raw(n, d)
    }
}

pub(crate) fn rat_to_f64(r: &Rat) -> f64 {
    match (r.numer().to_f64(), r.denom().to_f64()) {
        (Some(n), Some(d)) if n.is_finite() && d.is_finite() => n / d,
        _ => {
            // Both parts overflow f64: scale by a common power of two first.
            let shift = r.numer().bits().max(r.denom().bits()).saturating_sub(1000);
            let n = (r.numer() >> shift).to_f64().unwrap_or(f64::NAN);
            let d = (r.denom() >> shift).to_f64().unwrap_or(f64::NAN);
            n / d
        }
    }
}

impl<'a> Add<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn add(self, rhs: &'a Poly) -> Poly {
        let (long, short) = if self.coeffs.len() >= rhs.coeffs.len() {
            (self, rhs)
        } else {
            (rhs, self)
        };
        let mut coeffs = long.coeffs.clone();
        for (c, s) in coeffs.iter_mut().zip(&short.coeffs) {
            *c += s;
        }
        Poly::new(coeffs)
    }
}

impl<'a> Sub<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn sub(self, rhs: &'a Poly) -> Poly {
        self + &(-rhs)
    }
}

impl<'a> Mul<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn mul(self, rhs: &'a Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let (sa, a) = self.integer_form();
        let (sb, b) = rhs.integer_form();
        let mut coeffs = vec![BigInt::zero(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                coeffs[i + j] += x * y;
            }
        }
        Poly::from_scaled_ints(&(sa * sb), &coeffs)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

macro_rules! forward_owned_binop {
    ($ty:ty, $tr:ident, $method:ident) => {
        impl $tr<$ty> for $ty {
            type Output = $ty;
            fn $method(self, rhs: $ty) -> $ty {
                (&self).$method(&rhs)
            }
        }
        impl<'a> $tr<&'a $ty> for $ty {
            type Output = $ty;
            fn $method(self, rhs: &'a $ty) -> $ty {
                (&self).$method(rhs)
            }
        }
        impl<'a> $tr<$ty> for &'a $ty {
            type Output = $ty;
            fn $method(self, rhs: $ty) -> $ty {
                self.$method(&rhs)
            }
        }
    };
}
pub(crate) use forward_owned_binop;

forward_owned_binop!(Poly, Add, add);
forward_owned_binop!(Poly, Sub, sub);
forward_owned_binop!(Poly, Mul, mul);

/// Prints in descending degree order, e.g. `x^2-3*x+1/2`. The output is
/// accepted back by the expression parser.
impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (d, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let term = format_term(c, d);
            if !first && !term.starts_with('-') {
                write!(f, "+")?;
            }
            write!(f, "{term}")?;
            first = false;
        }
        Ok(())
    }
}

fn format_term(c: &Rat, d: usize) -> String {
    let var = match d {
        0 => return c.to_string(),
        1 => "x".to_string(),
        _ => format!("x^{d}"),
    };
    if c.is_one() {
        var
    } else if (-c).is_one() {
        format!("-{var}")
    } else {
        format!("{c}*{var}")
    }
}
