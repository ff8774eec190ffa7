//! Exact arithmetic: rationals, dense polynomials, rational functions and the
//! shift-specific primitives (resultants, rational roots, dispersion sets).

pub mod factor;
mod modp;
mod poly;
mod ratfunc;
mod roots;

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

pub use poly::Poly;
pub use ratfunc::RatFunc;
pub use roots::{integer_roots, rational_roots};

pub(crate) use poly::{forward_owned_binop, rat_to_f64};

use crate::error::{Error, Result};

/// Arbitrary-precision rational number, always kept in lowest terms.
pub type Rat = BigRational;

/// Monic greatest common divisor.
///
/// A modular image decides the coprime case; otherwise a primitive remainder
/// sequence over ℤ keeps coefficient growth in check.
pub fn poly_gcd(p: &Poly, q: &Poly) -> Result<Poly> {
    if p.is_zero() && q.is_zero() {
        return Err(Error::DegenerateInput("gcd of two zero polynomials"));
    }
    if p.is_zero() {
        return Ok(q.monic());
    }
    if q.is_zero() {
        return Ok(p.monic());
    }
    if p.is_constant() || q.is_constant() {
        return Ok(Poly::one());
    }
    let a = p.primitive_integer_coeffs();
    let b = q.primitive_integer_coeffs();
    if let Some(prime) = modp::good_prime(&[a.last().unwrap(), b.last().unwrap()]) {
        let d = modp::gcd_degree(&modp::reduce(&a, prime), &modp::reduce(&b, prime), prime);
        if d == Some(0) {
            return Ok(Poly::one());
        }
        let (short, long) = if p.deg() <= q.deg() { (p, q) } else { (q, p) };
        if d == short.degree() && short.divides(long) {
            return Ok(short.monic());
        }
    }
    let (mut a, mut b) = if a.len() >= b.len() { (a, b) } else { (b, a) };
    loop {
        let r = primitive(pseudo_remainder(&a, &b));
        if r.is_empty() {
            return Ok(Poly::from_integer_coeffs(&b).monic());
        }
        a = b;
        b = r;
    }
}

/// `lc(b)^(deg a − deg b + 1)·a mod b`, computed without fractions.
fn pseudo_remainder(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let db = b.len() - 1;
    let lc = &b[db];
    let mut r = a.to_vec();
    while r.len() > db {
        let top = r.len() - 1;
        let c = r[top].clone();
        for x in r.iter_mut() {
            *x *= lc;
        }
        for (j, bj) in b.iter().enumerate() {
            r[top - db + j] -= &c * bj;
        }
        r.pop();
        while r.last().is_some_and(Zero::is_zero) {
            r.pop();
        }
    }
    r
}

fn primitive(mut v: Vec<BigInt>) -> Vec<BigInt> {
    let content = v.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    if !content.is_zero() && !content.is_one() {
        for c in &mut v {
            *c = &*c / &content;
        }
    }
    v
}

/// `Res_x(p, q)` by the Euclidean resultant recurrence over ℚ.
pub fn resultant(p: &Poly, q: &Poly) -> Result<Rat> {
    if p.is_zero() || q.is_zero() {
        return Err(Error::DegenerateInput("resultant with a zero polynomial"));
    }
    let mut a = p.clone();
    let mut b = q.clone();
    let mut acc = Rat::one();
    loop {
        let m = a.degree().expect("nonzero");
        let n = b.degree().expect("nonzero");
        if n == 0 {
            return Ok(acc * pow_rat(&b.lc(), m));
        }
        if m == 0 {
            return Ok(acc * pow_rat(&a.lc(), n));
        }
        let (_, r) = a.div_rem(&b)?;
        let Some(k) = r.degree() else {
            return Ok(Rat::zero());
        };
        if (m * n) % 2 == 1 {
            acc = -acc;
        }
        acc *= pow_rat(&b.lc(), m - k);
        a = b;
        b = r;
    }
}

pub(crate) fn pow_rat(r: &Rat, e: usize) -> Rat {
    num_traits::pow(r.clone(), e)
}

/// Square-free decomposition `p = lc · ∏ s_m^m` (Yun). Returns `(m, s_m)` for
/// every nonconstant `s_m`, with each `s_m` monic.
pub fn squarefree_layers(p: &Poly) -> Vec<(usize, Poly)> {
    let mut out = Vec::new();
    if p.is_constant() {
        return out;
    }
    let f = p.monic();
    let df = f.derivative();
    let a0 = poly_gcd(&f, &df).expect("nonzero");
    let mut b = f.exact_div(&a0).expect("gcd divides");
    let mut c = df.exact_div(&a0).expect("gcd divides");
    let mut d = &c - &b.derivative();
    let mut m = 1;
    while !b.is_constant() {
        let a = poly_gcd(&b, &d).expect("b nonzero");
        b = b.exact_div(&a).expect("gcd divides");
        c = d.exact_div(&a).expect("gcd divides");
        d = &c - &b.derivative();
        if !a.is_constant() {
            out.push((m, a));
        }
        m += 1;
    }
    out
}

/// Candidate offsets scanned one by one through modular resultants; wider
/// ranges interpolate the resultant polynomial instead.
const SCAN_LIMIT: u64 = 1_000_000;

/// Integer offsets `j` with `deg gcd(N(x), D(x + j·h)) > 0`.
///
/// The variable is first rescaled so the step becomes 1; the offsets are then
/// the integer roots of `R(t) = Res_x(N(hx), D(hx + t))`, all bounded by the sum
/// of the root bounds of the two factors. Within that range `R(j)` is
/// evaluated modulo two primes and nonzero images rule `j` out; survivors are
/// confirmed exactly.
pub fn dispersion_set(n: &Poly, d: &Poly, h: &Rat) -> Result<BTreeSet<i64>> {
    if h.is_zero() {
        return Err(Error::InvalidStep);
    }
    if n.is_zero() || d.is_zero() {
        return Err(Error::DegenerateInput("dispersion of a zero polynomial"));
    }
    if n.is_constant() || d.is_constant() {
        return Ok(BTreeSet::new());
    }
    let ns = n.scale_var(h).monic();
    let ds = d.scale_var(h).monic();
    let bound = fujiwara_bound(&ns).saturating_add(fujiwara_bound(&ds));
    if bound > SCAN_LIMIT {
        return dispersion_by_interpolation(&ns, &ds, bound);
    }
    let ni = ns.primitive_integer_coeffs();
    let di = ds.primitive_integer_coeffs();
    let primes: Vec<u64> = modp::PRIMES
        .iter()
        .copied()
        .filter(|&p| !modp::reduce_int(ni.last().unwrap(), p).is_zero())
        .filter(|&p| !modp::reduce_int(di.last().unwrap(), p).is_zero())
        .take(2)
        .collect();
    let images: Vec<(u64, Vec<u64>, Vec<u64>)> = primes
        .iter()
        .map(|&p| {
            let dp = modp::reduce(&di, p);
            let start = modp::reduce_int(&BigInt::from(-(bound as i64)), p);
            (p, modp::reduce(&ni, p), modp::taylor_shift(&dp, start, p))
        })
        .collect();
    let mut shifted: Vec<Vec<u64>> = images.iter().map(|(_, _, d)| d.clone()).collect();
    let mut out = BTreeSet::new();
    let b = bound as i64;
    for j in -b..=b {
        let vanishes = images
            .iter()
            .zip(&shifted)
            .all(|((p, np, _), dj)| modp::resultant(np, dj, *p) == 0);
        if vanishes && !poly_gcd(&ns, &ds.shift(&Rat::from_integer(j.into())))?.is_constant() {
            out.insert(j);
        }
        for ((p, _, _), dj) in images.iter().zip(shifted.iter_mut()) {
            *dj = modp::taylor_shift(dj, 1, *p);
        }
    }
    Ok(out)
}

fn dispersion_by_interpolation(ns: &Poly, ds: &Poly, bound: u64) -> Result<BTreeSet<i64>> {
    let deg = ns.degree().unwrap() * ds.degree().unwrap();
    let mut values = Vec::with_capacity(deg + 1);
    for i in 0..=deg {
        let t = Rat::from_integer((i as i64).into());
        values.push(resultant(ns, &ds.shift(&t))?);
    }
    let res_t = interpolate_at_naturals(&values);
    let roots = integer_roots(&res_t.primitive_integer_coeffs(), Some(bound));
    Ok(roots.into_iter().collect())
}

/// Newton interpolation through `(i, values[i])`, `i = 0..len`.
fn interpolate_at_naturals(values: &[Rat]) -> Poly {
    let n = values.len();
    let mut dd: Vec<Rat> = values.to_vec();
    // Divided differences over equally spaced integer nodes.
    for level in 1..n {
        for i in (level..n).rev() {
            let denom = Rat::from_integer((level as i64).into());
            dd[i] = (&dd[i] - &dd[i - 1]) / denom;
        }
    }
    let mut acc = Poly::zero();
    for i in (0..n).rev() {
        let node = Rat::from_integer((i as i64).into());
        acc = &acc * &Poly::linear_root(&node);
        acc = &acc + &Poly::constant(dd[i].clone());
    }
    acc
}

/// `2·max |a_(n−i) / a_n|^(1/i)`, rounded up with a safety margin; every
/// complex root has modulus below it.
pub(crate) fn fujiwara_bound(p: &Poly) -> u64 {
    let n = p.degree().expect("nonzero");
    let lc = p.lc();
    let mut max: f64 = 0.0;
    for i in 1..=n {
        let c = &p.coeffs()[n - i];
        if c.is_zero() {
            continue;
        }
        let r = rat_to_f64(&num_traits::Signed::abs(&(c / &lc)));
        let root = if i == n { r / 2.0 } else { r };
        max = max.max(root.powf(1.0 / i as f64));
    }
    let b = (2.0 * max * (1.0 + 1e-9)).ceil() + 1.0;
    if b.is_finite() && b < u64::MAX as f64 {
        b as u64
    } else {
        u64::MAX
    }
}

/// `1 + max |a_i / a_n|`, rounded up; every complex root has modulus below it.
pub(crate) fn cauchy_bound(p: &Poly) -> u64 {
    let lc = p.lc();
    let max = p.coeffs()[..p.coeffs().len() - 1]
        .iter()
        .map(|c| num_traits::Signed::abs(&(c / &lc)))
        .max()
        .unwrap_or_else(Rat::zero);
    let ceil = (max + Rat::one()).ceil().to_integer();
    num_traits::ToPrimitive::to_u64(&ceil).unwrap_or(u64::MAX)
}
