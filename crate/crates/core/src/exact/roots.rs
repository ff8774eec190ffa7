use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use super::factor::divisors;
use super::{cauchy_bound, Poly, Rat};
use crate::error::{Error, Result};

/// Scan width below which candidate integer roots are enumerated directly
/// instead of through the divisors of the trailing coefficient.
const SCAN_LIMIT: u64 = 100_000;

/// All rational roots of `p`, ascending and without repetition.
pub fn rational_roots(p: &Poly) -> Result<Vec<Rat>> {
    if p.is_zero() {
        return Err(Error::DegenerateInput(
            "rational roots of the zero polynomial",
        ));
    }
    let coeffs = p.primitive_integer_coeffs();
    let zeros = coeffs.iter().take_while(|c| c.is_zero()).count();
    let core = &coeffs[zeros..];
    let mut roots = Vec::new();
    if zeros > 0 {
        roots.push(Rat::zero());
    }
    if core.len() > 1 {
        let lc = core.last().unwrap().magnitude().clone();
        let tc = core[0].magnitude().clone();
        let bound = Rat::from_integer(cauchy_bound(p).into());
        for q in divisors(&lc) {
            for pnum in divisors(&tc) {
                if !pnum.gcd(&q).is_one() {
                    continue;
                }
                let cand = Rat::new(BigInt::from(pnum.clone()), BigInt::from(q.clone()));
                if cand > bound {
                    break;
                }
                for c in [cand.clone(), -cand] {
                    if eval_homogeneous(core, c.numer(), c.denom()).is_zero() {
                        roots.push(c);
                    }
                }
            }
        }
    }
    roots.sort();
    roots.dedup();
    Ok(roots)
}

/// Integer roots of the integer polynomial `coeffs` (ascending), optionally
/// restricted to `|r| ≤ bound`. The zero polynomial has no reported roots.
pub fn integer_roots(coeffs: &[BigInt], bound: Option<u64>) -> Vec<i64> {
    let zeros = coeffs.iter().take_while(|c| c.is_zero()).count();
    if zeros == coeffs.len() {
        return Vec::new();
    }
    let core = &coeffs[zeros..];
    let mut roots = Vec::new();
    if zeros > 0 {
        roots.push(0);
    }
    if core.len() > 1 {
        let tc = core[0].magnitude().clone();
        let tc_cap = tc.to_u64().unwrap_or(u64::MAX);
        let limit = bound.unwrap_or(u64::MAX).min(tc_cap);
        let one = BigInt::one();
        let mut test = |r: i64| {
            if eval_homogeneous(core, &BigInt::from(r), &one).is_zero() {
                roots.push(r);
            }
        };
        if limit <= SCAN_LIMIT {
            for r in 1..=limit as i64 {
                if (&tc % BigUint::from(r as u64)).is_zero() {
                    test(r);
                    test(-r);
                }
            }
        } else {
            for d in divisors(&tc) {
                match d.to_u64() {
                    Some(v) if v <= limit && v <= i64::MAX as u64 => {
                        test(v as i64);
                        test(-(v as i64));
                    }
                    _ => break,
                }
            }
        }
    }
    roots.sort_unstable();
    roots.dedup();
    roots
}

/// `Σ a_i · p^i · q^(n-i)`; vanishes iff `p/q` is a root.
fn eval_homogeneous(coeffs: &[BigInt], p: &BigInt, q: &BigInt) -> BigInt {
    let n = coeffs.len() - 1;
    let mut acc = BigInt::zero();
    let mut qpow = BigInt::one();
    // Horner in p with the q-powers folded in from the top.
    let mut q_powers = Vec::with_capacity(n + 1);
    for _ in 0..=n {
        q_powers.push(qpow.clone());
        qpow *= q;
    }
    for (i, a) in coeffs.iter().enumerate().rev() {
        acc = acc * p + a * &q_powers[n - i];
    }
    acc
}
