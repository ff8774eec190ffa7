//! Arithmetic in `F_p[x]` for a few word-sized primes, used as a fast filter
//! in front of exact computations.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

/// Primes below 2^62, so that products fit in `u128` and sums in `u64`.
pub(crate) const PRIMES: [u64; 4] = [
    4_611_686_018_427_387_847,
    4_611_686_018_427_387_817,
    2_305_843_009_213_693_951,
    1_000_000_000_000_000_003,
];

pub(crate) fn mul(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn add(a: u64, b: u64, p: u64) -> u64 {
    let s = a + b;
    if s >= p {
        s - p
    } else {
        s
    }
}

fn sub(a: u64, b: u64, p: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        a + p - b
    }
}

fn pow(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul(acc, a, p);
        }
        a = mul(a, a, p);
        e >>= 1;
    }
    acc
}

fn inv(a: u64, p: u64) -> u64 {
    pow(a, p - 2, p)
}

pub(crate) fn reduce_int(c: &BigInt, p: u64) -> u64 {
    c.mod_floor(&BigInt::from(p))
        .to_u64()
        .expect("residue fits")
}

pub(crate) fn reduce(coeffs: &[BigInt], p: u64) -> Vec<u64> {
    coeffs.iter().map(|c| reduce_int(c, p)).collect()
}

/// A prime not dividing any of the given leading coefficients.
pub(crate) fn good_prime(leading: &[&BigInt]) -> Option<u64> {
    PRIMES
        .iter()
        .copied()
        .find(|&p| leading.iter().all(|c| !reduce_int(c, p).is_zero()))
}

fn trim(v: &mut Vec<u64>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

/// Remainder of `a` by `b` (nonzero, trimmed), in place.
fn rem_in_place(a: &mut Vec<u64>, b: &[u64], p: u64) {
    let db = b.len() - 1;
    let inv_lc = inv(b[db], p);
    while a.len() > db {
        let top = a.len() - 1;
        let c = mul(a[top], inv_lc, p);
        if c != 0 {
            for (j, &bj) in b.iter().enumerate() {
                let k = top - db + j;
                a[k] = sub(a[k], mul(c, bj, p), p);
            }
        }
        a.pop();
        trim(a);
    }
}

/// Degree of `gcd(a, b)` over `F_p`; `None` when both reduce to zero.
pub(crate) fn gcd_degree(a: &[u64], b: &[u64], p: u64) -> Option<usize> {
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    trim(&mut a);
    trim(&mut b);
    while !b.is_empty() {
        rem_in_place(&mut a, &b, p);
        std::mem::swap(&mut a, &mut b);
    }
    if a.is_empty() {
        None
    } else {
        Some(a.len() - 1)
    }
}

/// `Res(a, b)` over `F_p` for nonzero trimmed inputs whose degrees match
/// their lifts.
pub(crate) fn resultant(a: &[u64], b: &[u64], p: u64) -> u64 {
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    let mut acc = 1u64;
    loop {
        let m = a.len() - 1;
        let n = b.len() - 1;
        if n == 0 {
            return mul(acc, pow(b[0], m as u64, p), p);
        }
        if m == 0 {
            return mul(acc, pow(a[0], n as u64, p), p);
        }
        let lcb = b[n];
        rem_in_place(&mut a, &b, p);
        if a.is_empty() {
            return 0;
        }
        let k = a.len() - 1;
        if (m * n) % 2 == 1 {
            acc = sub(0, acc, p);
        }
        acc = mul(acc, pow(lcb, (m - k) as u64, p), p);
        std::mem::swap(&mut a, &mut b);
    }
}

/// Coefficients of `f(x + t)`.
pub(crate) fn taylor_shift(f: &[u64], t: u64, p: u64) -> Vec<u64> {
    let mut c = f.to_vec();
    let n = c.len();
    for i in 0..n {
        for j in (i..n - 1).rev() {
            c[j] = add(c[j], mul(t, c[j + 1], p), p);
        }
    }
    c
}
