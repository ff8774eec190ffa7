#![allow(dead_code)]

use difftrans::exact::{Poly, Rat, RatFunc};
use difftrans::shift::StepH;
use num_traits::ToPrimitive;
use rand::Rng;

pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(n.into(), d.into())
}

pub fn poly(c: &[i64]) -> Poly {
    Poly::from_ints(c)
}

pub fn rf(c: &[i64]) -> RatFunc {
    RatFunc::from_poly(Poly::from_ints(c))
}

pub fn frac(n: &[i64], d: &[i64]) -> RatFunc {
    RatFunc::new(Poly::from_ints(n), Poly::from_ints(d)).unwrap()
}

pub fn step(n: i64, d: i64) -> StepH {
    StepH::new(rat(n, d)).unwrap()
}

/// Integer coefficients in `[-height, height]`, exact degree `deg`.
pub fn random_poly<R: Rng>(rng: &mut R, deg: usize, height: i64) -> Poly {
    let mut c: Vec<i64> = (0..=deg).map(|_| rng.gen_range(-height..=height)).collect();
    while c[deg] == 0 {
        c[deg] = rng.gen_range(-height..=height);
    }
    Poly::from_ints(&c)
}

/// Numerator and denominator degrees drawn up to the given maxima.
pub fn random_ratfunc<R: Rng>(rng: &mut R, max_num: usize, max_den: usize, height: i64) -> RatFunc {
    let dn = rng.gen_range(0..=max_num);
    let dd = rng.gen_range(0..=max_den);
    let num = random_poly(rng, dn, height);
    let den = random_poly(rng, dd, height);
    RatFunc::new(num, den).unwrap()
}

pub fn random_nonzero_rat<R: Rng>(rng: &mut R, height: i64) -> Rat {
    let mut n = 0;
    while n == 0 {
        n = rng.gen_range(-height..=height);
    }
    rat(n, rng.gen_range(1..=height))
}

pub fn random_step<R: Rng>(rng: &mut R) -> StepH {
    const STEPS: [(i64, i64); 6] = [(1, 1), (1, 1), (2, 1), (1, 2), (-1, 1), (3, 2)];
    let (n, d) = STEPS[rng.gen_range(0..STEPS.len())];
    step(n, d)
}

/// Deterministic CLI corpus: each entry is an argument vector.
pub fn cli_corpus() -> Vec<Vec<String>> {
    let system = r#"{"h": "1", "matrix": [["x", "1"], ["0", "2"]]}"#;
    let gauge = r#"{"matrix": [["1", "x"], ["0", "1"]]}"#;
    let raw: Vec<Vec<&str>> = vec![
        vec!["certify", "-a", "x", "-h", "1"],
        vec!["certify", "-a", "1", "-h", "1"],
        vec!["certify", "-a", "(x+2)/x", "-h", "1"],
        vec!["certify", "-a", "3*(x+1)/x", "-h", "1"],
        vec!["certify", "-a", "x/(x+2)", "-h", "1/2"],
        vec!["certify", "-a", "x*(x+1)", "-h", "1"],
        vec!["certify", "-a", "(x^2+2*x+2)/(x^2+1)", "-h", "-1"],
        vec!["solve", "-a", "x", "-b", "0", "-h", "1"],
        vec!["solve", "-a", "2", "-b", "0", "-h", "1"],
        vec!["solve", "-a", "1", "-b", "1", "-h", "1"],
        vec!["solve", "-a", "1", "-b", "1/x", "-h", "1"],
        vec!["solve", "-a", "2", "-b", "x", "-h", "1", "--crosscheck"],
        vec![
            "solve",
            "-a",
            "(x+1)/x",
            "-b",
            "x+1",
            "-h",
            "1",
            "--crosscheck",
        ],
        vec![
            "solve",
            "-a",
            "1",
            "-b",
            r#"{"3": "x", "1": "1/(x^2+x)"}"#,
            "-h",
            "1",
            "--crosscheck",
        ],
        vec![
            "solve",
            "-a",
            "1/2",
            "-b",
            r#"{"2^(1/2)": "1"}"#,
            "-h",
            "1",
            "--crosscheck",
        ],
        vec![
            "solve",
            "-a",
            "-3",
            "-b",
            r#"{"5": {"1": "x", "2^(1/2)": "1"}}"#,
            "-h",
            "2",
        ],
        vec!["iterate", "-A", system, "-l", "3"],
        vec!["gauge", "-A", system, "-T", gauge],
    ];
    raw.into_iter()
        .map(|v| v.into_iter().map(String::from).collect())
        .collect()
}

/// True when `p` has no complex root within distance `r` of any orbit point
/// `x₀ + k·h`, `0 ≤ k ≤ steps`, by comparing `|p(x)|` with the remaining
/// Taylor terms on the disc.
pub fn orbit_clear_of_roots(p: &Poly, x0: f64, h: f64, steps: usize, r: f64) -> bool {
    let coeffs: Vec<f64> = p
        .coeffs()
        .iter()
        .map(|c| c.to_f64().unwrap_or(f64::NAN))
        .collect();
    (0..=steps).all(|k| {
        let x = x0 + k as f64 * h;
        // Taylor coefficients of p(x + t)
        let mut t = coeffs.clone();
        let n = t.len();
        for i in 0..n {
            for j in (i..n - 1).rev() {
                t[j] += x * t[j + 1];
            }
        }
        let tail: f64 = t
            .iter()
            .skip(1)
            .enumerate()
            .map(|(i, c)| c.abs() * r.powi(i as i32 + 1))
            .sum();
        t[0].abs() > tail
    })
}
