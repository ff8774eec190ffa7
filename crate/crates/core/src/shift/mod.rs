//! Shift-difference algebra: the step, multiplier constants, exponential
//! polynomials, difference systems `ρ(Y) = A·Y` and their transformations.

mod expconst;
mod exppoly;
mod matrix;

use num_traits::{One, Zero};

pub use expconst::ExpConst;
pub use exppoly::{ExpPoly, ExpTerm};
pub use matrix::Matrix;

use crate::error::{Error, Result};
use crate::exact::{Rat, RatFunc};

/// The nonzero shift step `h` of `ρ: y(x) ↦ y(x + h)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct StepH(Rat);

impl StepH {
    pub fn new(h: Rat) -> Result<Self> {
        if h.is_zero() {
            return Err(Error::InvalidStep);
        }
        Ok(StepH(h))
    }

    pub fn from_int(h: i64) -> Result<Self> {
        Self::new(Rat::from_integer(h.into()))
    }

    pub fn one() -> Self {
        StepH(Rat::one())
    }

    pub fn value(&self) -> &Rat {
        &self.0
    }

    /// `k·h`
    pub fn times(&self, k: i64) -> Rat {
        &self.0 * Rat::from_integer(k.into())
    }

    /// The step `ℓ·h` of the iterated operator `ρ^ℓ`.
    pub fn scaled(&self, l: i64) -> Result<StepH> {
        StepH::new(self.times(l))
    }
}

/// A difference system `ρ(Y) = A·Y` with `A ∈ GL_n(ℚ(x))`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiffSystem {
    step: StepH,
    matrix: Matrix,
}

impl DiffSystem {
    /// Fails when `matrix` is singular over ℚ(x).
    pub fn new(step: StepH, matrix: Matrix) -> Result<Self> {
        if matrix.det().is_zero() {
            return Err(Error::InvalidArgument("system matrix is singular".into()));
        }
        Ok(DiffSystem { step, matrix })
    }

    pub fn step(&self) -> &StepH {
        &self.step
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn dim(&self) -> usize {
        self.matrix.dim()
    }

    /// `ρ^k(A)`, the entrywise shift by `k·h`.
    pub fn rho_matrix(&self, k: i64) -> Matrix {
        self.matrix.shift(&self.step.times(k))
    }
}

/// A closed-form solution of `ρ(y) = a·y + b`.
///
/// The general solution is `value + π·homogeneous` for an arbitrary
/// `h`-periodic `π`; `value` itself is a representative whose ℚ(x)
/// coefficients stand in for coefficients in the field of periodic functions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClosedForm {
    pub value: ExpPoly,
    pub homogeneous: ExpPoly,
    pub modulo_periodic: bool,
}

/// Applies `ρ^k` term-wise.
pub fn exppoly_rho(f: &ExpPoly, step: &StepH, k: i64) -> ExpPoly {
    f.rho(step, k)
}

/// The iterated system `A_[ℓ] = ρ^(ℓ-1)(A) ⋯ ρ(A)·A` with step `ℓ·h`.
pub fn iterate_system(a: &DiffSystem, l: i64) -> Result<DiffSystem> {
    if l <= 0 {
        return Err(Error::InvalidArgument(format!(
            "iteration count must be positive, got {l}"
        )));
    }
    let mut acc = a.matrix.clone();
    for k in 1..l {
        acc = &a.rho_matrix(k) * &acc;
    }
    Ok(DiffSystem {
        step: a.step.scaled(l)?,
        matrix: acc,
    })
}

/// `ρ(T)·A·T⁻¹`, the system satisfied by `T·Y`.
pub fn gauge_transform(a: &DiffSystem, t: &Matrix) -> Result<DiffSystem> {
    if t.dim() != a.dim() {
        return Err(Error::InvalidArgument(format!(
            "gauge of size {} for a system of size {}",
            t.dim(),
            a.dim()
        )));
    }
    let t_inv = t.inverse().ok_or(Error::InvalidGauge)?;
    let rho_t = t.shift(a.step.value());
    Ok(DiffSystem {
        step: a.step.clone(),
        matrix: &(&rho_t * &a.matrix) * &t_inv,
    })
}

/// Companion system of `a₀·f + a₁·ρ(f) + ⋯ + aₙ·ρⁿ(f) = 0`, acting on
/// `(f, ρ(f), …, ρ^(n-1)(f))ᵀ`.
pub fn companion_from_scalar(coeffs: &[RatFunc], step: &StepH) -> Result<DiffSystem> {
    if coeffs.len() < 2 {
        return Err(Error::InvalidEquation(
            "need at least a₀ and a₁ for an equation of order ≥ 1".into(),
        ));
    }
    let n = coeffs.len() - 1;
    let a0 = &coeffs[0];
    let an = &coeffs[n];
    if a0.is_zero() {
        return Err(Error::InvalidEquation(
            "a₀ = 0 makes the companion matrix singular".into(),
        ));
    }
    if an.is_zero() {
        return Err(Error::InvalidEquation("aₙ = 0 drops the order".into()));
    }
    let mut m = Matrix::zeros(n);
    for i in 0..n - 1 {
        m.set(i, i + 1, RatFunc::one());
    }
    for (j, a) in coeffs[..n].iter().enumerate() {
        m.set(n - 1, j, -(a / an));
    }
    DiffSystem::new(step.clone(), m)
}

pub fn system_det(a: &DiffSystem) -> RatFunc {
    a.matrix.det()
}

/// Minimal-order scalar relation `Σ aᵢ·ρⁱ(f) = 0` over ℚ(x), normalized to
/// `aₙ = 1`. The order is at most the number of distinct units in `f`.
pub fn scalar_relation(f: &ExpPoly, step: &StepH) -> Result<Vec<RatFunc>> {
    if f.is_zero() {
        return Err(Error::InvalidInput(
            "the zero function satisfies every relation".into(),
        ));
    }
    let max_order = f.len().max(1) * 4;
    let mut iterates = vec![f.clone()];
    for order in 1..=max_order {
        iterates.push(f.rho(step, order as i64));
        let mut keys: Vec<(ExpConst, ExpConst)> = Vec::new();
        for it in &iterates {
            for t in it.terms() {
                let key = (t.multiplier.clone(), t.radical.clone());
                if !keys.contains(&key) {
                    keys.push(key);
                }
            }
        }
        // Rows: one per unit; columns: one per iterate.
        let rows: Vec<Vec<RatFunc>> = keys
            .iter()
            .map(|(mu, kappa)| {
                iterates
                    .iter()
                    .map(|it| {
                        it.terms()
                            .find(|t| t.multiplier == mu && t.radical == kappa)
                            .map(|t| t.coeff.clone())
                            .unwrap_or_else(RatFunc::zero)
                    })
                    .collect()
            })
            .collect();
        if let Some(v) = matrix::kernel_vector(rows, order + 1) {
            let last = v[order].clone();
            if last.is_zero() {
                continue;
            }
            return Ok(v.iter().map(|c| c / &last).collect());
        }
    }
    Err(Error::InvalidInput(format!(
        "no relation of order ≤ {max_order} found"
    )))
}
