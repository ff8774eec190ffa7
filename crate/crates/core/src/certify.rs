//! Coboundary certification: decide whether `a = c·ρ(g)/g` with `c ∈ ℚ*`
//! and `g ∈ ℚ(x)*`.
//!
//! Write `a = c₀·N/D` with `N`, `D` monic and coprime. Whenever
//! `u = gcd(N(x), D(x + jh))` is nontrivial for some integer `j`, the pair
//! `u(x)`, `u(x − jh)` is a telescoping quotient `ρ(G)/G^{±1}` and is moved into
//! `g`. The loop ends when no shift relation between `N` and `D` is left; the
//! remaining `N/D` is a coboundary exactly when it is `1`.
//!
//! The result is stated over `ℚ(x)`. For `a ∈ ℚ(x)` and `h ∈ ℚ`, a solution
//! `g ∈ ℂ(x)` is unique up to a constant factor, so conjugating by any field
//! automorphism gives another solution; averaging the conjugates (Hilbert 90)
//! shows a rational `g` exists whenever a complex one does. This descent is
//! assumed, not machine-checked.

use std::cmp::Reverse;

use crate::error::{Error, Result};
use crate::exact::{dispersion_set, poly_gcd, squarefree_layers, Poly, Rat, RatFunc};
use crate::shift::{system_det, DiffSystem, ExpConst, StepH};

/// `a = c·ρ(g)/g`, with `g` monic over monic.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    pub c: ExpConst,
    pub g: RatFunc,
}

/// One shift orbit `{q(x + kh)}` left in the residual.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitNote {
    /// `q(x)`, the orbit member with offset 0.
    pub representative: Poly,
    /// `(k, m)`: `q(x + kh)^m` divides a layer of the residual.
    pub members: Vec<(i64, usize)>,
    /// Multiplicities summed, positive in the numerator, negative in the denominator.
    pub exponent_sum: i64,
}

/// Proof that no certificate exists: `a·g = c·ρ(g)·residual` holds exactly,
/// and `residual ≠ 1` has no shift relation between numerator and denominator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ObstructionWitness {
    pub residual: RatFunc,
    pub c: ExpConst,
    pub g: RatFunc,
    pub orbit_note: OrbitNote,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Certification {
    Certificate(Certificate),
    Witness(ObstructionWitness),
}

impl Certification {
    pub fn is_certificate(&self) -> bool {
        matches!(self, Certification::Certificate(_))
    }

    pub fn certificate(&self) -> Option<&Certificate> {
        match self {
            Certification::Certificate(c) => Some(c),
            Certification::Witness(_) => None,
        }
    }

    pub fn witness(&self) -> Option<&ObstructionWitness> {
        match self {
            Certification::Certificate(_) => None,
            Certification::Witness(w) => Some(w),
        }
    }
}

pub fn coboundary_certify(a: &RatFunc, step: &StepH) -> Result<Certification> {
    if a.is_zero() {
        return Err(Error::InvalidInput(
            "a = 0 has no multiplicative structure".into(),
        ));
    }
    let h = step.value();
    let c0 = a.num().lc();
    let mut n = a.num().monic();
    let mut d = a.den().clone();
    let mut g_num = Poly::one();
    let mut g_den = Poly::one();

    loop {
        let set = dispersion_set(&n, &d, h)?;
        let Some(&j) = set
            .iter()
            .min_by_key(|&&j| (Reverse(j.unsigned_abs()), Reverse(j)))
        else {
            break;
        };
        let u = poly_gcd(&n, &d.shift(&step.times(j)))?;
        if j > 0 {
            for i in 1..=j {
                g_num = &g_num * &u.shift(&step.times(-i));
            }
        } else {
            for i in 0..-j {
                g_den = &g_den * &u.shift(&step.times(i));
            }
        }
        n = n.exact_div(&u).expect("gcd divides N");
        d = d
            .exact_div(&u.shift(&step.times(-j)))
            .expect("shifted gcd divides D");
    }

    let c = ExpConst::from_rat(&c0)?;
    let g = RatFunc::new(g_num, g_den)?;
    if n.is_one() && d.is_one() {
        return Ok(Certification::Certificate(Certificate { c, g }));
    }
    let orbit_note = orbit_note(&n, &d, step)?;
    Ok(Certification::Witness(ObstructionWitness {
        residual: RatFunc::new(n, d)?,
        c,
        g,
        orbit_note,
    }))
}

/// Picks one orbit of the residual `n/d` and records its members.
fn orbit_note(n: &Poly, d: &Poly, step: &StepH) -> Result<OrbitNote> {
    let h = step.value();
    let num_layers = squarefree_layers(n);
    let den_layers = squarefree_layers(d);
    let (mut q, sign) = match num_layers.first() {
        Some((_, s)) => (s.clone(), 1i64),
        None => (den_layers[0].1.clone(), -1i64),
    };
    let layers: &[(usize, Poly)] = if sign > 0 { &num_layers } else { &den_layers };

    // Shrink q until it shares either nothing or all of itself with every
    // shifted layer and has no shift relation with itself.
    'refine: loop {
        for k in dispersion_set(&q, &q, h)? {
            if k == 0 {
                continue;
            }
            let part = poly_gcd(&q, &q.shift(&step.times(k)))?;
            if part != q {
                q = part;
                continue 'refine;
            }
        }
        for (_, s) in layers {
            for k in dispersion_set(&q, s, h)? {
                let part = poly_gcd(&q, &s.shift(&step.times(k)))?;
                if part != q {
                    q = part;
                    continue 'refine;
                }
            }
        }
        break;
    }

    // q(x) | s(x + kh) means q(x − kh) | s(x).
    let mut members: Vec<(i64, usize)> = Vec::new();
    for (m, s) in layers {
        for k in dispersion_set(&q, s, h)? {
            members.push((-k, *m));
        }
    }
    members.sort();
    let base = members[0].0;
    let representative = q.shift(&step.times(-base));
    for member in &mut members {
        member.0 -= base;
    }
    let total: i64 = members.iter().map(|&(_, m)| m as i64).sum();
    Ok(OrbitNote {
        representative,
        members,
        exponent_sum: sign * total,
    })
}

/// A difference system `ρ(Y) = scalar·A·Y` with a constant scalar tag.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScaledSystem {
    pub scalar: ExpConst,
    pub system: DiffSystem,
}

impl ScaledSystem {
    /// The plain system `scalar·A`, available when the scalar is rational.
    pub fn to_rational_system(&self) -> Option<DiffSystem> {
        let r = self.scalar.to_rat()?;
        let m = self.system.matrix().scale(&RatFunc::constant(r));
        DiffSystem::new(self.system.step().clone(), m).ok()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DetCriterion {
    Rescaled {
        certificate: Certificate,
        system: ScaledSystem,
    },
    Witness(ObstructionWitness),
}

/// Certifies `det A = c·ρ(g)/g` and rescales to `B = c^(−1/n)·A`, so that
/// `det B = ρ(g)/g`.
pub fn det_criterion_rescale(a: &DiffSystem) -> Result<DetCriterion> {
    let det = system_det(a);
    match coboundary_certify(&det, a.step())? {
        Certification::Witness(w) => Ok(DetCriterion::Witness(w)),
        Certification::Certificate(cert) => {
            let n = Rat::from_integer((a.dim() as i64).into());
            let scalar = cert.c.pow(&-n.recip());
            Ok(DetCriterion::Rescaled {
                certificate: cert,
                system: ScaledSystem {
                    scalar,
                    system: a.clone(),
                },
            })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::shift::Matrix;

    fn rf(c: &[i64]) -> RatFunc {
        RatFunc::from_poly(Poly::from_ints(c))
    }

    fn frac(n: &[i64], d: &[i64]) -> RatFunc {
        RatFunc::new(Poly::from_ints(n), Poly::from_ints(d)).unwrap()
    }

    fn certify(a: &RatFunc) -> Certification {
        coboundary_certify(a, &StepH::one()).unwrap()
    }

    fn check_identity(a: &RatFunc, c: &ExpConst, g: &RatFunc, residual: &RatFunc, step: &StepH) {
        let c = RatFunc::constant(c.to_rat().unwrap());
        assert_eq!(a * g, &(&c * &g.shift(step.value())) * residual);
    }

    #[test]
    fn gamma_is_obstructed() {
        let w = certify(&rf(&[0, 1])).witness().cloned().unwrap();
        assert_eq!(w.residual, rf(&[0, 1]));
        assert_eq!(w.orbit_note.representative, Poly::x());
        assert_eq!(w.orbit_note.members, vec![(0, 1)]);
        assert_eq!(w.orbit_note.exponent_sum, 1);
    }

    #[test]
    fn certificate_examples() {
        let c = certify(&RatFunc::one()).certificate().cloned().unwrap();
        assert_eq!(
            c,
            Certificate {
                c: ExpConst::one(),
                g: RatFunc::one()
            }
        );

        let c = certify(&frac(&[2, 1], &[0, 1]))
            .certificate()
            .cloned()
            .unwrap();
        assert_eq!(c.c, ExpConst::one());
        assert_eq!(c.g, rf(&[0, 1, 1]));

        let c = certify(&frac(&[3, 3], &[0, 1]))
            .certificate()
            .cloned()
            .unwrap();
        assert_eq!(c.c, ExpConst::from_int(3).unwrap());
        assert_eq!(c.g, rf(&[0, 1]));
    }

    #[test]
    fn negative_offsets_cancel() {
        // a = x/(x+2) = ρ(g)/g with g = 1/(x(x+1))
        let a = frac(&[0, 1], &[2, 1]);
        let c = certify(&a).certificate().cloned().unwrap();
        assert_eq!(c.g, frac(&[1], &[0, 1, 1]));
        check_identity(&a, &c.c, &c.g, &RatFunc::one(), &StepH::one());
    }

    #[test]
    fn fractional_step() {
        let h = StepH::new(Rat::new(1.into(), 2.into())).unwrap();
        // g = x: ρ(g)/g = (x + 1/2)/x, times c = -5
        let a = RatFunc::new(
            Poly::from_ints(&[0, 1])
                .shift(h.value())
                .scale(&Rat::from_integer((-5).into())),
            Poly::x(),
        )
        .unwrap();
        let c = coboundary_certify(&a, &h)
            .unwrap()
            .certificate()
            .cloned()
            .unwrap();
        assert_eq!(c.c, ExpConst::from_int(-5).unwrap());
        check_identity(&a, &c.c, &c.g, &RatFunc::one(), &h);
    }

    #[test]
    fn witness_keeps_partial_progress() {
        // a = (x+3)(x+1)/x: (x+1)/x cancels, x+3 stays
        let a = frac(&[3, 4, 1], &[0, 1]);
        let w = certify(&a).witness().cloned().unwrap();
        check_identity(&a, &w.c, &w.g, &w.residual, &StepH::one());
        assert!(dispersion_set(
            w.residual.num(),
            w.residual.den(),
            &Rat::from_integer(1.into())
        )
        .unwrap()
        .is_empty());
    }

    #[test]
    fn orbit_within_one_side() {
        let w = certify(&rf(&[0, 1, 1])).witness().cloned().unwrap();
        assert_eq!(w.orbit_note.representative, Poly::x());
        assert_eq!(w.orbit_note.members, vec![(0, 1), (1, 1)]);
        assert_eq!(w.orbit_note.exponent_sum, 2);

        let w = certify(&frac(&[1], &[0, 0, 1])).witness().cloned().unwrap();
        assert_eq!(w.orbit_note.members, vec![(0, 2)]);
        assert_eq!(w.orbit_note.exponent_sum, -2);
    }

    #[test]
    fn zero_is_rejected() {
        assert!(matches!(
            coboundary_certify(&RatFunc::zero(), &StepH::one()),
            Err(Error::InvalidInput(_))
        ));
    }

    #[test]
    fn degree_guard() {
        assert!(!certify(&frac(&[1, 1], &[0, 0, 1])).is_certificate());
        assert!(!certify(&rf(&[5, 0, 1])).is_certificate());
    }

    #[test]
    fn det_criterion_examples() {
        let sys = DiffSystem::new(
            StepH::one(),
            Matrix::diagonal(vec![rf(&[4]), frac(&[1, 1], &[0, 1])]),
        )
        .unwrap();
        let DetCriterion::Rescaled {
            certificate,
            system,
        } = det_criterion_rescale(&sys).unwrap()
        else {
            panic!("expected a certificate");
        };
        assert_eq!(certificate.c, ExpConst::from_int(4).unwrap());
        assert_eq!(certificate.g, rf(&[0, 1]));
        assert_eq!(system.scalar.to_rat(), Some(Rat::new(1.into(), 2.into())));
        let b = system.to_rational_system().unwrap();
        assert_eq!(system_det(&b), frac(&[1, 1], &[0, 1]));

        let id = DiffSystem::new(StepH::one(), Matrix::identity(3)).unwrap();
        let DetCriterion::Rescaled {
            certificate,
            system,
        } = det_criterion_rescale(&id).unwrap()
        else {
            panic!("expected a certificate");
        };
        assert_eq!(certificate.g, RatFunc::one());
        assert_eq!(system.to_rational_system().unwrap(), id);

        let obstructed = DiffSystem::new(
            StepH::one(),
            Matrix::diagonal(vec![rf(&[2]), rf(&[0, 1, 1])]),
        )
        .unwrap();
        let DetCriterion::Witness(w) = det_criterion_rescale(&obstructed).unwrap() else {
            panic!("expected a witness");
        };
        assert_eq!(w.orbit_note.exponent_sum, 2);
        assert_eq!(w.c, ExpConst::from_int(2).unwrap());
    }

    #[test]
    fn irrational_rescaling() {
        let sys =
            DiffSystem::new(StepH::one(), Matrix::diagonal(vec![rf(&[2]), rf(&[1])])).unwrap();
        let DetCriterion::Rescaled { system, .. } = det_criterion_rescale(&sys).unwrap() else {
            panic!("expected a certificate");
        };
        assert!(system.scalar.to_rat().is_none());
        assert_eq!(system.scalar.powi(-2), ExpConst::from_int(2).unwrap());
        assert!(system.to_rational_system().is_none());
    }
}
