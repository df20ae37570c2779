//! Computation in the fraction field of K{Y}/[p]:h_p^∞ for a monic irreducible p.
//!
//! An element is stored as N/D with N reduced with respect to p and D a
//! nonzero polynomial of order below ord(p). For order-zero p the
//! denominator always lies in K and is folded into N.

use std::fmt;

use crate::bridge;
use crate::diffpoly::{Derivative, DiffPoly, Monomial, Ranking};
use crate::error::{Error, Result};

use super::ritt_reduce;

#[derive(Clone, Debug)]
pub struct QuotientRing {
    p: DiffPoly,
    ranking: Ranking,
    leader: Derivative,
    /// `a` and `D` with a·s_p ≡ D (mod p), D free of the leader.
    separant_inverse: (DiffPoly, DiffPoly),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientElem {
    numerator: DiffPoly,
    denominator: DiffPoly,
}

impl QuotientElem {
    pub fn numerator(&self) -> &DiffPoly {
        &self.numerator
    }

    pub fn denominator(&self) -> &DiffPoly {
        &self.denominator
    }

    /// The representative in S when the denominator is trivial.
    pub fn representative(&self) -> Option<&DiffPoly> {
        self.denominator.is_one().then_some(&self.numerator)
    }

    pub fn is_zero(&self) -> bool {
        self.numerator.is_zero()
    }
}

impl fmt::Display for QuotientElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.denominator.is_one() {
            write!(f, "{}", self.numerator)
        } else {
            write!(f, "({})/({})", self.numerator, self.denominator)
        }
    }
}

/// Pseudo-division in the leader `u`: returns (q, r, m) with m·a = q·b + r.
fn pseudo_divide(a: &DiffPoly, b: &DiffPoly, u: Derivative) -> (DiffPoly, DiffPoly, DiffPoly) {
    let ring = a.ring();
    let db = b.degree_in(u);
    let lb = b.coefficients_in(u).pop().unwrap();
    let mut r = a.clone();
    let mut q = DiffPoly::zero(ring);
    let mut m = DiffPoly::one(ring);
    while !r.is_zero() && r.degree_in(u) >= db {
        let dr = r.degree_in(u);
        let lr = r.coefficients_in(u).pop().unwrap();
        let shift = Monomial::var(u, dr - db);
        let t = lr.mul_monomial(&shift);
        r = &(&lb * &r) - &(&t * b);
        q = &(&lb * &q) + &t;
        m = &lb * &m;
    }
    (q, r, m)
}

impl QuotientRing {
    /// `p` must involve a single indeterminate, be monic in its leader and irreducible over K.
    pub fn new(p: &DiffPoly) -> Result<Self> {
        if p.ring().len() != 1 {
            return Err(Error::Unsupported("quotients are built in a single indeterminate".into()));
        }
        let ranking = Ranking::orderly(1);
        let d = p.decompose(&ranking)?;
        if !d.initial.is_one() {
            return Err(Error::NotMonic);
        }
        if !crate::splitting::is_irreducible_diffpoly(p)? {
            return Err(Error::NotIrreducible);
        }
        let u = d.leader;
        // Extended pseudo-remainder sequence tracking the cofactor of s_p.
        let (mut r0, mut a0) = (p.clone(), DiffPoly::zero(p.ring()));
        let (mut r1, mut a1) = (d.separant.clone(), DiffPoly::one(p.ring()));
        while r1.degree_in(u) > 0 {
            let (q, r2, m) = pseudo_divide(&r0, &r1, u);
            let mut a2 = &(&m * &a0) - &(&q * &a1);
            let mut r2 = r2;
            let mut parts = r2.coefficients_in(u);
            parts.extend(a2.coefficients_in(u));
            let g = bridge::gcd(&parts);
            if !g.is_zero() && !g.is_constant() {
                r2 = bridge::div_exact(&r2, &g).unwrap();
                a2 = bridge::div_exact(&a2, &g).unwrap();
            }
            r0 = std::mem::replace(&mut r1, r2);
            a0 = std::mem::replace(&mut a1, a2);
        }
        debug_assert!(!r1.is_zero(), "an irreducible p is coprime to its separant");
        let a1 = ritt_reduce(&a1, std::slice::from_ref(p), &ranking)?.remainder;
        Ok(QuotientRing {
            p: p.clone(),
            ranking,
            leader: u,
            separant_inverse: (a1, r1),
        })
    }

    pub fn modulus(&self) -> &DiffPoly {
        &self.p
    }

    /// The class of `f`.
    pub fn canon(&self, f: &DiffPoly) -> Result<QuotientElem> {
        self.canon_fraction(f, &DiffPoly::one(f.ring()))
    }

    /// The class of `f / g` for `g` free of the leader and its derivatives.
    pub fn canon_fraction(&self, f: &DiffPoly, g: &DiffPoly) -> Result<QuotientElem> {
        f.check_same_ring(&self.p)?;
        if g.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if g.derivatives().iter().any(|d| d.order >= self.leader.order) {
            return Err(Error::Unsupported("denominator must have lower order than the modulus".into()));
        }
        let divisors = std::slice::from_ref(&self.p);
        let cert = ritt_reduce(f, divisors, &self.ranking)?;
        let e: u32 = cert.multiplier_factors.iter().map(|&(_, _, e)| e).sum();
        let (a, dd) = &self.separant_inverse;
        let num = if e == 0 {
            cert.remainder
        } else {
            ritt_reduce(&(&cert.remainder * &a.pow(e)), divisors, &self.ranking)?.remainder
        };
        let den = if e == 0 { g.clone() } else { g * &dd.pow(e) };
        Ok(self.normalize(num, den))
    }

    fn normalize(&self, num: DiffPoly, den: DiffPoly) -> QuotientElem {
        let ring = num.ring().clone();
        if num.is_zero() {
            return QuotientElem {
                numerator: num,
                denominator: DiffPoly::one(&ring),
            };
        }
        let g = bridge::gcd(&[num.clone(), den.clone()]);
        let (num, den) = if g.is_constant() {
            (num, den)
        } else {
            (bridge::div_exact(&num, &g).unwrap(), bridge::div_exact(&den, &g).unwrap())
        };
        let lead = den.sorted_terms(&self.ranking)[0].1.clone();
        let inv = lead.inv().expect("nonzero leading coefficient");
        QuotientElem {
            numerator: num.scale(&inv),
            denominator: den.scale(&inv),
        }
    }

    pub fn add(&self, x: &QuotientElem, y: &QuotientElem) -> Result<QuotientElem> {
        let num = &(&x.numerator * &y.denominator) + &(&y.numerator * &x.denominator);
        self.canon_fraction(&num, &(&x.denominator * &y.denominator))
    }

    pub fn neg(&self, x: &QuotientElem) -> QuotientElem {
        QuotientElem {
            numerator: x.numerator.neg(),
            denominator: x.denominator.clone(),
        }
    }

    pub fn mul(&self, x: &QuotientElem, y: &QuotientElem) -> Result<QuotientElem> {
        self.canon_fraction(&(&x.numerator * &y.numerator), &(&x.denominator * &y.denominator))
    }

    /// δ on classes, by the quotient rule.
    pub fn derive(&self, x: &QuotientElem) -> Result<QuotientElem> {
        let (n, d) = (&x.numerator, &x.denominator);
        let top = &(&n.derive() * d) - &(n * &d.derive());
        self.canon_fraction(&top, &(d * d))
    }
}
