//! Sparse multivariate polynomials over the integers.
//!
//! These carry the numerators and denominators of ground-field elements, so
//! the only nontrivial algorithm here is the recursive gcd used to keep
//! fractions in lowest terms.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// A polynomial in `nvars` variables with integer coefficients.
///
/// Terms are kept strictly descending in graded-lexicographic order (variable
/// 0 most significant), with no zero coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct ZPoly {
    nvars: usize,
    terms: Vec<(Vec<u32>, BigInt)>,
}

/// Graded lexicographic comparison of exponent vectors.
pub fn grlex(a: &[u32], b: &[u32]) -> Ordering {
    let da: u64 = a.iter().map(|&e| e as u64).sum();
    let db: u64 = b.iter().map(|&e| e as u64).sum();
    da.cmp(&db).then_with(|| a.cmp(b))
}

impl ZPoly {
    pub fn zero(nvars: usize) -> Self {
        ZPoly {
            nvars,
            terms: Vec::new(),
        }
    }

    pub fn constant(nvars: usize, c: BigInt) -> Self {
        if c.is_zero() {
            return Self::zero(nvars);
        }
        ZPoly {
            nvars,
            terms: vec![(vec![0; nvars], c)],
        }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, BigInt::one())
    }

    pub fn var(nvars: usize, index: usize) -> Self {
        assert!(index < nvars, "variable index out of range");
        let mut e = vec![0; nvars];
        e[index] = 1;
        ZPoly {
            nvars,
            terms: vec![(e, BigInt::one())],
        }
    }

    /// Builds a polynomial from arbitrary (possibly repeated, possibly zero) terms.
    pub fn from_terms<I>(nvars: usize, terms: I) -> Self
    where
        I: IntoIterator<Item = (Vec<u32>, BigInt)>,
    {
        let mut acc: BTreeMap<(u64, Vec<u32>), BigInt> = BTreeMap::new();
        for (e, c) in terms {
            assert_eq!(e.len(), nvars, "exponent vector length mismatch");
            let d = e.iter().map(|&x| x as u64).sum();
            *acc.entry((d, e)).or_insert_with(BigInt::zero) += c;
        }
        let terms = acc
            .into_iter()
            .rev()
            .filter(|(_, c)| !c.is_zero())
            .map(|((_, e), c)| (e, c))
            .collect();
        ZPoly { nvars, terms }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> &[(Vec<u32>, BigInt)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms[0].0.iter().all(|&e| e == 0))
    }

    /// The value of a constant polynomial (zero included).
    pub fn constant_value(&self) -> Option<BigInt> {
        if self.is_zero() {
            Some(BigInt::zero())
        } else if self.is_constant() {
            Some(self.terms[0].1.clone())
        } else {
            None
        }
    }

    pub fn is_one(&self) -> bool {
        self.constant_value().map_or(false, |c| c.is_one())
    }

    pub fn leading_coefficient(&self) -> Option<&BigInt> {
        self.terms.first().map(|(_, c)| c)
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.iter().map(|(e, _)| e.iter().sum()).max()
    }

    pub fn degree_in(&self, var: usize) -> Option<u32> {
        self.terms.iter().map(|(e, _)| e[var]).max()
    }

    pub fn neg(&self) -> Self {
        ZPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        self.merge(other, false)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.merge(other, true)
    }

    fn merge(&self, other: &Self, negate: bool) -> Self {
        assert_eq!(self.nvars, other.nvars);
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() || j < other.terms.len() {
            let ord = if i == self.terms.len() {
                Ordering::Less
            } else if j == other.terms.len() {
                Ordering::Greater
            } else {
                grlex(&self.terms[i].0, &other.terms[j].0)
            };
            match ord {
                Ordering::Greater => {
                    out.push(self.terms[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    let (e, c) = &other.terms[j];
                    out.push((e.clone(), if negate { -c } else { c.clone() }));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = if negate {
                        &self.terms[i].1 - &other.terms[j].1
                    } else {
                        &self.terms[i].1 + &other.terms[j].1
                    };
                    if !c.is_zero() {
                        out.push((self.terms[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        ZPoly {
            nvars: self.nvars,
            terms: out,
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.nvars, other.nvars);
        if self.is_zero() || other.is_zero() {
            return Self::zero(self.nvars);
        }
        let mut prod = Vec::with_capacity(self.terms.len() * other.terms.len());
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e: Vec<u32> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                prod.push((e, ca * cb));
            }
        }
        Self::from_terms(self.nvars, prod)
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        ZPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, x)| (e.clone(), x * c)).collect(),
        }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one(self.nvars);
        for _ in 0..n {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn derivative(&self, var: usize) -> Self {
        let terms = self.terms.iter().filter(|(e, _)| e[var] > 0).map(|(e, c)| {
            let mut e2 = e.clone();
            e2[var] -= 1;
            (e2, c * BigInt::from(e[var]))
        });
        Self::from_terms(self.nvars, terms)
    }

    /// Gcd of the integer coefficients (zero for the zero polynomial).
    pub fn content(&self) -> BigInt {
        self.terms
            .iter()
            .fold(BigInt::zero(), |g, (_, c)| g.gcd(c))
    }

    /// Divides every coefficient by `c`, which must divide all of them.
    pub fn div_scalar_exact(&self, c: &BigInt) -> Self {
        ZPoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(e, x)| {
                    debug_assert!((x % c).is_zero());
                    (e.clone(), x / c)
                })
                .collect(),
        }
    }

    /// Flips the sign so that the leading coefficient is positive.
    pub fn with_positive_lead(self) -> Self {
        match self.leading_coefficient() {
            Some(c) if c.is_negative() => self.neg(),
            _ => self,
        }
    }

    /// Exact quotient `self / divisor`, or `None` when the division leaves a remainder.
    pub fn div_exact(&self, divisor: &Self) -> Option<Self> {
        assert!(!divisor.is_zero(), "division by the zero polynomial");
        if self.is_zero() {
            return Some(Self::zero(self.nvars));
        }
        if let Some(c) = divisor.constant_value() {
            if self.terms.iter().all(|(_, x)| (x % &c).is_zero()) {
                return Some(self.div_scalar_exact(&c));
            }
            return None;
        }
        let (le, lc) = &divisor.terms[0];
        let mut rem = self.clone();
        let mut quot = Vec::new();
        while let Some((e, c)) = rem.terms.first().cloned() {
            if e.iter().zip(le).any(|(a, b)| a < b) {
                return None;
            }
            let (q, r) = c.div_rem(lc);
            if !r.is_zero() {
                return None;
            }
            let qe: Vec<u32> = e.iter().zip(le).map(|(a, b)| a - b).collect();
            let mono = ZPoly {
                nvars: self.nvars,
                terms: vec![(qe.clone(), q.clone())],
            };
            rem = rem.sub(&mono.mul(divisor));
            quot.push((qe, q));
        }
        Some(Self::from_terms(self.nvars, quot))
    }

    /// Coefficients of `self` viewed as a polynomial in `var`, lowest degree first.
    pub fn as_univariate(&self, var: usize) -> Vec<ZPoly> {
        let deg = self.degree_in(var).unwrap_or(0) as usize;
        let mut buckets: Vec<Vec<(Vec<u32>, BigInt)>> = vec![Vec::new(); deg + 1];
        for (e, c) in &self.terms {
            let mut e2 = e.clone();
            e2[var] = 0;
            buckets[e[var] as usize].push((e2, c.clone()));
        }
        buckets
            .into_iter()
            .map(|t| Self::from_terms(self.nvars, t))
            .collect()
    }

    pub fn from_univariate(nvars: usize, var: usize, coeffs: &[ZPoly]) -> Self {
        let mut terms = Vec::new();
        for (k, c) in coeffs.iter().enumerate() {
            for (e, x) in &c.terms {
                let mut e2 = e.clone();
                e2[var] += k as u32;
                terms.push((e2, x.clone()));
            }
        }
        Self::from_terms(nvars, terms)
    }

    fn first_var(&self) -> Option<usize> {
        (0..self.nvars).find(|&v| self.terms.iter().any(|(e, _)| e[v] > 0))
    }

    /// Greatest common divisor, normalized to a positive leading coefficient.
    pub fn gcd(&self, other: &Self) -> Self {
        assert_eq!(self.nvars, other.nvars);
        if self.is_zero() {
            return other.clone().with_positive_lead();
        }
        if other.is_zero() {
            return self.clone().with_positive_lead();
        }
        if let (Some(a), Some(b)) = (self.constant_value(), other.constant_value()) {
            return Self::constant(self.nvars, a.gcd(&b));
        }
        let var = match (self.first_var(), other.first_var()) {
            (Some(a), Some(b)) => a.min(b),
            (Some(a), None) | (None, Some(a)) => a,
            (None, None) => unreachable!(),
        };
        let ua = self.as_univariate(var);
        let ub = other.as_univariate(var);
        let ca = content_of(&ua);
        let cb = content_of(&ub);
        let g = ca.gcd(&cb);
        if ua.len() == 1 || ub.len() == 1 {
            return g;
        }
        let pa = divide_coeffs(&ua, &ca);
        let pb = divide_coeffs(&ub, &cb);
        let (mut r0, mut r1) = if pa.len() >= pb.len() { (pa, pb) } else { (pb, pa) };
        loop {
            let r = pseudo_remainder(&r0, &r1);
            if r.is_empty() {
                break;
            }
            if r.len() == 1 {
                // constant in `var`: primitive gcd is 1
                return g;
            }
            let c = content_of(&r);
            r0 = r1;
            r1 = divide_coeffs(&r, &c);
        }
        let c = content_of(&r1);
        let r1 = divide_coeffs(&r1, &c);
        g.mul(&Self::from_univariate(self.nvars, var, &r1))
            .with_positive_lead()
    }

    /// Formats with the given variable names.
    pub fn display<'a>(&'a self, names: &'a [String]) -> ZPolyDisplay<'a> {
        ZPolyDisplay { poly: self, names }
    }
}

fn trim(v: &mut Vec<ZPoly>) {
    while v.last().map_or(false, |c| c.is_zero()) {
        v.pop();
    }
}

fn content_of(coeffs: &[ZPoly]) -> ZPoly {
    let nvars = coeffs[0].nvars;
    coeffs
        .iter()
        .fold(ZPoly::zero(nvars), |g, c| if g.is_one() { g } else { g.gcd(c) })
}

fn divide_coeffs(coeffs: &[ZPoly], c: &ZPoly) -> Vec<ZPoly> {
    coeffs
        .iter()
        .map(|x| x.div_exact(c).expect("content divides every coefficient"))
        .collect()
}

/// Pseudo-remainder of univariate polynomials with polynomial coefficients.
/// Both inputs are trimmed and `b` is nonzero. Returns a trimmed vector.
fn pseudo_remainder(a: &[ZPoly], b: &[ZPoly]) -> Vec<ZPoly> {
    let db = b.len() - 1;
    let lb = &b[db];
    let mut r: Vec<ZPoly> = a.to_vec();
    trim(&mut r);
    while r.len() > db {
        let dr = r.len() - 1;
        let lr = r[dr].clone();
        let shift = dr - db;
        for c in r.iter_mut() {
            *c = c.mul(lb);
        }
        for (k, bk) in b.iter().enumerate() {
            r[k + shift] = r[k + shift].sub(&lr.mul(bk));
        }
        debug_assert!(r[dr].is_zero());
        trim(&mut r);
    }
    r
}

pub struct ZPolyDisplay<'a> {
    poly: &'a ZPoly,
    names: &'a [String],
}

impl fmt::Display for ZPolyDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.poly.is_zero() {
            return write!(f, "0");
        }
        for (k, (e, c)) in self.poly.terms.iter().enumerate() {
            let is_const = e.iter().all(|&x| x == 0);
            let mag = c.abs();
            if k == 0 {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mut first = true;
            if is_const || !mag.is_one() {
                write!(f, "{}", mag)?;
                first = false;
            }
            for (v, &x) in e.iter().enumerate() {
                if x == 0 {
                    continue;
                }
                if !first {
                    write!(f, "*")?;
                }
                first = false;
                write!(f, "{}", self.names[v])?;
                if x > 1 {
                    write!(f, "^{}", x)?;
                }
            }
        }
        Ok(())
    }
}
