//! Ordinary differential polynomials over a ground field.

mod print;
mod ranking;

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::ground::{FieldDescriptor, FieldElem};

pub use ranking::{Derivative, Ranking, RankingKind};
pub use print::derivative_text;

/// The ring K{y_1, …, y_n}.
#[derive(Debug, PartialEq, Eq, Hash)]
pub struct DiffRing {
    field: Arc<FieldDescriptor>,
    names: Vec<String>,
}

impl DiffRing {
    pub fn new<S: AsRef<str>>(field: Arc<FieldDescriptor>, names: &[S]) -> Result<Arc<Self>> {
        let names: Vec<String> = names.iter().map(|n| n.as_ref().to_string()).collect();
        for (i, n) in names.iter().enumerate() {
            let ok = n.chars().next().map_or(false, |c| c.is_alphabetic() || c == '_')
                && n.chars().all(|c| c.is_alphanumeric() || c == '_');
            if !ok {
                return Err(Error::InvalidDescriptor(format!("bad indeterminate name `{n}`")));
            }
            if names[..i].contains(n) || field.generator_index(n).is_some() {
                return Err(Error::InvalidDescriptor(format!("name `{n}` is already in use")));
            }
        }
        Ok(Arc::new(DiffRing { field, names }))
    }

    pub fn field(&self) -> &Arc<FieldDescriptor> {
        &self.field
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// Orderly ranking with the declaration order ascending.
    pub fn default_ranking(&self) -> Ranking {
        Ranking::orderly(self.names.len())
    }
}

/// A power product of derivatives, kept sorted by derivative with positive exponents.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial(Vec<(Derivative, u32)>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn var(d: Derivative, e: u32) -> Self {
        if e == 0 {
            Monomial::one()
        } else {
            Monomial(vec![(d, e)])
        }
    }

    pub fn from_factors<I: IntoIterator<Item = (Derivative, u32)>>(factors: I) -> Self {
        let mut map: BTreeMap<Derivative, u32> = BTreeMap::new();
        for (d, e) in factors {
            if e > 0 {
                *map.entry(d).or_insert(0) += e;
            }
        }
        Monomial(map.into_iter().collect())
    }

    pub fn factors(&self) -> &[(Derivative, u32)] {
        &self.0
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree_in(&self, d: Derivative) -> u32 {
        self.0
            .binary_search_by(|(x, _)| x.cmp(&d))
            .map(|i| self.0[i].1)
            .unwrap_or(0)
    }

    pub fn total_degree(&self) -> u32 {
        self.0.iter().map(|(_, e)| e).sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut out = Vec::with_capacity(self.0.len() + other.0.len());
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() && j < other.0.len() {
            match self.0[i].0.cmp(&other.0[j].0) {
                Ordering::Less => {
                    out.push(self.0[i]);
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(other.0[j]);
                    j += 1;
                }
                Ordering::Equal => {
                    out.push((self.0[i].0, self.0[i].1 + other.0[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.0[i..]);
        out.extend_from_slice(&other.0[j..]);
        Monomial(out)
    }

    /// The monomial with the exponent of `d` replaced.
    pub fn with_degree(&self, d: Derivative, e: u32) -> Monomial {
        let mut v: Vec<(Derivative, u32)> = self.0.iter().copied().filter(|(x, _)| *x != d).collect();
        if e > 0 {
            v.push((d, e));
            v.sort();
        }
        Monomial(v)
    }

    /// Lexicographic comparison with derivatives taken from highest to lowest under `r`.
    pub fn compare(&self, other: &Monomial, r: &Ranking) -> Ordering {
        let mut a: Vec<(Derivative, u32)> = self.0.clone();
        let mut b: Vec<(Derivative, u32)> = other.0.clone();
        a.sort_by(|x, y| r.compare(y.0, x.0));
        b.sort_by(|x, y| r.compare(y.0, x.0));
        for (x, y) in a.iter().zip(&b) {
            let c = r.compare(x.0, y.0).then(x.1.cmp(&y.1));
            if c != Ordering::Equal {
                return c;
            }
        }
        a.len().cmp(&b.len())
    }
}

/// A differential polynomial: a finite map from monomials to nonzero coefficients.
#[derive(Clone, Debug)]
pub struct DiffPoly {
    ring: Arc<DiffRing>,
    terms: BTreeMap<Monomial, FieldElem>,
}

impl PartialEq for DiffPoly {
    fn eq(&self, other: &Self) -> bool {
        self.terms == other.terms && same_ring(&self.ring, &other.ring)
    }
}

impl Eq for DiffPoly {}

impl std::hash::Hash for DiffPoly {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        for (m, c) in &self.terms {
            m.hash(state);
            c.hash(state);
        }
    }
}

fn same_ring(a: &Arc<DiffRing>, b: &Arc<DiffRing>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

/// Leader, rank degree, initial and separant of a nonconstant polynomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decomposition {
    pub leader: Derivative,
    pub degree: u32,
    pub initial: DiffPoly,
    pub separant: DiffPoly,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ReducedMode {
    Partially,
    Algebraically,
    Fully,
}

impl DiffPoly {
    pub fn zero(ring: &Arc<DiffRing>) -> Self {
        DiffPoly {
            ring: ring.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn one(ring: &Arc<DiffRing>) -> Self {
        Self::constant(ring, FieldElem::one(ring.field()))
    }

    pub fn from_int(ring: &Arc<DiffRing>, n: i64) -> Self {
        Self::constant(ring, FieldElem::from_int(ring.field(), n))
    }

    pub fn constant(ring: &Arc<DiffRing>, c: FieldElem) -> Self {
        Self::monomial(ring, Monomial::one(), c)
    }

    pub fn monomial(ring: &Arc<DiffRing>, m: Monomial, c: FieldElem) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        DiffPoly {
            ring: ring.clone(),
            terms,
        }
    }

    /// The derivative `d` as a polynomial.
    pub fn var(ring: &Arc<DiffRing>, d: Derivative) -> Self {
        assert!(d.index < ring.len(), "indeterminate index out of range");
        Self::monomial(ring, Monomial::var(d, 1), FieldElem::one(ring.field()))
    }

    /// `y_index^(order)` as a polynomial.
    pub fn derivative(ring: &Arc<DiffRing>, index: usize, order: u32) -> Self {
        Self::var(ring, Derivative::new(index, order))
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, FieldElem)>>(ring: &Arc<DiffRing>, terms: I) -> Self {
        let mut acc = Self::zero(ring);
        for (m, c) in terms {
            acc.add_term(m, c);
        }
        acc
    }

    fn add_term(&mut self, m: Monomial, c: FieldElem) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = &*o.get() + &c;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn ring(&self) -> &Arc<DiffRing> {
        &self.ring
    }

    pub fn field(&self) -> &Arc<FieldDescriptor> {
        self.ring.field()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &FieldElem)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.as_constant().map_or(false, |c| c.is_one())
    }

    /// True for elements of K (zero included).
    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    /// The value of an element of K.
    pub fn as_constant(&self) -> Option<FieldElem> {
        if self.is_zero() {
            Some(FieldElem::zero(self.field()))
        } else if self.is_constant() {
            self.terms.values().next().cloned()
        } else {
            None
        }
    }

    pub fn coefficient(&self, m: &Monomial) -> FieldElem {
        self.terms
            .get(m)
            .cloned()
            .unwrap_or_else(|| FieldElem::zero(self.field()))
    }

    pub fn check_same_ring(&self, other: &Self) -> Result<()> {
        if same_ring(&self.ring, &other.ring) {
            Ok(())
        } else {
            Err(Error::RingMismatch)
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check_same_ring(other)?;
        let (big, small) = if self.terms.len() >= other.terms.len() { (self, other) } else { (other, self) };
        let mut out = big.clone();
        for (m, c) in &small.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.checked_add(&other.neg())
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.check_same_ring(other)?;
        let mut out = Self::zero(&self.ring);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        Ok(out)
    }

    pub fn neg(&self) -> Self {
        DiffPoly {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    /// Multiplication by an element of K.
    pub fn scale(&self, c: &FieldElem) -> Self {
        if c.is_zero() {
            return Self::zero(&self.ring);
        }
        DiffPoly {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Self {
        DiffPoly {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(x, c)| (x.mul(m), c.clone())).collect(),
        }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one(&self.ring);
        let mut base = self.clone();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                acc = &acc * &base;
            }
            n >>= 1;
            if n > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// The total derivation δ.
    pub fn derive(&self) -> Self {
        let mut out = Self::zero(&self.ring);
        for (m, c) in &self.terms {
            let dc = c.derive();
            if !dc.is_zero() {
                out.add_term(m.clone(), dc);
            }
            for &(d, e) in m.factors() {
                let lowered = m.with_degree(d, e - 1);
                let next = lowered.mul(&Monomial::var(d.prolong(1), 1));
                out.add_term(next, c * &FieldElem::from_int(self.field(), e as i64));
            }
        }
        out
    }

    /// δ applied `n` times.
    pub fn derive_n(&self, n: u32) -> Self {
        let mut p = self.clone();
        for _ in 0..n {
            p = p.derive();
        }
        p
    }

    /// ∂f/∂d, treating derivatives as independent variables.
    pub fn partial(&self, d: Derivative) -> Self {
        let mut out = Self::zero(&self.ring);
        for (m, c) in &self.terms {
            let e = m.degree_in(d);
            if e > 0 {
                out.add_term(m.with_degree(d, e - 1), c * &FieldElem::from_int(self.field(), e as i64));
            }
        }
        out
    }

    /// Every derivative occurring in `self`.
    pub fn derivatives(&self) -> BTreeSet<Derivative> {
        self.terms
            .keys()
            .flat_map(|m| m.factors().iter().map(|(d, _)| *d))
            .collect()
    }

    /// `None` stands for −∞ (the zero polynomial); elements of K have order −1.
    pub fn order(&self) -> Option<i64> {
        if self.is_zero() {
            return None;
        }
        Some(self.derivatives().iter().map(|d| d.order as i64).max().unwrap_or(-1))
    }

    /// Order in a single indeterminate (−1 when it does not occur).
    pub fn order_in(&self, index: usize) -> i64 {
        self.derivatives()
            .iter()
            .filter(|d| d.index == index)
            .map(|d| d.order as i64)
            .max()
            .unwrap_or(-1)
    }

    pub fn degree_in(&self, d: Derivative) -> u32 {
        self.terms.keys().map(|m| m.degree_in(d)).max().unwrap_or(0)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(Monomial::total_degree).max().unwrap_or(0)
    }

    /// Coefficients of `self` as a polynomial in `d`, lowest degree first.
    pub fn coefficients_in(&self, d: Derivative) -> Vec<DiffPoly> {
        let deg = self.degree_in(d) as usize;
        let mut out = vec![Self::zero(&self.ring); deg + 1];
        for (m, c) in &self.terms {
            let e = m.degree_in(d);
            out[e as usize].add_term(m.with_degree(d, 0), c.clone());
        }
        out
    }

    /// Highest ranked derivative occurring, if any.
    pub fn leader(&self, r: &Ranking) -> Option<Derivative> {
        self.derivatives().into_iter().max_by(|a, b| r.compare(*a, *b))
    }

    /// (leader, degree in the leader).
    pub fn rank(&self, r: &Ranking) -> Option<(Derivative, u32)> {
        self.leader(r).map(|u| (u, self.degree_in(u)))
    }

    pub fn initial(&self, r: &Ranking) -> Result<DiffPoly> {
        Ok(self.decompose(r)?.initial)
    }

    pub fn separant(&self, r: &Ranking) -> Result<DiffPoly> {
        let u = self.leader(r).ok_or(Error::ConstantPolynomial)?;
        Ok(self.partial(u))
    }

    pub fn decompose(&self, r: &Ranking) -> Result<Decomposition> {
        let leader = self.leader(r).ok_or(Error::ConstantPolynomial)?;
        let mut coeffs = self.coefficients_in(leader);
        let initial = coeffs.pop().unwrap();
        Ok(Decomposition {
            leader,
            degree: coeffs.len() as u32,
            initial,
            separant: self.partial(leader),
        })
    }

    /// Monic in the leader: the initial equals 1.
    pub fn is_monic(&self, r: &Ranking) -> bool {
        self.decompose(r).map_or(false, |d| d.initial.is_one())
    }

    /// Compares ranks `u_f^d_f` and `u_g^d_g`; elements of K rank lowest.
    pub fn compare_rank(&self, other: &DiffPoly, r: &Ranking) -> Ordering {
        match (self.rank(r), other.rank(r)) {
            (None, None) => Ordering::Equal,
            (None, Some(_)) => Ordering::Less,
            (Some(_), None) => Ordering::Greater,
            (Some((u, d)), Some((v, e))) => r.compare(u, v).then(d.cmp(&e)),
        }
    }

    /// Whether `self` is reduced with respect to `g`.
    pub fn is_reduced(&self, g: &DiffPoly, r: &Ranking, mode: ReducedMode) -> Result<bool> {
        let (u, d) = g.rank(r).ok_or(Error::ConstantPolynomial)?;
        let partially = || !self.derivatives().iter().any(|x| x.is_proper_derivative_of(u));
        let algebraically = || self.degree_in(u) < d;
        Ok(match mode {
            ReducedMode::Partially => partially(),
            ReducedMode::Algebraically => algebraically(),
            ReducedMode::Fully => partially() && algebraically(),
        })
    }

    /// Applies `f` to every coefficient.
    pub fn map_coefficients<F: Fn(&FieldElem) -> FieldElem>(&self, f: F) -> Self {
        Self::from_terms(&self.ring, self.terms.iter().map(|(m, c)| (m.clone(), f(c))))
    }

    /// Replaces the derivative `d` by `value`.
    pub fn substitute(&self, d: Derivative, value: &DiffPoly) -> Self {
        let powers = {
            let deg = self.degree_in(d);
            let mut v = vec![Self::one(&self.ring)];
            for i in 1..=deg as usize {
                let next = &v[i - 1] * value;
                v.push(next);
            }
            v
        };
        let mut out = Self::zero(&self.ring);
        for (m, c) in &self.terms {
            let e = m.degree_in(d);
            let rest = Self::monomial(&self.ring, m.with_degree(d, 0), c.clone());
            out = &out + &(&rest * &powers[e as usize]);
        }
        out
    }

    /// Divides by a nonzero element of K.
    pub fn div_constant(&self, c: &FieldElem) -> Result<Self> {
        Ok(self.scale(&c.inv()?))
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl std::ops::$trait<&DiffPoly> for &DiffPoly {
            type Output = DiffPoly;
            fn $method(self, rhs: &DiffPoly) -> DiffPoly {
                self.$checked(rhs).expect("polynomials from different rings")
            }
        }
        impl std::ops::$trait<DiffPoly> for DiffPoly {
            type Output = DiffPoly;
            fn $method(self, rhs: DiffPoly) -> DiffPoly {
                (&self).$checked(&rhs).expect("polynomials from different rings")
            }
        }
    };
}

forward_binop!(Add, add, checked_add);
forward_binop!(Sub, sub, checked_sub);
forward_binop!(Mul, mul, checked_mul);

impl std::ops::Neg for &DiffPoly {
    type Output = DiffPoly;
    fn neg(self) -> DiffPoly {
        DiffPoly::neg(self)
    }
}

impl std::ops::Neg for DiffPoly {
    type Output = DiffPoly;
    fn neg(self) -> DiffPoly {
        DiffPoly::neg(&self)
    }
}
