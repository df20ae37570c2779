//! Splitting algorithms: factorization over ℚ, over towers of simple
//! algebraic and transcendental extensions, multivariate irreducibility and
//! minimal polynomials.
//!
//! ```
//! use diffalg::splitting::{factor_over_tower, TowerDescriptor, TowerPoly};
//!
//! let qi = TowerDescriptor::rationals().with_algebraic("i", &[1, 0, 1]).unwrap();
//! let y = TowerPoly::var(&qi, &["Y"], 0);
//! let p = &(&y * &y) + &TowerPoly::from_int(&qi, &["Y"], 1);
//! let f = factor_over_tower(&p).unwrap();
//! assert_eq!(f.factors.len(), 2);
//! assert_eq!(f.expand(), p);
//! ```

mod minpoly;
mod multivariate;
mod tower;
mod univariate;
pub mod zfactor;

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::diffpoly::{derivative_text, DiffPoly};
use crate::error::{Error, Result};
use crate::ground::{FieldDescriptor, FieldElem};
use crate::zpoly::ZPoly;

use multivariate::MPoly;
use tower::{Level, LevelKind, TElem, Tower};

pub(crate) use univariate::yun;

/// ℚ followed by transcendental and algebraic steps.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TowerDescriptor {
    tower: Arc<Tower>,
}

/// An element of the top field of a tower.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TowerElem {
    tower: Arc<Tower>,
    value: TElem,
}

/// A polynomial in named variables over the top field of a tower.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TowerPoly {
    tower: Arc<Tower>,
    vars: Arc<[String]>,
    poly: MPoly,
}

/// `unit · Π factor^multiplicity`, factors monic and irreducible.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    pub unit: TowerElem,
    pub factors: Vec<(TowerPoly, u32)>,
}

fn valid_name(name: &str) -> bool {
    let mut chars = name.chars();
    chars.next().map_or(false, |c| c.is_alphabetic()) && chars.all(|c| c.is_alphanumeric() || c == '_')
}

impl TowerDescriptor {
    pub fn rationals() -> Self {
        TowerDescriptor {
            tower: Arc::new(Tower::default()),
        }
    }

    /// ℚ(t₁, …, tₙ) as the tower ℚ ⊂ ℚ(t₁) ⊂ … ⊂ ℚ(t₁, …, tₙ).
    pub fn from_field(field: &FieldDescriptor) -> Self {
        let mut t = Tower::default();
        for g in field.generators() {
            t.levels.push(Level {
                name: g.clone(),
                kind: LevelKind::Transcendental,
            });
        }
        TowerDescriptor { tower: Arc::new(t) }
    }

    fn check_new_name(&self, name: &str) -> Result<()> {
        if !valid_name(name) {
            return Err(Error::InvalidDescriptor(format!("invalid generator name `{name}`")));
        }
        if self.tower.levels.iter().any(|l| l.name == name) {
            return Err(Error::InvalidDescriptor(format!("generator `{name}` declared twice")));
        }
        Ok(())
    }

    pub fn adjoin_transcendental(&self, name: &str) -> Result<Self> {
        self.check_new_name(name)?;
        let mut t = (*self.tower).clone();
        t.levels.push(Level {
            name: name.to_string(),
            kind: LevelKind::Transcendental,
        });
        Ok(TowerDescriptor { tower: Arc::new(t) })
    }

    /// Adjoins a root of `minpoly`, a monic irreducible univariate polynomial over this tower.
    pub fn adjoin_algebraic(&self, name: &str, minpoly: &TowerPoly) -> Result<Self> {
        self.check_new_name(name)?;
        if minpoly.tower != self.tower {
            return Err(Error::DescriptorMismatch);
        }
        if minpoly.nvars() != 1 {
            return Err(Error::Unsupported("a minimal polynomial has one variable".into()));
        }
        if minpoly.is_constant() {
            return Err(Error::ConstantPolynomial);
        }
        let coeffs = minpoly.poly.to_univariate(0);
        if !self.tower.is_one(self.depth(), coeffs.last().unwrap()) {
            return Err(Error::NotMonic);
        }
        if splitting_query(minpoly)? {
            return Err(Error::NotIrreducible);
        }
        let mut t = (*self.tower).clone();
        t.levels.push(Level {
            name: name.to_string(),
            kind: LevelKind::Algebraic(coeffs),
        });
        Ok(TowerDescriptor { tower: Arc::new(t) })
    }

    /// [`adjoin_algebraic`](Self::adjoin_algebraic) with integer coefficients, lowest degree first.
    pub fn with_algebraic(&self, name: &str, coefficients: &[i64]) -> Result<Self> {
        let x = TowerPoly::var(self, &[name], 0);
        let mut p = TowerPoly::zero(self, &[name]);
        for (k, &c) in coefficients.iter().enumerate() {
            p = &p + &(&TowerPoly::from_int(self, &[name], c) * &x.pow(k as u32));
        }
        self.adjoin_algebraic(name, &p)
    }

    pub fn depth(&self) -> usize {
        self.tower.depth()
    }

    pub fn names(&self) -> Vec<&str> {
        self.tower.levels.iter().map(|l| l.name.as_str()).collect()
    }

    /// The first `depth` steps.
    pub fn prefix(&self, depth: usize) -> Self {
        let mut t = (*self.tower).clone();
        t.levels.truncate(depth);
        TowerDescriptor { tower: Arc::new(t) }
    }

    pub fn is_algebraic_step(&self, level: usize) -> bool {
        matches!(self.tower.kind(level), LevelKind::Algebraic(_))
    }

    /// The generator adjoined under `name`, as an element of the top field.
    pub fn generator(&self, name: &str) -> Option<TowerElem> {
        let lvl = self.tower.levels.iter().position(|l| l.name == name)? + 1;
        let g = self.tower.generator(lvl);
        Some(TowerElem {
            tower: self.tower.clone(),
            value: self.tower.embed(lvl, self.depth(), g),
        })
    }

    /// A description such as `Q(t)(i: i^2 + 1)`.
    pub fn describe(&self) -> String {
        let mut s = String::from("Q");
        for (k, l) in self.tower.levels.iter().enumerate() {
            match &l.kind {
                LevelKind::Transcendental => s.push_str(&format!("({})", l.name)),
                LevelKind::Algebraic(m) => s.push_str(&format!("({}: {})", l.name, self.tower.poly_text(k, m, &l.name))),
            }
        }
        s
    }
}

impl fmt::Display for TowerDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.describe())
    }
}

fn zpoly_to_telem(t: &Tower, z: &ZPoly, upto: usize) -> TElem {
    if upto == 0 {
        let v = z.constant_value().unwrap_or_default();
        return TElem::Q(BigRational::from_integer(v));
    }
    let mut groups: BTreeMap<u32, Vec<(Vec<u32>, BigInt)>> = BTreeMap::new();
    for (e, c) in z.terms() {
        groups.entry(e[upto - 1]).or_default().push((e[..upto - 1].to_vec(), c.clone()));
    }
    let b = upto - 1;
    let top = groups.keys().next_back().copied().unwrap_or(0) as usize;
    let mut coeffs = vec![t.zero(b); top + 1];
    for (k, terms) in groups {
        coeffs[k as usize] = zpoly_to_telem(t, &ZPoly::from_terms(b, terms), b);
    }
    let coeffs = t.p_trim(b, coeffs);
    TElem::Rat(coeffs, vec![t.one(b)])
}

impl TowerElem {
    pub fn zero(tower: &TowerDescriptor) -> Self {
        Self::from_int(tower, 0)
    }

    pub fn one(tower: &TowerDescriptor) -> Self {
        Self::from_int(tower, 1)
    }

    pub fn from_int(tower: &TowerDescriptor, n: i64) -> Self {
        Self::from_rational(tower, BigRational::from_integer(BigInt::from(n)))
    }

    pub fn from_rational(tower: &TowerDescriptor, q: BigRational) -> Self {
        TowerElem {
            tower: tower.tower.clone(),
            value: tower.tower.from_q(tower.depth(), q),
        }
    }

    /// Maps an element of ℚ(t₁, …, tₙ) into a tower whose first n steps are t₁, …, tₙ.
    pub fn from_field_elem(tower: &TowerDescriptor, x: &FieldElem) -> Result<Self> {
        let gens = x.field().generators();
        let t = &tower.tower;
        let ok = gens.len() <= t.depth()
            && gens
                .iter()
                .zip(&t.levels)
                .all(|(g, l)| *g == l.name && l.kind == LevelKind::Transcendental);
        if !ok {
            return Err(Error::DescriptorMismatch);
        }
        let n = gens.len();
        let num = zpoly_to_telem(t, &x.numerator(), n);
        let den = zpoly_to_telem(t, &x.denominator(), n);
        let v = t.div(n, &num, &den);
        Ok(TowerElem {
            tower: t.clone(),
            value: t.embed(n, t.depth(), v),
        })
    }

    pub fn tower(&self) -> TowerDescriptor {
        TowerDescriptor {
            tower: self.tower.clone(),
        }
    }

    fn depth(&self) -> usize {
        self.tower.depth()
    }

    pub fn is_zero(&self) -> bool {
        self.tower.is_zero(self.depth(), &self.value)
    }

    pub fn is_one(&self) -> bool {
        self.tower.is_one(self.depth(), &self.value)
    }

    /// The rational value when the element lies in ℚ.
    pub fn to_rational(&self) -> Option<BigRational> {
        self.tower.as_rational(self.depth(), &self.value)
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.tower == other.tower {
            Ok(())
        } else {
            Err(Error::DescriptorMismatch)
        }
    }

    fn wrap(&self, value: TElem) -> Self {
        TowerElem {
            tower: self.tower.clone(),
            value,
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(self.wrap(self.tower.add(self.depth(), &self.value, &other.value)))
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(self.wrap(self.tower.sub(self.depth(), &self.value, &other.value)))
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(self.wrap(self.tower.mul(self.depth(), &self.value, &other.value)))
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        if other.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(self.wrap(self.tower.div(self.depth(), &self.value, &other.value)))
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(self.wrap(self.tower.inv(self.depth(), &self.value)))
    }

    pub fn neg(&self) -> Self {
        self.wrap(self.tower.neg(self.depth(), &self.value))
    }

    pub fn pow(&self, n: u32) -> Self {
        self.wrap(self.tower.pow(self.depth(), &self.value, n))
    }

    fn needs_parens(&self) -> bool {
        self.tower.compound(self.depth(), &self.value)
    }
}

impl fmt::Display for TowerElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.tower.elem_text(self.depth(), &self.value))
    }
}

macro_rules! binop {
    ($ty:ty, $trait:ident, $method:ident, $checked:ident) => {
        impl $trait<&$ty> for &$ty {
            type Output = $ty;
            fn $method(self, rhs: &$ty) -> $ty {
                self.$checked(rhs).expect("operands over different towers")
            }
        }
        impl $trait<$ty> for $ty {
            type Output = $ty;
            fn $method(self, rhs: $ty) -> $ty {
                (&self).$checked(&rhs).expect("operands over different towers")
            }
        }
    };
}

binop!(TowerElem, Add, add, checked_add);
binop!(TowerElem, Sub, sub, checked_sub);
binop!(TowerElem, Mul, mul, checked_mul);
binop!(TowerPoly, Add, add, checked_add);
binop!(TowerPoly, Sub, sub, checked_sub);
binop!(TowerPoly, Mul, mul, checked_mul);

impl Neg for &TowerElem {
    type Output = TowerElem;
    fn neg(self) -> TowerElem {
        TowerElem::neg(self)
    }
}

impl Neg for &TowerPoly {
    type Output = TowerPoly;
    fn neg(self) -> TowerPoly {
        TowerPoly::neg(self)
    }
}

impl TowerPoly {
    fn names(vars: &[&str]) -> Arc<[String]> {
        vars.iter().map(|s| s.to_string()).collect::<Vec<_>>().into()
    }

    pub fn zero(tower: &TowerDescriptor, vars: &[&str]) -> Self {
        TowerPoly {
            tower: tower.tower.clone(),
            vars: Self::names(vars),
            poly: MPoly::zero(vars.len()),
        }
    }

    pub fn constant(vars: &[&str], c: &TowerElem) -> Self {
        let mut poly = MPoly::zero(vars.len());
        if !c.is_zero() {
            poly.terms.insert(vec![0; vars.len()], c.value.clone());
        }
        TowerPoly {
            tower: c.tower.clone(),
            vars: Self::names(vars),
            poly,
        }
    }

    pub fn from_int(tower: &TowerDescriptor, vars: &[&str], n: i64) -> Self {
        Self::constant(vars, &TowerElem::from_int(tower, n))
    }

    pub fn var(tower: &TowerDescriptor, vars: &[&str], index: usize) -> Self {
        let mut e = vec![0; vars.len()];
        e[index] = 1;
        let mut poly = MPoly::zero(vars.len());
        poly.terms.insert(e, tower.tower.one(tower.depth()));
        TowerPoly {
            tower: tower.tower.clone(),
            vars: Self::names(vars),
            poly,
        }
    }

    /// A univariate polynomial from its coefficients, lowest degree first.
    pub fn from_coefficients(tower: &TowerDescriptor, var: &str, coefficients: &[TowerElem]) -> Result<Self> {
        let mut poly = MPoly::zero(1);
        for (k, c) in coefficients.iter().enumerate() {
            if c.tower != tower.tower {
                return Err(Error::DescriptorMismatch);
            }
            if !c.is_zero() {
                poly.terms.insert(vec![k as u32], c.value.clone());
            }
        }
        Ok(TowerPoly {
            tower: tower.tower.clone(),
            vars: Self::names(&[var]),
            poly,
        })
    }

    fn from_mpoly(&self, poly: MPoly) -> Self {
        TowerPoly {
            tower: self.tower.clone(),
            vars: self.vars.clone(),
            poly,
        }
    }

    fn depth(&self) -> usize {
        self.tower.depth()
    }

    pub fn tower(&self) -> TowerDescriptor {
        TowerDescriptor {
            tower: self.tower.clone(),
        }
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn is_zero(&self) -> bool {
        self.poly.is_zero()
    }

    pub fn is_constant(&self) -> bool {
        self.poly.is_constant()
    }

    pub fn total_degree(&self) -> u32 {
        self.poly.total_degree()
    }

    pub fn degree_in(&self, var: usize) -> u32 {
        self.poly.degree_in(var)
    }

    /// Coefficients of a univariate polynomial, lowest degree first.
    pub fn coefficients(&self) -> Vec<TowerElem> {
        assert_eq!(self.nvars(), 1, "coefficients of a multivariate polynomial");
        if self.is_zero() {
            return Vec::new();
        }
        self.poly
            .to_univariate(0)
            .into_iter()
            .map(|value| TowerElem {
                tower: self.tower.clone(),
                value,
            })
            .collect()
    }

    /// Value at a point, one coordinate per variable.
    pub fn eval(&self, point: &[TowerElem]) -> Result<TowerElem> {
        if point.len() != self.nvars() {
            return Err(Error::Usage(format!("expected {} coordinates", self.nvars())));
        }
        let (t, c) = (&*self.tower, self.depth());
        let mut acc = t.zero(c);
        for (e, x) in &self.poly.terms {
            let mut term = x.clone();
            for (p, &k) in point.iter().zip(e) {
                if p.tower != self.tower {
                    return Err(Error::DescriptorMismatch);
                }
                term = t.mul(c, &term, &t.pow(c, &p.value, k));
            }
            acc = t.add(c, &acc, &term);
        }
        Ok(TowerElem {
            tower: self.tower.clone(),
            value: acc,
        })
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.tower != other.tower {
            return Err(Error::DescriptorMismatch);
        }
        if self.vars != other.vars {
            return Err(Error::RingMismatch);
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(self.from_mpoly(self.poly.add(&self.tower, self.depth(), &other.poly)))
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(self.from_mpoly(self.poly.sub(&self.tower, self.depth(), &other.poly)))
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(self.from_mpoly(self.poly.mul(&self.tower, self.depth(), &other.poly)))
    }

    pub fn neg(&self) -> Self {
        self.from_mpoly(self.poly.neg(&self.tower, self.depth()))
    }

    pub fn scale(&self, k: &TowerElem) -> Result<Self> {
        if k.tower != self.tower {
            return Err(Error::DescriptorMismatch);
        }
        Ok(self.from_mpoly(self.poly.scale(&self.tower, self.depth(), &k.value)))
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = self.from_mpoly(MPoly::zero(self.nvars()));
        acc.poly.terms.insert(vec![0; self.nvars()], self.tower.one(self.depth()));
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Leading coefficient in lexicographic order with the first variable most significant.
    pub fn leading_coefficient(&self) -> Option<TowerElem> {
        self.poly.leading().map(|(_, c)| TowerElem {
            tower: self.tower.clone(),
            value: c.clone(),
        })
    }
}

impl fmt::Display for TowerPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut terms: Vec<(&Vec<u32>, &TElem)> = self.poly.terms.iter().collect();
        terms.sort_by(|a, b| {
            let (da, db): (u32, u32) = (a.0.iter().sum(), b.0.iter().sum());
            db.cmp(&da).then_with(|| b.0.cmp(a.0))
        });
        for (k, (e, x)) in terms.into_iter().enumerate() {
            let c = TowerElem {
                tower: self.tower.clone(),
                value: x.clone(),
            };
            let negative = self.tower.is_negative(x);
            let mag = if negative { c.neg() } else { c };
            match (k, negative) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let mono: Vec<String> = e
                .iter()
                .zip(self.vars.iter())
                .filter(|(&p, _)| p > 0)
                .map(|(&p, v)| if p == 1 { v.clone() } else { format!("{v}^{p}") })
                .collect();
            if mono.is_empty() {
                if negative && mag.needs_parens() {
                    write!(f, "({mag})")?;
                } else {
                    write!(f, "{mag}")?;
                }
                continue;
            }
            if !mag.is_one() {
                if mag.needs_parens() {
                    write!(f, "({mag})*")?;
                } else {
                    write!(f, "{mag}*")?;
                }
            }
            f.write_str(&mono.join("*"))?;
        }
        Ok(())
    }
}

impl Factorization {
    /// `unit · Π factor^multiplicity`.
    pub fn expand(&self) -> TowerPoly {
        let vars: Vec<&str> = match self.factors.first() {
            Some((f, _)) => f.vars.iter().map(String::as_str).collect(),
            None => Vec::new(),
        };
        let mut acc = TowerPoly::constant(&vars, &self.unit);
        for (f, e) in &self.factors {
            acc = &acc * &f.pow(*e);
        }
        acc
    }

    /// Whether the factorization multiplies back to `p`.
    pub fn verify(&self, p: &TowerPoly) -> bool {
        if self.factors.is_empty() {
            return p.is_constant() && p.leading_coefficient().map_or(self.unit.is_zero(), |c| c == self.unit);
        }
        self.expand() == *p
    }

    /// A single factor of multiplicity one.
    pub fn is_irreducible(&self) -> bool {
        self.factors.len() == 1 && self.factors[0].1 == 1
    }
}

impl fmt::Display for Factorization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if !self.unit.is_one() || self.factors.is_empty() {
            parts.push(if self.unit.needs_parens() { format!("({})", self.unit) } else { self.unit.to_string() });
        }
        for (p, e) in &self.factors {
            let base = format!("({p})");
            parts.push(if *e == 1 { base } else { format!("{base}^{e}") });
        }
        f.write_str(&parts.join("*"))
    }
}

/// Complete factorization over the polynomial's tower, factors sorted by text.
pub fn factor(p: &TowerPoly) -> Result<Factorization> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let (t, c) = (&*p.tower, p.depth());
    let mut factors: Vec<(TowerPoly, u32)> = multivariate::factor(t, c, &p.poly)
        .into_iter()
        .map(|(g, e)| (p.from_mpoly(g), e))
        .collect();
    factors.sort_by_cached_key(|(g, e)| (g.to_string(), *e));
    Ok(Factorization {
        unit: p.leading_coefficient().unwrap(),
        factors,
    })
}

fn require_univariate(p: &TowerPoly) -> Result<()> {
    if p.nvars() != 1 {
        return Err(Error::Unsupported("expected a univariate polynomial".into()));
    }
    Ok(())
}

/// Factorization of a univariate polynomial over ℚ.
pub fn factor_rationals(p: &TowerPoly) -> Result<Factorization> {
    require_univariate(p)?;
    if p.depth() != 0 {
        return Err(Error::DescriptorMismatch);
    }
    factor(p)
}

/// Factorization of a univariate polynomial over its tower.
pub fn factor_over_tower(p: &TowerPoly) -> Result<Factorization> {
    require_univariate(p)?;
    factor(p)
}

/// Whether a nonconstant univariate polynomial is reducible over its tower.
pub fn splitting_query(p: &TowerPoly) -> Result<bool> {
    require_univariate(p)?;
    if p.is_constant() {
        return Err(Error::ConstantPolynomial);
    }
    Ok(!factor(p)?.is_irreducible())
}

/// Whether a nonconstant polynomial in any number of variables is irreducible.
pub fn irreducible_multivariate(p: &TowerPoly) -> Result<bool> {
    if p.is_constant() {
        return Err(Error::ConstantPolynomial);
    }
    Ok(factor(p)?.is_irreducible())
}

/// Monic minimal polynomial in `X` of `x` over `base`, a prefix of the element's tower.
pub fn minimal_polynomial(x: &TowerElem, base: &TowerDescriptor) -> Result<TowerPoly> {
    let b = base.depth();
    if b > x.depth() || base.tower.levels[..] != x.tower.levels[..b] {
        return Err(Error::DescriptorMismatch);
    }
    let coeffs = minpoly::minimal_polynomial(&x.tower, x.depth(), &x.value, b).map_err(|name| {
        Error::NotAlgebraic(format!("the transcendental step `{name}` separates the element from the base"))
    })?;
    let mut poly = MPoly::zero(1);
    for (k, c) in coeffs.into_iter().enumerate() {
        if !base.tower.is_zero(b, &c) {
            poly.terms.insert(vec![k as u32], c);
        }
    }
    Ok(TowerPoly {
        tower: base.tower.clone(),
        vars: TowerPoly::names(&["X"]),
        poly,
    })
}

/// The polynomial as an element of K[derivatives], over the tower of its ground field.
pub fn diffpoly_to_tower(p: &DiffPoly) -> Result<TowerPoly> {
    let tower = TowerDescriptor::from_field(p.field());
    let derivs = p.derivatives();
    let names: Vec<String> = derivs
        .iter()
        .map(|&d| derivative_text(&p.ring().names()[d.index], d))
        .collect();
    let mut poly = MPoly::zero(derivs.len());
    for (m, c) in p.terms() {
        let mut e = vec![0; derivs.len()];
        for &(d, k) in m.factors() {
            e[derivs.iter().position(|x| *x == d).unwrap()] = k;
        }
        poly.terms.insert(e, TowerElem::from_field_elem(&tower, c)?.value);
    }
    Ok(TowerPoly {
        tower: tower.tower,
        vars: names.into(),
        poly,
    })
}

/// Algebraic irreducibility over K of a nonconstant differential polynomial.
pub fn is_irreducible_diffpoly(p: &DiffPoly) -> Result<bool> {
    if p.is_constant() {
        return Err(Error::ConstantPolynomial);
    }
    irreducible_multivariate(&diffpoly_to_tower(p)?)
}
