//! Computable differential ground fields.
//!
//! Two families are supported: the constant field ℚ (derivation identically
//! zero) and rational function fields ℚ(t₁,…,tₙ) whose derivation is fixed
//! by a table giving δ(tᵢ). Elements are exact and kept in lowest terms, so
//! equality is structural.

use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::zpoly::ZPoly;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FieldKind {
    ConstantRationals,
    RationalFunctions,
}

/// Describes a ground field together with its derivation.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FieldDescriptor {
    kind: FieldKind,
    generators: Vec<String>,
    /// δ(generator i) as a canonical (numerator, denominator) pair.
    derivations: Vec<(ZPoly, ZPoly)>,
}

fn valid_identifier(name: &str) -> bool {
    let mut chars = name.chars();
    matches!(chars.next(), Some(c) if c.is_alphabetic() || c == '_')
        && chars.all(|c| c.is_alphanumeric() || c == '_')
}

impl FieldDescriptor {
    /// The constant differential field ℚ.
    pub fn rationals() -> Arc<Self> {
        Arc::new(FieldDescriptor {
            kind: FieldKind::ConstantRationals,
            generators: Vec::new(),
            derivations: Vec::new(),
        })
    }

    /// ℚ(generators) with every generator a constant. Use
    /// [`FieldDescriptor::with_derivations`] to install a derivation.
    pub fn rational_functions<S: AsRef<str>>(generators: &[S]) -> Result<Arc<Self>> {
        if generators.is_empty() {
            return Err(Error::InvalidDescriptor(
                "a rational function field needs at least one generator".into(),
            ));
        }
        let names: Vec<String> = generators.iter().map(|g| g.as_ref().to_string()).collect();
        for (i, n) in names.iter().enumerate() {
            if !valid_identifier(n) {
                return Err(Error::InvalidDescriptor(format!("bad generator name `{n}`")));
            }
            if names[..i].contains(n) {
                return Err(Error::InvalidDescriptor(format!("duplicate generator `{n}`")));
            }
        }
        let k = names.len();
        Ok(Arc::new(FieldDescriptor {
            kind: FieldKind::RationalFunctions,
            generators: names,
            derivations: vec![(ZPoly::zero(k), ZPoly::one(k)); k],
        }))
    }

    /// Same generators, with δ(generator i) = `table[i]`. The table entries
    /// must be elements of `self` (or of any field with the same generators).
    pub fn with_derivations(&self, table: &[FieldElem]) -> Result<Arc<Self>> {
        self.with_derivation_tables(std::slice::from_ref(&table.to_vec()))
    }

    /// Entry point taking one table per derivation. Only ordinary fields
    /// (exactly one derivation) are accepted.
    pub fn with_derivation_tables(&self, tables: &[Vec<FieldElem>]) -> Result<Arc<Self>> {
        if tables.len() != 1 {
            return Err(Error::Unsupported(format!(
                "{} derivations requested; only ordinary differential fields are supported",
                tables.len()
            )));
        }
        let table = &tables[0];
        if table.len() != self.generators.len() {
            return Err(Error::InvalidDescriptor(format!(
                "derivation table has {} entries for {} generators",
                table.len(),
                self.generators.len()
            )));
        }
        let mut derivations = Vec::with_capacity(table.len());
        for e in table {
            if e.field.generators != self.generators {
                return Err(Error::DescriptorMismatch);
            }
            derivations.push((e.numerator(), e.denominator()));
        }
        Ok(Arc::new(FieldDescriptor {
            kind: self.kind,
            generators: self.generators.clone(),
            derivations,
        }))
    }

    pub fn kind(&self) -> FieldKind {
        self.kind
    }

    pub fn generators(&self) -> &[String] {
        &self.generators
    }

    pub fn generator_index(&self, name: &str) -> Option<usize> {
        self.generators.iter().position(|g| g == name)
    }

    pub fn nvars(&self) -> usize {
        self.generators.len()
    }

    /// True when δ vanishes on every generator.
    pub fn is_constant_field(&self) -> bool {
        self.derivations.iter().all(|(n, _)| n.is_zero())
    }

    /// Textual declaration, e.g. `Q(t); d/dt t = 1`.
    pub fn declaration(self: &Arc<Self>) -> String {
        if self.kind == FieldKind::ConstantRationals {
            return "Q".to_string();
        }
        let mut s = format!("Q({})", self.generators.join(", "));
        let mut entries = Vec::new();
        for i in 0..self.generators.len() {
            let d = self.derivation_of(i);
            if !d.is_zero() {
                entries.push(format!("d/dt {} = {}", self.generators[i], d));
            }
        }
        if !entries.is_empty() {
            s.push_str("; ");
            s.push_str(&entries.join("; "));
        }
        s
    }

    /// δ of generator `i` as a field element.
    pub fn derivation_of(self: &Arc<Self>, i: usize) -> FieldElem {
        let (n, d) = &self.derivations[i];
        FieldElem::from_parts(self, n.clone(), d.clone()).expect("stored denominators are nonzero")
    }
}

fn same_field(a: &Arc<FieldDescriptor>, b: &Arc<FieldDescriptor>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
enum Repr {
    Rational(BigRational),
    /// Lowest terms, denominator with positive leading coefficient, not both constant.
    Fraction(ZPoly, ZPoly),
}

/// An element of a ground field.
#[derive(Clone, Debug)]
pub struct FieldElem {
    field: Arc<FieldDescriptor>,
    repr: Repr,
}

impl PartialEq for FieldElem {
    fn eq(&self, other: &Self) -> bool {
        self.repr == other.repr && same_field(&self.field, &other.field)
    }
}

impl Eq for FieldElem {}

impl Hash for FieldElem {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.repr.hash(state);
    }
}

fn normalize(num: ZPoly, den: ZPoly) -> Repr {
    assert!(!den.is_zero());
    if num.is_zero() {
        return Repr::Rational(BigRational::zero());
    }
    if let (Some(n), Some(d)) = (num.constant_value(), den.constant_value()) {
        return Repr::Rational(BigRational::new(n, d));
    }
    let g = num.gcd(&den);
    let (mut num, mut den) = if g.is_one() {
        (num, den)
    } else {
        (num.div_exact(&g).unwrap(), den.div_exact(&g).unwrap())
    };
    if den.leading_coefficient().unwrap().is_negative() {
        num = num.neg();
        den = den.neg();
    }
    if let (Some(n), Some(d)) = (num.constant_value(), den.constant_value()) {
        return Repr::Rational(BigRational::new(n, d));
    }
    Repr::Fraction(num, den)
}

impl FieldElem {
    pub fn zero(field: &Arc<FieldDescriptor>) -> Self {
        Self::from_rational(field, BigRational::zero())
    }

    pub fn one(field: &Arc<FieldDescriptor>) -> Self {
        Self::from_rational(field, BigRational::one())
    }

    pub fn from_int(field: &Arc<FieldDescriptor>, n: i64) -> Self {
        Self::from_rational(field, BigRational::from_integer(BigInt::from(n)))
    }

    pub fn from_rational(field: &Arc<FieldDescriptor>, q: BigRational) -> Self {
        FieldElem {
            field: field.clone(),
            repr: Repr::Rational(q),
        }
    }

    /// The generator with the given index.
    pub fn generator(field: &Arc<FieldDescriptor>, index: usize) -> Self {
        let k = field.nvars();
        FieldElem {
            field: field.clone(),
            repr: normalize(ZPoly::var(k, index), ZPoly::one(k)),
        }
    }

    /// numerator / denominator in lowest terms.
    pub fn from_parts(field: &Arc<FieldDescriptor>, num: ZPoly, den: ZPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if num.nvars() != field.nvars() || den.nvars() != field.nvars() {
            return Err(Error::DescriptorMismatch);
        }
        Ok(FieldElem {
            field: field.clone(),
            repr: normalize(num, den),
        })
    }

    pub fn field(&self) -> &Arc<FieldDescriptor> {
        &self.field
    }

    /// The same element viewed in another field with identical generators.
    pub fn rehome(&self, field: &Arc<FieldDescriptor>) -> Result<Self> {
        if field.generators != self.field.generators {
            return Err(Error::DescriptorMismatch);
        }
        Ok(FieldElem {
            field: field.clone(),
            repr: self.repr.clone(),
        })
    }

    pub fn is_zero(&self) -> bool {
        matches!(&self.repr, Repr::Rational(q) if q.is_zero())
    }

    pub fn is_one(&self) -> bool {
        matches!(&self.repr, Repr::Rational(q) if q.is_one())
    }

    /// The value when the element lies in the prime field ℚ.
    pub fn to_rational(&self) -> Option<&BigRational> {
        match &self.repr {
            Repr::Rational(q) => Some(q),
            Repr::Fraction(..) => None,
        }
    }

    pub fn numerator(&self) -> ZPoly {
        match &self.repr {
            Repr::Rational(q) => ZPoly::constant(self.field.nvars(), q.numer().clone()),
            Repr::Fraction(n, _) => n.clone(),
        }
    }

    pub fn denominator(&self) -> ZPoly {
        match &self.repr {
            Repr::Rational(q) => ZPoly::constant(self.field.nvars(), q.denom().clone()),
            Repr::Fraction(_, d) => d.clone(),
        }
    }

    /// Sign of the leading numerator coefficient; used for printing.
    pub fn is_negative(&self) -> bool {
        match &self.repr {
            Repr::Rational(q) => q.is_negative(),
            Repr::Fraction(n, _) => n.leading_coefficient().unwrap().is_negative(),
        }
    }

    fn check(&self, other: &Self) -> Result<()> {
        if same_field(&self.field, &other.field) {
            Ok(())
        } else {
            Err(Error::DescriptorMismatch)
        }
    }

    fn with_repr(&self, repr: Repr) -> Self {
        FieldElem {
            field: self.field.clone(),
            repr,
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(match (&self.repr, &other.repr) {
            (Repr::Rational(a), Repr::Rational(b)) => self.with_repr(Repr::Rational(a + b)),
            _ => {
                let (a, b) = (self.numerator(), self.denominator());
                let (c, d) = (other.numerator(), other.denominator());
                if b == d {
                    self.with_repr(normalize(a.add(&c), b))
                } else {
                    self.with_repr(normalize(a.mul(&d).add(&c.mul(&b)), b.mul(&d)))
                }
            }
        })
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.checked_add(&other.neg())
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(match (&self.repr, &other.repr) {
            (Repr::Rational(a), Repr::Rational(b)) => self.with_repr(Repr::Rational(a * b)),
            _ => {
                if self.is_zero() || other.is_zero() {
                    return Ok(Self::zero(&self.field));
                }
                let n = self.numerator().mul(&other.numerator());
                let d = self.denominator().mul(&other.denominator());
                self.with_repr(normalize(n, d))
            }
        })
    }

    pub fn neg(&self) -> Self {
        self.with_repr(match &self.repr {
            Repr::Rational(q) => Repr::Rational(-q),
            Repr::Fraction(n, d) => Repr::Fraction(n.neg(), d.clone()),
        })
    }

    pub fn inv(&self) -> Result<Self> {
        match &self.repr {
            Repr::Rational(q) if q.is_zero() => Err(Error::DivisionByZero),
            Repr::Rational(q) => Ok(self.with_repr(Repr::Rational(q.recip()))),
            Repr::Fraction(n, d) => Ok(self.with_repr(normalize(d.clone(), n.clone()))),
        }
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        self.checked_mul(&other.inv()?)
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one(&self.field);
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// The derivation, extended to fractions by the quotient rule.
    pub fn derive(&self) -> Self {
        let (num, den) = match &self.repr {
            Repr::Rational(_) => return Self::zero(&self.field),
            Repr::Fraction(n, d) => (n, d),
        };
        let dn = self.derive_poly(num);
        let dd = self.derive_poly(den);
        let n = self.lift(num);
        let d = self.lift(den);
        let top = &(&dn * &d) - &(&n * &dd);
        &top / &(&d * &d)
    }

    fn lift(&self, p: &ZPoly) -> Self {
        self.with_repr(normalize(p.clone(), ZPoly::one(self.field.nvars())))
    }

    /// δ applied to a polynomial in the generators.
    fn derive_poly(&self, p: &ZPoly) -> Self {
        let mut acc = Self::zero(&self.field);
        for i in 0..self.field.nvars() {
            let partial = p.derivative(i);
            if partial.is_zero() {
                continue;
            }
            let dgen = self.field.derivation_of(i);
            if dgen.is_zero() {
                continue;
            }
            acc = &acc + &(&self.lift(&partial) * &dgen);
        }
        acc
    }

    /// Whether printing this element next to a monomial needs parentheses.
    pub(crate) fn needs_parens_as_factor(&self) -> bool {
        match &self.repr {
            Repr::Rational(_) => false,
            Repr::Fraction(n, d) => !d.is_one() || n.terms().len() > 1,
        }
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl std::ops::$trait<&FieldElem> for &FieldElem {
            type Output = FieldElem;
            fn $method(self, rhs: &FieldElem) -> FieldElem {
                self.$checked(rhs).expect("field elements from different fields")
            }
        }
        impl std::ops::$trait<FieldElem> for FieldElem {
            type Output = FieldElem;
            fn $method(self, rhs: FieldElem) -> FieldElem {
                (&self).$checked(&rhs).expect("field elements from different fields")
            }
        }
    };
}

forward_binop!(Add, add, checked_add);
forward_binop!(Sub, sub, checked_sub);
forward_binop!(Mul, mul, checked_mul);
forward_binop!(Div, div, checked_div);

impl std::ops::Neg for &FieldElem {
    type Output = FieldElem;
    fn neg(self) -> FieldElem {
        FieldElem::neg(self)
    }
}

impl std::ops::Neg for FieldElem {
    type Output = FieldElem;
    fn neg(self) -> FieldElem {
        FieldElem::neg(&self)
    }
}

fn zpoly_part(p: &ZPoly, names: &[String], as_denominator: bool) -> String {
    let s = p.display(names).to_string();
    let single_factor = p.terms().len() == 1 && {
        let (e, c) = &p.terms()[0];
        let nfactors = e.iter().filter(|&&x| x > 0).count() + usize::from(!c.abs().is_one());
        nfactors <= 1 && !c.is_negative()
    };
    let wrap = if as_denominator { !single_factor } else { p.terms().len() > 1 };
    if wrap {
        format!("({s})")
    } else {
        s
    }
}

impl fmt::Display for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.repr {
            Repr::Rational(q) => write!(f, "{}", q),
            Repr::Fraction(n, d) => {
                let names = &self.field.generators;
                if d.is_one() {
                    write!(f, "{}", n.display(names))
                } else {
                    write!(f, "{}/{}", zpoly_part(n, names, false), zpoly_part(d, names, true))
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn qt() -> Arc<FieldDescriptor> {
        let base = FieldDescriptor::rational_functions(&["t"]).unwrap();
        base.with_derivations(&[FieldElem::one(&base)]).unwrap()
    }

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn rational_addition() {
        let f = FieldDescriptor::rationals();
        let a = FieldElem::from_rational(&f, q(1, 2));
        let b = FieldElem::from_rational(&f, q(1, 3));
        assert_eq!((&a + &b).to_rational(), Some(&q(5, 6)));
    }

    #[test]
    fn inverse_of_polynomial() {
        let f = qt();
        let t = FieldElem::generator(&f, 0);
        let p = &(&t * &t) - &FieldElem::one(&f);
        let inv = p.inv().unwrap();
        assert!(inv.numerator().is_one());
        assert_eq!(inv.denominator(), p.numerator());
        assert_eq!(inv.to_string(), "1/(t^2 - 1)");
        assert!((&inv * &p).is_one());
    }

    #[test]
    fn cancellation_is_forced() {
        let f = qt();
        let t = FieldElem::generator(&f, 0);
        let one = FieldElem::one(&f);
        let a = &(&t + &one) / &(&t - &one);
        let b = &(&t - &one) / &(&t + &one);
        assert!((&a * &b).is_one());
    }

    #[test]
    fn denominators_are_sign_normalized() {
        let f = qt();
        let t = FieldElem::generator(&f, 0);
        let x = &FieldElem::one(&f) / &(&FieldElem::zero(&f) - &t);
        assert_eq!(x.to_string(), "-1/t");
        assert!(x.denominator().leading_coefficient().unwrap().is_positive());
    }

    #[test]
    fn derivations() {
        let f = FieldDescriptor::rationals();
        assert!(FieldElem::from_rational(&f, q(7, 3)).derive().is_zero());

        let f = qt();
        let t = FieldElem::generator(&f, 0);
        let two_t = &FieldElem::from_int(&f, 2) * &t;
        assert_eq!((&t * &t).derive(), two_t);
        let inv_t = t.inv().unwrap();
        let d = inv_t.derive();
        assert_eq!(d.to_string(), "-1/t^2");
        // δ(t · 1/t) = δ(1) = 0
        assert!((&(&t * &d) + &inv_t).is_zero());
    }

    #[test]
    fn division_by_zero() {
        let f = FieldDescriptor::rationals();
        assert_eq!(FieldElem::zero(&f).inv(), Err(Error::DivisionByZero));
    }

    #[test]
    fn mismatched_fields() {
        let a = FieldElem::one(&FieldDescriptor::rationals());
        let b = FieldElem::one(&qt());
        assert_eq!(a.checked_add(&b), Err(Error::DescriptorMismatch));
    }

    #[test]
    fn several_derivations_are_rejected() {
        let base = FieldDescriptor::rational_functions(&["t"]).unwrap();
        let one = FieldElem::one(&base);
        let r = base.with_derivation_tables(&[vec![one.clone()], vec![one]]);
        assert!(matches!(r, Err(Error::Unsupported(_))));
    }

    #[test]
    fn declaration_text() {
        assert_eq!(qt().declaration(), "Q(t); d/dt t = 1");
        assert_eq!(FieldDescriptor::rationals().declaration(), "Q");
    }
}
