//! Expression grammar shared by every command.
//!
//! ```text
//! expr   := ['-'] term (('+'|'-') term)*
//! term   := factor (['*'|'/'] factor)*
//! factor := atom ('^' nat)?
//! atom   := rational | name ('\''* | '^(' nat ')') | ('δ'|'delta') '(' expr ')' | '(' expr ')'
//! ```

use std::collections::BTreeMap;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::diffpoly::{DiffPoly, DiffRing};
use crate::error::{Error, Result};
use crate::ground::{FieldDescriptor, FieldElem};
use crate::splitting::{TowerDescriptor, TowerElem, TowerPoly};

/// Line and column, both starting at 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Pos {
    pub line: usize,
    pub column: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Ast {
    Number(BigInt),
    /// A name with a derivation count: `y''` has order 2.
    Name { name: String, order: u32, pos: Pos },
    Neg(Box<Ast>),
    Add(Box<Ast>, Box<Ast>),
    Sub(Box<Ast>, Box<Ast>),
    Mul(Box<Ast>, Box<Ast>),
    Div(Box<Ast>, Box<Ast>, Pos),
    Pow(Box<Ast>, u32),
    Delta(Box<Ast>, Pos),
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Prime,
    Caret,
    LParen,
    RParen,
    Plus,
    Minus,
    Star,
    Slash,
    Delta,
    End,
}

fn syntax(pos: Pos, message: impl Into<String>) -> Error {
    Error::Syntax {
        line: pos.line,
        column: pos.column,
        message: message.into(),
    }
}

fn lex(input: &str) -> Result<Vec<(Tok, Pos)>> {
    let chars: Vec<char> = input.chars().collect();
    let mut out = Vec::new();
    let (mut line, mut column) = (1, 1);
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let pos = Pos { line, column };
        let start = i;
        let tok = match c {
            '\n' => {
                line += 1;
                column = 1;
                i += 1;
                continue;
            }
            c if c.is_whitespace() => {
                i += 1;
                column += 1;
                continue;
            }
            '0'..='9' => {
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let text: String = chars[start..i].iter().collect();
                Tok::Num(text.parse().unwrap())
            }
            c if c.is_alphabetic() || c == '_' => {
                while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') && chars[i] != 'δ' {
                    i += 1;
                }
                let text: String = chars[start..i].iter().collect();
                if c == 'δ' {
                    i = start + 1;
                    Tok::Delta
                } else {
                    Tok::Ident(text)
                }
            }
            _ => {
                i += 1;
                match c {
                    '\'' | '′' => Tok::Prime,
                    '^' => Tok::Caret,
                    '(' => Tok::LParen,
                    ')' => Tok::RParen,
                    '+' => Tok::Plus,
                    '-' | '−' => Tok::Minus,
                    '*' | '·' => Tok::Star,
                    '/' => Tok::Slash,
                    other => return Err(syntax(pos, format!("unexpected character `{other}`"))),
                }
            }
        };
        column += i - start;
        out.push((tok, pos));
    }
    out.push((Tok::End, Pos { line, column }));
    Ok(out)
}

struct Parser {
    toks: Vec<(Tok, Pos)>,
    at: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.at].0
    }

    fn pos(&self) -> Pos {
        self.toks[self.at].1
    }

    fn next(&mut self) -> (Tok, Pos) {
        let t = self.toks[self.at].clone();
        if t.0 != Tok::End {
            self.at += 1;
        }
        t
    }

    fn expect(&mut self, t: Tok, what: &str) -> Result<()> {
        if *self.peek() == t {
            self.next();
            Ok(())
        } else {
            Err(syntax(self.pos(), format!("expected {what}")))
        }
    }

    fn nat(&mut self) -> Result<u32> {
        match self.next() {
            (Tok::Num(n), pos) => u32::try_from(&n).map_err(|_| syntax(pos, "exponent too large")),
            (_, pos) => Err(syntax(pos, "expected a natural number")),
        }
    }

    fn expr(&mut self) -> Result<Ast> {
        let mut lhs = if *self.peek() == Tok::Minus {
            self.next();
            Ast::Neg(Box::new(self.term()?))
        } else {
            self.term()?
        };
        loop {
            match self.peek() {
                Tok::Plus => {
                    self.next();
                    lhs = Ast::Add(Box::new(lhs), Box::new(self.term()?));
                }
                Tok::Minus => {
                    self.next();
                    lhs = Ast::Sub(Box::new(lhs), Box::new(self.term()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> Result<Ast> {
        let mut lhs = self.factor()?;
        loop {
            match self.peek() {
                Tok::Star => {
                    self.next();
                    lhs = Ast::Mul(Box::new(lhs), Box::new(self.factor()?));
                }
                Tok::Slash => {
                    let (_, pos) = self.next();
                    lhs = Ast::Div(Box::new(lhs), Box::new(self.factor()?), pos);
                }
                Tok::Num(_) | Tok::Ident(_) | Tok::LParen | Tok::Delta => {
                    lhs = Ast::Mul(Box::new(lhs), Box::new(self.factor()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn factor(&mut self) -> Result<Ast> {
        let base = self.atom()?;
        if *self.peek() == Tok::Caret {
            self.next();
            return Ok(Ast::Pow(Box::new(base), self.nat()?));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Ast> {
        let (tok, pos) = self.next();
        match tok {
            Tok::Num(n) => Ok(Ast::Number(n)),
            Tok::Delta => self.delta(pos),
            Tok::Ident(name) if name == "delta" && *self.peek() == Tok::LParen => self.delta(pos),
            Tok::Ident(name) => {
                let mut order = 0;
                while *self.peek() == Tok::Prime {
                    self.next();
                    order += 1;
                }
                if order == 0
                    && *self.peek() == Tok::Caret
                    && self.toks.get(self.at + 1).map(|t| &t.0) == Some(&Tok::LParen)
                {
                    self.next();
                    self.next();
                    order = self.nat()?;
                    self.expect(Tok::RParen, "`)` closing a derivative order")?;
                }
                Ok(Ast::Name { name, order, pos })
            }
            Tok::LParen => {
                let inner = self.expr()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(inner)
            }
            Tok::End => Err(syntax(pos, "unexpected end of input")),
            other => Err(syntax(pos, format!("unexpected {}", describe(&other)))),
        }
    }

    fn delta(&mut self, pos: Pos) -> Result<Ast> {
        self.expect(Tok::LParen, "`(` after δ")?;
        let inner = self.expr()?;
        self.expect(Tok::RParen, "`)` closing δ(")?;
        Ok(Ast::Delta(Box::new(inner), pos))
    }
}

fn describe(t: &Tok) -> String {
    match t {
        Tok::Num(n) => format!("number `{n}`"),
        Tok::Ident(s) => format!("name `{s}`"),
        Tok::Prime => "`'`".into(),
        Tok::Caret => "`^`".into(),
        Tok::LParen => "`(`".into(),
        Tok::RParen => "`)`".into(),
        Tok::Plus => "`+`".into(),
        Tok::Minus => "`-`".into(),
        Tok::Star => "`*`".into(),
        Tok::Slash => "`/`".into(),
        Tok::Delta => "`δ`".into(),
        Tok::End => "end of input".into(),
    }
}

/// Parses one expression; names are not resolved yet.
pub fn parse_expr(input: &str) -> Result<Ast> {
    let mut p = Parser { toks: lex(input)?, at: 0 };
    let ast = p.expr()?;
    if *p.peek() != Tok::End {
        return Err(syntax(p.pos(), format!("unexpected {}", describe(p.peek()))));
    }
    Ok(ast)
}

impl Ast {
    /// Names in order of first occurrence.
    pub fn names(&self) -> Vec<String> {
        let mut out = Vec::new();
        self.collect_names(&mut out);
        out
    }

    fn collect_names(&self, out: &mut Vec<String>) {
        match self {
            Ast::Number(_) => {}
            Ast::Name { name, .. } => {
                if !out.contains(name) {
                    out.push(name.clone());
                }
            }
            Ast::Neg(a) | Ast::Pow(a, _) | Ast::Delta(a, _) => a.collect_names(out),
            Ast::Add(a, b) | Ast::Sub(a, b) | Ast::Mul(a, b) | Ast::Div(a, b, _) => {
                a.collect_names(out);
                b.collect_names(out);
            }
        }
    }
}

/// How each node of the tree is interpreted in a target algebra.
trait Lower {
    type V: Clone;
    fn number(&self, n: &BigInt) -> Result<Self::V>;
    fn name(&self, name: &str, order: u32, pos: Pos) -> Result<Self::V>;
    fn add(&self, a: &Self::V, b: &Self::V) -> Result<Self::V>;
    fn sub(&self, a: &Self::V, b: &Self::V) -> Result<Self::V>;
    fn mul(&self, a: &Self::V, b: &Self::V) -> Result<Self::V>;
    fn neg(&self, a: &Self::V) -> Result<Self::V>;
    fn div(&self, a: &Self::V, b: &Self::V, pos: Pos) -> Result<Self::V>;
    fn pow(&self, a: &Self::V, k: u32) -> Result<Self::V>;
    fn delta(&self, a: &Self::V, pos: Pos) -> Result<Self::V>;

    fn lower(&self, ast: &Ast) -> Result<Self::V> {
        match ast {
            Ast::Number(n) => self.number(n),
            Ast::Name { name, order, pos } => self.name(name, *order, *pos),
            Ast::Neg(a) => self.neg(&self.lower(a)?),
            Ast::Add(a, b) => self.add(&self.lower(a)?, &self.lower(b)?),
            Ast::Sub(a, b) => self.sub(&self.lower(a)?, &self.lower(b)?),
            Ast::Mul(a, b) => self.mul(&self.lower(a)?, &self.lower(b)?),
            Ast::Div(a, b, pos) => self.div(&self.lower(a)?, &self.lower(b)?, *pos),
            Ast::Pow(a, k) => self.pow(&self.lower(a)?, *k),
            Ast::Delta(a, pos) => self.delta(&self.lower(a)?, *pos),
        }
    }
}

fn unknown(name: &str) -> Error {
    Error::UnknownName(name.to_string())
}

struct Field<'a>(&'a Arc<FieldDescriptor>);

impl Lower for Field<'_> {
    type V = FieldElem;

    fn number(&self, n: &BigInt) -> Result<FieldElem> {
        Ok(FieldElem::from_rational(self.0, BigRational::from_integer(n.clone())))
    }

    fn name(&self, name: &str, order: u32, _: Pos) -> Result<FieldElem> {
        let i = self.0.generator_index(name).ok_or_else(|| unknown(name))?;
        let mut x = FieldElem::generator(self.0, i);
        for _ in 0..order {
            x = x.derive();
        }
        Ok(x)
    }

    fn add(&self, a: &FieldElem, b: &FieldElem) -> Result<FieldElem> {
        a.checked_add(b)
    }

    fn sub(&self, a: &FieldElem, b: &FieldElem) -> Result<FieldElem> {
        a.checked_sub(b)
    }

    fn mul(&self, a: &FieldElem, b: &FieldElem) -> Result<FieldElem> {
        a.checked_mul(b)
    }

    fn neg(&self, a: &FieldElem) -> Result<FieldElem> {
        Ok(a.neg())
    }

    fn div(&self, a: &FieldElem, b: &FieldElem, _: Pos) -> Result<FieldElem> {
        a.checked_div(b)
    }

    fn pow(&self, a: &FieldElem, k: u32) -> Result<FieldElem> {
        Ok(a.pow(k))
    }

    fn delta(&self, a: &FieldElem, _: Pos) -> Result<FieldElem> {
        Ok(a.derive())
    }
}

struct Ring<'a>(&'a Arc<DiffRing>);

impl Lower for Ring<'_> {
    type V = DiffPoly;

    fn number(&self, n: &BigInt) -> Result<DiffPoly> {
        Ok(DiffPoly::constant(self.0, Field(self.0.field()).number(n)?))
    }

    fn name(&self, name: &str, order: u32, pos: Pos) -> Result<DiffPoly> {
        match self.0.index_of(name) {
            Some(i) => Ok(DiffPoly::derivative(self.0, i, order)),
            None => Ok(DiffPoly::constant(self.0, Field(self.0.field()).name(name, order, pos)?)),
        }
    }

    fn add(&self, a: &DiffPoly, b: &DiffPoly) -> Result<DiffPoly> {
        a.checked_add(b)
    }

    fn sub(&self, a: &DiffPoly, b: &DiffPoly) -> Result<DiffPoly> {
        a.checked_sub(b)
    }

    fn mul(&self, a: &DiffPoly, b: &DiffPoly) -> Result<DiffPoly> {
        a.checked_mul(b)
    }

    fn neg(&self, a: &DiffPoly) -> Result<DiffPoly> {
        Ok(a.neg())
    }

    fn div(&self, a: &DiffPoly, b: &DiffPoly, pos: Pos) -> Result<DiffPoly> {
        let c = b.as_constant().ok_or_else(|| syntax(pos, "division by a non-constant"))?;
        a.div_constant(&c)
    }

    fn pow(&self, a: &DiffPoly, k: u32) -> Result<DiffPoly> {
        Ok(a.pow(k))
    }

    fn delta(&self, a: &DiffPoly, _: Pos) -> Result<DiffPoly> {
        Ok(a.derive())
    }
}

struct Tower<'a> {
    tower: &'a TowerDescriptor,
    vars: &'a [&'a str],
}

impl Lower for Tower<'_> {
    type V = TowerPoly;

    fn number(&self, n: &BigInt) -> Result<TowerPoly> {
        let q = BigRational::from_integer(n.clone());
        Ok(TowerPoly::constant(self.vars, &TowerElem::from_rational(self.tower, q)))
    }

    fn name(&self, name: &str, order: u32, pos: Pos) -> Result<TowerPoly> {
        if order > 0 {
            return Err(syntax(pos, "derivatives are not allowed in algebraic polynomials"));
        }
        if let Some(i) = self.vars.iter().position(|v| *v == name) {
            return Ok(TowerPoly::var(self.tower, self.vars, i));
        }
        let g = self.tower.generator(name).ok_or_else(|| unknown(name))?;
        Ok(TowerPoly::constant(self.vars, &g))
    }

    fn add(&self, a: &TowerPoly, b: &TowerPoly) -> Result<TowerPoly> {
        a.checked_add(b)
    }

    fn sub(&self, a: &TowerPoly, b: &TowerPoly) -> Result<TowerPoly> {
        a.checked_sub(b)
    }

    fn mul(&self, a: &TowerPoly, b: &TowerPoly) -> Result<TowerPoly> {
        a.checked_mul(b)
    }

    fn neg(&self, a: &TowerPoly) -> Result<TowerPoly> {
        Ok(a.neg())
    }

    fn div(&self, a: &TowerPoly, b: &TowerPoly, pos: Pos) -> Result<TowerPoly> {
        if !b.is_constant() {
            return Err(syntax(pos, "division by a non-constant"));
        }
        a.scale(&constant_value(b)?.inv()?)
    }

    fn pow(&self, a: &TowerPoly, k: u32) -> Result<TowerPoly> {
        Ok(a.pow(k))
    }

    fn delta(&self, _: &TowerPoly, pos: Pos) -> Result<TowerPoly> {
        Err(syntax(pos, "δ is not available in algebraic polynomials"))
    }
}

pub fn lower_diffpoly(ast: &Ast, ring: &Arc<DiffRing>) -> Result<DiffPoly> {
    Ring(ring).lower(ast)
}

pub fn lower_field_elem(ast: &Ast, field: &Arc<FieldDescriptor>) -> Result<FieldElem> {
    Field(field).lower(ast)
}

pub fn lower_tower_poly(ast: &Ast, tower: &TowerDescriptor, vars: &[&str]) -> Result<TowerPoly> {
    Tower { tower, vars }.lower(ast)
}

pub fn lower_tower_elem(ast: &Ast, tower: &TowerDescriptor) -> Result<TowerElem> {
    constant_value(&lower_tower_poly(ast, tower, &[])?)
}

fn constant_value(p: &TowerPoly) -> Result<TowerElem> {
    let zeros = vec![TowerElem::zero(&p.tower()); p.nvars()];
    p.eval(&zeros)
}

/// Parses `Q` or `Q(t1, …, tn)` followed by `; d/dt ti = expr` entries.
/// Generators without an entry are constants.
pub fn parse_field(decl: &str) -> Result<Arc<FieldDescriptor>> {
    let bad = |m: &str| Error::InvalidDescriptor(format!("{m} in `{decl}`"));
    let mut parts = decl.split(';');
    let head = parts.next().unwrap().trim();
    if head == "Q" || head == "ℚ" {
        if parts.any(|p| !p.trim().is_empty()) {
            return Err(bad("Q has no generators to differentiate"));
        }
        return Ok(FieldDescriptor::rationals());
    }
    let inner = head
        .strip_prefix('Q')
        .or_else(|| head.strip_prefix('ℚ'))
        .map(str::trim)
        .and_then(|s| s.strip_prefix('('))
        .and_then(|s| s.strip_suffix(')'))
        .ok_or_else(|| bad("expected `Q` or `Q(generators)`"))?;
    let gens: Vec<&str> = inner.split(',').map(str::trim).collect();
    let base = FieldDescriptor::rational_functions(&gens)?;
    let mut table: BTreeMap<usize, FieldElem> = BTreeMap::new();
    for entry in parts {
        let entry = entry.trim();
        if entry.is_empty() {
            continue;
        }
        let rest = entry.strip_prefix("d/dt").ok_or_else(|| bad("expected `d/dt name = value`"))?;
        let (name, value) = rest.split_once('=').ok_or_else(|| bad("expected `=`"))?;
        let i = base.generator_index(name.trim()).ok_or_else(|| unknown(name.trim()))?;
        if table.contains_key(&i) {
            return Err(bad("generator differentiated twice"));
        }
        table.insert(i, lower_field_elem(&parse_expr(value)?, &base)?);
    }
    let full: Vec<FieldElem> = (0..gens.len())
        .map(|i| table.remove(&i).unwrap_or_else(|| FieldElem::zero(&base)))
        .collect();
    base.with_derivations(&full)
}

/// Parses `name: minimal polynomial in name` and adjoins the root.
pub fn adjoin_extension(tower: &TowerDescriptor, decl: &str) -> Result<TowerDescriptor> {
    let (name, poly) = decl
        .split_once(':')
        .ok_or_else(|| Error::InvalidDescriptor(format!("expected `name: polynomial` in `{decl}`")))?;
    let name = name.trim();
    let p = lower_tower_poly(&parse_expr(poly)?, tower, &[name])?;
    tower.adjoin_algebraic(name, &p)
}

/// A nonzero rational as an `Ast`; used by tests to build inputs.
pub fn rational_ast(q: &BigRational) -> Ast {
    let n = Ast::Number(q.numer().abs_magnitude());
    let body = if q.denom().is_one() {
        n
    } else {
        Ast::Div(Box::new(n), Box::new(Ast::Number(q.denom().clone())), Pos { line: 1, column: 1 })
    };
    if q.numer() < &BigInt::zero() {
        Ast::Neg(Box::new(body))
    } else {
        body
    }
}

trait AbsMagnitude {
    fn abs_magnitude(&self) -> BigInt;
}

impl AbsMagnitude for BigInt {
    fn abs_magnitude(&self) -> BigInt {
        BigInt::from(self.magnitude().clone())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn positions_in_errors() {
        match parse_expr("y +\n  * 2") {
            Err(Error::Syntax { line, column, .. }) => assert_eq!((line, column), (2, 3)),
            other => panic!("{other:?}"),
        }
        assert!(parse_expr("(y").is_err());
        assert!(parse_expr("y)").is_err());
        assert!(parse_expr("y^(x)").is_err());
        assert!(parse_expr("").is_err());
        assert!(parse_expr("y # 2").is_err());
    }

    #[test]
    fn derivative_atoms() {
        let a = parse_expr("y^(4)").unwrap();
        assert!(matches!(a, Ast::Name { order: 4, .. }));
        let a = parse_expr("y1'''").unwrap();
        assert!(matches!(a, Ast::Name { order: 3, .. }));
        assert!(matches!(parse_expr("y^4").unwrap(), Ast::Pow(_, 4)));
        assert!(matches!(parse_expr("y'^2").unwrap(), Ast::Pow(_, 2)));
        assert_eq!(parse_expr("2y y'").unwrap().names(), ["y"]);
        assert!(matches!(parse_expr("δ(y)").unwrap(), Ast::Delta(..)));
        assert!(matches!(parse_expr("delta(y)").unwrap(), Ast::Delta(..)));
    }

    #[test]
    fn field_declarations() {
        let f = parse_field("Q(t); d/dt t=1").unwrap();
        assert_eq!(f.declaration(), "Q(t); d/dt t = 1");
        assert_eq!(parse_field(&f.declaration()).unwrap(), f);
        assert_eq!(parse_field("Q").unwrap(), FieldDescriptor::rationals());
        let g = parse_field("Q(s, t); d/dt t = t^2/s").unwrap();
        assert_eq!(parse_field(&g.declaration()).unwrap(), g);
        assert!(parse_field("Q(t); d/dt u = 1").is_err());
        assert!(parse_field("R").is_err());
        assert!(parse_field("Q(t); d/dt t = 1; d/dt t = 2").is_err());
    }

    #[test]
    fn rationals_round_trip() {
        let f = FieldDescriptor::rationals();
        for (n, d) in [(3, 4), (-5, 2), (7, 1), (0, 1)] {
            let q = BigRational::new(n.into(), d.into());
            let e = lower_field_elem(&rational_ast(&q), &f).unwrap();
            assert_eq!(e.to_rational(), Some(&q));
        }
    }
}
