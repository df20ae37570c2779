//! Exact arithmetic in towers ℚ = L_0 ⊂ L_1 ⊂ … where each step is either a
//! simple transcendental or a simple algebraic extension.
//!
//! Elements of L_i are stored relative to L_{i-1}: an algebraic step keeps a
//! reduced polynomial in the new generator, a transcendental step keeps a
//! fraction of polynomials with monic denominator in lowest terms. Both forms
//! are canonical, so derived equality is field equality.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum TElem {
    Q(BigRational),
    Alg(Vec<TElem>),
    Rat(Vec<TElem>, Vec<TElem>),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum LevelKind {
    Transcendental,
    /// Monic minimal polynomial over the previous level, lowest degree first.
    Algebraic(Vec<TElem>),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Level {
    pub name: String,
    pub kind: LevelKind,
}

/// Levels are numbered from 1; level 0 is ℚ.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Tower {
    pub levels: Vec<Level>,
}

pub type Coeffs = Vec<TElem>;

impl Tower {
    pub fn depth(&self) -> usize {
        self.levels.len()
    }

    pub fn kind(&self, lvl: usize) -> &LevelKind {
        &self.levels[lvl - 1].kind
    }

    pub fn is_transcendental(&self, lvl: usize) -> bool {
        lvl > 0 && matches!(self.kind(lvl), LevelKind::Transcendental)
    }

    pub fn minpoly(&self, lvl: usize) -> Option<&Coeffs> {
        match self.kind(lvl) {
            LevelKind::Algebraic(m) => Some(m),
            LevelKind::Transcendental => None,
        }
    }

    // ---- elements -------------------------------------------------------

    pub fn zero(&self, lvl: usize) -> TElem {
        if lvl == 0 {
            return TElem::Q(BigRational::zero());
        }
        match self.kind(lvl) {
            LevelKind::Algebraic(_) => TElem::Alg(Vec::new()),
            LevelKind::Transcendental => TElem::Rat(Vec::new(), vec![self.one(lvl - 1)]),
        }
    }

    pub fn one(&self, lvl: usize) -> TElem {
        self.from_q(lvl, BigRational::one())
    }

    pub fn from_int(&self, lvl: usize, n: i64) -> TElem {
        self.from_q(lvl, BigRational::from_integer(BigInt::from(n)))
    }

    pub fn from_q(&self, lvl: usize, q: BigRational) -> TElem {
        self.embed(0, lvl, TElem::Q(q))
    }

    /// Views an element of L_from as an element of L_to (from ≤ to).
    pub fn embed(&self, from: usize, to: usize, a: TElem) -> TElem {
        let mut a = a;
        for l in from + 1..=to {
            let zero = self.is_zero(l - 1, &a);
            a = match self.kind(l) {
                LevelKind::Algebraic(_) => TElem::Alg(if zero { Vec::new() } else { vec![a] }),
                LevelKind::Transcendental => {
                    TElem::Rat(if zero { Vec::new() } else { vec![a] }, vec![self.one(l - 1)])
                }
            };
        }
        a
    }

    /// The element of the lowest level ≥ `floor` representing `a ∈ L_lvl`, with that level.
    pub fn descend(&self, lvl: usize, a: &TElem, floor: usize) -> (usize, TElem) {
        let mut lvl = lvl;
        let mut a = a.clone();
        while lvl > floor {
            let inner = match &a {
                TElem::Alg(v) if v.len() <= 1 => v.first().cloned().unwrap_or_else(|| self.zero(lvl - 1)),
                TElem::Rat(n, d) if n.len() <= 1 && d.len() == 1 => {
                    n.first().cloned().unwrap_or_else(|| self.zero(lvl - 1))
                }
                _ => break,
            };
            a = inner;
            lvl -= 1;
        }
        (lvl, a)
    }

    /// The generator adjoined at level `lvl`.
    pub fn generator(&self, lvl: usize) -> TElem {
        let x = vec![self.zero(lvl - 1), self.one(lvl - 1)];
        match self.kind(lvl) {
            LevelKind::Algebraic(m) => TElem::Alg(self.p_rem(lvl - 1, &x, m)),
            LevelKind::Transcendental => TElem::Rat(x, vec![self.one(lvl - 1)]),
        }
    }

    pub fn is_zero(&self, _lvl: usize, a: &TElem) -> bool {
        match a {
            TElem::Q(q) => q.is_zero(),
            TElem::Alg(v) => v.is_empty(),
            TElem::Rat(n, _) => n.is_empty(),
        }
    }

    pub fn is_one(&self, lvl: usize, a: &TElem) -> bool {
        *a == self.one(lvl)
    }

    /// The rational value when `a` lies in ℚ.
    pub fn as_rational(&self, lvl: usize, a: &TElem) -> Option<BigRational> {
        match self.descend(lvl, a, 0) {
            (0, TElem::Q(q)) => Some(q),
            _ => None,
        }
    }

    pub fn neg(&self, lvl: usize, a: &TElem) -> TElem {
        match a {
            TElem::Q(q) => TElem::Q(-q),
            TElem::Alg(v) => TElem::Alg(self.p_neg(lvl - 1, v)),
            TElem::Rat(n, d) => TElem::Rat(self.p_neg(lvl - 1, n), d.clone()),
        }
    }

    pub fn add(&self, lvl: usize, a: &TElem, b: &TElem) -> TElem {
        match (a, b) {
            (TElem::Q(x), TElem::Q(y)) => TElem::Q(x + y),
            (TElem::Alg(x), TElem::Alg(y)) => TElem::Alg(self.p_add(lvl - 1, x, y)),
            (TElem::Rat(n1, d1), TElem::Rat(n2, d2)) => {
                let c = lvl - 1;
                if d1 == d2 {
                    self.rat(c, self.p_add(c, n1, n2), d1.clone())
                } else {
                    let n = self.p_add(c, &self.p_mul(c, n1, d2), &self.p_mul(c, n2, d1));
                    self.rat(c, n, self.p_mul(c, d1, d2))
                }
            }
            _ => panic!("tower elements at different levels"),
        }
    }

    pub fn sub(&self, lvl: usize, a: &TElem, b: &TElem) -> TElem {
        self.add(lvl, a, &self.neg(lvl, b))
    }

    pub fn mul(&self, lvl: usize, a: &TElem, b: &TElem) -> TElem {
        match (a, b) {
            (TElem::Q(x), TElem::Q(y)) => TElem::Q(x * y),
            (TElem::Alg(x), TElem::Alg(y)) => {
                let m = self.minpoly(lvl).unwrap();
                TElem::Alg(self.p_rem(lvl - 1, &self.p_mul(lvl - 1, x, y), m))
            }
            (TElem::Rat(n1, d1), TElem::Rat(n2, d2)) => {
                let c = lvl - 1;
                if n1.is_empty() || n2.is_empty() {
                    return self.zero(lvl);
                }
                self.rat(c, self.p_mul(c, n1, n2), self.p_mul(c, d1, d2))
            }
            _ => panic!("tower elements at different levels"),
        }
    }

    /// Multiplicative inverse; `a` must be nonzero.
    pub fn inv(&self, lvl: usize, a: &TElem) -> TElem {
        assert!(!self.is_zero(lvl, a), "inverse of zero");
        match a {
            TElem::Q(q) => TElem::Q(q.recip()),
            TElem::Alg(v) => {
                let m = self.minpoly(lvl).unwrap();
                let (g, s, _) = self.p_ext_gcd(lvl - 1, v, m);
                debug_assert!(g.len() == 1, "minimal polynomial must be irreducible");
                TElem::Alg(self.p_rem(lvl - 1, &s, m))
            }
            TElem::Rat(n, d) => self.rat(lvl - 1, d.clone(), n.clone()),
        }
    }

    pub fn div(&self, lvl: usize, a: &TElem, b: &TElem) -> TElem {
        self.mul(lvl, a, &self.inv(lvl, b))
    }

    pub fn pow(&self, lvl: usize, a: &TElem, n: u32) -> TElem {
        let mut acc = self.one(lvl);
        for _ in 0..n {
            acc = self.mul(lvl, &acc, a);
        }
        acc
    }

    /// n/d in lowest terms with monic denominator, over coefficient level `c`.
    fn rat(&self, c: usize, n: Coeffs, d: Coeffs) -> TElem {
        assert!(!d.is_empty(), "zero denominator");
        if n.is_empty() {
            return TElem::Rat(Vec::new(), vec![self.one(c)]);
        }
        let g = self.p_gcd(c, &n, &d);
        let (n, d) = if g.len() > 1 {
            (self.p_div_exact(c, &n, &g), self.p_div_exact(c, &d, &g))
        } else {
            (n, d)
        };
        let lc = self.inv(c, d.last().unwrap());
        TElem::Rat(self.p_scale(c, &n, &lc), self.p_scale(c, &d, &lc))
    }

    /// Sign of the leading rational coefficient, for printing.
    pub fn is_negative(&self, a: &TElem) -> bool {
        match a {
            TElem::Q(q) => q.is_negative(),
            TElem::Alg(v) => v.last().map_or(false, |x| self.is_negative(x)),
            TElem::Rat(n, _) => n.last().map_or(false, |x| self.is_negative(x)),
        }
    }

    // ---- univariate polynomials with coefficients in L_c -----------------

    pub fn p_trim(&self, c: usize, mut v: Coeffs) -> Coeffs {
        while v.last().map_or(false, |x| self.is_zero(c, x)) {
            v.pop();
        }
        v
    }

    pub fn p_neg(&self, c: usize, a: &[TElem]) -> Coeffs {
        a.iter().map(|x| self.neg(c, x)).collect()
    }

    pub fn p_add(&self, c: usize, a: &[TElem], b: &[TElem]) -> Coeffs {
        let n = a.len().max(b.len());
        let z = self.zero(c);
        let v = (0..n)
            .map(|i| self.add(c, a.get(i).unwrap_or(&z), b.get(i).unwrap_or(&z)))
            .collect();
        self.p_trim(c, v)
    }

    pub fn p_sub(&self, c: usize, a: &[TElem], b: &[TElem]) -> Coeffs {
        self.p_add(c, a, &self.p_neg(c, b))
    }

    pub fn p_mul(&self, c: usize, a: &[TElem], b: &[TElem]) -> Coeffs {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![self.zero(c); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            if self.is_zero(c, x) {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                out[i + j] = self.add(c, &out[i + j], &self.mul(c, x, y));
            }
        }
        self.p_trim(c, out)
    }

    pub fn p_scale(&self, c: usize, a: &[TElem], k: &TElem) -> Coeffs {
        if self.is_zero(c, k) {
            return Vec::new();
        }
        a.iter().map(|x| self.mul(c, x, k)).collect()
    }


    /// Quotient and remainder; `b` must be nonzero.
    pub fn p_divrem(&self, c: usize, a: &[TElem], b: &[TElem]) -> (Coeffs, Coeffs) {
        assert!(!b.is_empty(), "polynomial division by zero");
        let db = b.len() - 1;
        let inv_lb = self.inv(c, &b[db]);
        let mut r = a.to_vec();
        if r.len() <= db {
            return (Vec::new(), self.p_trim(c, r));
        }
        let mut q = vec![self.zero(c); r.len() - db];
        while r.len() > db {
            let k = r.len() - 1;
            let coef = self.mul(c, &r[k], &inv_lb);
            let shift = k - db;
            for (i, bi) in b.iter().enumerate() {
                r[i + shift] = self.sub(c, &r[i + shift], &self.mul(c, &coef, bi));
            }
            q[shift] = coef;
            r.pop();
            r = self.p_trim(c, r);
        }
        (self.p_trim(c, q), r)
    }

    pub fn p_rem(&self, c: usize, a: &[TElem], b: &[TElem]) -> Coeffs {
        if a.len() < b.len() {
            return self.p_trim(c, a.to_vec());
        }
        self.p_divrem(c, a, b).1
    }

    pub fn p_div_exact(&self, c: usize, a: &[TElem], b: &[TElem]) -> Coeffs {
        let (q, r) = self.p_divrem(c, a, b);
        debug_assert!(r.is_empty(), "inexact polynomial division");
        q
    }

    pub fn p_monic(&self, c: usize, a: &[TElem]) -> Coeffs {
        match a.last() {
            None => Vec::new(),
            Some(lc) => self.p_scale(c, a, &self.inv(c, lc)),
        }
    }

    /// Monic gcd (zero when both inputs are zero).
    pub fn p_gcd(&self, c: usize, a: &[TElem], b: &[TElem]) -> Coeffs {
        let (mut x, mut y) = (self.p_trim(c, a.to_vec()), self.p_trim(c, b.to_vec()));
        while !y.is_empty() {
            let r = self.p_rem(c, &x, &y);
            x = y;
            y = r;
        }
        self.p_monic(c, &x)
    }

    /// (g, s, t) with s·a + t·b = g, g monic.
    pub fn p_ext_gcd(&self, c: usize, a: &[TElem], b: &[TElem]) -> (Coeffs, Coeffs, Coeffs) {
        let (mut r0, mut r1) = (self.p_trim(c, a.to_vec()), self.p_trim(c, b.to_vec()));
        let (mut s0, mut s1) = (vec![self.one(c)], Vec::new());
        let (mut t0, mut t1) = (Vec::new(), vec![self.one(c)]);
        while !r1.is_empty() {
            let (q, r) = self.p_divrem(c, &r0, &r1);
            let s = self.p_sub(c, &s0, &self.p_mul(c, &q, &s1));
            let t = self.p_sub(c, &t0, &self.p_mul(c, &q, &t1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s);
            t0 = std::mem::replace(&mut t1, t);
        }
        match r0.last() {
            None => (r0, s0, t0),
            Some(lc) => {
                let k = self.inv(c, lc);
                (self.p_scale(c, &r0, &k), self.p_scale(c, &s0, &k), self.p_scale(c, &t0, &k))
            }
        }
    }

    pub fn p_deriv(&self, c: usize, a: &[TElem]) -> Coeffs {
        let v = a
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, x)| self.mul(c, x, &self.from_int(c, i as i64)))
            .collect();
        self.p_trim(c, v)
    }

    pub fn p_eval(&self, c: usize, a: &[TElem], x: &TElem) -> TElem {
        let mut acc = self.zero(c);
        for coef in a.iter().rev() {
            acc = self.add(c, &self.mul(c, &acc, x), coef);
        }
        acc
    }

    /// a(x + s).
    pub fn p_shift(&self, c: usize, a: &[TElem], s: &TElem) -> Coeffs {
        let lin = self.p_trim(c, vec![s.clone(), self.one(c)]);
        let mut acc: Coeffs = Vec::new();
        for coef in a.iter().rev() {
            acc = self.p_add(c, &self.p_mul(c, &acc, &lin), &[coef.clone()]);
        }
        acc
    }

    /// Res(a, b) for nonzero `a`, with Res(a, b) = lc(a)^deg b · Π_{a(α)=0} b(α).
    pub fn p_resultant(&self, c: usize, a: &[TElem], b: &[TElem]) -> TElem {
        let (mut a, mut b) = (self.p_trim(c, a.to_vec()), self.p_trim(c, b.to_vec()));
        let mut acc = self.one(c);
        loop {
            if b.is_empty() {
                return self.zero(c);
            }
            let (da, db) = (a.len() - 1, b.len() - 1);
            if db == 0 {
                return self.mul(c, &acc, &self.pow(c, &b[0], da as u32));
            }
            if da == 0 {
                return self.mul(c, &acc, &self.pow(c, &a[0], db as u32));
            }
            // Res(a, b) = (-1)^{da·db} Res(b, a), and Res(b, a) = lc(b)^{da - deg r} Res(b, r).
            let r = self.p_rem(c, &a, &b);
            if r.is_empty() {
                return self.zero(c);
            }
            let dr = r.len() - 1;
            let mut factor = self.pow(c, &b[db], (da - dr) as u32);
            if da * db % 2 == 1 {
                factor = self.neg(c, &factor);
            }
            acc = self.mul(c, &acc, &factor);
            a = b;
            b = r;
        }
    }

    // ---- printing ---------------------------------------------------------

    pub fn elem_text(&self, lvl: usize, a: &TElem) -> String {
        match a {
            TElem::Q(q) => q.to_string(),
            TElem::Alg(v) => self.poly_text(lvl - 1, v, &self.levels[lvl - 1].name),
            TElem::Rat(n, d) => {
                let name = &self.levels[lvl - 1].name;
                let num = self.poly_text(lvl - 1, n, name);
                if d.len() == 1 {
                    return num;
                }
                let den = self.poly_text(lvl - 1, d, name);
                let wrap = |s: String| if s.contains(' ') || s.contains('*') || s.contains('/') { format!("({s})") } else { s };
                format!("{}/{}", wrap(num), wrap(den))
            }
        }
    }

    /// Whether the printed form of `a` needs parentheses when used as a factor.
    pub fn compound(&self, lvl: usize, a: &TElem) -> bool {
        let s = self.elem_text(lvl, a);
        let body = s.strip_prefix('-').unwrap_or(&s);
        match a {
            TElem::Q(_) => false,
            _ => body.contains(' ') || body.contains('/'),
        }
    }

    /// Descending-degree text of a univariate polynomial in `var`.
    pub fn poly_text(&self, c: usize, a: &[TElem], var: &str) -> String {
        let mut out = String::new();
        for (k, coef) in a.iter().enumerate().rev() {
            if self.is_zero(c, coef) {
                continue;
            }
            let neg = self.is_negative(coef);
            let mag = if neg { self.neg(c, coef) } else { coef.clone() };
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let power = match k {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{k}"),
            };
            if k == 0 {
                out.push_str(&self.elem_text(c, &mag));
            } else if self.is_one(c, &mag) {
                out.push_str(&power);
            } else if self.compound(c, &mag) {
                out.push_str(&format!("({})*{power}", self.elem_text(c, &mag)));
            } else {
                out.push_str(&format!("{}*{power}", self.elem_text(c, &mag)));
            }
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }
}
