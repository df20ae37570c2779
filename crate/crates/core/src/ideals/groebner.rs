//! Buchberger's algorithm over the ground field with cofactor tracking.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::ground::{FieldDescriptor, FieldElem};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize)]
pub enum MonomialOrder {
    Lex,
    Grevlex,
}

pub(crate) type Mono = Vec<u32>;

/// Terms sorted in decreasing monomial order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct GPoly {
    pub terms: Vec<(Mono, FieldElem)>,
}

/// Variables, order and coefficient field shared by a family of polynomials.
#[derive(Clone, Debug)]
pub(crate) struct Space {
    pub nvars: usize,
    pub order: MonomialOrder,
    pub field: Arc<FieldDescriptor>,
}

/// Counts elementary reduction steps against a limit.
#[derive(Debug)]
pub(crate) struct Budget {
    pub limit: u64,
    pub used: u64,
}

impl Budget {
    pub fn new(limit: u64) -> Self {
        Budget { limit, used: 0 }
    }

    fn tick(&mut self) -> Result<()> {
        self.used += 1;
        if self.used > self.limit {
            return Err(Error::BudgetExceeded(self.limit));
        }
        Ok(())
    }
}

fn divides(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

fn lcm(a: &[u32], b: &[u32]) -> Mono {
    a.iter().zip(b).map(|(x, y)| *x.max(y)).collect()
}

fn quo(a: &[u32], b: &[u32]) -> Mono {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

impl GPoly {
    pub fn zero() -> Self {
        GPoly { terms: Vec::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|(m, _)| m.iter().all(|&e| e == 0))
    }

    pub fn lead(&self) -> &(Mono, FieldElem) {
        &self.terms[0]
    }
}

impl Space {
    pub fn cmp(&self, a: &[u32], b: &[u32]) -> Ordering {
        match self.order {
            MonomialOrder::Lex => a.cmp(b),
            MonomialOrder::Grevlex => {
                let (da, db): (u32, u32) = (a.iter().sum(), b.iter().sum());
                da.cmp(&db).then_with(|| {
                    for (x, y) in a.iter().zip(b).rev() {
                        if x != y {
                            return y.cmp(x);
                        }
                    }
                    Ordering::Equal
                })
            }
        }
    }

    pub fn constant(&self, c: FieldElem) -> GPoly {
        if c.is_zero() {
            return GPoly::zero();
        }
        GPoly {
            terms: vec![(vec![0; self.nvars], c)],
        }
    }

    pub fn one(&self) -> GPoly {
        self.constant(FieldElem::one(&self.field))
    }

    pub fn from_terms(&self, terms: impl IntoIterator<Item = (Mono, FieldElem)>) -> GPoly {
        let mut acc = GPoly::zero();
        for (m, c) in terms {
            acc = self.add(&acc, &GPoly { terms: vec![(m, c)] });
        }
        acc
    }

    pub fn add(&self, a: &GPoly, b: &GPoly) -> GPoly {
        let mut out = Vec::with_capacity(a.terms.len() + b.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < a.terms.len() && j < b.terms.len() {
            match self.cmp(&a.terms[i].0, &b.terms[j].0) {
                Ordering::Greater => {
                    out.push(a.terms[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push(b.terms[j].clone());
                    j += 1;
                }
                Ordering::Equal => {
                    let c = &a.terms[i].1 + &b.terms[j].1;
                    if !c.is_zero() {
                        out.push((a.terms[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a.terms[i..]);
        out.extend_from_slice(&b.terms[j..]);
        GPoly { terms: out }
    }

    pub fn neg(&self, a: &GPoly) -> GPoly {
        GPoly {
            terms: a.terms.iter().map(|(m, c)| (m.clone(), c.neg())).collect(),
        }
    }

    pub fn sub(&self, a: &GPoly, b: &GPoly) -> GPoly {
        self.add(a, &self.neg(b))
    }

    /// c · x^m · a
    pub fn mul_term(&self, a: &GPoly, m: &[u32], c: &FieldElem) -> GPoly {
        if c.is_zero() {
            return GPoly::zero();
        }
        GPoly {
            terms: a
                .terms
                .iter()
                .map(|(e, x)| (e.iter().zip(m).map(|(p, q)| p + q).collect(), x * c))
                .collect(),
        }
    }

    pub fn mul(&self, a: &GPoly, b: &GPoly) -> GPoly {
        let mut acc = GPoly::zero();
        for (m, c) in &b.terms {
            acc = self.add(&acc, &self.mul_term(a, m, c));
        }
        acc
    }

    pub fn scale(&self, a: &GPoly, c: &FieldElem) -> GPoly {
        self.mul_term(a, &vec![0; self.nvars], c)
    }

    /// Full reduction of `f` by `basis`: f = Σ q_j·basis_j + r with no term of r divisible by a leading monomial.
    pub fn reduce(&self, f: &GPoly, basis: &[GPoly], budget: &mut Budget) -> Result<(Vec<GPoly>, GPoly)> {
        let mut q = vec![GPoly::zero(); basis.len()];
        let mut p = f.clone();
        let mut r = Vec::new();
        while !p.is_zero() {
            let (m, c) = p.lead().clone();
            match basis.iter().position(|b| divides(&b.lead().0, &m)) {
                Some(j) => {
                    budget.tick()?;
                    let (bm, bc) = basis[j].lead();
                    let t = quo(&m, bm);
                    let k = &c / bc;
                    p = self.sub(&p, &self.mul_term(&basis[j], &t, &k));
                    q[j] = self.add(&q[j], &GPoly { terms: vec![(t, k)] });
                }
                None => {
                    r.push((m, c));
                    p.terms.remove(0);
                }
            }
        }
        Ok((q, GPoly { terms: r }))
    }

    pub fn normal_form(&self, f: &GPoly, basis: &[GPoly], budget: &mut Budget) -> Result<GPoly> {
        Ok(self.reduce(f, basis, budget)?.1)
    }

    fn spoly_parts(&self, a: &GPoly, b: &GPoly) -> (Mono, FieldElem, Mono, FieldElem) {
        let (am, ac) = a.lead();
        let (bm, bc) = b.lead();
        let l = lcm(am, bm);
        (quo(&l, am), ac.inv().unwrap(), quo(&l, bm), bc.inv().unwrap())
    }

    pub fn spoly(&self, a: &GPoly, b: &GPoly) -> GPoly {
        let (ta, ka, tb, kb) = self.spoly_parts(a, b);
        self.sub(&self.mul_term(a, &ta, &ka), &self.mul_term(b, &tb, &kb))
    }
}

/// A basis element together with its expression in the input generators.
#[derive(Clone, Debug)]
pub(crate) struct Entry {
    pub poly: GPoly,
    pub cofactors: Vec<GPoly>,
}

fn combine(space: &Space, quotients: &[GPoly], entries: &[Entry], ngens: usize) -> Vec<GPoly> {
    let mut out = vec![GPoly::zero(); ngens];
    for (q, e) in quotients.iter().zip(entries) {
        if q.is_zero() {
            continue;
        }
        for (o, c) in out.iter_mut().zip(&e.cofactors) {
            if !c.is_zero() {
                *o = space.add(o, &space.mul(q, c));
            }
        }
    }
    out
}

fn make_monic(space: &Space, e: Entry) -> Entry {
    let k = e.poly.lead().1.inv().unwrap();
    Entry {
        poly: space.scale(&e.poly, &k),
        cofactors: e.cofactors.iter().map(|c| space.scale(c, &k)).collect(),
    }
}

/// Reduced Gröbner basis of the ideal generated by `gens`, each element with cofactors.
pub(crate) fn groebner(space: &Space, gens: &[GPoly], budget: &mut Budget) -> Result<Vec<Entry>> {
    let n = gens.len();
    let mut basis: Vec<Entry> = Vec::new();
    for (i, g) in gens.iter().enumerate() {
        if g.is_zero() {
            continue;
        }
        let mut cof = vec![GPoly::zero(); n];
        cof[i] = space.one();
        basis.push(make_monic(space, Entry { poly: g.clone(), cofactors: cof }));
    }
    let mut pending: BTreeSet<(usize, usize)> = BTreeSet::new();
    for j in 0..basis.len() {
        for i in 0..j {
            pending.insert((i, j));
        }
    }
    while !pending.is_empty() {
        if basis.iter().any(|e| e.poly.is_constant()) {
            break;
        }
        // normal selection strategy: smallest lcm first
        let &(i, j) = pending
            .iter()
            .min_by(|x, y| {
                let lx = lcm(&basis[x.0].poly.lead().0, &basis[x.1].poly.lead().0);
                let ly = lcm(&basis[y.0].poly.lead().0, &basis[y.1].poly.lead().0);
                space.cmp(&lx, &ly).then(x.cmp(y))
            })
            .unwrap();
        pending.remove(&(i, j));
        let (li, lj) = (&basis[i].poly.lead().0, &basis[j].poly.lead().0);
        if li.iter().zip(lj).all(|(a, b)| *a == 0 || *b == 0) {
            continue;
        }
        let l = lcm(li, lj);
        let chain = (0..basis.len()).any(|k| {
            k != i
                && k != j
                && divides(&basis[k].poly.lead().0, &l)
                && !pending.contains(&(i.min(k), i.max(k)))
                && !pending.contains(&(j.min(k), j.max(k)))
        });
        if chain {
            continue;
        }
        budget.tick()?;
        let (ta, ka, tb, kb) = space.spoly_parts(&basis[i].poly, &basis[j].poly);
        let s = space.sub(
            &space.mul_term(&basis[i].poly, &ta, &ka),
            &space.mul_term(&basis[j].poly, &tb, &kb),
        );
        let polys: Vec<GPoly> = basis.iter().map(|e| e.poly.clone()).collect();
        let (q, r) = space.reduce(&s, &polys, budget)?;
        if r.is_zero() {
            continue;
        }
        let mut cof: Vec<GPoly> = basis[i]
            .cofactors
            .iter()
            .zip(&basis[j].cofactors)
            .map(|(a, b)| space.sub(&space.mul_term(a, &ta, &ka), &space.mul_term(b, &tb, &kb)))
            .collect();
        let qc = combine(space, &q, &basis, n);
        for (c, d) in cof.iter_mut().zip(qc) {
            *c = space.sub(c, &d);
        }
        let k = basis.len();
        basis.push(make_monic(space, Entry { poly: r, cofactors: cof }));
        for i in 0..k {
            pending.insert((i, k));
        }
    }
    interreduce(space, basis, budget)
}

fn interreduce(space: &Space, basis: Vec<Entry>, budget: &mut Budget) -> Result<Vec<Entry>> {
    if let Some(unit) = basis.iter().find(|e| e.poly.is_constant()) {
        return Ok(vec![make_monic(space, unit.clone())]);
    }
    // drop elements whose leading monomial is divisible by another's
    let mut keep: Vec<Entry> = Vec::new();
    for (i, e) in basis.iter().enumerate() {
        let redundant = basis.iter().enumerate().any(|(j, f)| {
            j != i && divides(&f.poly.lead().0, &e.poly.lead().0) && (f.poly.lead().0 != e.poly.lead().0 || j < i)
        });
        if !redundant {
            keep.push(e.clone());
        }
    }
    let n = keep.first().map_or(0, |e| e.cofactors.len());
    let mut out = Vec::with_capacity(keep.len());
    for i in 0..keep.len() {
        let others: Vec<Entry> = keep.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, e)| e.clone()).collect();
        let polys: Vec<GPoly> = others.iter().map(|e| e.poly.clone()).collect();
        let (q, r) = space.reduce(&keep[i].poly, &polys, budget)?;
        let qc = combine(space, &q, &others, n);
        let cof = keep[i].cofactors.iter().zip(qc).map(|(c, d)| space.sub(c, &d)).collect();
        out.push(make_monic(space, Entry { poly: r, cofactors: cof }));
    }
    out.sort_by(|a, b| space.cmp(&b.poly.lead().0, &a.poly.lead().0));
    Ok(out)
}

/// Buchberger's criterion: every S-polynomial reduces to zero.
pub(crate) fn is_groebner(space: &Space, basis: &[GPoly], budget: &mut Budget) -> Result<bool> {
    for j in 0..basis.len() {
        for i in 0..j {
            let s = space.spoly(&basis[i], &basis[j]);
            if !space.normal_form(&s, basis, budget)?.is_zero() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}
