//! Gcd and exact division over K in the polynomial ring on finitely many
//! derivatives, done by clearing denominators into ℤ[generators, derivatives].

use std::collections::BTreeSet;

use num_bigint::BigInt;

use crate::diffpoly::{Derivative, DiffPoly, Monomial};
use crate::ground::FieldElem;
use crate::zpoly::ZPoly;

struct Flat {
    ngens: usize,
    derivs: Vec<Derivative>,
}

impl Flat {
    fn new(polys: &[&DiffPoly]) -> Self {
        let derivs: BTreeSet<Derivative> = polys.iter().flat_map(|p| p.derivatives()).collect();
        Flat {
            ngens: polys[0].field().nvars(),
            derivs: derivs.into_iter().collect(),
        }
    }

    fn nvars(&self) -> usize {
        self.ngens + self.derivs.len()
    }

    /// `p · L` as an integer polynomial, where `L ∈ K` clears every denominator.
    fn flatten(&self, p: &DiffPoly) -> (ZPoly, FieldElem) {
        let field = p.field();
        let mut lcm = ZPoly::one(self.ngens);
        for (_, c) in p.terms() {
            let d = c.denominator();
            let g = lcm.gcd(&d);
            lcm = lcm.mul(&d.div_exact(&g).unwrap());
        }
        let mut terms = Vec::new();
        for (m, c) in p.terms() {
            let scaled = c.numerator().mul(&lcm.div_exact(&c.denominator()).unwrap());
            let mut dexp = vec![0u32; self.derivs.len()];
            for &(d, e) in m.factors() {
                dexp[self.derivs.binary_search(&d).unwrap()] = e;
            }
            for (ge, x) in scaled.terms() {
                let mut e = ge.clone();
                e.extend_from_slice(&dexp);
                terms.push((e, x.clone()));
            }
        }
        let scale = FieldElem::from_parts(field, lcm, ZPoly::one(self.ngens)).unwrap();
        (ZPoly::from_terms(self.nvars(), terms), scale)
    }

    fn unflatten(&self, z: &ZPoly, template: &DiffPoly) -> DiffPoly {
        let field = template.field();
        let mut groups: std::collections::BTreeMap<Vec<u32>, Vec<(Vec<u32>, BigInt)>> = Default::default();
        for (e, c) in z.terms() {
            groups
                .entry(e[self.ngens..].to_vec())
                .or_default()
                .push((e[..self.ngens].to_vec(), c.clone()));
        }
        let terms = groups.into_iter().map(|(dexp, gterms)| {
            let m = Monomial::from_factors(self.derivs.iter().zip(dexp).map(|(d, e)| (*d, e)));
            let c = FieldElem::from_parts(field, ZPoly::from_terms(self.ngens, gterms), ZPoly::one(self.ngens)).unwrap();
            (m, c)
        });
        DiffPoly::from_terms(template.ring(), terms.collect::<Vec<_>>())
    }

    /// Gcd of the coefficients of `z` viewed as a polynomial in the derivatives.
    fn content(&self, z: &ZPoly) -> ZPoly {
        let mut groups: std::collections::BTreeMap<Vec<u32>, Vec<(Vec<u32>, BigInt)>> = Default::default();
        for (e, c) in z.terms() {
            let mut ge = e.clone();
            for x in ge[self.ngens..].iter_mut() {
                *x = 0;
            }
            groups.entry(e[self.ngens..].to_vec()).or_default().push((ge, c.clone()));
        }
        let mut g = ZPoly::zero(self.nvars());
        for (_, terms) in groups {
            g = g.gcd(&ZPoly::from_terms(self.nvars(), terms));
            if g.is_one() {
                break;
            }
        }
        g
    }
}

/// Gcd over K of nonzero polynomials, up to a factor in K. Zero inputs are ignored;
/// returns zero when every input is zero.
pub(crate) fn gcd(polys: &[DiffPoly]) -> DiffPoly {
    let nonzero: Vec<&DiffPoly> = polys.iter().filter(|p| !p.is_zero()).collect();
    if nonzero.is_empty() {
        return polys[0].clone();
    }
    if nonzero.iter().any(|p| p.is_constant()) {
        return DiffPoly::one(nonzero[0].ring());
    }
    let flat = Flat::new(&nonzero);
    let mut g = ZPoly::zero(flat.nvars());
    for p in &nonzero {
        g = g.gcd(&flat.flatten(p).0);
        if g.is_constant() {
            return DiffPoly::one(nonzero[0].ring());
        }
    }
    let c = flat.content(&g);
    let g = g.div_exact(&c).unwrap();
    flat.unflatten(&g, nonzero[0])
}

/// `a / b` over K when `b` divides `a`.
pub(crate) fn div_exact(a: &DiffPoly, b: &DiffPoly) -> Option<DiffPoly> {
    assert!(!b.is_zero());
    if a.is_zero() {
        return Some(a.clone());
    }
    if let Some(k) = b.as_constant() {
        return Some(a.div_constant(&k).unwrap());
    }
    let flat = Flat::new(&[a, b]);
    let (za, la) = flat.flatten(a);
    let (zb, lb) = flat.flatten(b);
    let cb = flat.content(&zb);
    let q = za.div_exact(&zb.div_exact(&cb).unwrap())?;
    let cbk = FieldElem::from_parts(a.field(), strip_derivs(&cb, flat.ngens), ZPoly::one(flat.ngens)).unwrap();
    let factor = &lb / &(&la * &cbk);
    Some(flat.unflatten(&q, a).scale(&factor))
}

fn strip_derivs(z: &ZPoly, ngens: usize) -> ZPoly {
    ZPoly::from_terms(ngens, z.terms().iter().map(|(e, c)| (e[..ngens].to_vec(), c.clone())))
}
