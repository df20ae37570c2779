//! Antiderivatives: formal ones in a polynomial variable, and δa = c in K.

use std::collections::BTreeMap;
use std::sync::Arc;

use itertools::Itertools;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::diffpoly::{Derivative, DiffPoly};
use crate::ground::{FieldDescriptor, FieldElem};
use crate::zpoly::ZPoly;

/// ∫ a dv, treating `v` as an ordinary polynomial variable.
pub(super) fn antiderivative(a: &DiffPoly, v: Derivative) -> DiffPoly {
    let field = a.field();
    let terms: Vec<_> = a
        .terms()
        .map(|(m, c)| {
            let e = m.degree_in(v) + 1;
            let k = FieldElem::from_int(field, e as i64);
            (m.with_degree(v, e), c.checked_div(&k).unwrap())
        })
        .collect();
    DiffPoly::from_terms(a.ring(), terms)
}

const MAX_ANSATZ_TERMS: usize = 400;

/// Some a ∈ K with δa = c, searched among N/D for a few denominators D
/// suggested by c and numerators N of bounded total degree.
pub(super) fn integrate_in_field(c: &FieldElem) -> Option<FieldElem> {
    let field = c.field();
    if c.is_zero() {
        return Some(FieldElem::zero(field));
    }
    if field.is_constant_field() {
        return None;
    }
    let k = field.nvars();
    let d = c.denominator();
    let dd = FieldElem::from_parts(field, d.clone(), ZPoly::one(k)).unwrap().derive();
    let mut dens = vec![d.gcd(&dd.numerator()), ZPoly::one(k), d.clone()];
    dens.dedup();
    let num_deg = c.numerator().total_degree().unwrap_or(0);
    for den in dens {
        let bound = num_deg + den.total_degree().unwrap_or(0) + 1;
        if let Some(a) = solve_ansatz(field, c, &den, bound) {
            return Some(a);
        }
    }
    None
}

fn monomials(k: usize, bound: u32) -> Vec<Vec<u32>> {
    (0..k)
        .map(|_| 0..=bound)
        .multi_cartesian_product()
        .filter(|e| e.iter().sum::<u32>() <= bound)
        .collect()
}

fn solve_ansatz(field: &Arc<FieldDescriptor>, c: &FieldElem, den: &ZPoly, bound: u32) -> Option<FieldElem> {
    let k = field.nvars();
    let basis: Vec<FieldElem> = monomials(k, bound)
        .into_iter()
        .take(MAX_ANSATZ_TERMS)
        .map(|e| FieldElem::from_parts(field, ZPoly::from_terms(k, [(e, BigInt::one())]), den.clone()).unwrap())
        .collect();
    let images: Vec<FieldElem> = basis.iter().map(FieldElem::derive).collect();
    // clear denominators and compare coefficients
    let mut l = c.denominator();
    for x in &images {
        let xd = x.denominator();
        let g = l.gcd(&xd);
        l = l.mul(&xd.div_exact(&g).unwrap());
    }
    let flat = |x: &FieldElem| x.numerator().mul(&l.div_exact(&x.denominator()).unwrap());
    let columns: Vec<ZPoly> = images.iter().map(flat).collect();
    let rhs = flat(c);
    let mut rows: BTreeMap<Vec<u32>, Vec<BigRational>> = BTreeMap::new();
    let width = columns.len() + 1;
    for (j, col) in columns.iter().chain(std::iter::once(&rhs)).enumerate() {
        for (e, v) in col.terms() {
            rows.entry(e.clone()).or_insert_with(|| vec![BigRational::zero(); width])[j] = BigRational::from(v.clone());
        }
    }
    let x = solve(rows.into_values().collect(), columns.len())?;
    let mut acc = FieldElem::zero(field);
    for (xi, b) in x.iter().zip(&basis) {
        if !xi.is_zero() {
            acc = &acc + &(&FieldElem::from_rational(field, xi.clone()) * b);
        }
    }
    Some(acc)
}

/// A solution of the augmented system, free variables set to zero.
pub(super) fn solve(mut m: Vec<Vec<BigRational>>, n: usize) -> Option<Vec<BigRational>> {
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..n {
        let Some(p) = (row..m.len()).find(|&i| !m[i][col].is_zero()) else { continue };
        m.swap(row, p);
        let inv = m[row][col].recip();
        for x in m[row].iter_mut() {
            *x = &*x * &inv;
        }
        for i in 0..m.len() {
            if i != row && !m[i][col].is_zero() {
                let f = m[i][col].clone();
                for j in col..=n {
                    let t = &m[row][j] * &f;
                    m[i][j] -= t;
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    if m[row..].iter().any(|r| !r[n].is_zero()) {
        return None;
    }
    let mut x = vec![BigRational::zero(); n];
    for (i, &col) in pivots.iter().enumerate() {
        x[col] = m[i][n].clone();
    }
    Some(x)
}
