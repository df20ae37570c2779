//! Seeded random generators for property tests and the acceptance harness.

use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::Rng;

use crate::diffpoly::{Derivative, DiffPoly, DiffRing, Monomial};
use crate::ground::{FieldDescriptor, FieldElem};
use crate::zpoly::ZPoly;

/// ℚ(t) with δt = 1.
pub fn q_t() -> Arc<FieldDescriptor> {
    let base = FieldDescriptor::rational_functions(&["t"]).unwrap();
    base.with_derivations(&[FieldElem::one(&base)]).unwrap()
}

/// A small polynomial in the generators of `field` with integer coefficients.
pub fn random_zpoly<R: Rng>(rng: &mut R, nvars: usize, max_deg: u32, height: i64) -> ZPoly {
    let nterms = rng.gen_range(1..=3);
    ZPoly::from_terms(
        nvars,
        (0..nterms).map(|_| {
            let e: Vec<u32> = (0..nvars).map(|_| rng.gen_range(0..=max_deg)).collect();
            (e, BigInt::from(rng.gen_range(-height..=height)))
        }),
    )
}

/// A random field element; rational functions get small numerators and denominators.
pub fn random_field_elem<R: Rng>(rng: &mut R, field: &Arc<FieldDescriptor>) -> FieldElem {
    let k = field.nvars();
    if k == 0 || rng.gen_bool(0.4) {
        let n = rng.gen_range(-6i64..=6);
        let d = rng.gen_range(1i64..=4);
        return FieldElem::from_rational(field, BigRational::new(n.into(), d.into()));
    }
    let num = random_zpoly(rng, k, 2, 4);
    let mut den = random_zpoly(rng, k, 1, 3);
    if den.is_zero() {
        den = ZPoly::one(k);
    }
    FieldElem::from_parts(field, num, den).unwrap()
}

/// A random differential polynomial with at most `max_terms` terms.
pub fn random_diffpoly<R: Rng>(
    rng: &mut R,
    ring: &Arc<DiffRing>,
    max_terms: usize,
    max_order: u32,
    max_deg: u32,
) -> DiffPoly {
    let nterms = rng.gen_range(1..=max_terms);
    let terms = (0..nterms).map(|_| {
        let nf = rng.gen_range(0..=2);
        let m = Monomial::from_factors((0..nf).map(|_| {
            let d = Derivative::new(rng.gen_range(0..ring.len()), rng.gen_range(0..=max_order));
            (d, rng.gen_range(1..=max_deg))
        }));
        (m, random_field_elem(rng, ring.field()))
    });
    DiffPoly::from_terms(ring, terms.collect::<Vec<_>>())
}

/// Independent oracle: Kronecker's criterion with points 0..=d, i128 arithmetic and
/// Lagrange interpolation over `Ratio<i128>`, returning the number of irreducible factors.
pub fn brute_force_factor_count(f: &[i64]) -> usize {
    use num_rational::Ratio;
    type R = Ratio<i128>;
    fn eval(f: &[i128], x: i128) -> i128 {
        f.iter().rev().fold(0, |acc, &c| acc * x + c)
    }
    fn quotient(f: &[i128], g: &[i128]) -> Option<Vec<i128>> {
        let mut r = f.to_vec();
        let dg = g.len() - 1;
        if r.len() < g.len() {
            return None;
        }
        let mut q = vec![0i128; r.len() - dg];
        for k in (dg..r.len()).rev() {
            if r[k] % g[dg] != 0 {
                return None;
            }
            let c = r[k] / g[dg];
            q[k - dg] = c;
            for (i, &gi) in g.iter().enumerate() {
                r[i + k - dg] -= c * gi;
            }
        }
        r.iter().all(|&x| x == 0).then_some(q)
    }
    fn divisors(v: i128) -> Vec<i128> {
        let v = v.abs();
        (1..=v).filter(|d| v % d == 0).flat_map(|d| [d, -d]).collect()
    }
    fn count(f: Vec<i128>) -> usize {
        let n = f.len() - 1;
        if n <= 1 {
            return n;
        }
        for d in 1..=n / 2 {
            let xs: Vec<i128> = (0..=d as i128).collect();
            if let Some(&x) = xs.iter().find(|&&x| eval(&f, x) == 0) {
                let q = quotient(&f, &[-x, 1]).unwrap();
                return 1 + count(q);
            }
            let choices: Vec<Vec<i128>> = xs.iter().map(|&x| divisors(eval(&f, x))).collect();
            let mut idx = vec![0usize; d + 1];
            'search: loop {
                // Lagrange interpolation through (x_j, choice_j)
                let mut g = vec![R::from_integer(0); d + 1];
                for j in 0..=d {
                    let mut basis = vec![R::from_integer(1)];
                    let mut den = 1i128;
                    for k in 0..=d {
                        if k != j {
                            let mut next = vec![R::from_integer(0); basis.len() + 1];
                            for (i, c) in basis.iter().enumerate() {
                                next[i + 1] += *c;
                                next[i] -= *c * R::from_integer(xs[k]);
                            }
                            basis = next;
                            den *= xs[j] - xs[k];
                        }
                    }
                    let v = R::new(choices[j][idx[j]], den);
                    for (i, c) in basis.iter().enumerate() {
                        g[i] += *c * v;
                    }
                }
                if g.iter().all(|c| c.is_integer()) {
                    let mut gi: Vec<i128> = g.iter().map(|c| c.to_integer()).collect();
                    while gi.last() == Some(&0) {
                        gi.pop();
                    }
                    if gi.len() >= 2 {
                        if let Some(q) = quotient(&f, &gi) {
                            return count(gi) + count(q);
                        }
                    }
                }
                for j in 0..=d {
                    idx[j] += 1;
                    if idx[j] < choices[j].len() {
                        continue 'search;
                    }
                    idx[j] = 0;
                }
                break;
            }
        }
        1
    }
    count(f.iter().map(|&c| c as i128).collect())
}
