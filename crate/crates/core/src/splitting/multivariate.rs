//! Sparse multivariate polynomials over a tower level and their factorization
//! by Kronecker substitution.

use std::collections::BTreeMap;

use itertools::Itertools;

use super::tower::{Coeffs, TElem, Tower};
use super::univariate;

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct MPoly {
    pub nvars: usize,
    /// Exponent vectors in lexicographic order; the last entry leads.
    pub terms: BTreeMap<Vec<u32>, TElem>,
}

impl MPoly {
    pub fn zero(nvars: usize) -> Self {
        MPoly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn from_univariate(f: &[TElem]) -> Self {
        let mut m = MPoly::zero(1);
        for (k, c) in f.iter().enumerate() {
            if !is_zero(c) {
                m.terms.insert(vec![k as u32], c.clone());
            }
        }
        m
    }

    pub fn to_univariate(&self, var: usize) -> Coeffs {
        let d = self.degree_in(var) as usize;
        let mut out = vec![None; d + 1];
        for (e, c) in &self.terms {
            out[e[var] as usize] = Some(c.clone());
        }
        let zero = self.terms.values().next().map(|c| zero_like(c));
        out.into_iter().map(|c| c.or_else(|| zero.clone()).unwrap()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|e| e.iter().all(|&x| x == 0))
    }

    pub fn degree_in(&self, var: usize) -> u32 {
        self.terms.keys().map(|e| e[var]).max().unwrap_or(0)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|e| e.iter().sum()).max().unwrap_or(0)
    }

    pub fn leading(&self) -> Option<(&Vec<u32>, &TElem)> {
        self.terms.iter().next_back()
    }

    pub fn add(&self, t: &Tower, c: usize, other: &MPoly) -> MPoly {
        let mut out = self.clone();
        for (e, x) in &other.terms {
            let v = match out.terms.get(e) {
                Some(y) => t.add(c, y, x),
                None => x.clone(),
            };
            if t.is_zero(c, &v) {
                out.terms.remove(e);
            } else {
                out.terms.insert(e.clone(), v);
            }
        }
        out
    }

    pub fn neg(&self, t: &Tower, c: usize) -> MPoly {
        MPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, x)| (e.clone(), t.neg(c, x))).collect(),
        }
    }

    pub fn sub(&self, t: &Tower, c: usize, other: &MPoly) -> MPoly {
        self.add(t, c, &other.neg(t, c))
    }

    pub fn mul(&self, t: &Tower, c: usize, other: &MPoly) -> MPoly {
        let mut out = MPoly::zero(self.nvars);
        for (e1, x) in &self.terms {
            let mut part = MPoly::zero(self.nvars);
            for (e2, y) in &other.terms {
                let e: Vec<u32> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                part.terms.insert(e, t.mul(c, x, y));
            }
            out = out.add(t, c, &part);
        }
        out
    }

    pub fn scale(&self, t: &Tower, c: usize, k: &TElem) -> MPoly {
        if t.is_zero(c, k) {
            return MPoly::zero(self.nvars);
        }
        MPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, x)| (e.clone(), t.mul(c, x, k))).collect(),
        }
    }

    /// Scales so that the lexicographically leading coefficient is 1.
    pub fn monic(&self, t: &Tower, c: usize) -> MPoly {
        match self.leading() {
            None => self.clone(),
            Some((_, lc)) => self.scale(t, c, &t.inv(c, lc)),
        }
    }

    /// `self / d` when `d` divides `self` exactly.
    pub fn div_exact(&self, t: &Tower, c: usize, d: &MPoly) -> Option<MPoly> {
        let (de, dc) = d.leading().expect("division by zero polynomial");
        let inv = t.inv(c, dc);
        let mut r = self.clone();
        let mut q = MPoly::zero(self.nvars);
        while let Some((re, rc)) = r.leading() {
            if re.iter().zip(de).any(|(a, b)| a < b) {
                return None;
            }
            let e: Vec<u32> = re.iter().zip(de).map(|(a, b)| a - b).collect();
            let mut term = MPoly::zero(self.nvars);
            term.terms.insert(e, t.mul(c, rc, &inv));
            r = r.sub(t, c, &term.mul(t, c, d));
            q = q.add(t, c, &term);
        }
        Some(q)
    }
}

fn is_zero(c: &TElem) -> bool {
    match c {
        TElem::Q(q) => num_traits::Zero::is_zero(q),
        TElem::Alg(v) => v.is_empty(),
        TElem::Rat(n, _) => n.is_empty(),
    }
}

fn zero_like(c: &TElem) -> TElem {
    match c {
        TElem::Q(_) => TElem::Q(num_traits::Zero::zero()),
        TElem::Alg(_) => TElem::Alg(Vec::new()),
        TElem::Rat(_, d) => {
            // the denominator of a canonical zero is the constant one of the level below
            let one = d.last().cloned().unwrap();
            TElem::Rat(Vec::new(), vec![one])
        }
    }
}

/// Over a transcendental level, multiplies through by a common denominator and
/// moves the generator into a new last variable over the level below.
pub(crate) fn clear_denominators(t: &Tower, c: usize, f: &MPoly) -> MPoly {
    let b = c - 1;
    let mut lcm: Coeffs = vec![t.one(b)];
    for x in f.terms.values() {
        if let TElem::Rat(_, d) = x {
            let g = t.p_gcd(b, &lcm, d);
            lcm = t.p_mul(b, &lcm, &t.p_div_exact(b, d, &g));
        }
    }
    let mut out = MPoly::zero(f.nvars + 1);
    for (e, x) in &f.terms {
        if let TElem::Rat(n, d) = x {
            let poly = t.p_mul(b, n, &t.p_div_exact(b, &lcm, d));
            for (k, coef) in poly.into_iter().enumerate() {
                if t.is_zero(b, &coef) {
                    continue;
                }
                let mut e2 = e.clone();
                e2.push(k as u32);
                out.terms.insert(e2, coef);
            }
        }
    }
    out
}

/// Inverse of [`clear_denominators`] up to a factor in L_c.
fn restore_generator(t: &Tower, c: usize, f: &MPoly) -> MPoly {
    let b = c - 1;
    let n = f.nvars - 1;
    let mut groups: BTreeMap<Vec<u32>, Coeffs> = BTreeMap::new();
    for (e, x) in &f.terms {
        let k = e[n] as usize;
        let entry = groups.entry(e[..n].to_vec()).or_default();
        if entry.len() <= k {
            entry.resize(k + 1, t.zero(b));
        }
        entry[k] = x.clone();
    }
    let mut out = MPoly::zero(n);
    for (e, poly) in groups {
        out.terms.insert(e, TElem::Rat(poly, vec![t.one(b)]));
    }
    out
}

/// Irreducible factors of `f` over L_c, made monic, with multiplicities.
pub(crate) fn factor(t: &Tower, c: usize, f: &MPoly) -> Vec<(MPoly, u32)> {
    let raw = factor_raw(t, c, f);
    let mut grouped: Vec<(MPoly, u32)> = Vec::new();
    for (g, e) in raw {
        let g = g.monic(t, c);
        match grouped.iter_mut().find(|(h, _)| *h == g) {
            Some(entry) => entry.1 += e,
            None => grouped.push((g, e)),
        }
    }
    grouped
}

fn factor_raw(t: &Tower, c: usize, f: &MPoly) -> Vec<(MPoly, u32)> {
    if f.is_constant() {
        return Vec::new();
    }
    if t.is_transcendental(c) {
        let n = f.nvars;
        let lowered = clear_denominators(t, c, f);
        return factor_raw(t, c - 1, &lowered)
            .into_iter()
            .filter(|(g, _)| g.terms.keys().any(|e| e[..n].iter().any(|&x| x > 0)))
            .map(|(g, e)| (restore_generator(t, c, &g), e))
            .collect();
    }
    let n = f.nvars;
    let mut out = Vec::new();
    // monomial content
    let mins: Vec<u32> = (0..n).map(|i| f.terms.keys().map(|e| e[i]).min().unwrap()).collect();
    for (i, &m) in mins.iter().enumerate() {
        if m > 0 {
            let mut x = MPoly::zero(n);
            let mut e = vec![0; n];
            e[i] = 1;
            x.terms.insert(e, t.one(c));
            out.push((x, m));
        }
    }
    let f = MPoly {
        nvars: n,
        terms: f
            .terms
            .iter()
            .map(|(e, x)| (e.iter().zip(&mins).map(|(a, b)| a - b).collect(), x.clone()))
            .collect(),
    };
    let involved: Vec<usize> = (0..n).filter(|&i| f.degree_in(i) > 0).collect();
    match involved.len() {
        0 => {}
        1 => {
            let v = involved[0];
            for (g, e) in univariate::factor(t, c, &f.to_univariate(v)) {
                out.push((embed_univariate(&g, n, v), e));
            }
        }
        _ => out.extend(factor_by_substitution(t, c, &f)),
    }
    out
}

fn embed_univariate(g: &[TElem], n: usize, var: usize) -> MPoly {
    let mut m = MPoly::zero(n);
    for (k, x) in g.iter().enumerate() {
        if !is_zero(x) {
            let mut e = vec![0; n];
            e[var] = k as u32;
            m.terms.insert(e, x.clone());
        }
    }
    m
}

/// Factors a polynomial free of monomial factors through X_i ↦ X^(w_i), w_i = Π_{j<i} (deg_j f + 1).
fn factor_by_substitution(t: &Tower, c: usize, f: &MPoly) -> Vec<(MPoly, u32)> {
    let n = f.nvars;
    let radix: Vec<u64> = (0..n).map(|i| f.degree_in(i) as u64 + 1).collect();
    let weights: Vec<u64> = (0..n).map(|i| radix[..i].iter().product()).collect();
    let encode = |e: &[u32]| -> usize { e.iter().zip(&weights).map(|(&a, &w)| a as u64 * w).sum::<u64>() as usize };
    let decode = |mut k: usize| -> Vec<u32> {
        radix
            .iter()
            .map(|&r| {
                let d = (k as u64 % r) as u32;
                k = (k as u64 / r) as usize;
                d
            })
            .collect()
    };
    let top = f.terms.keys().map(|e| encode(e)).max().unwrap();
    let mut image = vec![t.zero(c); top + 1];
    for (e, x) in &f.terms {
        image[encode(e)] = x.clone();
    }
    let mut pool: Vec<Coeffs> = Vec::new();
    for (g, e) in univariate::factor(t, c, &image) {
        for _ in 0..e {
            pool.push(g.clone());
        }
    }
    let mut rest = f.clone();
    let mut found = Vec::new();
    let mut size = 1;
    while 2 * size <= pool.len() {
        let mut hit = None;
        for combo in (0..pool.len()).combinations(size) {
            let mut h = vec![t.one(c)];
            for &i in &combo {
                h = t.p_mul(c, &h, &pool[i]);
            }
            let mut g = MPoly::zero(n);
            let mut overflow = false;
            for (k, x) in h.iter().enumerate() {
                if is_zero(x) {
                    continue;
                }
                if k as u64 >= weights[n - 1] * radix[n - 1] {
                    overflow = true;
                    break;
                }
                g.terms.insert(decode(k), x.clone());
            }
            if overflow || g.is_constant() {
                continue;
            }
            if let Some(q) = rest.div_exact(t, c, &g) {
                hit = Some((combo, g, q));
                break;
            }
        }
        match hit {
            Some((combo, g, q)) => {
                found.push((g, 1));
                rest = q;
                pool = pool.into_iter().enumerate().filter(|(i, _)| !combo.contains(i)).map(|(_, p)| p).collect();
            }
            None => size += 1,
        }
    }
    if !rest.is_constant() {
        found.push((rest, 1));
    }
    found
}
