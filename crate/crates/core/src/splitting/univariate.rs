//! Univariate factorization over a tower level.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::One;

use super::multivariate::{self, MPoly};
use super::tower::{Coeffs, TElem, Tower};
use super::zfactor;

fn deg(a: &[TElem]) -> usize {
    a.len().saturating_sub(1)
}

/// Squarefree decomposition (Yun) of a nonconstant polynomial: monic parts with multiplicities.
pub(crate) fn yun(t: &Tower, c: usize, f: &[TElem]) -> Vec<(Coeffs, u32)> {
    let f = t.p_monic(c, f);
    let fp = t.p_deriv(c, &f);
    let a0 = t.p_gcd(c, &f, &fp);
    let mut b = t.p_div_exact(c, &f, &a0);
    let cc = t.p_div_exact(c, &fp, &a0);
    let mut d = t.p_sub(c, &cc, &t.p_deriv(c, &b));
    let mut out = Vec::new();
    let mut i = 1;
    while deg(&b) > 0 {
        let a = t.p_gcd(c, &b, &d);
        b = t.p_div_exact(c, &b, &a);
        let cc = t.p_div_exact(c, &d, &a);
        d = t.p_sub(c, &cc, &t.p_deriv(c, &b));
        if deg(&a) > 0 {
            out.push((a, i));
        }
        i += 1;
    }
    out
}

/// Monic irreducible factors of a polynomial over L_c, with multiplicities.
pub(crate) fn factor(t: &Tower, c: usize, f: &[TElem]) -> Vec<(Coeffs, u32)> {
    let f = t.p_trim(c, f.to_vec());
    if deg(&f) == 0 {
        return Vec::new();
    }
    if t.is_transcendental(c) {
        let m = MPoly::from_univariate(&f);
        return multivariate::factor(t, c, &m)
            .into_iter()
            .map(|(g, e)| (t.p_monic(c, &g.to_univariate(0)), e))
            .collect();
    }
    let mut out = Vec::new();
    for (part, e) in yun(t, c, &f) {
        for g in factor_squarefree(t, c, &part) {
            out.push((g, e));
        }
    }
    out
}

/// Monic irreducible factors of a monic squarefree polynomial over ℚ or an algebraic level.
fn factor_squarefree(t: &Tower, c: usize, f: &[TElem]) -> Vec<Coeffs> {
    if deg(f) <= 1 {
        return vec![t.p_monic(c, f)];
    }
    if c == 0 {
        let z = to_integer(f);
        return zfactor::factor_squarefree(&z).iter().map(|g| from_integer(g)).collect();
    }
    trager(t, c, f)
}

/// A primitive integer multiple of a polynomial over ℚ.
pub(crate) fn to_integer(f: &[TElem]) -> Vec<BigInt> {
    let qs: Vec<&BigRational> = f
        .iter()
        .map(|e| match e {
            TElem::Q(q) => q,
            _ => unreachable!("rational coefficients expected"),
        })
        .collect();
    let den = qs.iter().fold(BigInt::one(), |l, q| l.lcm(q.denom()));
    let scaled: Vec<BigInt> = qs.iter().map(|q| (*q * BigRational::from_integer(den.clone())).to_integer()).collect();
    zfactor::primitive(&scaled)
}

/// The monic rational polynomial proportional to `g`.
pub(crate) fn from_integer(g: &[BigInt]) -> Coeffs {
    let lc = BigRational::from_integer(g.last().unwrap().clone());
    g.iter().map(|c| TElem::Q(BigRational::from_integer(c.clone()) / &lc)).collect()
}

/// Newton interpolation through (j, values[j]), j = 0, 1, ….
fn interpolate(t: &Tower, c: usize, values: &[TElem]) -> Coeffs {
    let n = values.len();
    let mut a = values.to_vec();
    for k in 1..n {
        let inv = t.from_q(c, BigRational::from_integer(BigInt::from(k)).recip());
        for j in (k..n).rev() {
            a[j] = t.mul(c, &t.sub(c, &a[j], &a[j - 1]), &inv);
        }
    }
    let mut p: Coeffs = t.p_trim(c, vec![a[n - 1].clone()]);
    for k in (0..n - 1).rev() {
        let lin = vec![t.from_int(c, -(k as i64)), t.one(c)];
        p = t.p_add(c, &t.p_mul(c, &p, &lin), &[a[k].clone()]);
    }
    p
}

fn shifts() -> impl Iterator<Item = i64> {
    (0i64..).flat_map(|k| if k == 0 { vec![0] } else { vec![k, -k] })
}

/// Norm of g ∈ L_c[Y] down to L_{c-1}[Y], as Res_x(m(x), g(x, Y)).
pub(crate) fn norm(t: &Tower, c: usize, g: &[TElem]) -> Coeffs {
    let b = c - 1;
    let m = t.minpoly(c).unwrap();
    let n = deg(m) * deg(g);
    let values: Vec<TElem> = (0..=n)
        .map(|j| match t.p_eval(c, g, &t.from_int(c, j as i64)) {
            TElem::Alg(v) => t.p_resultant(b, m, &v),
            _ => unreachable!(),
        })
        .collect();
    interpolate(t, b, &values)
}

/// Factors a monic squarefree polynomial over an algebraic level by the norm method.
fn trager(t: &Tower, c: usize, f: &[TElem]) -> Vec<Coeffs> {
    let b = c - 1;
    let alpha = t.generator(c);
    for s in shifts() {
        let sa = t.mul(c, &t.from_int(c, s), &alpha);
        let g = t.p_shift(c, f, &t.neg(c, &sa));
        let nrm = norm(t, c, &g);
        if deg(&t.p_gcd(b, &nrm, &t.p_deriv(b, &nrm))) > 0 {
            continue;
        }
        let parts = factor(t, b, &nrm);
        if parts.len() == 1 {
            return vec![t.p_monic(c, f)];
        }
        return parts
            .into_iter()
            .map(|(nj, _)| {
                let lifted: Coeffs = nj.into_iter().map(|x| t.embed(b, c, x)).collect();
                let h = t.p_gcd(c, &g, &lifted);
                t.p_monic(c, &t.p_shift(c, &h, &sa))
            })
            .collect();
    }
    unreachable!("some shift gives a squarefree norm")
}

