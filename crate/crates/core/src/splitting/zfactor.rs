//! Factorization in ℤ[x].
//!
//! [`factor_kronecker`] is Kronecker's interpolation method. It is exact and
//! simple but its divisor enumeration grows quickly with degree and height,
//! so [`factor_integer_poly`] switches to [`factor_zassenhaus`] (modular
//! factorization, Hensel lifting, subset recombination) for larger inputs.
//! Polynomials are coefficient vectors, lowest degree first.

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub type ZVec = Vec<BigInt>;

pub fn trim(mut v: ZVec) -> ZVec {
    while v.last().map_or(false, Zero::is_zero) {
        v.pop();
    }
    v
}

pub fn degree(v: &[BigInt]) -> usize {
    v.len().saturating_sub(1)
}

pub fn mul(a: &[BigInt], b: &[BigInt]) -> ZVec {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(out)
}

pub fn content(a: &[BigInt]) -> BigInt {
    a.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
}

/// Divides by the content and makes the leading coefficient positive.
pub fn primitive(a: &[BigInt]) -> ZVec {
    let mut c = content(a);
    if c.is_zero() {
        return Vec::new();
    }
    if a.last().unwrap().is_negative() {
        c = -c;
    }
    a.iter().map(|x| x / &c).collect()
}

/// a / b over ℤ when exact.
pub fn div_exact(a: &[BigInt], b: &[BigInt]) -> Option<ZVec> {
    assert!(!b.is_empty());
    let mut r = trim(a.to_vec());
    if r.is_empty() {
        return Some(Vec::new());
    }
    if r.len() < b.len() {
        return None;
    }
    let db = b.len() - 1;
    let lb = &b[db];
    let mut q = vec![BigInt::zero(); r.len() - db];
    while r.len() > db {
        let k = r.len() - 1;
        let (c, rem) = r[k].div_rem(lb);
        if !rem.is_zero() {
            return None;
        }
        for (i, bi) in b.iter().enumerate() {
            r[i + k - db] -= &c * bi;
        }
        q[k - db] = c;
        r = trim(r);
        if r.len() > k {
            return None;
        }
    }
    if r.is_empty() {
        Some(trim(q))
    } else {
        None
    }
}

pub fn eval(a: &[BigInt], x: &BigInt) -> BigInt {
    a.iter().rev().fold(BigInt::zero(), |acc, c| acc * x + c)
}

fn small_divisors(n: &BigInt) -> Vec<BigInt> {
    let n = n.abs();
    let mut primes: Vec<(BigInt, u32)> = Vec::new();
    let mut m = n.clone();
    let mut d = BigInt::from(2);
    while &d * &d <= m {
        let mut e = 0;
        while (&m % &d).is_zero() {
            m /= &d;
            e += 1;
        }
        if e > 0 {
            primes.push((d.clone(), e));
        }
        d += 1;
    }
    if m > BigInt::one() {
        primes.push((m, 1));
    }
    let mut divs = vec![BigInt::one()];
    for (p, e) in primes {
        let mut next = Vec::new();
        for d in &divs {
            let mut pk = BigInt::one();
            for _ in 0..=e {
                next.push(d * &pk);
                pk *= &p;
            }
        }
        divs = next;
    }
    divs.sort();
    divs
}

/// The interpolation points 0, 1, -1, 2, -2, …
fn kronecker_points() -> impl Iterator<Item = BigInt> {
    (0i64..).flat_map(|k| if k == 0 { vec![0] } else { vec![k, -k] }).map(BigInt::from)
}

/// Lagrange basis over the given points, each basis polynomial lowest degree first.
fn lagrange_basis(points: &[BigInt]) -> Vec<Vec<BigRational>> {
    let n = points.len();
    (0..n)
        .map(|j| {
            let mut poly = vec![BigRational::one()];
            let mut denom = BigInt::one();
            for k in 0..n {
                if k == j {
                    continue;
                }
                let mut next = vec![BigRational::zero(); poly.len() + 1];
                for (i, c) in poly.iter().enumerate() {
                    next[i + 1] += c;
                    next[i] -= c * BigRational::from_integer(points[k].clone());
                }
                poly = next;
                denom *= &points[j] - &points[k];
            }
            let d = BigRational::from_integer(denom);
            poly.into_iter().map(|c| c / &d).collect()
        })
        .collect()
}

/// One nontrivial factor of `f` (degree ≥ 2, primitive) found by interpolation, if any.
fn kronecker_split(f: &[BigInt]) -> Option<ZVec> {
    let n = degree(f);
    let lc = f.last().unwrap();
    let mut points: Vec<BigInt> = Vec::new();
    let mut values: Vec<BigInt> = Vec::new();
    let mut pts = kronecker_points();
    for s in 1..=n / 2 {
        while points.len() < s + 1 {
            let a = pts.next().unwrap();
            let v = eval(f, &a);
            if v.is_zero() {
                return Some(vec![-a, BigInt::one()]);
            }
            points.push(a);
            values.push(v);
        }
        let basis = lagrange_basis(&points);
        let choices: Vec<Vec<BigInt>> = values
            .iter()
            .enumerate()
            .map(|(j, v)| {
                let ds = small_divisors(v);
                if j == 0 {
                    ds
                } else {
                    let mut both = Vec::with_capacity(2 * ds.len());
                    for d in ds {
                        both.push(d.clone());
                        both.push(-d);
                    }
                    both
                }
            })
            .collect();
        let mut idx = vec![0usize; s + 1];
        loop {
            let mut g = vec![BigRational::zero(); s + 1];
            for (j, b) in basis.iter().enumerate() {
                let v = BigRational::from_integer(choices[j][idx[j]].clone());
                for (i, c) in b.iter().enumerate() {
                    g[i] += c * &v;
                }
            }
            if g.iter().all(|c| c.is_integer()) {
                let g = trim(g.into_iter().map(|c| c.to_integer()).collect());
                if degree(&g) >= 1 && (lc % g.last().unwrap()).is_zero() && div_exact(f, &g).is_some() {
                    return Some(primitive(&g));
                }
            }
            let mut j = 0;
            loop {
                if j > s {
                    break;
                }
                idx[j] += 1;
                if idx[j] < choices[j].len() {
                    break;
                }
                idx[j] = 0;
                j += 1;
            }
            if j > s {
                break;
            }
        }
    }
    None
}

/// Irreducible factors (with repetition) of a primitive `f` by Kronecker's method.
pub fn factor_kronecker(f: &[BigInt]) -> Vec<ZVec> {
    let mut out = Vec::new();
    let mut stack = vec![primitive(f)];
    while let Some(g) = stack.pop() {
        if degree(&g) == 0 {
            continue;
        }
        if degree(&g) == 1 {
            out.push(g);
            continue;
        }
        match kronecker_split(&g) {
            Some(h) => {
                let rest = div_exact(&g, &h).unwrap();
                stack.push(primitive(&rest));
                stack.push(h);
            }
            None => out.push(g),
        }
    }
    out.sort();
    out
}

// ---- arithmetic over F_p ------------------------------------------------------

type Fp = Vec<u64>;

fn fp_trim(mut v: Fp) -> Fp {
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn powmod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1;
    while e > 0 {
        if e & 1 == 1 {
            acc = mulmod(acc, a, p);
        }
        a = mulmod(a, a, p);
        e >>= 1;
    }
    acc
}

fn invmod(a: u64, p: u64) -> u64 {
    powmod(a, p - 2, p)
}

fn fp_from(a: &[BigInt], p: u64) -> Fp {
    let pb = BigInt::from(p);
    fp_trim(a.iter().map(|c| c.mod_floor(&pb).to_u64().unwrap()).collect())
}

fn fp_sub(a: &[u64], b: &[u64], p: u64) -> Fp {
    let n = a.len().max(b.len());
    fp_trim(
        (0..n)
            .map(|i| {
                let x = *a.get(i).unwrap_or(&0);
                let y = *b.get(i).unwrap_or(&0);
                (x + p - y) % p
            })
            .collect(),
    )
}

fn fp_mul(a: &[u64], b: &[u64], p: u64) -> Fp {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + mulmod(x, y, p)) % p;
        }
    }
    fp_trim(out)
}

fn fp_divrem(a: &[u64], b: &[u64], p: u64) -> (Fp, Fp) {
    let db = b.len() - 1;
    let inv = invmod(b[db], p);
    let mut r = a.to_vec();
    if r.len() <= db {
        return (Vec::new(), fp_trim(r));
    }
    let mut q = vec![0u64; r.len() - db];
    while r.len() > db {
        let k = r.len() - 1;
        let c = mulmod(r[k], inv, p);
        for (i, &bi) in b.iter().enumerate() {
            r[i + k - db] = (r[i + k - db] + p - mulmod(c, bi, p)) % p;
        }
        q[k - db] = c;
        r.pop();
        r = fp_trim(r);
    }
    (fp_trim(q), r)
}

fn fp_monic(a: &[u64], p: u64) -> Fp {
    match a.last() {
        None => Vec::new(),
        Some(&lc) => {
            let inv = invmod(lc, p);
            a.iter().map(|&c| mulmod(c, inv, p)).collect()
        }
    }
}

fn fp_gcd(a: &[u64], b: &[u64], p: u64) -> Fp {
    let (mut x, mut y) = (fp_trim(a.to_vec()), fp_trim(b.to_vec()));
    while !y.is_empty() {
        let r = fp_divrem(&x, &y, p).1;
        x = y;
        y = r;
    }
    fp_monic(&x, p)
}

/// (s, t) with s·a + t·b = 1 over F_p, for coprime a and b.
fn fp_ext_gcd(a: &[u64], b: &[u64], p: u64) -> (Fp, Fp) {
    let (mut r0, mut r1) = (a.to_vec(), b.to_vec());
    let (mut s0, mut s1): (Fp, Fp) = (vec![1], Vec::new());
    let (mut t0, mut t1): (Fp, Fp) = (Vec::new(), vec![1]);
    while !r1.is_empty() {
        let (q, r) = fp_divrem(&r0, &r1, p);
        let s = fp_sub(&s0, &fp_mul(&q, &s1, p), p);
        let t = fp_sub(&t0, &fp_mul(&q, &t1, p), p);
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s);
        t0 = std::mem::replace(&mut t1, t);
    }
    let inv = invmod(*r0.last().unwrap(), p);
    let sc = |v: &[u64]| v.iter().map(|&c| mulmod(c, inv, p)).collect::<Fp>();
    (sc(&s0), sc(&t0))
}

fn fp_powmod(base: &[u64], mut e: BigInt, m: &[u64], p: u64) -> Fp {
    let mut acc: Fp = vec![1];
    let mut b = fp_divrem(base, m, p).1;
    let two = BigInt::from(2);
    while !e.is_zero() {
        if e.is_odd() {
            acc = fp_divrem(&fp_mul(&acc, &b, p), m, p).1;
        }
        e /= &two;
        if !e.is_zero() {
            b = fp_divrem(&fp_mul(&b, &b, p), m, p).1;
        }
    }
    acc
}


/// Distinct-degree factorization of a monic squarefree polynomial.
fn fp_ddf(f: &[u64], p: u64) -> Vec<(Fp, usize)> {
    let mut out = Vec::new();
    let mut f = f.to_vec();
    let x: Fp = vec![0, 1];
    let mut h = x.clone();
    let mut d = 0;
    while degree_u(&f) >= 2 * (d + 1) {
        d += 1;
        h = fp_powmod(&h, BigInt::from(p), &f, p);
        let g = fp_gcd(&f, &fp_sub(&h, &x, p), p);
        if degree_u(&g) > 0 {
            f = fp_divrem(&f, &g, p).0;
            h = fp_divrem(&h, &f, p).1;
            out.push((g, d));
        }
    }
    if degree_u(&f) > 0 {
        let deg = degree_u(&f);
        out.push((f, deg));
    }
    out
}

fn degree_u(v: &[u64]) -> usize {
    v.len().saturating_sub(1)
}

/// Equal-degree splitting (Cantor–Zassenhaus) of a product of degree-`d` irreducibles.
fn fp_edf(f: &[u64], d: usize, p: u64, rng: &mut ChaCha8Rng) -> Vec<Fp> {
    let n = degree_u(f);
    if n == d {
        return vec![fp_monic(f, p)];
    }
    let e: BigInt = (BigInt::from(p).pow(d as u32) - 1) / 2;
    loop {
        let a: Fp = fp_trim((0..n).map(|_| rng.gen_range(0..p)).collect());
        if degree_u(&a) == 0 {
            continue;
        }
        let b = fp_sub(&fp_powmod(&a, e.clone(), f, p), &[1], p);
        let g = fp_gcd(f, &b, p);
        let dg = degree_u(&g);
        if dg > 0 && dg < n {
            let h = fp_divrem(f, &g, p).0;
            let mut out = fp_edf(&g, d, p, rng);
            out.extend(fp_edf(&h, d, p, rng));
            return out;
        }
    }
}

fn primes_from(start: u64) -> impl Iterator<Item = u64> {
    (start..).filter(|&n| n > 2 && (2..).take_while(|d| d * d <= n).all(|d| n % d != 0))
}

// ---- Hensel lifting ------------------------------------------------------------

fn zm(a: &[BigInt], m: &BigInt) -> ZVec {
    trim(a.iter().map(|c| c.mod_floor(m)).collect())
}

fn zm_sub(a: &[BigInt], b: &[BigInt], m: &BigInt) -> ZVec {
    let n = a.len().max(b.len());
    let z = BigInt::zero();
    zm(&(0..n).map(|i| a.get(i).unwrap_or(&z) - b.get(i).unwrap_or(&z)).collect::<Vec<_>>(), m)
}

fn zm_add(a: &[BigInt], b: &[BigInt], m: &BigInt) -> ZVec {
    let n = a.len().max(b.len());
    let z = BigInt::zero();
    zm(&(0..n).map(|i| a.get(i).unwrap_or(&z) + b.get(i).unwrap_or(&z)).collect::<Vec<_>>(), m)
}

fn zm_mul(a: &[BigInt], b: &[BigInt], m: &BigInt) -> ZVec {
    zm(&mul(a, b), m)
}

/// Division by a monic `b` modulo m.
fn zm_divrem(a: &[BigInt], b: &[BigInt], m: &BigInt) -> (ZVec, ZVec) {
    let db = b.len() - 1;
    let mut r = zm(a, m);
    if r.len() <= db {
        return (Vec::new(), r);
    }
    let mut q = vec![BigInt::zero(); r.len() - db];
    while r.len() > db {
        let k = r.len() - 1;
        let c = r[k].clone();
        for (i, bi) in b.iter().enumerate() {
            r[i + k - db] = (&r[i + k - db] - &c * bi).mod_floor(m);
        }
        q[k - db] = c;
        r = trim(r);
    }
    (trim(q), r)
}

fn to_z(a: &[u64]) -> ZVec {
    a.iter().map(|&c| BigInt::from(c)).collect()
}

/// Lifts f ≡ g·h (mod p), h monic, to modulus ≥ `target`; returns (g, h) modulo `target`.
fn hensel_pair(f: &[BigInt], g: &[u64], h: &[u64], p: u64, target: &BigInt) -> (ZVec, ZVec) {
    let (s, t) = fp_ext_gcd(g, h, p);
    let (mut g, mut h, mut s, mut t) = (to_z(g), to_z(h), to_z(&s), to_z(&t));
    let mut m = BigInt::from(p);
    while &m < target {
        let m2 = &m * &m;
        let e = zm_sub(f, &zm_mul(&g, &h, &m2), &m2);
        let (q, r) = zm_divrem(&zm_mul(&s, &e, &m2), &h, &m2);
        let g2 = zm_add(&zm_add(&g, &zm_mul(&t, &e, &m2), &m2), &zm_mul(&q, &g, &m2), &m2);
        let h2 = zm_add(&h, &r, &m2);
        let b = zm_sub(&zm_add(&zm_mul(&s, &g2, &m2), &zm_mul(&t, &h2, &m2), &m2), &[BigInt::one()], &m2);
        let (c, d) = zm_divrem(&zm_mul(&s, &b, &m2), &h2, &m2);
        let s2 = zm_sub(&s, &d, &m2);
        let t2 = zm_sub(&zm_sub(&t, &zm_mul(&t, &b, &m2), &m2), &zm_mul(&c, &g2, &m2), &m2);
        g = g2;
        h = h2;
        s = s2;
        t = t2;
        m = m2;
    }
    (zm(&g, target), zm(&h, target))
}

/// Lifts monic modular factors of f (with f ≡ lc·Π factors mod p) to monic factors mod `target`.
fn hensel_lift(f: &[BigInt], factors: &[Fp], p: u64, target: &BigInt) -> Vec<ZVec> {
    if factors.len() == 1 {
        let lc = f.last().unwrap().mod_floor(target);
        let inv = lc.modinv(target).expect("leading coefficient is a unit");
        return vec![zm(&f.iter().map(|c| c * &inv).collect::<Vec<_>>(), target)];
    }
    let k = factors.len() / 2;
    let pb = p;
    let lc = fp_from(&[f.last().unwrap().clone()], pb);
    let mut g: Fp = lc;
    for a in &factors[..k] {
        g = fp_mul(&g, a, pb);
    }
    let mut h: Fp = vec![1];
    for b in &factors[k..] {
        h = fp_mul(&h, b, pb);
    }
    let (g_l, h_l) = hensel_pair(f, &g, &h, pb, target);
    let mut out = hensel_lift(&g_l, &factors[..k], pb, target);
    out.extend(hensel_lift(&h_l, &factors[k..], pb, target));
    out
}

fn symmetric(a: &[BigInt], m: &BigInt) -> ZVec {
    let half = m / 2;
    trim(
        a.iter()
            .map(|c| {
                let c = c.mod_floor(m);
                if c > half {
                    c - m
                } else {
                    c
                }
            })
            .collect(),
    )
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    go(0, n, k, &mut cur, &mut out);
    out
}

/// Irreducible factors of a primitive squarefree `f` with positive leading coefficient.
pub fn factor_zassenhaus(f: &[BigInt]) -> Vec<ZVec> {
    let f = primitive(f);
    let n = degree(&f);
    if n <= 1 {
        return vec![f];
    }
    let lc = f.last().unwrap().clone();
    let df: ZVec = f.iter().enumerate().skip(1).map(|(i, c)| c * BigInt::from(i)).collect();
    let mut best: Option<(u64, Vec<(Fp, usize)>)> = None;
    let mut tried = 0;
    for p in primes_from(3) {
        if (&lc % BigInt::from(p)).is_zero() {
            continue;
        }
        let fp = fp_monic(&fp_from(&f, p), p);
        if degree_u(&fp_gcd(&fp, &fp_from(&df, p), p)) > 0 {
            continue;
        }
        let ddf = fp_ddf(&fp, p);
        let count: usize = ddf.iter().map(|(g, d)| degree_u(g) / d).sum();
        if best.as_ref().map_or(true, |(_, b)| count < b.iter().map(|(g, d)| degree_u(g) / d).sum()) {
            best = Some((p, ddf));
        }
        tried += 1;
        if tried >= 5 || count == 1 {
            break;
        }
    }
    let (p, ddf) = best.expect("some prime keeps f squarefree");
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    let mut modular: Vec<Fp> = Vec::new();
    for (g, d) in ddf {
        modular.extend(fp_edf(&g, d, p, &mut rng));
    }
    if modular.len() == 1 {
        return vec![f];
    }
    modular.sort();
    // Mignotte: every factor of lc·g has coefficients below |lc|·2^n·‖f‖₂.
    let norm2: BigInt = f.iter().map(|c| c * c).sum::<BigInt>().sqrt() + 1;
    let bound = BigInt::from(2) * lc.abs() * (BigInt::one() << n) * norm2;
    let mut target = BigInt::from(p);
    while target <= bound {
        target *= p;
    }
    let mut lifted = hensel_lift(&f, &modular, p, &target);
    let mut rest = f.clone();
    let mut found = Vec::new();
    let mut size = 1;
    while 2 * size <= lifted.len() {
        let mut hit = None;
        for combo in combinations(lifted.len(), size) {
            let lc_rest = rest.last().unwrap().clone();
            let mut g = vec![lc_rest.clone()];
            for &i in &combo {
                g = zm_mul(&g, &lifted[i], &target);
            }
            let g = primitive(&symmetric(&g, &target));
            if let Some(q) = div_exact(&rest, &g) {
                hit = Some((combo, g, q));
                break;
            }
        }
        match hit {
            Some((combo, g, q)) => {
                found.push(g);
                rest = primitive(&q);
                lifted = lifted
                    .into_iter()
                    .enumerate()
                    .filter(|(i, _)| !combo.contains(i))
                    .map(|(_, v)| v)
                    .collect();
            }
            None => size += 1,
        }
    }
    if degree(&rest) > 0 {
        found.push(rest);
    }
    found.sort();
    found
}

/// Squarefree decomposition in ℤ[x] of a primitive polynomial: (part, multiplicity).
pub fn squarefree(f: &[BigInt]) -> Vec<(ZVec, u32)> {
    let to_q = |v: &[BigInt]| -> Vec<BigRational> { v.iter().map(|c| BigRational::from_integer(c.clone())).collect() };
    let from_q = |v: &[BigRational]| -> ZVec {
        let den = v.iter().fold(BigInt::one(), |l, c| l.lcm(c.denom()));
        primitive(&v.iter().map(|c| (c * BigRational::from_integer(den.clone())).to_integer()).collect::<Vec<_>>())
    };
    let t = super::tower::Tower::default();
    let wrap = |v: Vec<BigRational>| -> super::tower::Coeffs { v.into_iter().map(super::tower::TElem::Q).collect() };
    let unwrap = |v: &[super::tower::TElem]| -> Vec<BigRational> {
        v.iter()
            .map(|e| match e {
                super::tower::TElem::Q(q) => q.clone(),
                _ => unreachable!(),
            })
            .collect()
    };
    let parts = super::yun(&t, 0, &wrap(to_q(f)));
    parts.into_iter().map(|(p, e)| (from_q(&unwrap(&p)), e)).collect()
}

/// Complete factorization of a nonzero polynomial: (sign·content, [(irreducible primitive factor, multiplicity)]).
pub fn factor_integer_poly(f: &[BigInt]) -> (BigInt, Vec<(ZVec, u32)>) {
    let f = trim(f.to_vec());
    assert!(!f.is_empty(), "factoring the zero polynomial");
    let mut unit = content(&f);
    if f.last().unwrap().sign() == Sign::Minus {
        unit = -unit;
    }
    let prim = primitive(&f);
    let mut out: Vec<(ZVec, u32)> = Vec::new();
    if degree(&prim) == 0 {
        return (unit, out);
    }
    for (part, e) in squarefree(&prim) {
        for g in factor_squarefree(&part) {
            out.push((g, e));
        }
    }
    out.sort();
    (unit, out)
}

fn height_bits(f: &[BigInt]) -> u64 {
    f.iter().map(|c| c.bits()).max().unwrap_or(0)
}

/// Irreducible factors of a primitive squarefree polynomial.
pub fn factor_squarefree(f: &[BigInt]) -> Vec<ZVec> {
    if degree(f) <= 1 {
        return vec![primitive(f)];
    }
    if degree(f) <= 6 && height_bits(f) <= 16 {
        factor_kronecker(f)
    } else {
        factor_zassenhaus(f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(v: &[i64]) -> ZVec {
        v.iter().map(|&c| BigInt::from(c)).collect()
    }

    #[test]
    fn sophie_germain() {
        let f = z(&[4, 0, 0, 0, 1]);
        let expected = vec![z(&[2, -2, 1]), z(&[2, 2, 1])];
        assert_eq!(factor_kronecker(&f), expected);
        assert_eq!(factor_zassenhaus(&f), expected);
    }

    #[test]
    fn irreducible_quadratic() {
        assert_eq!(factor_kronecker(&z(&[1, 0, 1])), vec![z(&[1, 0, 1])]);
        assert_eq!(factor_zassenhaus(&z(&[-2, 0, 1])), vec![z(&[-2, 0, 1])]);
    }

    #[test]
    fn swinnerton_dyer_like_product() {
        // (x^4 - 10x^2 + 1)(x^3 - 2)(2x + 3)
        let a = z(&[1, 0, -10, 0, 1]);
        let b = z(&[-2, 0, 0, 1]);
        let c = z(&[3, 2]);
        let f = mul(&mul(&a, &b), &c);
        let mut expected = vec![a, b, c];
        expected.sort();
        assert_eq!(factor_zassenhaus(&f), expected);
    }

    #[test]
    fn multiplicities() {
        let f = mul(&mul(&z(&[-1, 1]), &z(&[-1, 1])), &z(&[1, 0, 1]));
        let f: ZVec = f.iter().map(|c| c * BigInt::from(-6)).collect();
        let (unit, fac) = factor_integer_poly(&f);
        assert_eq!(unit, BigInt::from(-6));
        assert_eq!(fac, vec![(z(&[-1, 1]), 2), (z(&[1, 0, 1]), 1)]);
    }
}
