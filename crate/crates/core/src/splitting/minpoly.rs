//! Minimal polynomials of tower elements over a prefix of the tower.

use super::tower::{Coeffs, LevelKind, TElem, Tower};

/// The coordinates of `a ∈ L_lvl` over L_base (levels base+1..=lvl algebraic).
fn coordinates(t: &Tower, lvl: usize, a: &TElem, base: usize) -> Vec<TElem> {
    if lvl == base {
        return vec![a.clone()];
    }
    let n = t.minpoly(lvl).unwrap().len() - 1;
    let v = match a {
        TElem::Alg(v) => v,
        _ => unreachable!(),
    };
    let zero = t.zero(lvl - 1);
    (0..n)
        .flat_map(|i| coordinates(t, lvl - 1, v.get(i).unwrap_or(&zero), base))
        .collect()
}

/// Monic minimal polynomial over L_base of `a ∈ L_lvl`, or the name of a
/// transcendental level in between.
pub(crate) fn minimal_polynomial(t: &Tower, lvl: usize, a: &TElem, base: usize) -> Result<Coeffs, String> {
    let (l, a) = t.descend(lvl, a, base);
    if l == base {
        return Ok(vec![t.neg(base, &a), t.one(base)]);
    }
    if let Some(k) = (base + 1..=l).find(|&k| matches!(t.kind(k), LevelKind::Transcendental)) {
        return Err(t.levels[k - 1].name.clone());
    }
    // rows: (reduced coordinate vector, pivot, combination of powers of a)
    let mut rows: Vec<(Vec<TElem>, usize, Vec<TElem>)> = Vec::new();
    let mut power = t.one(l);
    let mut k = 0;
    loop {
        let mut vec = coordinates(t, l, &power, base);
        let mut combo = vec![t.zero(base); k + 1];
        combo[k] = t.one(base);
        for (row, pivot, rc) in &rows {
            if t.is_zero(base, &vec[*pivot]) {
                continue;
            }
            let f = t.div(base, &vec[*pivot], &row[*pivot]);
            for (x, y) in vec.iter_mut().zip(row) {
                *x = t.sub(base, x, &t.mul(base, &f, y));
            }
            for (x, y) in combo.iter_mut().zip(rc) {
                *x = t.sub(base, x, &t.mul(base, &f, y));
            }
        }
        match vec.iter().position(|x| !t.is_zero(base, x)) {
            None => return Ok(combo),
            Some(p) => rows.push((vec, p, combo)),
        }
        power = t.mul(l, &power, &a);
        k += 1;
    }
}
