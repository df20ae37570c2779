//! Autoreduced sets, their ranks, and characteristic sets of finite sets.

use std::cmp::Ordering;
use std::collections::BTreeSet;

use crate::diffpoly::{DiffPoly, Ranking, ReducedMode};
use crate::error::{Error, Result};

/// Whether every element is fully reduced with respect to every other one.
pub fn is_autoreduced(set: &[DiffPoly], r: &Ranking) -> Result<bool> {
    if set.iter().any(DiffPoly::is_constant) {
        return Err(Error::ConstantPolynomial);
    }
    for (i, f) in set.iter().enumerate() {
        for (j, g) in set.iter().enumerate() {
            if i != j && !f.is_reduced(g, r, ReducedMode::Fully)? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// An autoreduced set listed by increasing rank.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AutoreducedSet {
    elements: Vec<DiffPoly>,
    ranking: Ranking,
}

impl AutoreducedSet {
    pub fn new(elements: Vec<DiffPoly>, ranking: Ranking) -> Result<Self> {
        if !is_autoreduced(&elements, &ranking)? {
            return Err(Error::NotAutoreduced);
        }
        let mut elements = elements;
        elements.sort_by(|a, b| a.compare_rank(b, &ranking));
        Ok(AutoreducedSet { elements, ranking })
    }

    pub fn elements(&self) -> &[DiffPoly] {
        &self.elements
    }

    pub fn ranking(&self) -> &Ranking {
        &self.ranking
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// Initials and separants of the elements, without repetitions or constants.
    pub fn h_set(&self) -> Vec<DiffPoly> {
        let mut out: Vec<DiffPoly> = Vec::new();
        for a in &self.elements {
            let d = a.decompose(&self.ranking).expect("elements are nonconstant");
            for h in [d.initial, d.separant] {
                if !h.is_constant() && !out.contains(&h) {
                    out.push(h);
                }
            }
        }
        out
    }

    /// Compares set ranks. A proper extension of a set with equal ranks ranks lower.
    pub fn compare_rank(&self, other: &AutoreducedSet) -> Result<Ordering> {
        if self.ranking != other.ranking {
            return Err(Error::RankingMismatch);
        }
        for (a, b) in self.elements.iter().zip(&other.elements) {
            match a.compare_rank(b, &self.ranking) {
                Ordering::Equal => continue,
                o => return Ok(o),
            }
        }
        Ok(other.elements.len().cmp(&self.elements.len()))
    }

    /// Leaders lie in pairwise distinct indeterminates.
    pub fn rosenfeld_applicable(&self) -> bool {
        rosenfeld_applicable(&self.elements, &self.ranking)
    }
}

/// Whether the leaders of `set` lie in pairwise distinct indeterminates.
pub fn rosenfeld_applicable(set: &[DiffPoly], r: &Ranking) -> bool {
    let mut seen = BTreeSet::new();
    set.iter().all(|p| match p.leader(r) {
        Some(u) => seen.insert(u.index),
        None => false,
    })
}

/// Greedy minimal-rank autoreduced subset of `f`.
pub fn characteristic_candidate(f: &[DiffPoly], r: &Ranking) -> Result<AutoreducedSet> {
    if f.iter().any(DiffPoly::is_constant) {
        return Err(Error::ConstantPolynomial);
    }
    let mut sorted: Vec<(String, &DiffPoly)> = f.iter().map(|p| (p.display_with(r).to_string(), p)).collect();
    sorted.sort_by(|a, b| a.1.compare_rank(b.1, r).then_with(|| a.0.cmp(&b.0)));
    let mut chosen: Vec<DiffPoly> = Vec::new();
    for (_, p) in sorted {
        let mut ok = true;
        for c in &chosen {
            if !p.is_reduced(c, r, ReducedMode::Fully)? || !c.is_reduced(p, r, ReducedMode::Fully)? {
                ok = false;
                break;
            }
        }
        if ok {
            chosen.push(p.clone());
        }
    }
    AutoreducedSet::new(chosen, r.clone())
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::diffpoly::{DiffRing, RankingKind};
    use crate::ground::{FieldDescriptor, FieldElem};
    use crate::testing::{q_t, random_diffpoly};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn y(ring: &Arc<DiffRing>, i: usize, k: u32) -> DiffPoly {
        DiffPoly::derivative(ring, i, k)
    }

    fn pair() -> (Arc<DiffRing>, DiffPoly, DiffPoly) {
        let r = DiffRing::new(FieldDescriptor::rationals(), &["y1", "y2"]).unwrap();
        let a = &y(&r, 0, 1) + &y(&r, 1, 0);
        let b = &y(&r, 1, 1) + &y(&r, 0, 0);
        (r, a, b)
    }

    #[test]
    fn autoreduced_depends_on_ranking() {
        let (_, a, b) = pair();
        let set = [a.clone(), b.clone()];
        assert!(is_autoreduced(&set, &Ranking::orderly(2)).unwrap());
        for order in [vec![0, 1], vec![1, 0]] {
            let elim = Ranking::new(RankingKind::Elimination, order).unwrap();
            assert!(!is_autoreduced(&set, &elim).unwrap());
        }
        assert!(is_autoreduced(&[a], &Ranking::orderly(2)).unwrap());
    }

    #[test]
    fn set_rank_examples() {
        let (_, a, b) = pair();
        let up = Ranking::orderly(2);
        let big = AutoreducedSet::new(vec![a.clone(), b.clone()], up.clone()).unwrap();
        let small = AutoreducedSet::new(vec![a.clone()], up.clone()).unwrap();
        assert_eq!(big.compare_rank(&small).unwrap(), Ordering::Less);
        assert_eq!(big.compare_rank(&big).unwrap(), Ordering::Equal);

        let down = Ranking::new(RankingKind::Orderly, vec![1, 0]).unwrap();
        let big = AutoreducedSet::new(vec![b, a.clone()], down.clone()).unwrap();
        assert_eq!(big.elements()[0].leader(&down).unwrap().index, 1);
        let small = AutoreducedSet::new(vec![a], down).unwrap();
        assert_eq!(big.compare_rank(&small).unwrap(), Ordering::Less);
        assert_eq!(big.compare_rank(&AutoreducedSet::new(vec![], up).unwrap()), Err(Error::RankingMismatch));
    }

    #[test]
    fn candidates() {
        let r = DiffRing::new(FieldDescriptor::rationals(), &["y"]).unwrap();
        let rk = r.default_ranking();
        let p = &y(&r, 0, 1).pow(2) + &y(&r, 0, 0);
        let q = &(&DiffPoly::from_int(&r, 2) * &y(&r, 0, 2)) + &DiffPoly::one(&r);
        let c = characteristic_candidate(&[q, p.clone()], &rk).unwrap();
        assert_eq!(c.elements(), &[p]);

        let f = q_t();
        let r = DiffRing::new(f.clone(), &["Y"]).unwrap();
        let t = DiffPoly::constant(&r, FieldElem::generator(&f, 0));
        let a = &y(&r, 0, 0).pow(2) - &t;
        let c = characteristic_candidate(&[y(&r, 0, 0).pow(3), a.clone()], &r.default_ranking()).unwrap();
        assert_eq!(c.elements(), &[a]);
    }

    #[test]
    fn rosenfeld_shapes() {
        let (_, a, b) = pair();
        assert!(rosenfeld_applicable(&[a, b], &Ranking::orderly(2)));
        let r = DiffRing::new(FieldDescriptor::rationals(), &["y"]).unwrap();
        let p = &y(&r, 0, 1).pow(2) + &y(&r, 0, 0);
        let q = &y(&r, 0, 2).pow(3) + &y(&r, 0, 1);
        assert!(!rosenfeld_applicable(&[p, q], &r.default_ranking()));
    }

    fn subsets(f: &[DiffPoly]) -> Vec<Vec<DiffPoly>> {
        (0u32..(1 << f.len()))
            .map(|mask| (0..f.len()).filter(|i| mask >> i & 1 == 1).map(|i| f[i].clone()).collect())
            .collect()
    }

    #[test]
    fn candidate_is_minimal_among_autoreduced_subsets() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let ring = DiffRing::new(FieldDescriptor::rationals(), &["u", "v"]).unwrap();
        for rk in [Ranking::orderly(2), Ranking::elimination(2)] {
            for n in 1..=6 {
                for _ in 0..15 {
                    let f: Vec<DiffPoly> = (0..n)
                        .map(|_| random_diffpoly(&mut rng, &ring, 3, 2, 2))
                        .filter(|p| !p.is_constant())
                        .collect();
                    if f.is_empty() {
                        continue;
                    }
                    let c = characteristic_candidate(&f, &rk).unwrap();
                    assert!(is_autoreduced(c.elements(), &rk).unwrap());
                    for s in subsets(&f) {
                        if is_autoreduced(&s, &rk).unwrap() {
                            let other = AutoreducedSet::new(s, rk.clone()).unwrap();
                            assert_ne!(other.compare_rank(&c).unwrap(), Ordering::Less);
                        }
                    }
                }
            }
        }
    }
}
