//! Differential pseudo-division with exact certificates.

mod quotient;

use std::collections::BTreeMap;

use serde::Serialize;

use crate::charsets::is_autoreduced;
use crate::diffpoly::{Derivative, DiffPoly, Ranking, ReducedMode};
use crate::error::{Error, Result};

pub use quotient::{QuotientElem, QuotientRing};

/// Default number of elementary subtraction steps before giving up.
pub const DEFAULT_STEP_BUDGET: u64 = 200_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum FactorKind {
    Initial,
    Separant,
}

/// One term `coefficient · δ^theta(A_divisor)` of a certificate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CombinationTerm {
    pub coefficient: DiffPoly,
    pub divisor: usize,
    pub theta: u32,
}

/// Witnesses `multiplier · f = Σ coefficient · δ^θ(A_i) + remainder`.
#[derive(Clone, Debug)]
pub struct ReductionCertificate {
    pub input: DiffPoly,
    pub divisors: Vec<DiffPoly>,
    pub ranking: Ranking,
    pub multiplier: DiffPoly,
    /// (kind, divisor index, exponent) with the multiplier equal to their product.
    pub multiplier_factors: Vec<(FactorKind, usize, u32)>,
    pub combination: Vec<CombinationTerm>,
    pub remainder: DiffPoly,
}

impl ReductionCertificate {
    /// Expands the identity and checks every structural claim.
    pub fn verify(&self) -> bool {
        let ring = self.input.ring();
        let mut m = DiffPoly::one(ring);
        for &(kind, i, e) in &self.multiplier_factors {
            let Some(a) = self.divisors.get(i) else { return false };
            let Ok(d) = a.decompose(&self.ranking) else { return false };
            let base = match kind {
                FactorKind::Initial => d.initial,
                FactorKind::Separant => d.separant,
            };
            m = &m * &base.pow(e);
        }
        if m != self.multiplier {
            return false;
        }
        let mut rhs = self.remainder.clone();
        for t in &self.combination {
            let Some(a) = self.divisors.get(t.divisor) else { return false };
            rhs = &rhs + &(&t.coefficient * &a.derive_n(t.theta));
        }
        &self.multiplier * &self.input == rhs
    }

    /// Whether the remainder is reduced with respect to every divisor.
    pub fn remainder_is_reduced(&self, mode: ReducedMode) -> bool {
        self.divisors
            .iter()
            .all(|a| self.remainder.is_reduced(a, &self.ranking, mode).unwrap_or(false))
    }

    /// Text form of the identity.
    pub fn identity_text(&self) -> String {
        let r = &self.ranking;
        let mut rhs: Vec<String> = self
            .combination
            .iter()
            .map(|t| {
                let a = format!("A{}", t.divisor + 1);
                let theta = match t.theta {
                    0 => a,
                    1 => format!("δ({a})"),
                    k => format!("δ^{k}({a})"),
                };
                format!("({})*{theta}", t.coefficient.display_with(r))
            })
            .collect();
        rhs.push(format!("({})", self.remainder.display_with(r)));
        format!(
            "({})*({}) = {}",
            self.multiplier.display_with(r),
            self.input.display_with(r),
            rhs.join(" + ")
        )
    }
}

/// Resource limits for a reduction.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ReduceOptions {
    pub step_budget: u64,
}

impl Default for ReduceOptions {
    fn default() -> Self {
        ReduceOptions {
            step_budget: DEFAULT_STEP_BUDGET,
        }
    }
}

struct Reducer<'a> {
    divisors: &'a [DiffPoly],
    ranking: &'a Ranking,
    current: DiffPoly,
    multiplier: DiffPoly,
    exponents: BTreeMap<(FactorKind, usize), u32>,
    combination: BTreeMap<(usize, u32), DiffPoly>,
    steps: u64,
    budget: u64,
}

impl<'a> Reducer<'a> {
    fn new(f: &DiffPoly, divisors: &'a [DiffPoly], ranking: &'a Ranking, budget: u64) -> Self {
        Reducer {
            divisors,
            ranking,
            current: f.clone(),
            multiplier: DiffPoly::one(f.ring()),
            exponents: BTreeMap::new(),
            combination: BTreeMap::new(),
            steps: 0,
            budget,
        }
    }

    /// current ← factor·current − c·δ^θ(A_i), or current − (c/factor)·δ^θ(A_i) when factor ∈ K.
    fn step(&mut self, kind: FactorKind, i: usize, factor: &DiffPoly, c: DiffPoly, theta: u32) -> Result<()> {
        self.steps += 1;
        if self.steps > self.budget {
            return Err(Error::BudgetExceeded(self.budget));
        }
        let c = match factor.as_constant() {
            Some(k) => c.div_constant(&k)?,
            None => {
                self.current = factor * &self.current;
                self.multiplier = factor * &self.multiplier;
                for v in self.combination.values_mut() {
                    *v = factor * &*v;
                }
                *self.exponents.entry((kind, i)).or_insert(0) += 1;
                c
            }
        };
        let prolonged = self.divisors[i].derive_n(theta);
        self.current = &self.current - &(&c * &prolonged);
        let slot = self
            .combination
            .entry((i, theta))
            .or_insert_with(|| DiffPoly::zero(c.ring()));
        *slot = &*slot + &c;
        if slot.is_zero() {
            self.combination.remove(&(i, theta));
        }
        Ok(())
    }

    /// The highest derivative of `current` reducible by some divisor, with that divisor.
    fn offender(&self, partial_only: bool) -> Result<Option<(Derivative, usize)>> {
        let mut ranks = Vec::with_capacity(self.divisors.len());
        for a in self.divisors {
            ranks.push(a.rank(self.ranking).ok_or(Error::ConstantPolynomial)?);
        }
        let mut derivs: Vec<Derivative> = self.current.derivatives().into_iter().collect();
        derivs.sort_by(|a, b| self.ranking.compare(*b, *a));
        for v in derivs {
            for (i, &(u, d)) in ranks.iter().enumerate() {
                if v.is_proper_derivative_of(u) {
                    return Ok(Some((v, i)));
                }
                if !partial_only && v == u && self.current.degree_in(v) >= d {
                    return Ok(Some((v, i)));
                }
            }
        }
        Ok(None)
    }

    fn run(&mut self, partial_only: bool) -> Result<()> {
        let mut decomps = Vec::with_capacity(self.divisors.len());
        for a in self.divisors {
            decomps.push(a.decompose(self.ranking)?);
        }
        while let Some((v, i)) = self.offender(partial_only)? {
            let dec = &decomps[i];
            let coeffs = self.current.coefficients_in(v);
            let e = (coeffs.len() - 1) as u32;
            let lead = coeffs[e as usize].clone();
            if v == dec.leader {
                let c = lead.mul_monomial(&crate::diffpoly::Monomial::var(v, e - dec.degree));
                self.step(FactorKind::Initial, i, &dec.initial.clone(), c, 0)?;
            } else {
                let theta = v.order - dec.leader.order;
                let c = lead.mul_monomial(&crate::diffpoly::Monomial::var(v, e - 1));
                self.step(FactorKind::Separant, i, &dec.separant.clone(), c, theta)?;
            }
        }
        Ok(())
    }

    fn finish(self, input: &DiffPoly) -> ReductionCertificate {
        ReductionCertificate {
            input: input.clone(),
            divisors: self.divisors.to_vec(),
            ranking: self.ranking.clone(),
            multiplier: self.multiplier,
            multiplier_factors: self
                .exponents
                .into_iter()
                .map(|((k, i), e)| (k, i, e))
                .collect(),
            combination: self
                .combination
                .into_iter()
                .map(|((divisor, theta), coefficient)| CombinationTerm {
                    coefficient,
                    divisor,
                    theta,
                })
                .collect(),
            remainder: self.current,
        }
    }
}

/// Removes every proper derivative of the leader of `g` from `f`.
pub fn partial_reduce(f: &DiffPoly, g: &DiffPoly, r: &Ranking) -> Result<ReductionCertificate> {
    partial_reduce_with(f, g, r, ReduceOptions::default())
}

pub fn partial_reduce_with(f: &DiffPoly, g: &DiffPoly, r: &Ranking, opts: ReduceOptions) -> Result<ReductionCertificate> {
    f.check_same_ring(g)?;
    if g.is_constant() {
        return Err(Error::ConstantPolynomial);
    }
    let divisors = [g.clone()];
    let mut red = Reducer::new(f, &divisors, r, opts.step_budget);
    red.run(true)?;
    Ok(red.finish(f))
}

/// Full Ritt reduction of `f` by the autoreduced set `a`.
pub fn ritt_reduce(f: &DiffPoly, a: &[DiffPoly], r: &Ranking) -> Result<ReductionCertificate> {
    ritt_reduce_with(f, a, r, ReduceOptions::default())
}

pub fn ritt_reduce_with(f: &DiffPoly, a: &[DiffPoly], r: &Ranking, opts: ReduceOptions) -> Result<ReductionCertificate> {
    for g in a {
        f.check_same_ring(g)?;
    }
    if !is_autoreduced(a, r)? {
        return Err(Error::NotAutoreduced);
    }
    let mut red = Reducer::new(f, a, r, opts.step_budget);
    red.run(false)?;
    Ok(red.finish(f))
}
