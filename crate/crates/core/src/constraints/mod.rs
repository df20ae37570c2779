//! Constrained pairs (p, q) in a single indeterminate: orders of generic
//! points, total derivatives, and bounded verification of the constraint
//! condition through emptiness of constrained loci.

mod integrate;

use std::fmt;

use serde_json::{json, Value};

use crate::diffpoly::{Derivative, DiffPoly, Monomial};
use crate::error::{Error, Result};
use crate::ground::FieldElem;
use crate::ideals::{empty_constrained_locus, Bounds, ExhaustedBound, Outcome, Verdict};
use crate::reduction::{ritt_reduce, ReductionCertificate};
use crate::splitting::is_irreducible_diffpoly;

/// A candidate pair, not yet checked.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConstraintQuery {
    pub p: DiffPoly,
    pub q: DiffPoly,
}

/// The clause of the pair definition that a query violates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Malformation {
    RingMismatch,
    SeveralIndeterminates,
    ConstantP,
    NotMonic,
    Reducible,
    ZeroQ,
    OrderOfQ { q: i64, p: i64 },
}

impl fmt::Display for Malformation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Malformation::RingMismatch => write!(f, "p and q lie in different rings"),
            Malformation::SeveralIndeterminates => write!(f, "the ring has more than one indeterminate"),
            Malformation::ConstantP => write!(f, "p lies in the ground field"),
            Malformation::NotMonic => write!(f, "p is not monic in its leader"),
            Malformation::Reducible => write!(f, "p is not irreducible over the ground field"),
            Malformation::ZeroQ => write!(f, "q is zero"),
            Malformation::OrderOfQ { q, p } => write!(f, "ord(q) = {q} is not below ord(p) = {p}"),
        }
    }
}

impl ConstraintQuery {
    pub fn new(p: DiffPoly, q: DiffPoly) -> Self {
        ConstraintQuery { p, q }
    }

    /// The first violated clause, if any.
    pub fn malformation(&self) -> Result<Option<Malformation>> {
        let (p, q) = (&self.p, &self.q);
        if p.check_same_ring(q).is_err() {
            return Ok(Some(Malformation::RingMismatch));
        }
        if p.ring().len() != 1 {
            return Ok(Some(Malformation::SeveralIndeterminates));
        }
        if p.is_constant() {
            return Ok(Some(Malformation::ConstantP));
        }
        if !p.is_monic(&p.ring().default_ranking()) {
            return Ok(Some(Malformation::NotMonic));
        }
        if !is_irreducible_diffpoly(p)? {
            return Ok(Some(Malformation::Reducible));
        }
        let Some(oq) = q.order() else { return Ok(Some(Malformation::ZeroQ)) };
        let op = p.order().unwrap();
        if oq >= op {
            return Ok(Some(Malformation::OrderOfQ { q: oq, p: op }));
        }
        Ok(None)
    }
}

/// ord(p) and the size of the transcendence basis x, δx, …, δ^(r−1)x of a generic zero.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GenericOrder {
    pub order: u32,
    pub transcendence_degree: u32,
}

pub fn generic_order(p: &DiffPoly) -> Result<GenericOrder> {
    if p.ring().len() != 1 {
        return Err(Error::Unsupported("generic orders are computed in one indeterminate".into()));
    }
    if !is_irreducible_diffpoly(p)? {
        return Err(Error::NotIrreducible);
    }
    let order = p.order().unwrap() as u32;
    Ok(GenericOrder {
        order,
        transcendence_degree: order,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TotalDerivative {
    /// δ(p̃) = p.
    Yes(DiffPoly),
    No,
}

/// Decides whether p = δp̃ for some p̃ ∈ K{Y}.
///
/// The top derivative of each indeterminate in p̃ is peeled off by formal
/// integration of the coefficient of its derivative; what is left at the end
/// must lie in K and is integrated there.
pub fn is_total_derivative(p: &DiffPoly) -> TotalDerivative {
    let ring = p.ring();
    let r = ring.default_ranking();
    let mut vars: Vec<Derivative> = (0..ring.len())
        .flat_map(|i| (0..p.order_in(i).max(0) as u32).map(move |k| Derivative::new(i, k)))
        .collect();
    vars.sort_by(|a, b| r.compare(*a, *b));
    let mut rest = p.clone();
    let mut acc = DiffPoly::zero(ring);
    while let Some(v) = vars.pop() {
        let w = v.prolong(1);
        let coeffs = rest.coefficients_in(w);
        if coeffs.len() > 2 {
            return TotalDerivative::No;
        }
        let Some(a) = coeffs.get(1) else { continue };
        if !a.derivatives().iter().all(|d| vars.contains(d) || *d == v) {
            return TotalDerivative::No;
        }
        let part = integrate::antiderivative(a, v);
        rest = &rest - &part.derive();
        acc = &acc + &part;
    }
    let Some(c) = rest.as_constant() else { return TotalDerivative::No };
    let Some(a) = integrate::integrate_in_field(&c) else { return TotalDerivative::No };
    let tilde = &acc + &DiffPoly::constant(ring, a);
    debug_assert!(tilde.derive() == *p);
    TotalDerivative::Yes(tilde)
}

/// Search limits for the candidates h of lower rank than p.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ConstraintBounds {
    /// Highest order of h; `None` means ord(p).
    pub h_order: Option<u32>,
    pub h_degree: u32,
    pub coefficient_height: u32,
    pub max_candidates: usize,
    pub ideal: Bounds,
}

impl Default for ConstraintBounds {
    fn default() -> Self {
        ConstraintBounds {
            h_order: None,
            h_degree: 2,
            coefficient_height: 2,
            max_candidates: 24,
            ideal: Bounds::default(),
        }
    }
}

impl ConstraintBounds {
    fn to_json(self) -> Value {
        json!({
            "h_order": self.h_order,
            "h_degree": self.h_degree,
            "coefficient_height": self.coefficient_height,
            "max_candidates": self.max_candidates,
            "max_prolongation": self.ideal.max_prolongation,
            "max_exponent": self.ideal.max_exponent,
            "step_budget": self.ideal.step_budget,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum UnconstrainableReason {
    TotalDerivative(DiffPoly),
    /// A polynomial of lower rank whose constrained locus is nonempty.
    ExplicitWitness(DiffPoly),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NotConstrainedReason {
    Malformed(Malformation),
    NonemptyLocus(DiffPoly),
}

#[derive(Clone, Debug)]
pub enum ConstraintOutcome {
    /// Every tested h gave an empty locus; `exact` when the answer holds for all h.
    ConstrainedUpTo { bounds: ConstraintBounds, exact: bool },
    Unconstrainable(UnconstrainableReason),
    NotConstrainedPair(NotConstrainedReason),
    Unknown { h: DiffPoly, bound: ExhaustedBound },
}

impl ConstraintOutcome {
    pub fn name(&self) -> &'static str {
        match self {
            ConstraintOutcome::ConstrainedUpTo { .. } => "ConstrainedUpTo",
            ConstraintOutcome::Unconstrainable(_) => "Unconstrainable",
            ConstraintOutcome::NotConstrainedPair(_) => "NotConstrainedPair",
            ConstraintOutcome::Unknown { .. } => "Unknown",
        }
    }
}

/// The outcome together with every candidate h tested and its verdict.
#[derive(Clone, Debug)]
pub struct ConstraintVerdict {
    pub outcome: ConstraintOutcome,
    pub tested: Vec<(DiffPoly, Verdict)>,
}

impl ConstraintVerdict {
    /// Total-derivative witnesses expand, and every tested verdict rechecks.
    pub fn verify(&self, query: &ConstraintQuery) -> bool {
        let witness_ok = match &self.outcome {
            ConstraintOutcome::Unconstrainable(UnconstrainableReason::TotalDerivative(t)) => t.derive() == query.p,
            ConstraintOutcome::ConstrainedUpTo { .. } => self.tested.iter().all(|(_, v)| v.outcome == Outcome::Yes),
            ConstraintOutcome::Unknown { .. } => self.tested.iter().any(|(_, v)| v.outcome == Outcome::Unknown),
            _ => true,
        };
        witness_ok && self.tested.iter().all(|(_, v)| v.verify())
    }

    pub fn to_json(&self) -> Value {
        let mut v = json!({ "outcome": self.outcome.name() });
        match &self.outcome {
            ConstraintOutcome::ConstrainedUpTo { bounds, exact } => {
                v["bounds"] = bounds.to_json();
                v["exact"] = json!(exact);
            }
            ConstraintOutcome::Unconstrainable(UnconstrainableReason::TotalDerivative(t)) => {
                v["reason"] = json!({ "kind": "TotalDerivative", "p_tilde": t.to_string() });
            }
            ConstraintOutcome::Unconstrainable(UnconstrainableReason::ExplicitWitness(h)) => {
                v["reason"] = json!({ "kind": "ExplicitWitness", "h": h.to_string() });
            }
            ConstraintOutcome::NotConstrainedPair(NotConstrainedReason::Malformed(m)) => {
                v["reason"] = json!({ "kind": "Malformed", "detail": m.to_string() });
            }
            ConstraintOutcome::NotConstrainedPair(NotConstrainedReason::NonemptyLocus(h)) => {
                v["reason"] = json!({ "kind": "NonemptyLocus", "h": h.to_string() });
            }
            ConstraintOutcome::Unknown { h, bound } => {
                v["h"] = json!(h.to_string());
                v["exhausted_bound"] = serde_json::to_value(bound).unwrap();
            }
        }
        v["tested"] = self
            .tested
            .iter()
            .map(|(h, verdict)| json!({ "h": h.to_string(), "outcome": verdict.outcome }))
            .collect();
        v
    }
}

fn integer_height(c: &FieldElem) -> Option<u32> {
    let q = c.to_rational()?;
    if !q.is_integer() {
        return None;
    }
    u32::try_from(q.numer().magnitude()).ok()
}

/// Coefficients of height at most `eta`: integers, and ±t for each generator t.
fn coefficient_set(field: &std::sync::Arc<crate::ground::FieldDescriptor>, eta: u32) -> Vec<FieldElem> {
    let mut out = vec![FieldElem::zero(field)];
    for k in 1..=eta as i64 {
        out.push(FieldElem::from_int(field, k));
        out.push(FieldElem::from_int(field, -k));
    }
    if eta >= 1 {
        for i in 0..field.nvars() {
            let t = FieldElem::generator(field, i);
            out.push(t.neg());
            out.push(t);
        }
    }
    out
}

fn height(c: &FieldElem) -> u32 {
    integer_height(c).unwrap_or(1)
}

/// Polynomials h of lower rank than p with leading coefficient 1, in increasing
/// (order, leader degree, total degree, coefficient height).
pub fn candidates(p: &DiffPoly, bounds: &ConstraintBounds) -> Vec<DiffPoly> {
    let ring = p.ring();
    let r = ring.default_ranking();
    let field = ring.field();
    let (leader, pdeg) = p.rank(&r).expect("nonconstant p");
    let max_order = bounds.h_order.unwrap_or(leader.order).min(leader.order);
    let mut out = Vec::new();
    for k in 0..=max_order {
        let top = Derivative::new(0, k);
        let max_e = if k == leader.order { pdeg - 1 } else { bounds.h_degree };
        for e in 1..=max_e.min(bounds.h_degree) {
            for d in e..=bounds.h_degree {
                // monomials in y, …, y^(k) of total degree ≤ d and degree ≤ e in y^(k)
                let monos: Vec<Monomial> = monomials_up_to(k, d).into_iter().filter(|m| m.degree_in(top) <= e).collect();
                let mut tops: Vec<&Monomial> = monos.iter().filter(|m| m.degree_in(top) == e).collect();
                tops.sort_by(|a, b| a.compare(b, &r));
                for eta in 0..=bounds.coefficient_height {
                    let coeffs = coefficient_set(field, eta);
                    for t in &tops {
                        let lower: Vec<&Monomial> = monos.iter().filter(|m| m.compare(t, &r).is_lt()).collect();
                        let mut digits = vec![0usize; lower.len()];
                        loop {
                            let hgt = digits.iter().map(|&i| height(&coeffs[i])).max().unwrap_or(0);
                            let deg = digits
                                .iter()
                                .zip(&lower)
                                .filter(|(&i, _)| i != 0)
                                .map(|(_, m)| m.total_degree())
                                .chain([t.total_degree()])
                                .max()
                                .unwrap();
                            if hgt == eta && deg == d {
                                let terms = digits
                                    .iter()
                                    .zip(&lower)
                                    .filter(|(&i, _)| i != 0)
                                    .map(|(&i, m)| ((*m).clone(), coeffs[i].clone()))
                                    .chain([((*t).clone(), FieldElem::one(field))]);
                                out.push(DiffPoly::from_terms(ring, terms.collect::<Vec<_>>()));
                                if out.len() >= bounds.max_candidates {
                                    return out;
                                }
                            }
                            // odometer
                            let mut i = 0;
                            while i < digits.len() {
                                digits[i] += 1;
                                if digits[i] < coeffs.len() {
                                    break;
                                }
                                digits[i] = 0;
                                i += 1;
                            }
                            if i == digits.len() {
                                break;
                            }
                        }
                    }
                }
            }
        }
    }
    out
}

fn monomials_up_to(k: u32, d: u32) -> Vec<Monomial> {
    let mut out = vec![Monomial::one()];
    for j in 0..=k {
        let v = Derivative::new(0, j);
        let mut next = Vec::new();
        for m in &out {
            for e in 0..=d - m.total_degree() {
                next.push(m.mul(&Monomial::var(v, e)));
            }
        }
        out = next;
    }
    out
}

/// Checks the pair definition, then searches for a reason the pair is or is not constrained.
pub fn verify_constrained_pair(query: &ConstraintQuery, bounds: &ConstraintBounds) -> Result<ConstraintVerdict> {
    let done = |outcome| ConstraintVerdict {
        outcome,
        tested: Vec::new(),
    };
    if let Some(m) = query.malformation()? {
        return Ok(done(ConstraintOutcome::NotConstrainedPair(NotConstrainedReason::Malformed(m))));
    }
    let p = &query.p;
    if let TotalDerivative::Yes(t) = is_total_derivative(p) {
        return Ok(done(ConstraintOutcome::Unconstrainable(UnconstrainableReason::TotalDerivative(t))));
    }
    // a conjugate of a generic root is again a generic root, so order zero is exact
    let exact = p.order() == Some(0) && query.q.is_constant();
    let mut tested = Vec::new();
    let mut unknown = None;
    for h in candidates(p, bounds) {
        let v = empty_constrained_locus(p, &h, &query.q, &bounds.ideal)?;
        let outcome = v.outcome;
        let bound = v.exhausted_bound.clone();
        tested.push((h.clone(), v));
        match outcome {
            Outcome::Yes => {}
            Outcome::No => {
                return Ok(ConstraintVerdict {
                    outcome: ConstraintOutcome::NotConstrainedPair(NotConstrainedReason::NonemptyLocus(h)),
                    tested,
                });
            }
            Outcome::Unknown => {
                if unknown.is_none() {
                    unknown = Some((h, bound.unwrap()));
                }
                if !bounds.ideal.rosenfeld_refutation {
                    break;
                }
            }
        }
    }
    let outcome = match unknown {
        Some((h, bound)) => ConstraintOutcome::Unknown { h, bound },
        None => ConstraintOutcome::ConstrainedUpTo { bounds: *bounds, exact },
    };
    Ok(ConstraintVerdict { outcome, tested })
}

/// Whether (p, q̃) has the same solutions as (p, q) at the generic zero of p.
#[derive(Clone, Debug)]
pub struct EquivalenceVerdict {
    pub outcome: Outcome,
    /// Reduction of q̃ by p; a nonzero remainder means q̃ does not vanish at the generic zero.
    pub reduction: ReductionCertificate,
}

impl EquivalenceVerdict {
    pub fn verify(&self) -> bool {
        self.reduction.verify()
            && match self.outcome {
                Outcome::Yes => !self.reduction.remainder.is_zero(),
                Outcome::No => self.reduction.remainder.is_zero(),
                Outcome::Unknown => true,
            }
    }

    pub fn to_json(&self) -> Value {
        json!({
            "outcome": self.outcome,
            "remainder": self.reduction.remainder.to_string(),
            "identity": self.reduction.identity_text(),
        })
    }
}

pub fn equivalent_constraints(p: &DiffPoly, q: &DiffPoly, q_tilde: &DiffPoly) -> Result<EquivalenceVerdict> {
    let query = ConstraintQuery::new(p.clone(), q.clone());
    if let Some(m) = query.malformation()? {
        return Err(Error::MalformedPair(m.to_string()));
    }
    p.check_same_ring(q_tilde)?;
    if q_tilde.is_zero() {
        return Err(Error::MalformedPair("q̃ is zero".into()));
    }
    let reduction = ritt_reduce(q_tilde, std::slice::from_ref(p), &p.ring().default_ranking())?;
    let outcome = if reduction.remainder.is_zero() { Outcome::No } else { Outcome::Yes };
    Ok(EquivalenceVerdict { outcome, reduction })
}

/// The pair (p, q·h).
pub fn multiplied_constraint(p: &DiffPoly, q: &DiffPoly, h: &DiffPoly) -> Result<ConstraintQuery> {
    let qh = q.checked_mul(h)?;
    p.check_same_ring(&qh)?;
    let op = p.order().ok_or(Error::ZeroPolynomial)?;
    match qh.order() {
        Some(o) if o < op => Ok(ConstraintQuery::new(p.clone(), qh)),
        _ => Err(Error::OrderTooHigh),
    }
}

#[cfg(test)]
mod tests;
