//! Algebraic Gröbner bases over the ground field, saturation ideals, and
//! three-valued membership queries for radical differential ideals.
//!
//! A `Yes` carries a [`MembershipCertificate`] that re-expands to an exact
//! identity, a `No` carries a [`GroebnerWitness`] that can be rechecked, and
//! `Unknown` carries the [`ExhaustedBound`] that was searched.

mod groebner;

use std::collections::BTreeSet;
use std::sync::Arc;

use serde::Serialize;
use serde_json::{json, Value};

use crate::charsets::{is_autoreduced, rosenfeld_applicable};
use crate::diffpoly::{derivative_text, Derivative, DiffPoly, DiffRing, Monomial, Ranking};
use crate::error::{Error, Result};
use crate::ground::FieldElem;
use crate::reduction::CombinationTerm;

use groebner::{Budget, GPoly, Space};

pub use groebner::MonomialOrder;

/// Default number of Buchberger and reduction steps per query.
pub const DEFAULT_STEP_BUDGET: u64 = 50_000;
/// Default largest power of the target tried.
pub const DEFAULT_MAX_EXPONENT: u32 = 4;

/// Resource bounds for the semidecision procedures.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Bounds {
    /// Largest number of derivatives taken of each generator; `None` picks a
    /// default from the orders of the inputs.
    pub max_prolongation: Option<u32>,
    pub max_exponent: u32,
    pub step_budget: u64,
    /// Allows exact `No` answers from autoreduced, Rosenfeld-applicable inputs.
    pub rosenfeld_refutation: bool,
}

impl Default for Bounds {
    fn default() -> Self {
        Bounds {
            max_prolongation: None,
            max_exponent: DEFAULT_MAX_EXPONENT,
            step_budget: DEFAULT_STEP_BUDGET,
            rosenfeld_refutation: false,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Outcome {
    Yes,
    No,
    Unknown,
}

/// What was searched before giving up.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExhaustedBound {
    pub max_prolongation: u32,
    pub max_exponent: u32,
    pub step_budget: u64,
    pub steps_used: u64,
    pub budget_exceeded: bool,
}

/// `saturating^saturation_exponent · target^exponent = Σ coefficient · δ^θ(generators[divisor])`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MembershipCertificate {
    pub target: DiffPoly,
    pub exponent: u32,
    pub saturating: DiffPoly,
    pub saturation_exponent: u32,
    pub prolongation: u32,
    pub generators: Vec<DiffPoly>,
    pub combination: Vec<CombinationTerm>,
}

impl MembershipCertificate {
    pub fn verify(&self) -> bool {
        let ring = self.target.ring();
        let mut rhs = DiffPoly::zero(ring);
        for t in &self.combination {
            let Some(g) = self.generators.get(t.divisor) else { return false };
            if t.theta > self.prolongation {
                return false;
            }
            rhs = &rhs + &(&t.coefficient * &g.derive_n(t.theta));
        }
        &self.saturating.pow(self.saturation_exponent) * &self.target.pow(self.exponent) == rhs
    }

    pub fn identity_text(&self) -> String {
        let mut rhs: Vec<String> = self
            .combination
            .iter()
            .map(|t| {
                let g = format!("G{}", t.divisor + 1);
                let theta = match t.theta {
                    0 => g,
                    1 => format!("δ({g})"),
                    k => format!("δ^{k}({g})"),
                };
                format!("({})*{theta}", t.coefficient)
            })
            .collect();
        if rhs.is_empty() {
            rhs.push("0".into());
        }
        format!(
            "({})^{}*({})^{} = {}",
            self.saturating,
            self.saturation_exponent,
            self.target,
            self.exponent,
            rhs.join(" + ")
        )
    }

    fn to_json(&self) -> Value {
        json!({
            "kind": "membership",
            "target": self.target.to_string(),
            "exponent": self.exponent,
            "saturating": self.saturating.to_string(),
            "saturation_exponent": self.saturation_exponent,
            "prolongation": self.prolongation,
            "generators": self.generators.iter().map(|g| g.to_string()).collect::<Vec<_>>(),
            "combination": self.combination.iter().map(|t| json!({
                "coefficient": t.coefficient.to_string(),
                "generator": t.divisor,
                "theta": t.theta,
            })).collect::<Vec<_>>(),
        })
    }
}

/// A Gröbner basis of `(generators)` in which the target has a nonzero normal form.
#[derive(Clone, Debug)]
pub struct GroebnerWitness {
    names: Vec<String>,
    space: Space,
    generators: Vec<GPoly>,
    basis: Vec<GPoly>,
    /// basis[i] = Σ_j cofactors[i][j] · generators[j]
    cofactors: Vec<Vec<GPoly>>,
    target: GPoly,
    normal_form: GPoly,
}

impl GroebnerWitness {
    /// Rechecks that the basis generates the same ideal as the generators, that it is a
    /// Gröbner basis, and that the target's normal form is the stored nonzero remainder.
    pub fn verify(&self) -> bool {
        let sp = &self.space;
        let mut budget = Budget::new(u64::MAX);
        for (b, cof) in self.basis.iter().zip(&self.cofactors) {
            let mut acc = GPoly::zero();
            for (c, g) in cof.iter().zip(&self.generators) {
                acc = sp.add(&acc, &sp.mul(c, g));
            }
            if acc != *b {
                return false;
            }
        }
        if self.basis.len() != self.cofactors.len() {
            return false;
        }
        for g in &self.generators {
            match sp.normal_form(g, &self.basis, &mut budget) {
                Ok(r) if r.is_zero() => {}
                _ => return false,
            }
        }
        if !matches!(groebner::is_groebner(sp, &self.basis, &mut budget), Ok(true)) {
            return false;
        }
        match sp.normal_form(&self.target, &self.basis, &mut budget) {
            Ok(r) => !r.is_zero() && r == self.normal_form,
            Err(_) => false,
        }
    }

    fn text(&self, g: &GPoly) -> String {
        gpoly_text(g, &self.names)
    }

    pub fn basis_text(&self) -> Vec<String> {
        self.basis.iter().map(|b| self.text(b)).collect()
    }

    pub fn normal_form_text(&self) -> String {
        self.text(&self.normal_form)
    }

    fn to_json(&self) -> Value {
        json!({
            "kind": "groebner_witness",
            "variables": self.names,
            "generators": self.generators.iter().map(|g| self.text(g)).collect::<Vec<_>>(),
            "basis": self.basis_text(),
            "target": self.text(&self.target),
            "normal_form": self.normal_form_text(),
        })
    }
}

#[derive(Clone, Debug)]
pub enum Certificate {
    Membership(MembershipCertificate),
    /// One membership certificate per element of the contained set.
    AllMembers(Vec<MembershipCertificate>),
    Refutation(GroebnerWitness),
}

impl Certificate {
    pub fn verify(&self) -> bool {
        match self {
            Certificate::Membership(c) => c.verify(),
            Certificate::AllMembers(cs) => cs.iter().all(MembershipCertificate::verify),
            Certificate::Refutation(w) => w.verify(),
        }
    }

    fn to_json(&self) -> Value {
        match self {
            Certificate::Membership(c) => c.to_json(),
            Certificate::AllMembers(cs) => json!({
                "kind": "all_members",
                "members": cs.iter().map(MembershipCertificate::to_json).collect::<Vec<_>>(),
            }),
            Certificate::Refutation(w) => w.to_json(),
        }
    }
}

/// Three-valued answer with its evidence.
#[derive(Clone, Debug)]
pub struct Verdict {
    pub outcome: Outcome,
    pub certificate: Option<Certificate>,
    pub exhausted_bound: Option<ExhaustedBound>,
}

impl Verdict {
    fn yes(c: Certificate) -> Self {
        Verdict {
            outcome: Outcome::Yes,
            certificate: Some(c),
            exhausted_bound: None,
        }
    }

    fn no(w: GroebnerWitness) -> Self {
        Verdict {
            outcome: Outcome::No,
            certificate: Some(Certificate::Refutation(w)),
            exhausted_bound: None,
        }
    }

    fn unknown(b: ExhaustedBound) -> Self {
        Verdict {
            outcome: Outcome::Unknown,
            certificate: None,
            exhausted_bound: Some(b),
        }
    }

    /// Yes and No carry a certificate that rechecks; Unknown carries its bound.
    pub fn verify(&self) -> bool {
        match self.outcome {
            Outcome::Yes => matches!(&self.certificate, Some(c @ (Certificate::Membership(_) | Certificate::AllMembers(_))) if c.verify()),
            Outcome::No => matches!(&self.certificate, Some(c @ Certificate::Refutation(_)) if c.verify()),
            Outcome::Unknown => self.certificate.is_none() && self.exhausted_bound.is_some(),
        }
    }

    pub fn membership(&self) -> Option<&MembershipCertificate> {
        match &self.certificate {
            Some(Certificate::Membership(c)) => Some(c),
            _ => None,
        }
    }

    /// `{outcome, certificate?, exhausted_bound?}`.
    pub fn to_json(&self) -> Value {
        let mut v = json!({ "outcome": self.outcome });
        if let Some(c) = &self.certificate {
            v["certificate"] = c.to_json();
        }
        if let Some(b) = &self.exhausted_bound {
            v["exhausted_bound"] = serde_json::to_value(b).unwrap();
        }
        v
    }
}

/// The generators δ^j(g), 0 ≤ j ≤ k, for each base generator g.
#[derive(Clone, Debug)]
pub struct ProlongationSystem {
    pub base_generators: Vec<DiffPoly>,
    pub prolongation_order: u32,
    /// (base index, j, δ^j(g))
    pub generators: Vec<(usize, u32, DiffPoly)>,
    pub algebraic_variables: BTreeSet<Derivative>,
}

impl ProlongationSystem {
    pub fn new(base: &[DiffPoly], k: u32) -> Self {
        let mut generators = Vec::new();
        let mut vars = BTreeSet::new();
        for (i, g) in base.iter().enumerate() {
            let mut d = g.clone();
            for j in 0..=k {
                vars.extend(d.derivatives());
                let next = d.derive();
                generators.push((i, j, d));
                d = next;
            }
        }
        ProlongationSystem {
            base_generators: base.to_vec(),
            prolongation_order: k,
            generators,
            algebraic_variables: vars,
        }
    }
}

// ---- conversions ----------------------------------------------------------------

/// Variables: optionally an extra `w` at index 0, then derivatives in decreasing rank.
struct Frame {
    ring: Arc<DiffRing>,
    derivs: Vec<Derivative>,
    extra: bool,
    space: Space,
}

impl Frame {
    fn new(ring: &Arc<DiffRing>, derivs: BTreeSet<Derivative>, ranking: &Ranking, extra: bool, order: MonomialOrder) -> Self {
        let mut derivs: Vec<Derivative> = derivs.into_iter().collect();
        derivs.sort_by(|a, b| ranking.compare(*b, *a));
        let nvars = derivs.len() + usize::from(extra);
        Frame {
            ring: ring.clone(),
            space: Space {
                nvars,
                order,
                field: ring.field().clone(),
            },
            derivs,
            extra,
        }
    }

    fn offset(&self) -> usize {
        usize::from(self.extra)
    }

    fn names(&self) -> Vec<String> {
        let mut out = Vec::new();
        if self.extra {
            out.push("w".to_string());
        }
        out.extend(self.derivs.iter().map(|&d| derivative_text(&self.ring.names()[d.index], d)));
        out
    }

    fn to_g(&self, p: &DiffPoly) -> GPoly {
        let terms = p.terms().map(|(m, c)| {
            let mut e = vec![0; self.space.nvars];
            for &(d, k) in m.factors() {
                let i = self.derivs.iter().position(|x| *x == d).expect("derivative in frame");
                e[i + self.offset()] = k;
            }
            (e, c.clone())
        });
        self.space.from_terms(terms)
    }

    /// The coefficients of w^0, w^1, … as differential polynomials.
    fn split_w(&self, g: &GPoly) -> Vec<DiffPoly> {
        let top = g.terms.iter().map(|(e, _)| if self.extra { e[0] } else { 0 }).max().unwrap_or(0);
        let mut parts = vec![Vec::new(); top as usize + 1];
        for (e, c) in &g.terms {
            let k = if self.extra { e[0] as usize } else { 0 };
            let m = Monomial::from_factors(
                self.derivs.iter().zip(&e[self.offset()..]).filter(|(_, &x)| x > 0).map(|(d, &x)| (*d, x)),
            );
            parts[k].push((m, c.clone()));
        }
        parts.into_iter().map(|t| DiffPoly::from_terms(&self.ring, t)).collect()
    }

    fn from_g(&self, g: &GPoly) -> DiffPoly {
        let parts = self.split_w(g);
        debug_assert!(parts.len() == 1, "w does not occur");
        parts.into_iter().next().unwrap()
    }

    /// 1 - w·s
    fn rabinowitsch(&self, s: &DiffPoly) -> GPoly {
        let sp = &self.space;
        let mut w = vec![0; sp.nvars];
        w[0] = 1;
        let ws = sp.mul_term(&self.to_g(s), &w, &FieldElem::one(&sp.field));
        sp.sub(&sp.one(), &ws)
    }
}

fn gpoly_text(g: &GPoly, names: &[String]) -> String {
    if g.is_zero() {
        return "0".into();
    }
    let mut out = String::new();
    for (k, (e, c)) in g.terms.iter().enumerate() {
        let neg = c.is_negative();
        let mag = if neg { c.neg() } else { c.clone() };
        out.push_str(match (k, neg) {
            (0, true) => "-",
            (0, false) => "",
            (_, true) => " - ",
            (_, false) => " + ",
        });
        let mono: Vec<String> = e
            .iter()
            .zip(names)
            .filter(|(&x, _)| x > 0)
            .map(|(&x, n)| if x == 1 { n.clone() } else { format!("{n}^{x}") })
            .collect();
        if mono.is_empty() {
            out.push_str(&mag.to_string());
            continue;
        }
        if !mag.is_one() {
            if mag.needs_parens_as_factor() {
                out.push_str(&format!("({mag})*"));
            } else {
                out.push_str(&format!("{mag}*"));
            }
        }
        out.push_str(&mono.join("*"));
    }
    out
}

fn same_ring(all: &[&DiffPoly]) -> Result<()> {
    for p in all.iter().skip(1) {
        all[0].check_same_ring(p)?;
    }
    Ok(())
}

// ---- operations ----------------------------------------------------------------

/// Reduced Gröbner basis, monic, of the algebraic ideal generated by `gens`,
/// with derivatives as variables ordered by `ranking`.
pub fn groebner(gens: &[DiffPoly], order: MonomialOrder, ranking: &Ranking) -> Result<Vec<DiffPoly>> {
    groebner_with_budget(gens, order, ranking, DEFAULT_STEP_BUDGET)
}

pub fn groebner_with_budget(gens: &[DiffPoly], order: MonomialOrder, ranking: &Ranking, budget: u64) -> Result<Vec<DiffPoly>> {
    if gens.is_empty() {
        return Ok(Vec::new());
    }
    same_ring(&gens.iter().collect::<Vec<_>>())?;
    let ring = gens[0].ring();
    let vars = gens.iter().flat_map(|g| g.derivatives()).collect();
    let frame = Frame::new(ring, vars, ranking, false, order);
    let gs: Vec<GPoly> = gens.iter().map(|g| frame.to_g(g)).collect();
    let basis = groebner::groebner(&frame.space, &gs, &mut Budget::new(budget))?;
    Ok(basis.iter().map(|e| frame.from_g(&e.poly)).collect())
}

enum Search {
    Found(MembershipCertificate),
    Refuted(GroebnerWitness),
    Missed,
}

/// Looks for s^n·g^e ∈ (gens) with e ≤ max_e by reducing modulo a Gröbner basis of (gens, 1 - w·s).
fn saturation_search(
    g: &DiffPoly,
    system: &ProlongationSystem,
    s: &DiffPoly,
    max_e: u32,
    budget: &mut Budget,
) -> Result<Search> {
    let ring = g.ring();
    let mut vars: BTreeSet<Derivative> = system.algebraic_variables.clone();
    vars.extend(g.derivatives());
    vars.extend(s.derivatives());
    let frame = Frame::new(ring, vars, &ring.default_ranking(), true, MonomialOrder::Grevlex);
    let sp = &frame.space;
    let mut gens: Vec<GPoly> = system.generators.iter().map(|(_, _, p)| frame.to_g(p)).collect();
    gens.push(frame.rabinowitsch(s));
    let entries = groebner::groebner(sp, &gens, budget)?;
    let basis: Vec<GPoly> = entries.iter().map(|e| e.poly.clone()).collect();
    let exponents = if g.is_constant() { 1 } else { max_e.max(1) };
    let mut first_remainder = None;
    for e in 1..=exponents {
        let target = g.pow(e);
        let (q, r) = sp.reduce(&frame.to_g(&target), &basis, budget)?;
        if !r.is_zero() {
            first_remainder.get_or_insert((frame.to_g(&target), r));
            continue;
        }
        // target = Σ_j q_j Σ_i cof_ji gens_i; substitute w = 1/s and clear denominators.
        let m = system.generators.len();
        let mut total = vec![GPoly::zero(); m];
        for (qj, entry) in q.iter().zip(&entries) {
            if qj.is_zero() {
                continue;
            }
            for i in 0..m {
                if !entry.cofactors[i].is_zero() {
                    total[i] = sp.add(&total[i], &sp.mul(qj, &entry.cofactors[i]));
                }
            }
        }
        let split: Vec<Vec<DiffPoly>> = total.iter().map(|c| frame.split_w(c)).collect();
        let n = split.iter().map(|p| p.len() as u32 - 1).max().unwrap_or(0);
        let mut combination: Vec<CombinationTerm> = Vec::new();
        for ((base, theta, _), parts) in system.generators.iter().zip(&split) {
            let mut coefficient = DiffPoly::zero(ring);
            for (k, part) in parts.iter().enumerate() {
                if !part.is_zero() {
                    coefficient = &coefficient + &(part * &s.pow(n - k as u32));
                }
            }
            if !coefficient.is_zero() {
                combination.push(CombinationTerm {
                    coefficient,
                    divisor: *base,
                    theta: *theta,
                });
            }
        }
        let cert = MembershipCertificate {
            target: g.clone(),
            exponent: e,
            saturating: s.clone(),
            saturation_exponent: n,
            prolongation: system.prolongation_order,
            generators: system.base_generators.clone(),
            combination,
        };
        debug_assert!(cert.verify(), "certificate must expand exactly");
        return Ok(Search::Found(cert));
    }
    let (target, normal_form) = first_remainder.unwrap();
    Ok(if system.prolongation_order == 0 && (exponents == 1) {
        Search::Refuted(GroebnerWitness {
            names: frame.names(),
            space: sp.clone(),
            generators: gens,
            basis,
            cofactors: entries.into_iter().map(|e| e.cofactors).collect(),
            target,
            normal_form,
        })
    } else {
        Search::Missed
    })
}

fn exhausted(k: u32, e: u32, budget: &Budget, exceeded: bool) -> ExhaustedBound {
    ExhaustedBound {
        max_prolongation: k,
        max_exponent: e,
        step_budget: budget.limit,
        steps_used: budget.used.min(budget.limit),
        budget_exceeded: exceeded,
    }
}

/// Decides g ∈ (G):s^∞ for algebraic data, with derivatives read as independent variables.
/// Only an exhausted step budget yields `Unknown`.
pub fn saturation_member(g: &DiffPoly, gens: &[DiffPoly], s: &DiffPoly) -> Result<Verdict> {
    saturation_member_with_budget(g, gens, s, DEFAULT_STEP_BUDGET)
}

pub fn saturation_member_with_budget(g: &DiffPoly, gens: &[DiffPoly], s: &DiffPoly, budget: u64) -> Result<Verdict> {
    let mut all: Vec<&DiffPoly> = vec![g, s];
    all.extend(gens);
    same_ring(&all)?;
    if s.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let system = ProlongationSystem::new(gens, 0);
    let mut budget = Budget::new(budget);
    match saturation_search(g, &system, s, 1, &mut budget) {
        Ok(Search::Found(c)) => Ok(Verdict::yes(Certificate::Membership(c))),
        Ok(Search::Refuted(w)) => Ok(Verdict::no(w)),
        Ok(Search::Missed) => unreachable!("a single exponent at order zero always decides"),
        Err(Error::BudgetExceeded(_)) => Ok(Verdict::unknown(exhausted(0, 1, &budget, true))),
        Err(e) => Err(e),
    }
}

fn order_of(ps: &[&DiffPoly]) -> i64 {
    ps.iter().filter_map(|p| p.order()).max().unwrap_or(-1)
}

/// Semidecides g ∈ √([G]:S^∞) by searching s^n·g^e in the algebraic ideal of bounded prolongations.
pub fn radical_diff_member(g: &DiffPoly, gens: &[DiffPoly], sat: &[DiffPoly], bounds: &Bounds) -> Result<Verdict> {
    let mut all: Vec<&DiffPoly> = vec![g];
    all.extend(gens);
    all.extend(sat);
    same_ring(&all)?;
    let ring = g.ring();
    let s = sat.iter().fold(DiffPoly::one(ring), |acc, x| &acc * x);
    if s.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let default_k = {
        let mut lhs: Vec<&DiffPoly> = gens.iter().collect();
        lhs.push(g);
        let og = order_of(&lhs);
        let os = order_of(&sat.iter().collect::<Vec<_>>());
        (2 * (og.max(0) + os.max(0) + 1)) as u32
    };
    let max_k = bounds.max_prolongation.unwrap_or(default_k);
    let mut budget = Budget::new(bounds.step_budget);
    if g.is_zero() {
        let cert = MembershipCertificate {
            target: g.clone(),
            exponent: 1,
            saturating: s,
            saturation_exponent: 0,
            prolongation: 0,
            generators: gens.to_vec(),
            combination: Vec::new(),
        };
        return Ok(Verdict::yes(Certificate::Membership(cert)));
    }
    for k in 0..=max_k {
        let system = ProlongationSystem::new(gens, k);
        match saturation_search(g, &system, &s, bounds.max_exponent, &mut budget) {
            Ok(Search::Found(c)) => return Ok(Verdict::yes(Certificate::Membership(c))),
            Ok(_) => {}
            Err(Error::BudgetExceeded(_)) => {
                return Ok(Verdict::unknown(exhausted(k, bounds.max_exponent, &budget, true)));
            }
            Err(e) => return Err(e),
        }
    }
    if bounds.rosenfeld_refutation {
        if let Some(w) = rosenfeld_refutation(g, gens, sat, &mut budget)? {
            return Ok(Verdict::no(w));
        }
    }
    Ok(Verdict::unknown(exhausted(max_k, bounds.max_exponent, &budget, false)))
}

/// For a nonzero constant target, an autoreduced Rosenfeld-applicable G whose
/// saturating set consists of initials and separants: 1 ∉ (G):H_G^∞ refutes membership.
fn rosenfeld_refutation(g: &DiffPoly, gens: &[DiffPoly], sat: &[DiffPoly], budget: &mut Budget) -> Result<Option<GroebnerWitness>> {
    if !g.is_constant() || gens.is_empty() || gens.iter().any(DiffPoly::is_constant) {
        return Ok(None);
    }
    let r = g.ring().default_ranking();
    if !is_autoreduced(gens, &r)? || !rosenfeld_applicable(gens, &r) {
        return Ok(None);
    }
    let mut h: Vec<DiffPoly> = Vec::new();
    for a in gens {
        let d = a.decompose(&r)?;
        h.push(d.initial);
        h.push(d.separant);
    }
    let proportional = |s: &DiffPoly| {
        s.is_constant()
            || h.iter().any(|x| {
                let (ls, lx) = (s.sorted_terms(&r)[0].1.clone(), x.sorted_terms(&r)[0].1.clone());
                s.scale(&lx) == x.scale(&ls)
            })
    };
    if !sat.iter().all(proportional) {
        return Ok(None);
    }
    let hp = h.iter().fold(DiffPoly::one(g.ring()), |acc, x| &acc * x);
    let system = ProlongationSystem::new(gens, 0);
    match saturation_search(&DiffPoly::one(g.ring()), &system, &hp, 1, budget) {
        Ok(Search::Refuted(w)) => Ok(Some(w)),
        Ok(_) | Err(Error::BudgetExceeded(_)) => Ok(None),
        Err(e) => Err(e),
    }
}

/// Semidecides emptiness of {p = 0, h = 0, q ≠ 0} via 1 ∈ √([p, h]:q).
pub fn empty_constrained_locus(p: &DiffPoly, h: &DiffPoly, q: &DiffPoly, bounds: &Bounds) -> Result<Verdict> {
    if p.ring().len() != 1 {
        return Err(Error::Unsupported("constrained loci are defined in one indeterminate".into()));
    }
    let mut b = *bounds;
    if b.max_prolongation.is_none() {
        let ord = |x: &DiffPoly| x.order().unwrap_or(-1);
        b.max_prolongation = Some((2 * (ord(p).max(0) + ord(q).max(0) + 1)) as u32);
    }
    radical_diff_member(&DiffPoly::one(p.ring()), &[p.clone(), h.clone()], std::slice::from_ref(q), &b)
}

/// Semidecides V(F) ⊆ V(G) through g ∈ √[F] for every g ∈ G.
pub fn variety_containment(f: &[DiffPoly], g: &[DiffPoly], bounds: &Bounds) -> Result<Verdict> {
    let mut certs = Vec::new();
    let mut unknown = None;
    for x in g {
        let v = radical_diff_member(x, f, &[], bounds)?;
        match v.outcome {
            Outcome::Yes => certs.push(v.membership().unwrap().clone()),
            Outcome::No => return Ok(v),
            Outcome::Unknown => {
                if unknown.is_none() {
                    unknown = v.exhausted_bound;
                }
            }
        }
    }
    Ok(match unknown {
        Some(b) => Verdict::unknown(b),
        None => Verdict::yes(Certificate::AllMembers(certs)),
    })
}
