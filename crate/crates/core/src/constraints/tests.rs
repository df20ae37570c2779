use std::sync::Arc;

use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::*;
use crate::diffpoly::DiffRing;
use crate::ground::FieldDescriptor;
use crate::reduction::QuotientRing;
use crate::testing::{q_t, random_diffpoly};

fn ring_q() -> Arc<DiffRing> {
    DiffRing::new(FieldDescriptor::rationals(), &["Y"]).unwrap()
}

fn ring_t() -> Arc<DiffRing> {
    DiffRing::new(q_t(), &["Y"]).unwrap()
}

fn y(r: &Arc<DiffRing>, k: u32) -> DiffPoly {
    DiffPoly::derivative(r, 0, k)
}

fn n(r: &Arc<DiffRing>, v: i64) -> DiffPoly {
    DiffPoly::from_int(r, v)
}

fn t(r: &Arc<DiffRing>) -> DiffPoly {
    DiffPoly::constant(r, FieldElem::generator(r.field(), 0))
}

#[test]
fn generic_order_examples() {
    let r = ring_t();
    assert_eq!(generic_order(&(&y(&r, 0).pow(2) - &t(&r))).unwrap().order, 0);
    // δY − t(Y³ − Y²)
    let pe = &y(&r, 1) - &(&t(&r) * &(&y(&r, 0).pow(3) - &y(&r, 0).pow(2)));
    let g = generic_order(&pe).unwrap();
    assert_eq!((g.order, g.transcendence_degree), (1, 1));
    let q = ring_q();
    assert_eq!(generic_order(&(&y(&q, 2).pow(2) - &y(&q, 0))).unwrap().order, 2);
    assert_eq!(generic_order(&(&y(&q, 0).pow(2) - &n(&q, 1))).unwrap_err(), Error::NotIrreducible);
}

#[test]
fn total_derivative_examples() {
    let q = ring_q();
    assert_eq!(is_total_derivative(&y(&q, 1)), TotalDerivative::Yes(y(&q, 0)));
    let r = ring_t();
    assert_eq!(
        is_total_derivative(&(&y(&r, 1) - &n(&r, 1))),
        TotalDerivative::Yes(&y(&r, 0) - &t(&r))
    );
    assert_eq!(is_total_derivative(&(&y(&r, 1) - &y(&r, 0))), TotalDerivative::No);
    // 2YY' + Y'' = δ(Y² + Y')
    let p = &(&n(&q, 2) * &(&y(&q, 0) * &y(&q, 1))) + &y(&q, 2);
    assert_eq!(is_total_derivative(&p), TotalDerivative::Yes(&y(&q, 0).pow(2) + &y(&q, 1)));
    assert_eq!(is_total_derivative(&y(&q, 0)), TotalDerivative::No);
    assert_eq!(is_total_derivative(&n(&q, 1)), TotalDerivative::No);
    assert_eq!(is_total_derivative(&n(&q, 0)), TotalDerivative::Yes(n(&q, 0)));
    // Y'^2 is not linear in its leader
    assert_eq!(is_total_derivative(&y(&q, 1).pow(2)), TotalDerivative::No);
    // 1/t has no antiderivative in ℚ(t)
    let inv_t = DiffPoly::constant(&r, FieldElem::generator(r.field(), 0).inv().unwrap());
    assert_eq!(is_total_derivative(&inv_t), TotalDerivative::No);
    assert_eq!(is_total_derivative(&(&y(&r, 1) + &inv_t)), TotalDerivative::No);
}

#[test]
fn field_integration() {
    let field = q_t();
    let tt = FieldElem::generator(&field, 0);
    for c in [
        tt.clone(),
        tt.pow(3),
        tt.inv().unwrap().pow(2),
        (&tt + &FieldElem::one(&field)).inv().unwrap().pow(3),
    ] {
        let a = integrate::integrate_in_field(&c).expect("integrable");
        assert_eq!(a.derive(), c);
    }
    assert!(integrate::integrate_in_field(&tt.inv().unwrap()).is_none());
    let q = FieldDescriptor::rationals();
    assert!(integrate::integrate_in_field(&FieldElem::one(&q)).is_none());
    // δt = t
    let exp = FieldDescriptor::rational_functions(&["t"]).unwrap();
    let exp = exp.with_derivations(&[FieldElem::generator(&exp, 0)]).unwrap();
    let te = FieldElem::generator(&exp, 0);
    let c = te.inv().unwrap().neg();
    assert_eq!(integrate::integrate_in_field(&c).unwrap().derive(), c);
}

#[test]
fn total_derivative_round_trip() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for case in 0..500 {
        let r = if case % 2 == 0 { ring_q() } else { ring_t() };
        let mut tilde = random_diffpoly(&mut rng, &r, 4, 2, 2);
        if case % 3 == 0 {
            tilde = &tilde + &y(&r, rng.gen_range(0..3)).pow(rng.gen_range(1..=3));
        }
        let p = tilde.derive();
        match is_total_derivative(&p) {
            TotalDerivative::Yes(found) => assert_eq!(found.derive(), p, "{tilde}"),
            TotalDerivative::No => panic!("missed δ({tilde})"),
        }
    }
}

#[test]
fn total_derivative_two_indeterminates() {
    let r = DiffRing::new(FieldDescriptor::rationals(), &["u", "v"]).unwrap();
    let u = |k| DiffPoly::derivative(&r, 0, k);
    let v = |k| DiffPoly::derivative(&r, 1, k);
    let tilde = &(&u(1) * &v(0)) + &v(2).pow(2);
    match is_total_derivative(&tilde.derive()) {
        TotalDerivative::Yes(found) => assert_eq!(found.derive(), tilde.derive()),
        TotalDerivative::No => panic!(),
    }
    assert_eq!(is_total_derivative(&(&u(1) * &v(0))), TotalDerivative::No);
}

#[test]
fn malformed_queries() {
    let r = ring_t();
    let p = &y(&r, 0).pow(2) - &t(&r);
    let cases = [
        (ConstraintQuery::new(&n(&r, 2) * &p, n(&r, 1)), Malformation::NotMonic),
        (ConstraintQuery::new(&y(&r, 0).pow(2) - &n(&r, 1), n(&r, 1)), Malformation::Reducible),
        (ConstraintQuery::new(p.clone(), n(&r, 0)), Malformation::ZeroQ),
        (ConstraintQuery::new(p.clone(), y(&r, 0)), Malformation::OrderOfQ { q: 0, p: 0 }),
        (ConstraintQuery::new(n(&r, 1), n(&r, 1)), Malformation::ConstantP),
    ];
    for (query, expected) in cases {
        assert_eq!(query.malformation().unwrap(), Some(expected.clone()));
        let v = verify_constrained_pair(&query, &ConstraintBounds::default()).unwrap();
        match v.outcome {
            ConstraintOutcome::NotConstrainedPair(NotConstrainedReason::Malformed(m)) => assert_eq!(m, expected),
            other => panic!("{other:?}"),
        }
    }
    let two = DiffRing::new(FieldDescriptor::rationals(), &["a", "b"]).unwrap();
    let q = ConstraintQuery::new(DiffPoly::derivative(&two, 0, 0), n(&two, 1));
    assert_eq!(q.malformation().unwrap(), Some(Malformation::SeveralIndeterminates));
}

#[test]
fn algebraic_pair_is_exactly_constrained() {
    let r = ring_t();
    let query = ConstraintQuery::new(&y(&r, 0).pow(2) - &t(&r), n(&r, 1));
    let v = verify_constrained_pair(&query, &ConstraintBounds::default()).unwrap();
    assert!(matches!(v.outcome, ConstraintOutcome::ConstrainedUpTo { exact: true, .. }));
    assert_eq!(v.outcome.name(), "ConstrainedUpTo");
    let hs: Vec<String> = v.tested.iter().map(|(h, _)| h.to_string()).collect();
    assert_eq!(hs, ["Y", "Y + 1", "Y - 1", "Y - t", "Y + t", "Y + 2", "Y - 2"]);
    for (_, verdict) in &v.tested {
        assert_eq!(verdict.membership().unwrap().prolongation, 0);
    }
    assert!(v.verify(&query));
    // the generic root generates a differential field
    let qr = QuotientRing::new(&query.p).unwrap();
    let z = qr.canon(&y(&r, 0)).unwrap();
    let dz = qr.derive(&z).unwrap();
    let back = qr.canon_fraction(&(&n(&r, 1) * &y(&r, 1)), &n(&r, 1)).unwrap();
    assert_eq!(dz, back);
}

#[test]
fn total_derivatives_are_unconstrainable() {
    let q = ring_q();
    let query = ConstraintQuery::new(y(&q, 1), y(&q, 0));
    let v = verify_constrained_pair(&query, &ConstraintBounds::default()).unwrap();
    match &v.outcome {
        ConstraintOutcome::Unconstrainable(UnconstrainableReason::TotalDerivative(p)) => assert_eq!(*p, y(&q, 0)),
        other => panic!("{other:?}"),
    }
    assert!(v.verify(&query));
    let r = ring_t();
    let query = ConstraintQuery::new(&y(&r, 1) - &n(&r, 1), n(&r, 1));
    let v = verify_constrained_pair(&query, &ConstraintBounds::default()).unwrap();
    match &v.outcome {
        ConstraintOutcome::Unconstrainable(UnconstrainableReason::TotalDerivative(p)) => {
            assert_eq!(p.to_string(), "Y - t")
        }
        other => panic!("{other:?}"),
    }
    assert_eq!(v.to_json()["reason"]["p_tilde"], "Y - t");
}

#[test]
fn order_one_pair_is_unknown_or_constrained() {
    let q = ring_q();
    // Y' − Y² is not a total derivative
    let p = &y(&q, 1) - &y(&q, 0).pow(2);
    let query = ConstraintQuery::new(p, n(&q, 1));
    let bounds = ConstraintBounds {
        max_candidates: 6,
        ..ConstraintBounds::default()
    };
    let v = verify_constrained_pair(&query, &bounds).unwrap();
    assert!(matches!(
        v.outcome,
        ConstraintOutcome::Unknown { .. } | ConstraintOutcome::ConstrainedUpTo { exact: false, .. }
    ));
    assert!(v.verify(&query));
    assert!(!v.tested.is_empty());
}

#[test]
fn candidate_enumeration_is_ordered_and_of_lower_rank() {
    let q = ring_q();
    let rk = q.default_ranking();
    let p = &y(&q, 1).pow(2) - &y(&q, 0);
    let bounds = ConstraintBounds {
        max_candidates: 200,
        ..ConstraintBounds::default()
    };
    let hs = candidates(&p, &bounds);
    assert_eq!(hs.len(), 200);
    let key = |h: &DiffPoly| {
        let (u, e) = h.rank(&rk).unwrap();
        let height = h.terms().map(|(_, c)| height(c)).max().unwrap();
        (u.order, e, h.total_degree(), height)
    };
    for h in &hs {
        assert!(h.compare_rank(&p, &rk).is_lt());
    }
    let keys: Vec<_> = hs.iter().map(|h| key(h)).collect();
    let mut sorted = keys.clone();
    sorted.sort();
    // the leading coefficient has height 1, lower terms determine the rest
    assert_eq!(keys.iter().map(|k| (k.0, k.1, k.2)).collect::<Vec<_>>(), sorted.iter().map(|k| (k.0, k.1, k.2)).collect::<Vec<_>>());
    let mut dedup = hs.clone();
    dedup.sort_by_key(|h| h.to_string());
    dedup.dedup();
    assert_eq!(dedup.len(), hs.len());
}

#[test]
fn equivalence_examples() {
    let r = ring_t();
    let p = &y(&r, 0).pow(2) - &t(&r);
    let v = equivalent_constraints(&p, &n(&r, 1), &y(&r, 0)).unwrap();
    assert_eq!(v.outcome, Outcome::Yes);
    assert!(v.verify());
    let v = equivalent_constraints(&p, &n(&r, 1), &n(&r, 1)).unwrap();
    assert_eq!(v.outcome, Outcome::Yes);
    let v = equivalent_constraints(&p, &n(&r, 1), &p).unwrap();
    assert_eq!(v.outcome, Outcome::No);
    assert!(v.verify());
    assert!(matches!(
        equivalent_constraints(&y(&r, 0).pow(2), &n(&r, 1), &y(&r, 0)),
        Err(Error::MalformedPair(_))
    ));
}

#[test]
fn multiplied_constraint_examples() {
    let r = ring_t();
    let p = &y(&r, 0).pow(2) - &t(&r);
    assert_eq!(multiplied_constraint(&p, &n(&r, 1), &n(&r, 1)).unwrap(), ConstraintQuery::new(p.clone(), n(&r, 1)));
    assert_eq!(multiplied_constraint(&p, &n(&r, 1), &y(&r, 0)).unwrap_err(), Error::OrderTooHigh);
    let p1 = &y(&r, 1).pow(2) - &y(&r, 0);
    let m = multiplied_constraint(&p1, &n(&r, 1), &y(&r, 0)).unwrap();
    assert_eq!(m.q, y(&r, 0));
    assert_eq!(multiplied_constraint(&p1, &y(&r, 0), &y(&r, 0)).unwrap(), ConstraintQuery::new(p1.clone(), y(&r, 0).pow(2)));
    assert_eq!(multiplied_constraint(&p1, &y(&r, 0), &y(&r, 1)).unwrap_err(), Error::OrderTooHigh);
}

#[test]
fn closure_under_multiplication_is_not_refuted() {
    let r = ring_t();
    let bounds = ConstraintBounds::default();
    for p in [&y(&r, 0).pow(2) - &t(&r), &(&y(&r, 0).pow(3) - &(&t(&r) * &y(&r, 0))) - &n(&r, 1)] {
        let query = ConstraintQuery::new(p.clone(), n(&r, 1));
        let v = verify_constrained_pair(&query, &bounds).unwrap();
        assert!(matches!(v.outcome, ConstraintOutcome::ConstrainedUpTo { .. }));
        let c = DiffPoly::constant(&r, FieldElem::from_rational(r.field(), BigRational::new(3.into(), 7.into())));
        let m = multiplied_constraint(&p, &n(&r, 1), &c).unwrap();
        let v = verify_constrained_pair(&m, &bounds).unwrap();
        assert!(!matches!(v.outcome, ConstraintOutcome::NotConstrainedPair(_)));
    }
}
