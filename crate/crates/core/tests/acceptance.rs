//! Acceptance checks AC1 to AC11, one line each.

use std::cmp::Ordering;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::Command;
use std::sync::Arc;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

use diffalg::charsets::{characteristic_candidate, is_autoreduced, AutoreducedSet};
use diffalg::constraints::{
    is_total_derivative, verify_constrained_pair, ConstraintBounds, ConstraintOutcome, ConstraintQuery,
    TotalDerivative, UnconstrainableReason,
};
use diffalg::diffpoly::{Derivative, DiffPoly, DiffRing, Ranking, ReducedMode};
use diffalg::ground::FieldDescriptor;
use diffalg::ideals::{
    empty_constrained_locus, radical_diff_member, variety_containment, Bounds, Outcome, Verdict,
};
use diffalg::reduction::{ritt_reduce, QuotientRing, ReductionCertificate};
use diffalg::shell::parse::{lower_diffpoly, parse_expr, parse_field};
use diffalg::splitting::{factor_rationals, TowerDescriptor, TowerElem, TowerPoly};
use diffalg::testing::{brute_force_factor_count, random_diffpoly};

type Check = Result<String, String>;

fn ensure(cond: bool, what: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(what.into())
    }
}

fn within(start: Instant, limit: Duration, what: &str) -> Result<(), String> {
    let t = start.elapsed();
    ensure(t < limit, format!("{what} took {t:?}, limit {limit:?}"))
}

fn field(decl: &str) -> Arc<FieldDescriptor> {
    parse_field(decl).unwrap()
}

fn ring(decl: &str, names: &[&str]) -> Arc<DiffRing> {
    DiffRing::new(field(decl), names).unwrap()
}

fn p(r: &Arc<DiffRing>, text: &str) -> DiffPoly {
    lower_diffpoly(&parse_expr(text).unwrap(), r).unwrap()
}

fn ac1() -> Check {
    let start = Instant::now();
    let r = ring("Q(x); d/dt x = 1", &["y1", "y2"]);
    let rk = Ranking::parse("elimination y1 > y2", r.names()).unwrap();
    let f = p(&r, "(y2 y1' + 1) y1''^2 + y1'^2 y2'^3 y1'' + y1 y2^3 + x");
    let d = f.decompose(&rk).map_err(|e| e.to_string())?;
    ensure(d.leader == Derivative::new(0, 2), "leader is y1''")?;
    ensure(f.rank(&rk) == Some((Derivative::new(0, 2), 2)), "rank is y1''^2")?;
    ensure(d.initial == p(&r, "y2 y1' + 1"), "initial")?;
    ensure(d.separant == p(&r, "2 (y2 y1' + 1) y1'' + y1'^2 y2'^3"), "separant")?;
    let df = p(
        &r,
        "(2 (y2 y1' + 1) y1'' + y1'^2 y2'^3) y1''' + (y2 y1'' + y2' y1') y1''^2 \
         + (2 y1' y1'' y2'^3 + 3 y1'^2 y2'^2 y2'') y1'' + y1' y2^3 + 3 y1 y2^2 y2' + 1",
    );
    ensure(f.derive() == df, format!("δf = {}", f.derive().display_with(&rk)))?;
    ensure(f.derive().leader(&rk) == Some(Derivative::new(0, 3)), "leader of δf is δ(y1'')")?;
    within(start, Duration::from_secs(1), "AC1")?;
    Ok("leader, rank, initial, separant and δf of the worked example".into())
}

fn ac2() -> Check {
    let start = Instant::now();
    let r = ring("Q", &["Y"]);
    let rk = r.default_ranking();
    let pp = p(&r, "Y Y'^2 + Y' + 1");
    let d = pp.decompose(&rk).map_err(|e| e.to_string())?;
    ensure(d.leader == Derivative::new(0, 1) && d.degree == 2, "rank Y'^2")?;
    ensure(d.initial == p(&r, "Y") && d.separant == p(&r, "2 Y Y' + 1"), "initial and separant")?;
    let h = &d.initial * &d.separant;
    ensure(h == p(&r, "Y (2 Y Y' + 1)"), format!("h_p = {h}"))?;
    let set = AutoreducedSet::new(vec![pp], rk).map_err(|e| e.to_string())?;
    ensure(set.h_set() == vec![p(&r, "Y"), p(&r, "2 Y Y' + 1")], "H set")?;
    within(start, Duration::from_secs(1), "AC2")?;
    Ok("h_p = Y(2YY' + 1)".into())
}

fn ac3() -> Check {
    let r = ring("Q(t); d/dt t = 1", &["Y"]);
    let f = p(&r, "t Y'^2 + Y Y''");
    let expected = p(&r, "Y'^2 + 2 t Y' Y'' + Y' Y'' + Y Y'''");
    ensure(f.derive() == expected, format!("δp = {}", f.derive()))?;
    // the same through δ(...) in the grammar
    ensure(p(&r, "δ(t Y'^2 + Y Y'')") == expected, "δ(...) lowering")?;
    Ok("δ(tY'^2 + YY'') = Y'^2 + 2tY'Y'' + Y'Y'' + YY'''".into())
}

fn ac4() -> Check {
    let r = ring("Q", &["y1", "y2"]);
    let orderly = Ranking::parse("orderly y1 < y2", r.names()).unwrap();
    let elim = Ranking::parse("elimination y1 < y2", r.names()).unwrap();
    let (y1p, y2, y2p) = (Derivative::new(0, 1), Derivative::new(1, 0), Derivative::new(1, 1));
    ensure(orderly.compare(y1p, y2) == Ordering::Greater, "orderly: y1' > y2")?;
    ensure(orderly.compare(y1p, y2p) == Ordering::Less, "orderly: y1' < y2'")?;
    ensure(elim.compare(y1p, y2) == Ordering::Less, "elimination: y1' < y2")?;
    ensure(elim.compare(y1p, y2p) == Ordering::Less, "elimination: y1' < y2'")?;

    let f = p(&r, "y1' + y2");
    let g = p(&r, "y2' + y1");
    let elim_desc = Ranking::parse("elimination y1 > y2", r.names()).unwrap();
    ensure(f.is_reduced(&g, &orderly, ReducedMode::Fully).unwrap(), "y1'+y2 reduced w.r.t. y2'+y1 (orderly)")?;
    ensure(
        !f.is_reduced(&g, &elim_desc, ReducedMode::Partially).unwrap(),
        "y1'+y2 not partially reduced w.r.t. y2'+y1 (elimination)",
    )?;
    let y1 = p(&r, "y1");
    ensure(
        y1.is_reduced(&y1, &orderly, ReducedMode::Partially).unwrap() && !y1.is_reduced(&y1, &orderly, ReducedMode::Fully).unwrap(),
        "y1 partially reduced but not reduced w.r.t. y1",
    )?;

    let pair = vec![f.clone(), g.clone()];
    ensure(is_autoreduced(&pair, &orderly).unwrap(), "{y1'+y2, y2'+y1} autoreduced (orderly)")?;
    ensure(
        !is_autoreduced(&pair, &elim).unwrap() && !is_autoreduced(&pair, &elim_desc).unwrap(),
        "{y1'+y2, y2'+y1} not autoreduced in either elimination ranking",
    )?;

    let a = AutoreducedSet::new(pair.clone(), orderly.clone()).unwrap();
    let b = AutoreducedSet::new(vec![f.clone()], orderly).unwrap();
    ensure(a.compare_rank(&b).unwrap() == Ordering::Less, "A < B when A is longer with equal prefix")?;
    let swapped = Ranking::parse("orderly y2 < y1", r.names()).unwrap();
    let a = AutoreducedSet::new(pair, swapped.clone()).unwrap();
    let b = AutoreducedSet::new(vec![f], swapped).unwrap();
    ensure(a.compare_rank(&b).unwrap() == Ordering::Less, "A < B because rank A1 < rank B1")?;
    Ok("ranking, reducedness, autoreducedness and set-rank examples".into())
}

fn ac5() -> Check {
    let r = ring("Q", &["y"]);
    let rk = r.default_ranking();
    let f = p(&r, "2 y'' + 1");
    let a = p(&r, "y'^2 + y");
    let cert = ritt_reduce(&f, std::slice::from_ref(&a), &rk).map_err(|e| e.to_string())?;
    ensure(cert.remainder.is_zero(), "remainder 0")?;
    ensure(cert.verify() && independent_expansion(&cert), "certificate expands")?;
    ensure(cert.multiplier == p(&r, "2 y'"), format!("multiplier {}", cert.multiplier))?;

    let v = radical_diff_member(&f, std::slice::from_ref(&a), &[p(&r, "y'")], &Bounds::default()).map_err(|e| e.to_string())?;
    ensure(v.outcome == Outcome::Yes && v.verify(), "2y''+1 in the radical")?;
    let m = v.membership().ok_or("membership certificate")?;
    ensure(m.prolongation == 1 && m.exponent == 1, format!("prolongation {} exponent {}", m.prolongation, m.exponent))?;

    let one = DiffPoly::one(&r);
    let v = radical_diff_member(&one, std::slice::from_ref(&a), &[p(&r, "y'")], &Bounds::default()).map_err(|e| e.to_string())?;
    ensure(v.outcome == Outcome::Unknown && v.exhausted_bound.is_some() && v.verify(), "1 is Unknown")?;
    Ok("P1: remainder 0, Yes at (1, 1), Unknown for 1".into())
}

/// multiplier·f - Σ coefficient·δ^θ(A_i), expanded here rather than by the library.
fn independent_expansion(c: &ReductionCertificate) -> bool {
    let mut lhs = &c.multiplier * &c.input;
    for t in &c.combination {
        let mut d = c.divisors[t.divisor].clone();
        for _ in 0..t.theta {
            d = d.derive();
        }
        lhs = &lhs - &(&t.coefficient * &d);
    }
    let mut m = DiffPoly::one(c.input.ring());
    for &(kind, i, e) in &c.multiplier_factors {
        let dec = c.divisors[i].decompose(&c.ranking).unwrap();
        let base = match kind {
            diffalg::reduction::FactorKind::Initial => dec.initial,
            diffalg::reduction::FactorKind::Separant => dec.separant,
        };
        for _ in 0..e {
            m = &m * &base;
        }
    }
    lhs == c.remainder && m == c.multiplier
}

fn ac6() -> Check {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    // (ring, divisor shape, f shape) with shapes (terms, order, degree)
    let setups = [
        (ring("Q", &["y", "z"]), (3, 2, 2), (4, 3, 2)),
        (ring("Q(t); d/dt t = 1", &["y"]), (3, 1, 2), (3, 2, 2)),
    ];
    let mut failures = 0;
    let mut cases = 0;
    while cases < 500 {
        let (r, (at, ao, ad), (ft, fo, fd)) = &setups[cases % 2];
        let rk = if rng.gen_bool(0.5) { r.default_ranking() } else { Ranking::elimination(r.len()) };
        let f_set: Vec<DiffPoly> = (0..rng.gen_range(1..=3))
            .map(|_| random_diffpoly(&mut rng, r, *at, *ao, *ad))
            .filter(|x| !x.is_constant())
            .collect();
        if f_set.is_empty() {
            continue;
        }
        let a = characteristic_candidate(&f_set, &rk).map_err(|e| e.to_string())?;
        let f = random_diffpoly(&mut rng, r, *ft, *fo, *fd);
        let cert = ritt_reduce(&f, a.elements(), &rk).map_err(|e| e.to_string())?;
        let reduced = a
            .elements()
            .iter()
            .all(|g| cert.remainder.is_reduced(g, &rk, ReducedMode::Fully).unwrap());
        if !(cert.verify() && independent_expansion(&cert) && reduced) {
            failures += 1;
        }
        cases += 1;
    }
    ensure(failures == 0, format!("{failures} failing certificates"))?;
    within(start, Duration::from_secs(60), "AC6")?;
    Ok(format!("500 random reductions, 0 failures, {:.1?}", start.elapsed()))
}

/// Value of f at Y = s, Y^(k) = 0 for k > 0, in ℚ(s) with s² = 2.
fn at_root(f: &DiffPoly, s: &TowerElem, tower: &TowerDescriptor) -> TowerElem {
    let mut acc = TowerElem::zero(tower);
    for (m, c) in f.terms() {
        let mut term = TowerElem::from_rational(tower, c.to_rational().unwrap().clone());
        for &(d, e) in m.factors() {
            let v = if d.order == 0 { s.pow(e) } else { TowerElem::zero(tower) };
            term = term.checked_mul(&v).unwrap();
        }
        acc = acc.checked_add(&term).unwrap();
    }
    acc
}

fn ac7() -> Check {
    let r = ring("Q", &["Y"]);
    let q = QuotientRing::new(&p(&r, "Y^2 - 2")).map_err(|e| e.to_string())?;
    ensure(q.canon(&p(&r, "Y^3")).unwrap() == q.canon(&p(&r, "2 Y")).unwrap(), "canon(Y^3) = 2Y")?;
    ensure(q.canon(&p(&r, "Y^3")).unwrap().to_string() == "2*Y", "canon(Y^3) prints as 2*Y")?;
    ensure(q.derive(&q.canon(&p(&r, "Y")).unwrap()).unwrap().is_zero(), "derive(class of Y) = 0")?;

    let tower = TowerDescriptor::rationals().with_algebraic("s", &[-2, 0, 1]).unwrap();
    let s = tower.generator("s").unwrap();
    let value = |e: &diffalg::reduction::QuotientElem| {
        at_root(e.numerator(), &s, &tower).checked_div(&at_root(e.denominator(), &s, &tower)).unwrap()
    };
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..500 {
        let f = random_diffpoly(&mut rng, &r, 3, 2, 3);
        let g = random_diffpoly(&mut rng, &r, 3, 2, 3);
        let (cf, cg) = (q.canon(&f).unwrap(), q.canon(&g).unwrap());
        ensure(q.add(&cf, &cg).unwrap() == q.canon(&(&f + &g)).unwrap(), format!("additive on {f}, {g}"))?;
        ensure(q.mul(&cf, &cg).unwrap() == q.canon(&(&f * &g)).unwrap(), format!("multiplicative on {f}, {g}"))?;
        ensure(q.derive(&cf).unwrap() == q.canon(&f.derive()).unwrap(), format!("differential on {f}"))?;
        ensure(value(&cf) == at_root(&f, &s, &tower), format!("value at the root of {f}"))?;
    }
    Ok("canon(Y^3) = 2Y, δ[Y] = 0, 500 random pairs agree with evaluation in Q(√2)".into())
}

fn int_poly(coeffs: &[i64]) -> TowerPoly {
    let t = TowerDescriptor::rationals();
    let cs: Vec<TowerElem> = coeffs.iter().map(|&c| TowerElem::from_int(&t, c)).collect();
    TowerPoly::from_coefficients(&t, "X", &cs).unwrap()
}

fn mul_coeffs(a: &[i64], b: &[i64]) -> Vec<i64> {
    let mut out = vec![0; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn random_coeffs(rng: &mut ChaCha8Rng, deg: usize, h: i64) -> Vec<i64> {
    let mut v: Vec<i64> = (0..=deg).map(|_| rng.gen_range(-h..=h)).collect();
    if v[deg] == 0 {
        v[deg] = 1;
    }
    v
}

fn ac8() -> Check {
    let start = Instant::now();
    let f = factor_rationals(&int_poly(&[4, 0, 0, 0, 1])).map_err(|e| e.to_string())?;
    let want = [int_poly(&[2, -2, 1]), int_poly(&[2, 2, 1])];
    ensure(f.factors.len() == 2 && want.iter().all(|w| f.factors.iter().any(|(g, e)| g == w && *e == 1)), format!("X^4+4 = {f}"))?;

    let mut rng = ChaCha8Rng::seed_from_u64(99);
    let mut products = 0;
    while products < 200 {
        let k = rng.gen_range(2..=3);
        let mut parts = Vec::new();
        while parts.len() < k {
            let deg = rng.gen_range(1..=3);
            let g = random_coeffs(&mut rng, deg, 4);
            let monic_prim = g.iter().fold(0i64, |a, &b| num_integer::gcd(a, b)) == 1;
            if monic_prim && g[0] != 0 && brute_force_factor_count(&g) == 1 {
                parts.push(g);
            }
        }
        let prod = parts.iter().skip(1).fold(parts[0].clone(), |acc, g| mul_coeffs(&acc, g));
        let pp = int_poly(&prod);
        let fac = factor_rationals(&pp).map_err(|e| e.to_string())?;
        ensure(fac.verify(&pp) && fac.expand() == pp, format!("round trip of {pp}"))?;
        let count: u32 = fac.factors.iter().map(|(_, e)| e).sum();
        ensure(count as usize == k, format!("{pp} has {count} factors, built from {k}"))?;
        products += 1;
    }

    let mut agreements = 0;
    while agreements < 100 {
        let deg = rng.gen_range(1..=5);
        let g = random_coeffs(&mut rng, deg, 10);
        let content = g.iter().fold(0i64, |a, &b| num_integer::gcd(a, b));
        let g: Vec<i64> = g.iter().map(|c| c / content).collect();
        if g[0] == 0 {
            continue;
        }
        let pp = int_poly(&g);
        let ours = factor_rationals(&pp).map_err(|e| e.to_string())?.is_irreducible();
        let oracle = brute_force_factor_count(&g) == 1;
        ensure(ours == oracle, format!("irreducibility of {pp}: ours {ours}, oracle {oracle}"))?;
        agreements += 1;
    }
    within(start, Duration::from_secs(120), "AC8")?;
    Ok(format!("X^4+4 split, 200 products round trip, 100 oracle agreements, {:.1?}", start.elapsed()))
}

fn ac9() -> Check {
    let qt = ring("Q(t); d/dt t = 1", &["Y"]);
    let q = ring("Q", &["Y"]);
    let bounds = ConstraintBounds::default();

    let start = Instant::now();
    let query = ConstraintQuery::new(p(&qt, "Y^2 - t"), DiffPoly::one(&qt));
    let v = verify_constrained_pair(&query, &bounds).map_err(|e| e.to_string())?;
    ensure(matches!(v.outcome, ConstraintOutcome::ConstrainedUpTo { .. }) && v.verify(&query), "(Y^2 - t, 1)")?;
    within(start, Duration::from_secs(10), "(Y^2 - t, 1)")?;

    for (r, qs) in [(&q, vec!["1", "Y", "Y^2 + 1", "3 Y - 1"]), (&qt, vec!["1", "Y - t", "t Y^2"])] {
        for qq in qs {
            let start = Instant::now();
            let query = ConstraintQuery::new(p(r, "Y'"), p(r, qq));
            let v = verify_constrained_pair(&query, &bounds).map_err(|e| e.to_string())?;
            let ok = matches!(&v.outcome,
                ConstraintOutcome::Unconstrainable(UnconstrainableReason::TotalDerivative(t)) if *t == p(r, "Y"));
            ensure(ok && v.verify(&query), format!("(Y', {qq})"))?;
            within(start, Duration::from_secs(10), "(Y', q)")?;
        }
    }

    let start = Instant::now();
    let query = ConstraintQuery::new(p(&qt, "Y' - 1"), DiffPoly::one(&qt));
    let v = verify_constrained_pair(&query, &bounds).map_err(|e| e.to_string())?;
    let ok = matches!(&v.outcome,
        ConstraintOutcome::Unconstrainable(UnconstrainableReason::TotalDerivative(t)) if *t == p(&qt, "Y - t"));
    ensure(ok && v.verify(&query), "(Y' - 1, 1)")?;
    within(start, Duration::from_secs(10), "(Y' - 1, 1)")?;

    ensure(is_total_derivative(&p(&q, "Y' - Y")) == TotalDerivative::No, "Y' - Y is not a total derivative")?;
    Ok("ConstrainedUpTo, TotalDerivative(Y), TotalDerivative(Y - t), No".into())
}

fn honest(v: &Verdict) -> bool {
    v.verify()
        && match v.outcome {
            Outcome::Yes | Outcome::No => v.certificate.is_some() && v.exhausted_bound.is_none(),
            Outcome::Unknown => v.certificate.is_none() && v.exhausted_bound.is_some(),
        }
}

fn ac10() -> Check {
    let r = ring("Q", &["y"]);
    let qt = ring("Q(t); d/dt t = 1", &["Y"]);
    let rosenfeld = Bounds {
        rosenfeld_refutation: true,
        ..Bounds::default()
    };
    let tight = Bounds {
        max_prolongation: Some(0),
        max_exponent: 1,
        ..Bounds::default()
    };
    let mut verdicts: Vec<Verdict> = Vec::new();
    let sat = [p(&r, "y'")];
    for (g, gens) in [("2y''+1", "y'^2+y"), ("1", "y'^2+y"), ("y'", "y"), ("y", "y^3"), ("y''", "y'^2+y")] {
        let gens = vec![p(&r, gens)];
        for b in [Bounds::default(), rosenfeld, tight] {
            verdicts.push(radical_diff_member(&p(&r, g), &gens, &sat, &b).unwrap());
            verdicts.push(radical_diff_member(&p(&r, g), &gens, &[], &b).unwrap());
        }
    }
    for (f, g) in [("y", "y'"), ("y'", "y"), ("y'^2+y; 2y''+1", "y'^2+y")] {
        let fs: Vec<DiffPoly> = f.split(';').map(|x| p(&r, x)).collect();
        let gs: Vec<DiffPoly> = g.split(';').map(|x| p(&r, x)).collect();
        for b in [Bounds::default(), rosenfeld] {
            verdicts.push(variety_containment(&fs, &gs, &b).unwrap());
        }
    }
    for (pp, h, qq) in [("Y^2 - t", "Y - 1", "1"), ("Y^2 - t", "1", "1"), ("Y^2 - t", "Y", "1"), ("Y'^2 + Y", "2Y''+1", "Y'")] {
        for b in [Bounds::default(), rosenfeld] {
            verdicts.push(empty_constrained_locus(&p(&qt, pp), &p(&qt, h), &p(&qt, qq), &b).unwrap());
        }
    }
    let mut seen = [0usize; 3];
    for v in &verdicts {
        ensure(honest(v), format!("{:?} verdict without valid evidence", v.outcome))?;
        seen[v.outcome as usize] += 1;
    }
    ensure(seen.iter().all(|&n| n > 0), format!("Yes/No/Unknown counts {seen:?}"))?;

    for (pp, qq) in [("Y^2 - t", "1"), ("Y' - 1", "1"), ("Y'^2 + Y", "1"), ("Y' Y - t", "Y")] {
        let query = ConstraintQuery::new(p(&qt, pp), p(&qt, qq));
        let v = verify_constrained_pair(&query, &ConstraintBounds::default()).unwrap();
        ensure(v.verify(&query), format!("constraint verdict for ({pp}, {qq})"))?;
        for (_, t) in &v.tested {
            ensure(honest(t), "tested candidate verdict")?;
        }
    }
    Ok(format!("{} verdicts re-verified (Yes {}, No {}, Unknown {})", verdicts.len(), seen[0], seen[1], seen[2]))
}

fn cli(args: &[&str]) -> (String, i32) {
    let out = Command::new(env!("CARGO_BIN_EXE_diffalg")).args(args).output().expect("binary runs");
    (String::from_utf8(out.stdout).expect("UTF-8 output"), out.status.code().unwrap_or(-1))
}

fn ac11() -> Check {
    let examples: [(&[&str], &str, i32); 3] = [
        (&["--field", "Q(t); d/dt t=1", "constrained?", "Y^2 - t", "1"], "verdict ConstrainedUpTo\n", 0),
        (&["--field", "Q", "total-derivative?", "y'"], "p̃ = y\n", 0),
        (&["--field", "Q", "reduce", "2y''+1", "--set", "y'^2+y"], "remainder 0\n", 0),
    ];
    for (args, out, code) in examples {
        let got = cli(args);
        ensure(got == (out.to_string(), code), format!("{args:?} gave {got:?}"))?;
    }

    let taxonomy: [(&[&str], i32); 8] = [
        (&["member", "2y''+1", "y'^2+y", "y'"], 0),
        (&["member", "1", "y'^2+y", "y'"], 2),
        (&["total-derivative?", "y' - y"], 1),
        (&["constrained?", "y'", "1"], 1),
        (&["split?", "X^2 + 1"], 1),
        (&["split?", "X^4 + 4"], 0),
        (&["reduce", "y +", "--set", "y"], 65),
        (&["no-such-command"], 64),
    ];
    for (args, code) in taxonomy {
        let got = cli(args).1;
        ensure(got == code, format!("{args:?} exited {got}, expected {code}"))?;
    }

    let schema: Value =
        serde_json::from_str(include_str!("../../../schemas/output.schema.json")).map_err(|e| e.to_string())?;
    let validator = jsonschema::validator_for(&schema).map_err(|e| e.to_string())?;
    let runs: [&[&str]; 20] = [
        &["reduce", "2y''+1", "--set", "y'^2+y"],
        &["canon", "Y^2-2", "Y^3"],
        &["canon", "Y^2-2", "1", "Y"],
        &["autoreduced?", "y1'+y2; y2'+y1"],
        &["set-rank-compare", "y'", "y''"],
        &["charset", "y'^2+y; 2y''+1"],
        &["member", "2y''+1", "y'^2+y", "y'"],
        &["member", "1", "y'^2+y", "y'"],
        &["--rosenfeld", "member", "y", "y'^2+y"],
        &["--field", "Q(t); d/dt t = 1", "empty-locus", "Y^2-t", "Y-1", "1"],
        &["contains", "y'^2+y; 2y''+1", "y'^2+y; y'"],
        &["factor", "X^4+4"],
        &["split?", "X^2-2"],
        &["--ext", "s: s^2-2", "minpoly", "s+1"],
        &["--field", "Q(t); d/dt t=1", "constrained?", "Y^2 - t", "1"],
        &["--field", "Q(t); d/dt t=1", "constrained?", "Y' - 1", "1"],
        &["total-derivative?", "y' - y"],
        &["order", "y''^2+y"],
        &["equiv-constraint", "y'^2-y", "1", "y'"],
        &["decompose", "y y'^2 + y' + 1"],
    ];
    let errors: [&[&str]; 3] = [&["order", "y +"], &["frobnicate"], &["--vars", "y", "order", "z"]];
    for args in runs.iter().chain(errors.iter()) {
        let mut full = vec!["--json"];
        full.extend_from_slice(args);
        let (out, code) = cli(&full);
        let v: Value = serde_json::from_str(&out).map_err(|e| format!("{args:?}: {e}: {out}"))?;
        if let Some(e) = validator.iter_errors(&v).next() {
            return Err(format!("{args:?}: {e} at {}", e.instance_path()));
        }
        ensure(v["exit_code"] == code, format!("{args:?}: exit_code field"))?;
    }
    Ok(format!("3 examples byte-for-byte, 8 exit codes, {} JSON documents valid", runs.len() + errors.len()))
}

fn main() {
    let checks: [(&str, fn() -> Check); 11] = [
        ("AC1", ac1),
        ("AC2", ac2),
        ("AC3", ac3),
        ("AC4", ac4),
        ("AC5", ac5),
        ("AC6", ac6),
        ("AC7", ac7),
        ("AC8", ac8),
        ("AC9", ac9),
        ("AC10", ac10),
        ("AC11", ac11),
    ];
    let mut failed = 0;
    for (name, check) in checks {
        let result = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        match result {
            Ok(detail) => println!("{name} pass: {detail}"),
            Err(why) => {
                failed += 1;
                println!("{name} FAIL: {why}");
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
