use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::parse::{lower_diffpoly, lower_tower_poly};
use super::*;
use crate::ground::{FieldDescriptor, FieldElem};
use crate::testing::{q_t, random_diffpoly};

fn ring_y() -> Arc<DiffRing> {
    DiffRing::new(FieldDescriptor::rationals(), &["y"]).unwrap()
}

fn lower(ring: &Arc<DiffRing>, s: &str) -> DiffPoly {
    lower_diffpoly(&parse_expr(s).unwrap(), ring).unwrap()
}

fn y(ring: &Arc<DiffRing>, k: u32) -> DiffPoly {
    DiffPoly::derivative(ring, 0, k)
}

fn cli(args: &[&str]) -> Output {
    run(args.iter().copied())
}

#[test]
fn square_of_first_derivative_plus_y() {
    let r = ring_y();
    assert_eq!(lower(&r, "y'^2 + y"), &y(&r, 1).pow(2) + &y(&r, 0));
    assert_eq!(lower(&r, "(y')^2+y"), lower(&r, "y'^2 + y"));
    assert_eq!(lower(&r, "y' y' + y"), lower(&r, "y'^2 + y"));
}

#[test]
fn delta_is_expanded_when_lowering() {
    let r = ring_y();
    let two = DiffPoly::from_int(&r, 2);
    assert_eq!(lower(&r, "δ(y^2 - 2)"), &(&two * &y(&r, 0)) * &y(&r, 1));
    assert_eq!(lower(&r, "delta(delta(y))"), y(&r, 2));
    assert_eq!(lower(&r, "δ(y)^2"), y(&r, 1).pow(2));
}

#[test]
fn generator_coefficients() {
    let f = q_t();
    let r = DiffRing::new(f.clone(), &["y"]).unwrap();
    let t = DiffPoly::constant(&r, FieldElem::generator(&f, 0));
    let p = lower(&r, "t*(y')^2 + y*y''");
    assert_eq!(p, &(&t * &y(&r, 1).pow(2)) + &(&y(&r, 0) * &y(&r, 2)));
    // δ(t·Y'²) = Y'² + 2t·Y'·Y''
    let two = DiffPoly::from_int(&r, 2);
    let expected = &y(&r, 1).pow(2) + &(&(&two * &t) * &(&y(&r, 1) * &y(&r, 2)));
    assert_eq!(lower(&r, "δ(t y'^2)"), expected);
    assert_eq!(lower(&r, "t'"), DiffPoly::one(&r));
    assert_eq!(lower(&r, "y/t * t"), y(&r, 0));
}

#[test]
fn division_needs_a_constant() {
    let r = ring_y();
    assert_eq!(lower(&r, "y/2 + y/2"), y(&r, 0));
    assert!(matches!(lower_diffpoly(&parse_expr("1/y").unwrap(), &r), Err(Error::Syntax { .. })));
    assert!(lower_diffpoly(&parse_expr("y/0").unwrap(), &r).is_err());
}

#[test]
fn unknown_names_with_declared_indeterminates() {
    let c = SessionConfig {
        indeterminates: vec!["y".into()],
        ..Default::default()
    };
    assert!(parse("y' + 1", &c).is_ok());
    assert_eq!(parse("y + z", &c), Err(Error::UnknownName("z".into())));
    let inferred = SessionConfig::default();
    assert!(parse("y + z", &inferred).is_ok());
}

#[test]
fn unknown_generator_in_tower() {
    let t = TowerDescriptor::rationals();
    assert!(matches!(lower_tower_poly(&parse_expr("X + i").unwrap(), &t, &["X"]), Err(Error::UnknownName(_))));
    assert!(lower_tower_poly(&parse_expr("X'").unwrap(), &t, &["X"]).is_err());
}

#[test]
fn parse_print_parse_is_idempotent() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for field in [FieldDescriptor::rationals(), q_t()] {
        let r = DiffRing::new(field, &["y", "z"]).unwrap();
        for _ in 0..300 {
            let p = random_diffpoly(&mut rng, &r, 4, 5, 3);
            let text = p.to_string();
            let q = lower(&r, &text);
            assert_eq!(q, p, "{text}");
            assert_eq!(q.to_string(), text);
        }
    }
}

#[test]
fn printed_high_orders_parse_back() {
    let r = ring_y();
    let p = &y(&r, 7).pow(3) - &y(&r, 4);
    assert_eq!(p.to_string(), "y^(7)^3 - y^(4)");
    assert_eq!(lower(&r, &p.to_string()), p);
}

#[test]
fn cli_examples() {
    let o = cli(&["--field", "Q(t); d/dt t=1", "constrained?", "Y^2 - t", "1"]);
    assert_eq!((o.stdout.as_str(), o.code), ("verdict ConstrainedUpTo\n", 0));
    let o = cli(&["--field", "Q", "total-derivative?", "y'"]);
    assert_eq!((o.stdout.as_str(), o.code), ("p̃ = y\n", 0));
    let o = cli(&["--field", "Q", "reduce", "2y''+1", "--set", "y'^2+y"]);
    assert_eq!((o.stdout.as_str(), o.code), ("remainder 0\n", 0));
}

#[test]
fn exit_codes_follow_verdicts() {
    assert_eq!(cli(&["member", "2y''+1", "y'^2+y", "y'"]).code, EXIT_YES);
    assert_eq!(cli(&["member", "1", "y'^2+y", "y'"]).code, EXIT_UNKNOWN);
    assert_eq!(cli(&["total-derivative?", "y' - y"]).code, EXIT_NO);
    assert_eq!(cli(&["constrained?", "y'", "1"]).code, EXIT_NO);
    assert_eq!(cli(&["autoreduced?", "y'^2 + y; y"]).code, EXIT_NO);
    assert_eq!(cli(&["split?", "X^2 - 1"]).code, EXIT_YES);
    assert_eq!(cli(&["split?", "X^2 + 1"]).code, EXIT_NO);
    assert_eq!(cli(&["--ext", "i: i^2 + 1", "split?", "X^2 + 1"]).code, EXIT_YES);
    assert_eq!(cli(&["reduce", "y +", "--set", "y"]).code, EXIT_ERROR);
    assert_eq!(cli(&["--vars", "y", "order", "z'"]).code, EXIT_ERROR);
    assert_eq!(cli(&["frobnicate"]).code, EXIT_USAGE);
    assert_eq!(cli(&[]).code, EXIT_USAGE);
    assert_eq!(cli(&["--config", "/nonexistent/diffalg.toml", "order", "y"]).code, EXIT_USAGE);
}

#[test]
fn text_outputs() {
    assert_eq!(cli(&["canon", "Y^2 - 2", "Y^3"]).stdout, "2*Y\n");
    assert_eq!(cli(&["factor", "X^4 + 4"]).stdout, "(X^2 + 2*X + 2)*(X^2 - 2*X + 2)\n");
    assert_eq!(cli(&["--ext", "s: s^2 - 2", "minpoly", "s + 1"]).stdout, "X^2 - 2*X - 1\n");
    assert_eq!(cli(&["order", "y''^2 + y"]).stdout, "order 2\n");
    assert_eq!(cli(&["set-rank-compare", "y'", "y''"]).stdout, "LT\n");
    assert_eq!(cli(&["charset", "y''; y'^2 + 1; y''' + y"]).stdout, "charset y'^2 + 1\n");
    let o = cli(&["--field", "Q(t); d/dt t = 1", "constrained?", "y' - 1", "1"]);
    assert_eq!(o.stdout, "verdict Unconstrainable\nreason TotalDerivative p̃ = y - t\n");
    let o = cli(&["--ranking", "elimination y1 > y2", "decompose", "y1' y2'' + y2^3"]);
    assert!(o.stdout.starts_with("leader y1'\ndegree 1\ninitial y2''\n"), "{}", o.stdout);
    let o = cli(&["equiv-constraint", "y'^2 - y", "1", "y'"]);
    assert_eq!((o.stdout.as_str(), o.code), ("verdict Yes\nremainder y'\n", 0));
}

#[test]
fn negative_leading_arguments() {
    let o = cli(&["reduce", "-y'' + y", "--set", "y' - 1"]);
    assert_eq!(o.code, 0, "{}", o.stderr);
    assert_eq!(o.stdout, "remainder y\n");
}

#[test]
fn json_output_shapes() {
    let o = cli(&["--json", "member", "2y''+1", "y'^2+y", "y'"]);
    let v: Value = serde_json::from_str(&o.stdout).unwrap();
    assert_eq!(v["command"], "member");
    assert_eq!(v["exit_code"], 0);
    assert_eq!(v["result"]["outcome"], "Yes");
    assert_eq!(v["result"]["certificate"]["kind"], "membership");
    let o = cli(&["--json", "member", "1", "y'^2+y", "y'"]);
    let v: Value = serde_json::from_str(&o.stdout).unwrap();
    assert_eq!(v["result"]["outcome"], "Unknown");
    assert!(v["result"]["exhausted_bound"].is_object());
    let o = cli(&["--json", "order", "y +"]);
    let v: Value = serde_json::from_str(&o.stdout).unwrap();
    assert_eq!(v["error"]["kind"], "SyntaxError");
    assert_eq!(v["error"]["column"], 4);
    let o = cli(&["--json", "nonsense"]);
    let v: Value = serde_json::from_str(&o.stdout).unwrap();
    assert_eq!(v["exit_code"], 64);
}

#[test]
fn bound_flags_reach_the_procedures() {
    let o = cli(&["--bound-k", "0", "member", "2y''+1", "y'^2+y", "y'"]);
    assert_eq!(o.code, EXIT_UNKNOWN);
    assert!(o.stdout.contains("prolongation 0"), "{}", o.stdout);
    let o = cli(&["--bound-e", "2", "member", "x", "x^3"]);
    assert_eq!(o.code, EXIT_UNKNOWN);
    assert_eq!(cli(&["member", "x", "x^3"]).code, EXIT_YES);
}

#[test]
fn config_file_and_flag_precedence() {
    let dir = std::env::temp_dir().join(format!("diffalg-shell-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("session.toml");
    let c = SessionConfig {
        field: "Q(t); d/dt t = 1".into(),
        ..Default::default()
    };
    std::fs::write(&path, c.to_toml()).unwrap();
    let p = path.to_str().unwrap();
    let o = cli(&["--config", p, "total-derivative?", "y' - 1"]);
    assert_eq!(o.stdout, "p̃ = y - t\n");
    let o = cli(&["--config", p, "--field", "Q", "total-derivative?", "y' - 1"]);
    assert_eq!(o.code, EXIT_NO);
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn script_mode() {
    let dir = std::env::temp_dir().join(format!("diffalg-script-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("run.txt");
    std::fs::write(
        &path,
        "# comment\nreduce \"2y''+1\" --set \"y'^2+y\"\n\ntotal-derivative? \"y' - y\"\nmember 1 \"y'^2+y\" \"y'\"\n",
    )
    .unwrap();
    let o = cli(&["--script", path.to_str().unwrap()]);
    assert_eq!(o.code, EXIT_UNKNOWN);
    let lines: Vec<&str> = o.stdout.lines().collect();
    assert_eq!(lines[0], "remainder 0");
    assert_eq!(lines[1], "not a total derivative");
    assert_eq!(lines[2], "verdict Unknown");
    let o = cli(&["--json", "--script", path.to_str().unwrap()]);
    assert_eq!(o.stdout.lines().count(), 3);
    for l in o.stdout.lines() {
        serde_json::from_str::<Value>(l).unwrap();
    }
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn derivatives_reduce_to_zero_through_the_cli() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let r = ring_y();
    for _ in 0..20 {
        let p = random_diffpoly(&mut rng, &r, 3, 2, 2);
        if p.is_constant() {
            continue;
        }
        let k = rng.gen_range(1..3);
        let o = cli(&["reduce", &p.derive_n(k).to_string(), "--set", &p.to_string()]);
        assert_eq!((o.stdout.as_str(), o.code), ("remainder 0\n", EXIT_YES), "{p}");
    }
}
