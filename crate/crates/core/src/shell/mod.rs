//! Command-line front end: expression parsing, session configuration and
//! dispatch of every library operation.
//!
//! Exit codes: 0 for success or Yes, 1 for No, 2 for Unknown, 64 for usage
//! errors and 65 for errors reported by the library.

pub mod config;
pub mod parse;

use std::cmp::Ordering;
use std::path::PathBuf;
use std::sync::Arc;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use crate::charsets::{characteristic_candidate, is_autoreduced, AutoreducedSet};
use crate::constraints::{
    equivalent_constraints, generic_order, is_total_derivative, verify_constrained_pair, ConstraintOutcome,
    ConstraintQuery, NotConstrainedReason, TotalDerivative, UnconstrainableReason,
};
use crate::diffpoly::{derivative_text, DiffPoly, DiffRing, Ranking};
use crate::error::{Error, Result};
use crate::ideals::{empty_constrained_locus, radical_diff_member, variety_containment, Certificate, Outcome, Verdict};
use crate::reduction::{ritt_reduce, QuotientRing};
use crate::splitting::{factor, minimal_polynomial, splitting_query, TowerDescriptor};

pub use config::{BoundsConfig, OutputFormat, SessionConfig};
pub use parse::{parse_expr, Ast, Pos};

pub const EXIT_YES: i32 = 0;
pub const EXIT_NO: i32 = 1;
pub const EXIT_UNKNOWN: i32 = 2;
pub const EXIT_USAGE: i32 = 64;
pub const EXIT_ERROR: i32 = 65;

#[derive(Parser, Debug)]
#[command(name = "diffalg", version, about = "Ordinary differential polynomial algebra", args_override_self = true)]
struct Cli {
    /// Ground field, e.g. `Q` or `Q(t); d/dt t = 1`.
    #[arg(long, global = true)]
    field: Option<String>,
    /// Algebraic extension `name: minimal polynomial`; repeatable.
    #[arg(long = "ext", global = true)]
    extensions: Vec<String>,
    /// Comma-separated indeterminates; inferred from the input when absent.
    #[arg(long, global = true)]
    vars: Option<String>,
    /// `orderly` or `elimination`, optionally followed by an order such as `y1 > y2`.
    #[arg(long, global = true)]
    ranking: Option<String>,
    #[arg(long, global = true)]
    json: bool,
    /// Print certificates and witnesses.
    #[arg(long, global = true)]
    certificate: bool,
    #[arg(long, global = true)]
    verbose: bool,
    /// TOML session configuration.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Run one command per line.
    #[arg(long)]
    script: Option<PathBuf>,
    /// Largest prolongation order.
    #[arg(long, global = true)]
    bound_k: Option<u32>,
    /// Largest exponent of the target.
    #[arg(long, global = true)]
    bound_e: Option<u32>,
    /// Step budget per ideal computation.
    #[arg(long, global = true)]
    budget: Option<u64>,
    /// Highest order of the candidates h.
    #[arg(long, global = true)]
    h_order: Option<u32>,
    #[arg(long, global = true)]
    h_degree: Option<u32>,
    /// Coefficient height of the candidates h.
    #[arg(long, global = true)]
    height: Option<u32>,
    #[arg(long, global = true)]
    max_candidates: Option<usize>,
    /// Allow refutations from Rosenfeld-applicable autoreduced inputs.
    #[arg(long, global = true)]
    rosenfeld: bool,
    #[command(subcommand)]
    command: Option<Command>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Ritt reduction of F by an autoreduced set.
    Reduce {
        #[arg(allow_hyphen_values = true)]
        f: String,
        /// Divisors separated by `;`.
        #[arg(long, allow_hyphen_values = true)]
        set: String,
    },
    /// Canonical form of F (or F/G) modulo the monic irreducible P.
    Canon {
        #[arg(allow_hyphen_values = true)]
        p: String,
        #[arg(allow_hyphen_values = true)]
        f: String,
        #[arg(allow_hyphen_values = true)]
        g: Option<String>,
    },
    #[command(name = "autoreduced?")]
    Autoreduced {
        #[arg(allow_hyphen_values = true)]
        set: String,
    },
    /// Compares the ranks of two autoreduced sets: LT, EQ or GT.
    SetRankCompare {
        #[arg(allow_hyphen_values = true)]
        a: String,
        #[arg(allow_hyphen_values = true)]
        b: String,
    },
    /// A lowest-rank autoreduced subset.
    Charset {
        #[arg(allow_hyphen_values = true)]
        set: String,
    },
    /// g ∈ √([G] : S^∞)?
    Member {
        #[arg(allow_hyphen_values = true)]
        g: String,
        #[arg(allow_hyphen_values = true)]
        gens: String,
        #[arg(allow_hyphen_values = true)]
        sat: Option<String>,
    },
    /// Is the locus p = 0, h ≠ 0, q ≠ 0 empty?
    EmptyLocus {
        #[arg(allow_hyphen_values = true)]
        p: String,
        #[arg(allow_hyphen_values = true)]
        h: String,
        #[arg(allow_hyphen_values = true)]
        q: String,
    },
    /// Does V(F) lie inside V(G)?
    Contains {
        #[arg(allow_hyphen_values = true)]
        f: String,
        #[arg(allow_hyphen_values = true)]
        g: String,
    },
    Factor {
        #[arg(allow_hyphen_values = true)]
        p: String,
    },
    /// Is P reducible over the field and its extensions?
    #[command(name = "split?")]
    Split {
        #[arg(allow_hyphen_values = true)]
        p: String,
    },
    /// Minimal polynomial over the ground field of an element of an extension.
    Minpoly {
        #[arg(allow_hyphen_values = true)]
        elem: String,
    },
    #[command(name = "constrained?")]
    Constrained {
        #[arg(allow_hyphen_values = true)]
        p: String,
        #[arg(allow_hyphen_values = true)]
        q: String,
    },
    #[command(name = "total-derivative?")]
    TotalDerivative {
        #[arg(allow_hyphen_values = true)]
        p: String,
    },
    /// Order and transcendence degree of the generic solution of p.
    Order {
        #[arg(allow_hyphen_values = true)]
        p: String,
    },
    /// Does q̃ define the same constraint as q for p?
    EquivConstraint {
        #[arg(allow_hyphen_values = true)]
        p: String,
        #[arg(allow_hyphen_values = true)]
        q: String,
        #[arg(allow_hyphen_values = true)]
        q_tilde: String,
    },
    /// Leader, degree, initial and separant.
    Decompose {
        #[arg(allow_hyphen_values = true)]
        f: String,
    },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Reduce { .. } => "reduce",
            Command::Canon { .. } => "canon",
            Command::Autoreduced { .. } => "autoreduced?",
            Command::SetRankCompare { .. } => "set-rank-compare",
            Command::Charset { .. } => "charset",
            Command::Member { .. } => "member",
            Command::EmptyLocus { .. } => "empty-locus",
            Command::Contains { .. } => "contains",
            Command::Factor { .. } => "factor",
            Command::Split { .. } => "split?",
            Command::Minpoly { .. } => "minpoly",
            Command::Constrained { .. } => "constrained?",
            Command::TotalDerivative { .. } => "total-derivative?",
            Command::Order { .. } => "order",
            Command::EquivConstraint { .. } => "equiv-constraint",
            Command::Decompose { .. } => "decompose",
        }
    }

    /// Every expression argument, sets already split at `;`.
    fn expressions(&self) -> Vec<&str> {
        match self {
            Command::Reduce { f, set } => std::iter::once(f.as_str()).chain(split_set(set)).collect(),
            Command::Canon { p, f, g } => [Some(p), Some(f), g.as_ref()].into_iter().flatten().map(String::as_str).collect(),
            Command::Autoreduced { set } | Command::Charset { set } => split_set(set),
            Command::SetRankCompare { a, b } | Command::Contains { f: a, g: b } => split_set(a).into_iter().chain(split_set(b)).collect(),
            Command::Member { g, gens, sat } => std::iter::once(g.as_str())
                .chain(split_set(gens))
                .chain(sat.as_deref().map(split_set).unwrap_or_default())
                .collect(),
            Command::EmptyLocus { p, h, q } => vec![p, h, q],
            Command::EquivConstraint { p, q, q_tilde } => vec![p, q, q_tilde],
            Command::Constrained { p, q } => vec![p, q],
            Command::Factor { p } | Command::Split { p } | Command::TotalDerivative { p } | Command::Order { p } => vec![p],
            Command::Minpoly { elem } => vec![elem],
            Command::Decompose { f } => vec![f],
        }
    }
}

fn split_set(s: &str) -> Vec<&str> {
    s.split(';').map(str::trim).filter(|x| !x.is_empty()).collect()
}

/// Output of one invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Output {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

struct Flags {
    json: bool,
    certificate: bool,
    verbose: bool,
}

/// Checks every name of `input` against the session; with no declared
/// indeterminates, unknown names become indeterminates.
pub fn parse(input: &str, config: &SessionConfig) -> Result<Ast> {
    let ast = parse_expr(input)?;
    if config.indeterminates.is_empty() {
        return Ok(ast);
    }
    let field = config.field_descriptor()?;
    let tower = config.tower()?;
    for n in ast.names() {
        if !config.indeterminates.contains(&n) && field.generator_index(&n).is_none() && tower.generator(&n).is_none() {
            return Err(Error::UnknownName(n));
        }
    }
    Ok(ast)
}

/// Sorts names by alphabetic prefix, then numeric suffix: y2 before y10.
fn natural_key(s: &str) -> (String, u64, String) {
    let digits = s.len() - s.trim_end_matches(|c: char| c.is_ascii_digit()).len();
    let (head, tail) = s.split_at(s.len() - digits);
    (head.to_string(), tail.parse().unwrap_or(0), s.to_string())
}

struct Session {
    config: SessionConfig,
    flags: Flags,
}

struct Reply {
    text: String,
    json: Value,
    code: i32,
}

impl Reply {
    fn ok(text: String, json: Value) -> Self {
        Reply { text, json, code: EXIT_YES }
    }
}

fn outcome_code(o: Outcome) -> i32 {
    match o {
        Outcome::Yes => EXIT_YES,
        Outcome::No => EXIT_NO,
        Outcome::Unknown => EXIT_UNKNOWN,
    }
}

fn outcome_word(o: Outcome) -> &'static str {
    match o {
        Outcome::Yes => "Yes",
        Outcome::No => "No",
        Outcome::Unknown => "Unknown",
    }
}

fn unverified() -> Error {
    Error::Unsupported("a certificate failed to re-verify".into())
}

impl Session {
    /// Parses the arguments into a ring chosen from the session and the names used.
    fn lower_all(&self, exprs: &[&str]) -> Result<(Vec<DiffPoly>, Arc<DiffRing>, Ranking)> {
        let field = self.config.field_descriptor()?;
        let asts = exprs.iter().map(|e| parse(e, &self.config)).collect::<Result<Vec<_>>>()?;
        let names = if self.config.indeterminates.is_empty() {
            let mut names: Vec<String> = Vec::new();
            for a in &asts {
                for n in a.names() {
                    if field.generator_index(&n).is_none() && !names.contains(&n) {
                        names.push(n);
                    }
                }
            }
            names.sort_by_key(|n| natural_key(n));
            names
        } else {
            self.config.indeterminates.clone()
        };
        let (ring, ranking) = self.config.ring(field, &names)?;
        let polys = asts.iter().map(|a| parse::lower_diffpoly(a, &ring)).collect::<Result<Vec<_>>>()?;
        Ok((polys, ring, ranking))
    }

    fn verdict_reply(&self, v: &Verdict) -> Result<Reply> {
        if !v.verify() {
            return Err(unverified());
        }
        let mut text = format!("verdict {}", outcome_word(v.outcome));
        if self.flags.certificate || self.flags.verbose {
            match &v.certificate {
                Some(Certificate::Membership(c)) => text += &format!("\ncertificate {}", c.identity_text()),
                Some(Certificate::AllMembers(cs)) => {
                    for c in cs {
                        text += &format!("\ncertificate {}", c.identity_text());
                    }
                }
                Some(Certificate::Refutation(w)) => {
                    text += &format!("\nbasis {}", w.basis_text().join("; "));
                    text += &format!("\nnormal_form {}", w.normal_form_text());
                }
                None => {}
            }
        }
        if let Some(b) = &v.exhausted_bound {
            text += &format!(
                "\nexhausted prolongation {} exponent {} steps {}/{}",
                b.max_prolongation, b.max_exponent, b.steps_used, b.step_budget
            );
        }
        Ok(Reply {
            text,
            json: v.to_json(),
            code: outcome_code(v.outcome),
        })
    }

    fn run(&self, cmd: &Command) -> Result<Reply> {
        let exprs = cmd.expressions();
        match cmd {
            Command::Factor { .. } | Command::Split { .. } | Command::Minpoly { .. } => return self.run_tower(cmd, exprs[0]),
            _ => {}
        }
        let (polys, _ring, r) = self.lower_all(&exprs)?;
        let show = |p: &DiffPoly| p.display_with(&r).to_string();
        let show_all = |ps: &[DiffPoly]| ps.iter().map(|p| show(p)).collect::<Vec<_>>();
        match cmd {
            Command::Reduce { .. } => {
                let cert = ritt_reduce(&polys[0], &polys[1..], &r)?;
                if !cert.verify() {
                    return Err(unverified());
                }
                let mut text = format!("remainder {}", show(&cert.remainder));
                if self.flags.certificate {
                    text += &format!("\nmultiplier {}\nidentity {}", show(&cert.multiplier), cert.identity_text());
                }
                let json = json!({
                    "remainder": show(&cert.remainder),
                    "multiplier": show(&cert.multiplier),
                    "identity": cert.identity_text(),
                });
                Ok(Reply::ok(text, json))
            }
            Command::Canon { g, .. } => {
                let q = QuotientRing::new(&polys[0])?;
                let e = match g {
                    Some(_) => q.canon_fraction(&polys[1], &polys[2])?,
                    None => q.canon(&polys[1])?,
                };
                let json = json!({
                    "numerator": show(e.numerator()),
                    "denominator": show(e.denominator()),
                    "text": e.to_string(),
                });
                Ok(Reply::ok(e.to_string(), json))
            }
            Command::Autoreduced { .. } => {
                let yes = is_autoreduced(&polys, &r)?;
                Ok(Reply {
                    text: if yes { "autoreduced" } else { "not autoreduced" }.into(),
                    json: json!({ "autoreduced": yes }),
                    code: if yes { EXIT_YES } else { EXIT_NO },
                })
            }
            Command::SetRankCompare { a, .. } => {
                let n = split_set(a).len();
                let a = AutoreducedSet::new(polys[..n].to_vec(), r.clone())?;
                let b = AutoreducedSet::new(polys[n..].to_vec(), r.clone())?;
                let word = match a.compare_rank(&b)? {
                    Ordering::Less => "LT",
                    Ordering::Equal => "EQ",
                    Ordering::Greater => "GT",
                };
                Ok(Reply::ok(word.into(), json!({ "comparison": word })))
            }
            Command::Charset { .. } => {
                let c = characteristic_candidate(&polys, &r)?;
                let elems = show_all(c.elements());
                Ok(Reply::ok(format!("charset {}", elems.join("; ")).trim_end().into(), json!({ "elements": elems })))
            }
            Command::Member { gens, sat, .. } => {
                let n = split_set(gens).len();
                let sat_polys = if sat.is_some() { &polys[1 + n..] } else { &[][..] };
                let v = radical_diff_member(&polys[0], &polys[1..1 + n], sat_polys, &self.config.bounds.ideal())?;
                self.verdict_reply(&v)
            }
            Command::EmptyLocus { .. } => {
                let v = empty_constrained_locus(&polys[0], &polys[1], &polys[2], &self.config.bounds.ideal())?;
                self.verdict_reply(&v)
            }
            Command::Contains { f, .. } => {
                let n = split_set(f).len();
                let v = variety_containment(&polys[..n], &polys[n..], &self.config.bounds.ideal())?;
                self.verdict_reply(&v)
            }
            Command::Constrained { .. } => {
                let query = ConstraintQuery::new(polys[0].clone(), polys[1].clone());
                let v = verify_constrained_pair(&query, &self.config.bounds.constraint())?;
                if !v.verify(&query) {
                    return Err(unverified());
                }
                let mut text = format!("verdict {}", v.outcome.name());
                match &v.outcome {
                    ConstraintOutcome::ConstrainedUpTo { exact, .. } if self.flags.verbose => {
                        text += &format!("\nexact {exact}");
                    }
                    ConstraintOutcome::Unconstrainable(UnconstrainableReason::TotalDerivative(t)) => {
                        text += &format!("\nreason TotalDerivative p̃ = {}", show(t));
                    }
                    ConstraintOutcome::Unconstrainable(UnconstrainableReason::ExplicitWitness(h)) => {
                        text += &format!("\nreason ExplicitWitness h = {}", show(h));
                    }
                    ConstraintOutcome::NotConstrainedPair(NotConstrainedReason::Malformed(m)) => {
                        text += &format!("\nreason Malformed {m}");
                    }
                    ConstraintOutcome::NotConstrainedPair(NotConstrainedReason::NonemptyLocus(h)) => {
                        text += &format!("\nreason NonemptyLocus h = {}", show(h));
                    }
                    ConstraintOutcome::Unknown { h, bound } => {
                        text += &format!(
                            "\nundecided h = {}\nexhausted prolongation {} exponent {} steps {}/{}",
                            show(h),
                            bound.max_prolongation,
                            bound.max_exponent,
                            bound.steps_used,
                            bound.step_budget
                        );
                    }
                    _ => {}
                }
                if self.flags.verbose {
                    for (h, t) in &v.tested {
                        text += &format!("\ntested {} {}", show(h), outcome_word(t.outcome));
                    }
                }
                let code = match v.outcome {
                    ConstraintOutcome::ConstrainedUpTo { .. } => EXIT_YES,
                    ConstraintOutcome::Unconstrainable(_) | ConstraintOutcome::NotConstrainedPair(_) => EXIT_NO,
                    ConstraintOutcome::Unknown { .. } => EXIT_UNKNOWN,
                };
                Ok(Reply { text, json: v.to_json(), code })
            }
            Command::TotalDerivative { .. } => match is_total_derivative(&polys[0]) {
                TotalDerivative::Yes(t) => {
                    if t.derive() != polys[0] {
                        return Err(unverified());
                    }
                    Ok(Reply::ok(format!("p̃ = {}", show(&t)), json!({ "outcome": "Yes", "p_tilde": show(&t) })))
                }
                TotalDerivative::No => Ok(Reply {
                    text: "not a total derivative".into(),
                    json: json!({ "outcome": "No" }),
                    code: EXIT_NO,
                }),
            },
            Command::Order { .. } => {
                let g = generic_order(&polys[0])?;
                let mut text = format!("order {}", g.order);
                if self.flags.verbose {
                    text += &format!("\ntranscendence_degree {}", g.transcendence_degree);
                }
                Ok(Reply::ok(text, json!({ "order": g.order, "transcendence_degree": g.transcendence_degree })))
            }
            Command::EquivConstraint { .. } => {
                let v = equivalent_constraints(&polys[0], &polys[1], &polys[2])?;
                if !v.verify() {
                    return Err(unverified());
                }
                let mut text = format!("verdict {}\nremainder {}", outcome_word(v.outcome), show(&v.reduction.remainder));
                if self.flags.certificate {
                    text += &format!("\nidentity {}", v.reduction.identity_text());
                }
                Ok(Reply {
                    text,
                    json: v.to_json(),
                    code: outcome_code(v.outcome),
                })
            }
            Command::Decompose { .. } => {
                let f = &polys[0];
                let d = f.decompose(&r)?;
                let leader = derivative_text(&f.ring().names()[d.leader.index], d.leader);
                let (initial, separant) = (show(&d.initial), show(&d.separant));
                let text = format!(
                    "leader {leader}\ndegree {}\ninitial {initial}\nseparant {separant}\nderivative {}",
                    d.degree,
                    show(&f.derive())
                );
                let json = json!({
                    "leader": leader,
                    "degree": d.degree,
                    "initial": initial,
                    "separant": separant,
                    "derivative": show(&f.derive()),
                });
                Ok(Reply::ok(text, json))
            }
            Command::Factor { .. } | Command::Split { .. } | Command::Minpoly { .. } => unreachable!(),
        }
    }

    fn run_tower(&self, cmd: &Command, expr: &str) -> Result<Reply> {
        let tower = self.config.tower()?;
        let ast = parse(expr, &self.config)?;
        if let Command::Minpoly { .. } = cmd {
            let x = parse::lower_tower_elem(&ast, &tower)?;
            let base = TowerDescriptor::from_field(&*self.config.field_descriptor()?);
            let m = minimal_polynomial(&x, &base)?;
            return Ok(Reply::ok(m.to_string(), json!({ "minimal_polynomial": m.to_string() })));
        }
        let mut vars: Vec<String> = ast.names().into_iter().filter(|n| tower.generator(n).is_none()).collect();
        vars.sort_by_key(|n| natural_key(n));
        let vars: Vec<&str> = vars.iter().map(String::as_str).collect();
        let p = parse::lower_tower_poly(&ast, &tower, &vars)?;
        let f = factor(&p)?;
        if !f.verify(&p) {
            return Err(unverified());
        }
        if let Command::Split { .. } = cmd {
            let reducible = splitting_query(&p)?;
            let word = if reducible { "reducible" } else { "irreducible" };
            return Ok(Reply {
                text: format!("{word}\nfactors {f}"),
                json: json!({ "reducible": reducible, "factorization": f.to_string() }),
                code: if reducible { EXIT_YES } else { EXIT_NO },
            });
        }
        Ok(Reply::ok(f.to_string(), json!({ "factorization": f.to_string() })))
    }
}

fn error_kind(e: &Error) -> &'static str {
    match e {
        Error::DivisionByZero => "DivisionByZero",
        Error::DescriptorMismatch => "DescriptorMismatch",
        Error::RingMismatch => "RingMismatch",
        Error::RankingMismatch => "RankingMismatch",
        Error::ConstantPolynomial => "ConstantPolynomial",
        Error::ZeroPolynomial => "ZeroPolynomial",
        Error::NotAutoreduced => "NotAutoreduced",
        Error::NotIrreducible => "NotIrreducible",
        Error::NotMonic => "NotMonic",
        Error::NotAlgebraic(_) => "NotAlgebraic",
        Error::MalformedPair(_) => "MalformedPair",
        Error::OrderTooHigh => "OrderTooHigh",
        Error::BudgetExceeded(_) => "BudgetExceeded",
        Error::InvalidDescriptor(_) => "InvalidDescriptor",
        Error::InvalidRanking(_) => "InvalidRanking",
        Error::Syntax { .. } => "SyntaxError",
        Error::UnknownName(_) => "UnknownName",
        Error::Unsupported(_) => "Unsupported",
        Error::Usage(_) => "UsageError",
    }
}

fn error_code(e: &Error) -> i32 {
    match e {
        Error::Usage(_) => EXIT_USAGE,
        _ => EXIT_ERROR,
    }
}

fn error_json(e: &Error) -> Value {
    let mut v = json!({ "kind": error_kind(e), "message": e.to_string() });
    if let Error::Syntax { line, column, .. } = e {
        v["line"] = json!(line);
        v["column"] = json!(column);
    }
    v
}

fn render(json_mode: bool, command: &str, result: Result<Reply>) -> Output {
    match (result, json_mode) {
        (Ok(r), false) => Output {
            stdout: format!("{}\n", r.text),
            stderr: String::new(),
            code: r.code,
        },
        (Ok(r), true) => Output {
            stdout: format!("{}\n", json!({ "command": command, "exit_code": r.code, "result": r.json })),
            stderr: String::new(),
            code: r.code,
        },
        (Err(e), false) => Output {
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
            code: error_code(&e),
        },
        (Err(e), true) => Output {
            stdout: format!("{}\n", json!({ "command": command, "exit_code": error_code(&e), "error": error_json(&e) })),
            stderr: String::new(),
            code: error_code(&e),
        },
    }
}

fn session_from(cli: &Cli) -> Result<SessionConfig> {
    let mut c = match &cli.config {
        Some(path) => {
            let text = std::fs::read_to_string(path).map_err(|e| Error::Usage(format!("{}: {e}", path.display())))?;
            SessionConfig::from_toml(&text)?
        }
        None => SessionConfig::default(),
    };
    if let Some(f) = &cli.field {
        c.field = f.clone();
    }
    c.extensions.extend(cli.extensions.iter().cloned());
    if let Some(v) = &cli.vars {
        c.indeterminates = v.split(',').map(|s| s.trim().to_string()).filter(|s| !s.is_empty()).collect();
    }
    if let Some(r) = &cli.ranking {
        c.ranking = r.clone();
    }
    if cli.json {
        c.output = OutputFormat::Json;
    }
    let b = &mut c.bounds;
    b.prolongation = cli.bound_k.or(b.prolongation);
    b.exponent = cli.bound_e.unwrap_or(b.exponent);
    b.budget = cli.budget.unwrap_or(b.budget);
    b.h_order = cli.h_order.or(b.h_order);
    b.h_degree = cli.h_degree.unwrap_or(b.h_degree);
    b.height = cli.height.unwrap_or(b.height);
    b.max_candidates = cli.max_candidates.unwrap_or(b.max_candidates);
    b.rosenfeld |= cli.rosenfeld;
    Ok(c)
}

fn usage_output(json_mode: bool, message: String) -> Output {
    if json_mode {
        let e = Error::Usage(message);
        return render(true, "", Err(e));
    }
    Output {
        stdout: String::new(),
        stderr: message,
        code: EXIT_USAGE,
    }
}

/// Runs one invocation; `args` excludes the program name.
pub fn run<I, S>(args: I) -> Output
where
    I: IntoIterator<Item = S>,
    S: Into<String>,
{
    let args: Vec<String> = args.into_iter().map(Into::into).collect();
    let json_mode = args.iter().any(|a| a == "--json");
    let cli = match Cli::try_parse_from(std::iter::once("diffalg".to_string()).chain(args.iter().cloned())) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                return Output {
                    stdout: e.to_string(),
                    stderr: String::new(),
                    code: 0,
                };
            }
            return usage_output(json_mode, e.render().to_string());
        }
    };
    if let Some(path) = &cli.script {
        if cli.command.is_some() {
            return usage_output(json_mode, "--script takes no command\n".into());
        }
        return run_script(path, &args);
    }
    let Some(command) = &cli.command else {
        return usage_output(json_mode, "no command given; try --help\n".into());
    };
    let config = match session_from(&cli) {
        Ok(c) => c,
        Err(e) => return render(json_mode, command.name(), Err(e)),
    };
    let session = Session {
        flags: Flags {
            json: config.output == OutputFormat::Json,
            certificate: cli.certificate,
            verbose: cli.verbose,
        },
        config,
    };
    render(session.flags.json, command.name(), session.run(command))
}

/// Each nonblank line not starting with `#` is one command sharing the outer flags.
fn run_script(path: &PathBuf, outer: &[String]) -> Output {
    let json_mode = outer.iter().any(|a| a == "--json");
    let text = match std::fs::read_to_string(path) {
        Ok(t) => t,
        Err(e) => return usage_output(json_mode, format!("{}: {e}\n", path.display())),
    };
    let mut globals = Vec::new();
    let mut it = outer.iter();
    while let Some(a) = it.next() {
        if a == "--script" {
            it.next();
        } else if !a.starts_with("--script=") {
            globals.push(a.clone());
        }
    }
    let mut total = Output {
        stdout: String::new(),
        stderr: String::new(),
        code: 0,
    };
    for (n, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let Some(words) = shlex::split(line) else {
            let out = usage_output(json_mode, format!("line {}: unbalanced quotes\n", n + 1));
            total.stdout += &out.stdout;
            total.stderr += &out.stderr;
            total.code = total.code.max(out.code);
            continue;
        };
        let out = run(globals.iter().cloned().chain(words));
        total.stdout += &out.stdout;
        total.stderr += &out.stderr;
        total.code = total.code.max(out.code);
    }
    total
}

#[cfg(test)]
mod tests;
