use std::fs;
use std::io::{self, Read};
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use lorenzen::certificate::{self, Certificate, Verification};
use lorenzen::dedekind::{integral_closure, Divisor, MonomialDomain, MonomialIdeal};
use lorenzen::entailment::{axiom_suite_sc, Decision, RelationHandle, RelationKind};
use lorenzen::group::lcd_condition_violation;
use lorenzen::json::{decode, domain_from_spec, group_from_spec};
use lorenzen::meet::preorder_leq;
use lorenzen::regularise::{agreement_check, closedness_check, regular_axiom_suite, regular_entails, Sequent};
use lorenzen::report::SuiteReport;
use lorenzen::{Error, FiniteSubset, GroupElement, OrderedGroup};

const EXIT_YES: u8 = 0;
const EXIT_NO: u8 = 1;
const EXIT_UNKNOWN: u8 = 2;
const EXIT_USAGE: u8 = 64;
const EXIT_MALFORMED: u8 = 65;
const EXIT_INTERNAL: u8 = 70;

const DEFAULT_SEED: u64 = 1;

#[derive(Parser)]
#[command(name = "lorenzen", version, about = "Decide entailments in systems of ideals and check their certificates")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide `A ⊳ b`, `A ≤ B` or `A ⊢ B`. Input: {"A": [...], "b": [...]} or {"A": [...], "B": [...]}.
    Entail {
        #[command(flatten)]
        rel: RelArgs,
        #[command(flatten)]
        io: InputArgs,
    },
    /// Integral closure of a monomial ideal.
    Closure {
        #[arg(long)]
        domain: Option<String>,
        /// Generators: `3,4` over a semigroup ring, `1,0;0,2` over a polynomial ring.
        #[arg(long)]
        ideal: Option<String>,
        #[command(flatten)]
        io: InputArgs,
    },
    /// Divisor arithmetic. Input: {"op": "meet", "left": {"pos": [...], "neg": [...]}, "right": {...}}.
    Divisor {
        #[arg(long)]
        domain: Option<String>,
        #[command(flatten)]
        io: InputArgs,
    },
    /// Random trials of the system-of-ideals or regular-entailment axioms.
    Axioms {
        #[command(flatten)]
        rel: RelArgs,
        #[arg(long, default_value_t = 200)]
        trials: usize,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[arg(long)]
        no_timing: bool,
    },
    /// Look for `0 ≤ n·a` without `0 ≤ a`, and check that the regularisation reflects the order.
    LcdCheck {
        #[arg(long)]
        group: String,
        #[arg(long = "box", default_value_t = 4)]
        search_box: u32,
        #[arg(long, default_value_t = 6)]
        n_max: u32,
        #[arg(long, default_value_t = 40)]
        trials: usize,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[arg(long)]
        no_timing: bool,
    },
    /// Compare Prüfer's construction with the regularisation on random pairs.
    Agree {
        #[command(flatten)]
        rel: RelArgs,
        #[arg(long, default_value_t = 200)]
        samples: usize,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[arg(long)]
        no_timing: bool,
    },
    /// Check a certificate emitted by `entail`.
    Verify {
        #[arg(long)]
        certificate: Option<PathBuf>,
        #[arg(long)]
        no_timing: bool,
    },
}

#[derive(Args)]
struct RelArgs {
    /// finest, dedekind, or one of them prefixed by prufer-, regular- or forced-.
    #[arg(long, default_value = "finest")]
    rel: String,
    /// product:2, trivial:1, semigroup:2,3 or matrix:1,0;1,1.
    #[arg(long)]
    group: Option<String>,
    /// poly:2 or semigroup:2,3; required for dedekind.
    #[arg(long)]
    domain: Option<String>,
    /// Constraint `0 ≤ x` for forced relations, e.g. `1,-1`. Repeatable.
    #[arg(long = "force", allow_hyphen_values = true)]
    force: Vec<String>,
    /// Depth of sign-case analysis and forcing.
    #[arg(long, default_value_t = 4)]
    depth: u64,
    /// Search bound for Prüfer's construction.
    #[arg(long, default_value_t = 4)]
    bound: u64,
}

#[derive(Args)]
struct InputArgs {
    /// Read JSON from this file instead of standard input.
    #[arg(long)]
    file: Option<PathBuf>,
    /// Report elapsed_ms as 0 so that output is byte-identical across runs.
    #[arg(long)]
    no_timing: bool,
}

/// A failed invocation: exit code and message.
struct Failure(u8, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Malformed(_) | Error::Dimension { .. } => EXIT_MALFORMED,
            Error::Argument(_) | Error::UnsupportedCone(_) | Error::UnsupportedDomain(_) => EXIT_USAGE,
            Error::Bounded { .. } => EXIT_UNKNOWN,
            Error::NotCancellative(_) => EXIT_NO,
            Error::CrossCheck(_) => EXIT_INTERNAL,
        };
        Failure(code, e.to_string())
    }
}

type Outcome = Result<(u8, Value), Failure>;

fn usage(msg: impl Into<String>) -> Failure {
    Failure(EXIT_USAGE, msg.into())
}

fn malformed(msg: impl Into<String>) -> Failure {
    Failure(EXIT_MALFORMED, msg.into())
}

fn read_input(file: Option<&PathBuf>) -> Result<Value, Failure> {
    let text = match file {
        Some(path) => fs::read_to_string(path).map_err(|e| usage(format!("cannot read {}: {e}", path.display())))?,
        None => {
            let mut s = String::new();
            io::stdin().read_to_string(&mut s).map_err(|e| malformed(format!("cannot read standard input: {e}")))?;
            s
        }
    };
    serde_json::from_str(&text).map_err(|e| malformed(format!("invalid JSON: {e}")))
}

fn element_from_spec(text: &str) -> Result<GroupElement, Failure> {
    let coords = text
        .split(',')
        .map(|c| c.trim().parse::<i64>().map_err(|_| usage(format!("not an integer vector: `{text}`"))))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(GroupElement::from_i64s(&coords))
}

fn relation(args: &RelArgs) -> Result<RelationHandle, Failure> {
    let (wrapper, base) = match args.rel.split_once('-') {
        Some((w, b)) => (Some(w), b),
        None => (None, args.rel.as_str()),
    };
    let base = match base {
        "finest" => {
            let spec = args.group.as_deref().ok_or_else(|| usage("--group is required for finest relations"))?;
            RelationHandle::finest(&group_from_spec(spec).map_err(|e| usage(e.to_string()))?)
        }
        "dedekind" => {
            let spec = args.domain.as_deref().ok_or_else(|| usage("--domain is required for dedekind relations"))?;
            let r = RelationHandle::dedekind(&domain_from_spec(spec).map_err(|e| usage(e.to_string()))?)?;
            if let Some(g) = &args.group {
                if &group_from_spec(g).map_err(|e| usage(e.to_string()))? != r.group() {
                    return Err(usage(format!("--group {g} is not the divisibility group of --domain {spec}")));
                }
            }
            r
        }
        other => return Err(usage(format!("unknown base relation `{other}`"))),
    };
    if wrapper != Some("forced") && !args.force.is_empty() {
        return Err(usage("--force needs a forced- relation"));
    }
    Ok(match wrapper {
        None => base,
        Some("prufer") => RelationHandle::prufer(&base, args.bound),
        Some("regular") => RelationHandle::regularisation(&base, args.depth),
        Some("forced") => {
            let xs = args.force.iter().map(|x| element_from_spec(x)).collect::<Result<Vec<_>, _>>()?;
            if xs.is_empty() {
                return Err(usage("forced relations need at least one --force"));
            }
            RelationHandle::forced(&base, xs, args.depth)?
        }
        Some(other) => return Err(usage(format!("unknown relation wrapper `{other}`"))),
    })
}

fn elapsed(start: Instant, no_timing: bool) -> u128 {
    if no_timing {
        0
    } else {
        start.elapsed().as_millis()
    }
}

fn verdict_code(d: &Decision) -> u8 {
    if d.is_yes() {
        EXIT_YES
    } else if d.is_no() {
        EXIT_NO
    } else {
        EXIT_UNKNOWN
    }
}

fn entail(rel: &RelationHandle, input: &Value, start: Instant, no_timing: bool) -> Outcome {
    let group = rel.group();
    let a: FiniteSubset = decode(input.get("A").ok_or_else(|| malformed("input lacks \"A\""))?, "A")?;
    group.check_subset(&a)?;
    let (decision, cert) = match (input.get("b"), input.get("B")) {
        (Some(b), None) => {
            let b: GroupElement = decode(b, "b")?;
            group.check(&b)?;
            let d = rel.sc_entails(&a, &b)?;
            let cert = d.witness.clone().map(|w| Certificate::entails(rel, &a, &b, w));
            (d, cert)
        }
        (None, Some(bs)) => {
            let bs: FiniteSubset = decode(bs, "B")?;
            group.check_subset(&bs)?;
            match rel.kind() {
                RelationKind::Regularisation { base, depth } => {
                    let s = Sequent::new(a, bs)?;
                    let d = regular_entails(base, &s, *depth)?;
                    let cert = d.witness.clone().map(|w| Certificate::sequent(rel, &s, w));
                    (d, cert)
                }
                _ => {
                    let d = preorder_leq(rel, &a, &bs)?;
                    let cert = d.witness.clone().map(|w| Certificate::preorder(rel, &a, &bs, w));
                    (d, cert)
                }
            }
        }
        _ => return Err(malformed("input needs exactly one of \"b\" and \"B\"")),
    };
    let body = json!({
        "verdict": decision.verdict,
        "witness": decision.witness,
        "bound_used": decision.bound_used,
        "relation": rel.descriptor(),
        "certificate": cert,
        "elapsed_ms": elapsed(start, no_timing),
    });
    Ok((verdict_code(&decision), body))
}

fn domain_arg(flag: Option<&str>, input: Option<&Value>) -> Result<MonomialDomain, Failure> {
    match (flag, input.and_then(|v| v.get("domain"))) {
        (Some(spec), _) => domain_from_spec(spec).map_err(|e| usage(e.to_string())),
        (None, Some(v)) => Ok(lorenzen::json::domain_from_descriptor(v)?),
        (None, None) => Err(usage("a domain is required: pass --domain or a \"domain\" field")),
    }
}

fn ideal_from_spec(domain: &MonomialDomain, spec: &str) -> Result<MonomialIdeal, Failure> {
    let gens: Vec<GroupElement> = if domain.rank() == 1 {
        spec.split([',', ';']).map(element_from_spec).collect::<Result<_, _>>()?
    } else {
        spec.split(';').map(element_from_spec).collect::<Result<_, _>>()?
    };
    Ok(MonomialIdeal::new(domain, FiniteSubset::new(gens)?)?)
}

/// Rank-one generators print as plain integers.
fn gens_json(domain: &MonomialDomain, gens: &FiniteSubset) -> Value {
    if domain.rank() == 1 {
        json!(gens.iter().map(|g| json!(g)[0].clone()).collect::<Vec<_>>())
    } else {
        json!(gens)
    }
}

/// Deterministic output, so no timing field.
fn closure(domain: Option<&str>, ideal: Option<&str>, io: &InputArgs) -> Outcome {
    let (domain, ideal) = match ideal {
        Some(spec) => {
            let domain = domain_arg(domain, None)?;
            let ideal = ideal_from_spec(&domain, spec)?;
            (domain, ideal)
        }
        None => {
            let input = read_input(io.file.as_ref())?;
            let domain = domain_arg(domain, Some(&input))?;
            let gens: FiniteSubset = decode(input.get("ideal").ok_or_else(|| malformed("input lacks \"ideal\""))?, "ideal")?;
            let ideal = MonomialIdeal::new(&domain, gens)?;
            (domain, ideal)
        }
    };
    let closed = integral_closure(&ideal)?;
    Ok((EXIT_YES, json!({ "closure": gens_json(&domain, closed.gens()) })))
}

fn divisor_from(domain: &MonomialDomain, v: &Value, what: &str) -> Result<Divisor, Failure> {
    let part = |key: &str| -> Result<MonomialIdeal, Failure> {
        match v.get(key) {
            Some(g) => Ok(MonomialIdeal::new(domain, decode(g, &format!("{what}.{key}"))?)?),
            None => Ok(MonomialIdeal::unit(domain)?),
        }
    };
    if !v.is_object() {
        return Err(malformed(format!("{what} must be an object with \"pos\" and \"neg\"")));
    }
    Ok(Divisor::new(&part("pos")?, &part("neg")?)?)
}

fn divisor(domain: Option<&str>, io: &InputArgs, start: Instant) -> Outcome {
    let input = read_input(io.file.as_ref())?;
    let domain = domain_arg(domain, Some(&input))?;
    let op = input.get("op").and_then(Value::as_str).ok_or_else(|| malformed("input lacks a string \"op\""))?;
    let left = divisor_from(&domain, input.get("left").ok_or_else(|| malformed("input lacks \"left\""))?, "left")?;
    let right = || divisor_from(&domain, input.get("right").unwrap_or(&Value::Null), "right");
    let result = match op {
        "neg" => Ok(left.negate()),
        "add" => Ok(left.add(&right()?)?),
        "sub" => Ok(left.sub(&right()?)?),
        "meet" => Ok(left.meet(&right()?)?),
        "join" => Ok(left.join(&right()?)?),
        "leq" => Err(left.leq(&right()?)?),
        "eq" => Err(left.eq(&right()?)?),
        other => return Err(malformed(format!("unknown divisor operation `{other}`"))),
    };
    let ms = elapsed(start, io.no_timing);
    Ok(match result {
        Ok(d) => (EXIT_YES, json!({ "divisor": d.descriptor(), "elapsed_ms": ms })),
        Err(holds) => {
            let verdict = if holds { "yes" } else { "no" };
            (if holds { EXIT_YES } else { EXIT_NO }, json!({ "verdict": verdict, "elapsed_ms": ms }))
        }
    })
}

fn suite_body(reports: &[SuiteReport], start: Instant, no_timing: bool) -> (u8, Value) {
    let failures: usize = reports.iter().map(SuiteReport::failures).sum();
    let code = if failures == 0 { EXIT_YES } else { EXIT_NO };
    (code, json!({ "reports": reports, "failures": failures, "elapsed_ms": elapsed(start, no_timing) }))
}

fn axioms(rel: &RelationHandle, trials: usize, seed: u64, start: Instant, no_timing: bool) -> Outcome {
    let report = match rel.kind() {
        RelationKind::Regularisation { base, .. } => regular_axiom_suite(base, trials, seed)?,
        _ => axiom_suite_sc(rel, trials, seed)?,
    };
    let (code, mut body) = suite_body(&[report], start, no_timing);
    body["relation"] = rel.descriptor();
    Ok((code, body))
}

fn lcd_check(group: &OrderedGroup, search_box: u32, n_max: u32, trials: usize, seed: u64, start: Instant, no_timing: bool) -> Outcome {
    let violation = lcd_condition_violation(group, search_box, n_max).map(|(a, n)| json!({ "a": a, "n": n }));
    let closedness = closedness_check(&RelationHandle::finest(group), trials, seed, 4)?;
    let code = if violation.is_none() { EXIT_YES } else { EXIT_NO };
    let body = json!({
        "violation": violation,
        "closedness": closedness,
        "elapsed_ms": elapsed(start, no_timing),
    });
    Ok((code, body))
}

fn agree(args: &RelArgs, samples: usize, seed: u64, start: Instant, no_timing: bool) -> Outcome {
    let base = relation(args)?;
    if !base.is_principal() {
        return Err(usage("agree compares constructions over a base relation: use --rel finest or dedekind"));
    }
    let report = agreement_check(&base, samples, seed, args.bound, args.depth)?;
    let (code, mut body) = suite_body(&[report], start, no_timing);
    body["relation"] = base.descriptor();
    Ok((code, body))
}

fn verify(path: Option<&PathBuf>, start: Instant, no_timing: bool) -> Outcome {
    let input = read_input(path)?;
    let cert: Certificate = decode(&input, "certificate")?;
    let ms = elapsed(start, no_timing);
    Ok(match certificate::verify(&cert)? {
        Verification::Valid => (EXIT_YES, json!({ "valid": true, "elapsed_ms": ms })),
        Verification::Violated(why) => (EXIT_NO, json!({ "valid": false, "violation": why, "elapsed_ms": ms })),
    })
}

fn dispatch(cli: Cli) -> Outcome {
    let start = Instant::now();
    match cli.command {
        Command::Entail { rel, io } => {
            let rel = relation(&rel)?;
            let input = read_input(io.file.as_ref())?;
            entail(&rel, &input, start, io.no_timing)
        }
        Command::Closure { domain, ideal, io } => closure(domain.as_deref(), ideal.as_deref(), &io),
        Command::Divisor { domain, io } => divisor(domain.as_deref(), &io, start),
        Command::Axioms { rel, trials, seed, no_timing } => axioms(&relation(&rel)?, trials, seed, start, no_timing),
        Command::LcdCheck { group, search_box, n_max, trials, seed, no_timing } => {
            let group = group_from_spec(&group).map_err(|e| usage(e.to_string()))?;
            lcd_check(&group, search_box, n_max, trials, seed, start, no_timing)
        }
        Command::Agree { rel, samples, seed, no_timing } => agree(&rel, samples, seed, start, no_timing),
        Command::Verify { certificate, no_timing } => verify(certificate.as_ref(), start, no_timing),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match dispatch(cli) {
        Ok((code, body)) => {
            println!("{body}");
            ExitCode::from(code)
        }
        Err(Failure(code, msg)) => {
            eprintln!("{}", json!({ "error": msg }));
            ExitCode::from(code)
        }
    }
}
