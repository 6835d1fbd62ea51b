//! Command-line front end: normal forms, embedding images, basis tables and
//! the verification suites. All output is deterministic; `--json` switches
//! every command to a machine-readable shape.

use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use gdn::checks::{
    check_engel, check_identities, check_nilpotency, check_odd_slot_splitting,
    check_pbw_slice, check_square_power_inclusion, count_bases, RelationSet,
};
use gdn::embed::{enumerate_tableaux, nf_embed, phi};
use gdn::parse::{parse_element, print_term};
use gdn::rewrite::Rewriter;
use gdn::{Alphabet, GdnElement};

#[derive(Parser)]
#[command(
    name = "gdn",
    about = "Free Gelfand-Dorfman-Novikov superalgebra calculator",
    version
)]
struct Cli {
    /// Alphabet as comma-separated name:parity pairs, in order
    #[arg(long, global = true, default_value = "x:0,xi:1")]
    alphabet: String,

    /// Emit JSON instead of text
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Method {
    Rewrite,
    Embed,
    Both,
}

#[derive(Subcommand)]
enum Command {
    /// Normal form in the supertableau basis
    Nf {
        /// Engine: identity rewriting, embedding elimination, or both with a
        /// comparison verdict
        #[arg(long, value_enum, default_value = "rewrite")]
        method: Method,
        /// Expression, e.g. "(x*(y*x))" or "2 (x*xi) - 1/2 (xi*x)"
        expr: String,
    },
    /// Image in the free differential supercommutative algebra
    Phi {
        /// Expression over the alphabet
        expr: String,
    },
    /// List all tableaux of one length
    Basis {
        #[arg(long)]
        length: u32,
    },
    /// Tableau and weight-0 monomial counts per length
    Count {
        #[arg(long)]
        max: u32,
    },
    /// Verification suites; exit code 0 exactly when the suite passes
    Check {
        #[command(subcommand)]
        suite: Suite,
    },
}

#[derive(Subcommand)]
enum Suite {
    /// Both defining identities normalize to zero on all homogeneous triples
    Identities {
        /// Maximum total length of the argument triple
        #[arg(long, default_value_t = 4)]
        max_length: u32,
    },
    /// Ideal slices agree through the embedding, degree by degree
    Pbw {
        /// Homogeneous relation, e.g. "(x*x)"; when absent, two built-in
        /// instances run (an even square and an odd square)
        #[arg(long)]
        relation: Option<String>,
        #[arg(long, default_value_t = 4)]
        max_length: u32,
    },
    /// Every term of the given length over an all-odd alphabet vanishes
    Nilpotency {
        #[arg(long)]
        length: u32,
    },
    /// Symmetrization recursion and inclusion-exclusion; without --t also
    /// the subspace power inclusions
    Engel {
        #[arg(long)]
        t: Option<u32>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn element_json(e: &GdnElement, alphabet: &Alphabet) -> Value {
    Value::Array(
        e.iter()
            .map(|(t, c)| {
                json!({
                    "coeff": c.to_string(),
                    "term": print_term(t, alphabet),
                })
            })
            .collect(),
    )
}

fn run(cli: Cli) -> Result<bool, String> {
    let alphabet = Alphabet::parse(&cli.alphabet).map_err(|e| e.to_string())?;
    match cli.command {
        Command::Nf { method, expr } => {
            let e = parse_element(&expr, &alphabet).map_err(|e| e.to_string())?;
            let rewrite = (method != Method::Embed).then(|| Rewriter::new().nf(&e));
            let embed = (method != Method::Rewrite).then(|| nf_embed(&e));
            match (rewrite, embed) {
                (Some(r), None) | (None, Some(r)) => {
                    if cli.json {
                        println!("{}", element_json(&r, &alphabet));
                    } else {
                        println!("{}", r.display(&alphabet));
                    }
                    Ok(true)
                }
                (Some(r), Some(m)) => {
                    let agree = r == m;
                    if cli.json {
                        println!(
                            "{}",
                            json!({
                                "rewrite": element_json(&r, &alphabet),
                                "embed": element_json(&m, &alphabet),
                                "match": agree,
                            })
                        );
                    } else {
                        println!("rewrite: {}", r.display(&alphabet));
                        println!("embed:   {}", m.display(&alphabet));
                        println!("{}", if agree { "match" } else { "MISMATCH" });
                    }
                    Ok(agree)
                }
                (None, None) => unreachable!(),
            }
        }
        Command::Phi { expr } => {
            let e = parse_element(&expr, &alphabet).map_err(|e| e.to_string())?;
            let image = phi(&e);
            if cli.json {
                let arr: Vec<Value> = image
                    .monomials()
                    .iter()
                    .rev()
                    .map(|(m, c)| {
                        json!({
                            "coeff": c.to_string(),
                            "monomial": m.display(&alphabet),
                        })
                    })
                    .collect();
                println!("{}", Value::Array(arr));
            } else {
                println!("{}", image.display(&alphabet));
            }
            Ok(true)
        }
        Command::Basis { length } => {
            if length == 0 {
                return Err("length must be at least 1".into());
            }
            let tabs = enumerate_tableaux(&alphabet, length);
            if cli.json {
                let arr: Vec<Value> = tabs
                    .iter()
                    .map(|t| Value::String(print_term(&t.to_term(), &alphabet)))
                    .collect();
                println!("{}", Value::Array(arr));
            } else {
                for t in &tabs {
                    println!("{}", print_term(&t.to_term(), &alphabet));
                }
            }
            Ok(true)
        }
        Command::Count { max } => {
            if max == 0 {
                return Err("max must be at least 1".into());
            }
            let rows = count_bases(&alphabet, max);
            if cli.json {
                let arr: Vec<Value> = rows
                    .iter()
                    .map(|&(n, t, w)| json!({"length": n, "tableaux": t, "weight0": w}))
                    .collect();
                println!("{}", Value::Array(arr));
            } else {
                println!("length  tableaux  weight0");
                for (n, t, w) in rows {
                    println!("{n:<7} {t:<9} {w}");
                }
            }
            Ok(true)
        }
        Command::Check { suite } => run_check(suite, &alphabet, cli.json),
    }
}

fn run_check(suite: Suite, alphabet: &Alphabet, as_json: bool) -> Result<bool, String> {
    match suite {
        Suite::Identities { max_length } => {
            let report = check_identities(alphabet, max_length);
            let pass = report.pass();
            if as_json {
                println!(
                    "{}",
                    json!({
                        "suite": "identities",
                        "max_length": max_length,
                        "triples": report.triples_checked,
                        "pass": pass,
                        "failure": report.failure,
                    })
                );
            } else {
                println!(
                    "identities up to total length {max_length}: {} defect triples checked",
                    report.triples_checked
                );
                if let Some(f) = &report.failure {
                    println!("failure: {f}");
                }
                println!("{}", verdict(pass));
            }
            Ok(pass)
        }
        Suite::Pbw {
            relation,
            max_length,
        } => {
            let mut instances: Vec<(Alphabet, GdnElement, u32)> = Vec::new();
            match relation {
                Some(src) => {
                    let rel = parse_element(&src, alphabet).map_err(|e| e.to_string())?;
                    instances.push((alphabet.clone(), rel, max_length));
                }
                None => {
                    let even = Alphabet::parse("x:0").unwrap();
                    let rel = parse_element("(x*x)", &even).unwrap();
                    instances.push((even, rel, 5));
                    let odd = Alphabet::parse("xi:1,eta:1").unwrap();
                    let rel = parse_element("(xi*xi)", &odd).unwrap();
                    instances.push((odd, rel, 4));
                }
            }
            let mut pass = true;
            let mut reports = Vec::new();
            for (alpha, rel, max_len) in instances {
                let display = rel.display(&alpha);
                let relations = RelationSet::new(vec![rel]).map_err(|e| e.to_string())?;
                let report =
                    check_pbw_slice(&relations, &alpha, max_len).map_err(|e| e.to_string())?;
                pass &= report.pass;
                reports.push((alpha, display, max_len, report));
            }
            if as_json {
                let arr: Vec<Value> = reports
                    .iter()
                    .map(|(alpha, rel, max_len, report)| {
                        json!({
                            "alphabet": alpha.to_string(),
                            "relation": rel,
                            "max_length": max_len,
                            "pass": report.pass,
                            "dims": report.dims.iter().map(|&(d, l, r)| {
                                json!({"length": d, "ideal": l, "weight0_ideal": r})
                            }).collect::<Vec<_>>(),
                        })
                    })
                    .collect();
                println!("{}", json!({"suite": "pbw", "pass": pass, "instances": arr}));
            } else {
                for (alpha, rel, max_len, report) in &reports {
                    println!("relation {rel} over {alpha}, lengths up to {max_len}:");
                    println!("length  ideal  weight0-ideal");
                    for (d, l, r) in &report.dims {
                        println!("{d:<7} {l:<6} {r}");
                    }
                }
                println!("{}", verdict(pass));
            }
            Ok(pass)
        }
        Suite::Nilpotency { length } => {
            let report = check_nilpotency(alphabet, length).map_err(|e| e.to_string())?;
            let pass = report.pass();
            if as_json {
                println!(
                    "{}",
                    json!({
                        "suite": "nilpotency",
                        "alphabet": alphabet.to_string(),
                        "length": length,
                        "terms": report.terms_checked,
                        "pass": pass,
                        "failure": report.failure.as_ref().map(|t| print_term(t, alphabet)),
                    })
                );
            } else {
                println!(
                    "nilpotency over {alphabet} at length {length}: {} terms normalized",
                    report.terms_checked
                );
                if let Some(t) = &report.failure {
                    println!("nonzero witness: {}", print_term(t, alphabet));
                }
                println!("{}", verdict(pass));
            }
            Ok(pass)
        }
        Suite::Engel { t } => {
            let mut pass = true;
            let mut lines = Vec::new();
            let mut details = Vec::new();
            let ts: Vec<u32> = match t {
                Some(t) => vec![t],
                None => vec![1, 2, 3],
            };
            for t in &ts {
                let report = check_engel(*t).map_err(|e| e.to_string())?;
                pass &= report.pass();
                lines.push(format!(
                    "t = {}: recursion {}, inclusion-exclusion {}",
                    t,
                    verdict(report.recursion_identity),
                    verdict(report.inclusion_exclusion)
                ));
                details.push(json!({
                    "t": t,
                    "recursion": report.recursion_identity,
                    "inclusion_exclusion": report.inclusion_exclusion,
                }));
            }
            if t.is_none() {
                for (n, d) in [(2u32, 4u32), (2, 5)] {
                    let report =
                        check_square_power_inclusion(n, d).map_err(|e| e.to_string())?;
                    pass &= report.pass();
                    lines.push(format!(
                        "square powers: exponent {n} at degree {d}: {}{}",
                        verdict(report.pass()),
                        witness_suffix(&report.witness)
                    ));
                    details.push(json!({"square_power": {
                        "n": n, "degree": d, "pass": report.pass(),
                        "witness": report.witness,
                    }}));
                }
                for d in [4u32, 5] {
                    let report = check_odd_slot_splitting(d).map_err(|e| e.to_string())?;
                    pass &= report.pass();
                    lines.push(format!(
                        "odd-slot splitting at degree {d}: {}{}",
                        verdict(report.pass()),
                        witness_suffix(&report.witness)
                    ));
                    details.push(json!({"odd_slot_splitting": {
                        "degree": d, "pass": report.pass(),
                        "witness": report.witness,
                    }}));
                }
            }
            if as_json {
                println!(
                    "{}",
                    json!({"suite": "engel", "pass": pass, "details": details})
                );
            } else {
                for line in lines {
                    println!("{line}");
                }
                println!("{}", verdict(pass));
            }
            Ok(pass)
        }
    }
}

fn witness_suffix(witness: &Option<String>) -> String {
    match witness {
        Some(w) => format!(" (witness: {w})"),
        None => String::new(),
    }
}

fn verdict(pass: bool) -> &'static str {
    if pass {
        "pass"
    } else {
        "fail"
    }
}
