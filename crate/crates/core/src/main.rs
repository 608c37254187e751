use std::io::{Read, Write};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use antialgebra::algebra::{analyze, is_simple, GradedAlgebra};
use antialgebra::axioms::{check_antialgebra, check_superalgebra};
use antialgebra::bridge::{build_ga_with, compute_der, BridgeError, Convention};
use antialgebra::catalog::builtin;
use antialgebra::extensions::{cocycle_space, ExtType};
use antialgebra::geometry::{lambda_of_algebra, self_test};
use antialgebra::json::{self as j, polyvector_latex, JsonError};
use antialgebra::reps::check_representation;

#[derive(Parser)]
#[command(name = "antialg", version, about = "Exact computations with Lie antialgebras")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Emit a catalog algebra.
    Builtin {
        name: String,
        #[arg(long)]
        n: Option<i64>,
        #[arg(long = "N")]
        big_n: Option<i64>,
        #[arg(long)]
        kappa: Option<i64>,
        #[arg(long)]
        p: Option<usize>,
        #[arg(long)]
        q: Option<usize>,
    },
    /// Check the antialgebra identities.
    Check { input: String },
    /// Structure report.
    Analyze {
        input: String,
        #[arg(long, value_delimiter = ',')]
        simple_primes: Vec<u64>,
    },
    /// Derivation superalgebra.
    Der { input: String },
    /// Associated Lie superalgebra.
    Ga {
        input: String,
        #[arg(long, value_enum, default_value = "derivation")]
        convention: Conv,
    },
    /// Central extension cocycles.
    Ext {
        input: String,
        #[arg(long = "type", value_enum)]
        kind: Kind,
    },
    /// Representations.
    Rep {
        #[command(subcommand)]
        cmd: RepCmd,
    },
    /// Canonical odd bivector of an algebra.
    Bivector {
        input: String,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Realization and invariance battery.
    GeometrySelftest {
        #[arg(long = "N", default_value_t = 3)]
        big_n: i64,
    },
}

#[derive(Subcommand)]
enum RepCmd {
    Check { algebra: String, rep: String },
}

#[derive(Clone, Copy, ValueEnum)]
enum Conv {
    Derivation,
    Representation,
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    #[value(name = "I")]
    I,
    #[value(name = "II")]
    II,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Latex,
    Text,
}

enum Failure {
    Input(Value),
    Math(Value),
}

impl From<JsonError> for Failure {
    fn from(e: JsonError) -> Failure {
        Failure::Input(e.to_json())
    }
}

fn input_error(kind: &str, msg: impl ToString) -> Failure {
    Failure::Input(json!({"error": kind, "message": msg.to_string()}))
}

fn read_text(path: &str) -> Result<String, Failure> {
    let mut s = String::new();
    let res = if path == "-" { std::io::stdin().read_to_string(&mut s).map(|_| ()) } else { std::fs::read_to_string(path).map(|t| s = t) };
    res.map_err(|e| input_error("io", format!("{path}: {e}")))?;
    Ok(s)
}

fn read_algebra(path: &str) -> Result<GradedAlgebra, Failure> {
    Ok(j::algebra_from_json(&j::parse_json(&read_text(path)?)?)?)
}

fn emit(s: &str) {
    // a closed pipe downstream is not an error for us
    let _ = writeln!(std::io::stdout().lock(), "{s}");
}

fn print(v: &Value) {
    emit(&serde_json::to_string_pretty(v).expect("serializable"));
}

/// Returns the output and whether it reports a clean result.
fn run(cmd: Cmd) -> Result<(Value, bool), Failure> {
    let algebra_err = |e: &dyn ToString| input_error("algebra", e.to_string());
    match cmd {
        Cmd::Builtin { name, n, big_n, kappa, p, q } => {
            let pq = match (p, q) {
                (None, None) => None,
                (p, q) => Some((p.unwrap_or(0), q.unwrap_or(0))),
            };
            let a = builtin(&name, n, big_n, kappa, pq).map_err(|e| input_error("catalog", e))?;
            Ok((j::algebra_to_json(&a), true))
        }
        Cmd::Check { input } => {
            let a = read_algebra(&input)?;
            if a.bracket {
                let r = check_superalgebra(&a);
                return Ok((j::super_report_json(&r), r.clean()));
            }
            let r = check_antialgebra(&a);
            Ok((j::axiom_report_json(&r), r.clean()))
        }
        Cmd::Analyze { input, simple_primes } => {
            let a = read_algebra(&input)?;
            let r = analyze(&a).map_err(|e| algebra_err(&e))?;
            let mut out = j::structure_report_json(&r);
            if !simple_primes.is_empty() {
                let s = is_simple(&a, &simple_primes).map_err(|e| algebra_err(&e))?;
                out["simplicity"] = j::simplicity_json(&s);
            }
            Ok((out, true))
        }
        Cmd::Der { input } => {
            let a = read_algebra(&input)?;
            let d = compute_der(&a).map_err(|e| algebra_err(&e))?;
            let ops: Vec<Value> = d.ops.iter().map(|o| json!({"parity": o.parity.bit(), "matrix": j::matrix(&o.matrix)})).collect();
            Ok((json!({"algebra": j::algebra_to_json(&d.algebra), "operators": ops}), true))
        }
        Cmd::Ga { input, convention } => {
            let a = read_algebra(&input)?;
            let conv = match convention {
                Conv::Derivation => Convention::Derivation,
                Conv::Representation => Convention::Representation,
            };
            match build_ga_with(&a, conv) {
                Ok(r) => {
                    let sq = &r.presentation;
                    let label = |s: usize| a.basis[sq.odd[s]].label.as_str();
                    let gens: Vec<Value> = sq.quotient.keep.iter().map(|&g| json!([label(sq.gens[g].0), label(sq.gens[g].1)])).collect();
                    Ok((json!({"algebra": j::algebra_to_json(&r.superalgebra), "even_generators": gens}), true))
                }
                Err(BridgeError::AxiomFailure(id)) => Err(Failure::Math(json!({"error": "axiom", "identity": id}))),
                Err(e) => Err(algebra_err(&e)),
            }
        }
        Cmd::Ext { input, kind } => {
            let a = read_algebra(&input)?;
            let kind = match kind {
                Kind::I => ExtType::I,
                Kind::II => ExtType::II,
            };
            let c = cocycle_space(&a, kind).map_err(|e| algebra_err(&e))?;
            Ok((j::cocycle_space_json(&c), true))
        }
        Cmd::Rep { cmd: RepCmd::Check { algebra, rep } } => {
            let a = read_algebra(&algebra)?;
            let v = j::parse_json(&read_text(&rep)?)?;
            let r = j::representation_from_json(&v, &a)?;
            let rep = check_representation(&a, &r).map_err(|e| algebra_err(&e))?;
            Ok((j::rep_report_json(&rep), rep.passed()))
        }
        Cmd::Bivector { input, format } => {
            let a = read_algebra(&input)?;
            let lb = lambda_of_algebra(&a).map_err(|e| algebra_err(&e))?;
            match format {
                Format::Json => {
                    let mut v = j::bivector_json(&lb);
                    v["latex"] = Value::String(polyvector_latex(&lb.bivector));
                    Ok((v, true))
                }
                Format::Latex => Ok((Value::String(polyvector_latex(&lb.bivector)), true)),
                Format::Text => Ok((Value::String(lb.bivector.display()), true)),
            }
        }
        Cmd::GeometrySelftest { big_n } => {
            if big_n < 1 {
                return Err(input_error("usage", "--N must be positive"));
            }
            let checks = self_test(big_n);
            let ok = checks.iter().all(|c| c.1);
            let map: serde_json::Map<String, Value> = checks.into_iter().map(|(k, v)| (k.to_string(), Value::Bool(v))).collect();
            Ok((json!({"N": big_n, "checks": map, "passed": ok}), ok))
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) if matches!(e.kind(), clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion) => e.exit(),
        Err(e) => {
            eprint!("{e}");
            print(&json!({"error": "usage", "message": e.kind().to_string()}));
            return ExitCode::from(2);
        }
    };
    let raw = matches!(cli.cmd, Cmd::Bivector { format: Format::Latex | Format::Text, .. });
    match run(cli.cmd) {
        Ok((Value::String(s), clean)) if raw => {
            emit(&s);
            ExitCode::from(if clean { 0 } else { 1 })
        }
        Ok((v, clean)) => {
            print(&v);
            ExitCode::from(if clean { 0 } else { 1 })
        }
        Err(Failure::Math(v)) => {
            print(&v);
            ExitCode::from(1)
        }
        Err(Failure::Input(v)) => {
            print(&v);
            ExitCode::from(2)
        }
    }
}
