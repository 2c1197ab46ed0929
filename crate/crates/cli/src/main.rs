//! Command-line surface over the para-octonion lattice library.
//!
//! Output is machine-readable JSON on stdout; diagnostics go to stderr.
//! Exit codes: 0 success, 1 negative mathematical verdict (NotVertex, a
//! failed stabilizer check, identity failures, a refutation), 2 input
//! error, 3 internal limit (for example a failed residue search that would
//! need an etale extension).

use clap::{Parser, Subcommand};
use paraoct::building::{classify_vertex, graded_chain, stabilizes, VertexType};
use paraoct::error::{LatticeError, ReduceError};
use paraoct::json;
use paraoct::lattice::product_span;
use paraoct::octonion::{
    check_identities, left_ideal, right_ideal, triality_intersections, IsotropicSubspace,
};
use paraoct::reduction::{
    certificate_verify, random_lattice, standard_basis_type1, standard_basis_type23, Outcome,
};
use paraoct::{BaseField, Lattice};
use serde_json::{json, Value};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "paraoct",
    about = "Exact split para-octonion lattice computations over k(t)",
    version
)]
struct Cli {
    /// Base field: Q or Fp with p an odd prime (e.g. F5)
    #[arg(long, global = true, default_value = "F5")]
    field: String,
    /// Working precision reported by certificate checks
    #[arg(long, global = true, default_value_t = 32)]
    precision: u32,
    /// Seed for randomized commands (the default is printed to stderr)
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Indent width for JSON output; compact when absent
    #[arg(long, global = true)]
    json_indent: Option<u16>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Classify a lattice into its vertex type
    Classify {
        #[arg(long = "in")]
        input: PathBuf,
        /// Also run the reduction and attach the certificate
        #[arg(long)]
        reduce: bool,
    },
    /// Run the standard-basis reduction on a lattice file
    Reduce {
        #[arg(long = "in")]
        input: PathBuf,
    },
    /// Evaluate the composition-algebra identity suite on random samples
    VerifyIdentities {
        #[arg(long, default_value_t = 500)]
        samples: usize,
        #[arg(long, default_value_t = 3)]
        degree: usize,
        /// Deliberately corrupt the product table (negative control)
        #[arg(long)]
        corrupt: bool,
    },
    /// Emit a pseudorandom lattice of the given vertex type
    RandomLattice {
        #[arg(long = "type")]
        vertex_type: String,
        #[arg(long, default_value_t = 4)]
        word_length: usize,
    },
    /// Dual lattice of a lattice file
    Dual {
        #[arg(long = "in")]
        input: PathBuf,
    },
    /// Span of all pairwise products of two lattices
    Product {
        #[arg(long)]
        lhs: PathBuf,
        #[arg(long)]
        rhs: PathBuf,
    },
    /// Graded lattice chain of a classified lattice
    Chain {
        #[arg(long = "in")]
        input: PathBuf,
    },
    /// Whether a map stabilizes a lattice (parahoric membership)
    Stabilizes {
        #[arg(long)]
        map: PathBuf,
        #[arg(long = "in")]
        input: PathBuf,
    },
    /// Ideals and intersections attached to an isotropic element
    Triality {
        /// Element file: JSON array of 8 scalar strings
        #[arg(long = "in")]
        input: PathBuf,
    },
}

enum Failure {
    Input(String),
    Limit(String),
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok((value, negative)) => {
            print_json(&value, cli.json_indent);
            if negative {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(Failure::Input(msg)) => {
            eprintln!("input error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Limit(msg)) => {
            eprintln!("internal limit: {msg}");
            ExitCode::from(3)
        }
    }
}

fn print_json(v: &Value, indent: Option<u16>) {
    let out = match indent {
        Some(n) => {
            let spaces = vec![b' '; n as usize];
            let fmt = serde_json::ser::PrettyFormatter::with_indent(&spaces);
            let mut buf = Vec::new();
            let mut ser = serde_json::Serializer::with_formatter(&mut buf, fmt);
            serde::Serialize::serialize(v, &mut ser).expect("serialization");
            String::from_utf8(buf).expect("utf8")
        }
        None => serde_json::to_string(v).expect("serialization"),
    };
    println!("{out}");
}

/// Returns the JSON payload and whether the verdict was negative (exit 1).
fn run(cli: &Cli) -> Result<(Value, bool), Failure> {
    let field = BaseField::parse(&cli.field).map_err(|e| Failure::Input(e.to_string()))?;
    match &cli.command {
        Command::Classify { input, reduce } => {
            let l = read_lattice(input)?;
            classify_payload(&l, *reduce, cli.precision)
        }
        Command::Reduce { input } => {
            let l = read_lattice(input)?;
            classify_payload(&l, true, cli.precision)
        }
        Command::VerifyIdentities {
            samples,
            degree,
            corrupt,
        } => {
            let seed = announce_seed(cli.seed);
            let report = check_identities(field, seed, *samples, *degree, *corrupt);
            let results: Vec<Value> = report
                .results
                .iter()
                .map(|r| {
                    json!({
                        "identity": r.name,
                        "passes": r.passes,
                        "failures": r.failures,
                        "counterexample": r.counterexample.as_ref().map(|xs| {
                            Value::Array(xs.iter().map(json::element_to_json).collect())
                        }),
                    })
                })
                .collect();
            let all_pass = report.all_pass();
            let payload = json!({
                "field": json::field_to_json(field),
                "samples": samples,
                "degree": degree,
                "seed": seed,
                "corrupt": corrupt,
                "all_pass": all_pass,
                "results": results,
            });
            Ok((payload, !all_pass))
        }
        Command::RandomLattice {
            vertex_type,
            word_length,
        } => {
            let t = json::vertex_type_from_str(vertex_type)
                .ok_or_else(|| Failure::Input(format!("unknown vertex type `{vertex_type}`")))?;
            let seed = announce_seed(cli.seed);
            let l = random_lattice(field, t, seed, *word_length);
            Ok((json::lattice_to_json(&l), false))
        }
        Command::Dual { input } => {
            let l = read_lattice(input)?;
            Ok((json::lattice_to_json(&l.dual()), false))
        }
        Command::Product { lhs, rhs } => {
            let a = read_lattice(lhs)?;
            let b = read_lattice(rhs)?;
            let p = product_span(a.module(), b.module());
            Ok((json::module_to_json(&p), false))
        }
        Command::Chain { input } => {
            let l = read_lattice(input)?;
            let cert = classify_vertex(&l);
            match cert.verdict.vertex_type() {
                Some(t) => {
                    let chain = graded_chain(&l, t).map_err(Failure::Limit)?;
                    Ok((json::chain_to_json(&chain), false))
                }
                None => Ok((json::certificate_to_json(&cert, None), true)),
            }
        }
        Command::Stabilizes { map, input } => {
            let g = read_map(map)?;
            let l = read_lattice(input)?;
            let holds = stabilizes(&g, &l).map_err(Failure::Input)?;
            Ok((json!({ "stabilizes": holds }), !holds))
        }
        Command::Triality { input } => {
            let value = read_json(input)?;
            let x = json::element_from_json(&value, field)
                .map_err(|e| Failure::Input(e.to_string()))?;
            if x.is_zero() || !x.norm().is_zero() {
                return Err(Failure::Input(
                    "element must be nonzero and isotropic".into(),
                ));
            }
            let li = left_ideal(&x);
            let ri = right_ideal(&x);
            let line = IsotropicSubspace::from_span(field, std::slice::from_ref(&x));
            let (l_of, r_of) = triality_intersections(&line);
            Ok((
                json!({
                    "element": json::element_to_json(&x),
                    "left_ideal": subspace_json(&li),
                    "right_ideal": subspace_json(&ri),
                    "line_left_intersection": subspace_json(&l_of),
                    "line_right_intersection": subspace_json(&r_of),
                }),
                false,
            ))
        }
    }
}

fn classify_payload(l: &Lattice, reduce: bool, precision: u32) -> Result<(Value, bool), Failure> {
    let mut cert = classify_vertex(l);
    let t = cert.verdict.vertex_type();
    let chain = t.map(|t| graded_chain(l, t).expect("classified lattice has a chain"));
    let mut extra: Vec<(String, Value)> = Vec::new();
    if reduce {
        match t {
            Some(VertexType::Type1) => {
                let r = map_reduce_error(standard_basis_type1(l))?;
                let report = certificate_verify(&r.transformer, l, r.vertex_type, Some(precision));
                extra.push(("verify".into(), json::verify_report_to_json(&report)));
                extra.push(("reduction".into(), json::reduction_to_json(&r)));
                cert.transformer = Some(r.transformer);
            }
            Some(_) => {
                let outcome = map_reduce_error(standard_basis_type23(l))?;
                match outcome {
                    Outcome::Reduced(r) => {
                        let report =
                            certificate_verify(&r.transformer, l, r.vertex_type, Some(precision));
                        extra.push(("verify".into(), json::verify_report_to_json(&report)));
                        extra.push(("reduction".into(), json::reduction_to_json(&r)));
                        cert.transformer = Some(r.transformer);
                    }
                    Outcome::Refuted { refutation, .. } => {
                        extra.push(("refutation".into(), json::refutation_to_json(&refutation)));
                    }
                }
            }
            None => {
                // a refutation may still be derivable for sandwich inputs
                if let Ok(Outcome::Refuted { refutation, .. }) = standard_basis_type23(l) {
                    extra.push(("refutation".into(), json::refutation_to_json(&refutation)));
                }
            }
        }
    }
    let mut payload = json::certificate_to_json(&cert, chain.as_ref());
    if let Value::Object(ref mut map) = payload {
        for (k, v) in extra {
            map.insert(k, v);
        }
    }
    Ok((payload, t.is_none()))
}

fn map_reduce_error<T>(r: Result<T, ReduceError>) -> Result<T, Failure> {
    r.map_err(|e| match e {
        ReduceError::Precondition(msg) => Failure::Input(msg),
        ReduceError::Lattice(LatticeError::NeedsEtaleExtension { degree }) => Failure::Limit(
            format!("residue isotropic search failed; degree-{degree} extension needed"),
        ),
        other => Failure::Limit(other.to_string()),
    })
}

fn announce_seed(seed: Option<u64>) -> u64 {
    match seed {
        Some(s) => s,
        None => {
            eprintln!("seed: 0 (default; set --seed for other runs)");
            0
        }
    }
}

fn read_json(path: &PathBuf) -> Result<Value, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn read_lattice(path: &PathBuf) -> Result<Lattice, Failure> {
    let value = read_json(path)?;
    json::lattice_from_json(&value).map_err(|e| Failure::Input(e.to_string()))
}

fn read_map(path: &PathBuf) -> Result<paraoct::groups::AlgebraMap, Failure> {
    let value = read_json(path)?;
    json::map_from_json(&value).map_err(|e| Failure::Input(e.to_string()))
}

fn subspace_json(s: &IsotropicSubspace) -> Value {
    json!({
        "rank": s.rank(),
        "basis": Value::Array(s.basis().iter().map(json::element_to_json).collect()),
    })
}
