//! `divrel`: divisibility relations, D-extremal ideals and Betti bounds from
//! the command line.
//!
//! Exit codes: 0 success, 1 a requested check failed, 2 bad input, 3 a
//! resource cap was hit.

mod doc;

use std::fs;
use std::io::{self, Read};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use divrel::betti::{betti_extremal_power, betti_power, betti_with, taylor_binomial_bounds};
use divrel::closure::{closure_with_cap, compose_closure_naive, extract_minimal_generating, minimize};
use divrel::decision::{build_tree, membership_with_certificate, Verdict};
use divrel::extremal::{extremal_ideal_with, q_extremal};
use divrel::homology::Field;
use divrel::random::{random_relation_set, random_satisfied_relations, random_squarefree_ideal, rng};
use divrel::relation::div_min;
use divrel::transfer::bound_check_with;
use divrel::verify::{run_suite, Instance, Suite, SuiteReport};
use divrel::{DivRel, Error, GeneratorList, IndexSet, Limits, RelationSet};

use doc::{parse_monomial_lines, to_json, IdealDocument, RelationDocument};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io { path: String, source: io::Error },
    #[error("{path}: line {line}, column {column}: {message}")]
    Json {
        path: String,
        line: usize,
        column: usize,
        message: String,
    },
    #[error("{0}")]
    Input(String),
    #[error(transparent)]
    Lib(#[from] Error),
    #[error("{0}")]
    CheckFailed(String),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Lib(e) if e.is_cap() => 3,
            CliError::Lib(Error::RelationFails(_)) | CliError::CheckFailed(_) => 1,
            _ => 2,
        }
    }

    fn kind(&self) -> &'static str {
        match self.exit_code() {
            1 => "check_failed",
            3 => "cap_exceeded",
            _ => "input_error",
        }
    }
}

#[derive(Parser, Debug)]
#[command(name = "divrel", version, about = "Divisibility relations and D-extremal ideals")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Global {
    /// Largest universe for subset enumeration.
    #[arg(long, global = true, value_name = "N")]
    cap_subsets: Option<usize>,
    /// Largest number of faces in one homology slice.
    #[arg(long, global = true, value_name = "N")]
    cap_faces: Option<usize>,
    /// Largest generator count for lcm lattices.
    #[arg(long, global = true, value_name = "N")]
    cap_generators: Option<usize>,
    /// Worker threads for homology.
    #[arg(long, global = true, value_name = "N")]
    threads: Option<usize>,
    /// Seed for randomized suites.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Format of ideal inputs.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    /// One monomial per line, optionally preceded by `variables: x y z`.
    Monomials,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Minimal divisibility relations of an ideal.
    Relations {
        ideal: PathBuf,
        /// Output a minimal generating set instead.
        #[arg(long)]
        mingen: bool,
    },
    /// Minimal core of the closure of a relation set.
    Closure {
        relations: PathBuf,
        /// Use the naive fixed-point engine.
        #[arg(long)]
        naive: bool,
        /// Test membership of `(b, B)`; `B` is comma-separated.
        #[arg(long, num_args = 2, value_names = ["B", "TARGETS"])]
        member: Option<Vec<String>>,
    },
    /// The D-extremal ideal of a relation set.
    Extremal { relations: PathBuf },
    /// Decide closure membership of `(b, B)` with a certificate.
    Decide {
        relations: PathBuf,
        base: usize,
        /// Comma-separated targets.
        targets: String,
        /// Include the decision tree.
        #[arg(long)]
        tree: bool,
    },
    /// Multigraded Betti numbers of an ideal or one of its powers.
    Betti {
        ideal: PathBuf,
        #[arg(long, default_value_t = 1)]
        power: u64,
        /// `q` for the rationals or a prime.
        #[arg(long, default_value = "q")]
        field: String,
    },
    /// Run property suites on an instance or a random corpus.
    Verify {
        #[arg(long)]
        relations: Option<PathBuf>,
        #[arg(long)]
        ideal: Option<PathBuf>,
        /// Suite to run; repeatable. All suites by default.
        #[arg(long = "suite")]
        suites: Vec<String>,
        /// Run on this many seeded random instances instead of files.
        #[arg(long)]
        random: Option<usize>,
    },
    /// Betti numbers of I^r next to the extremal and Taylor bounds.
    Bounds {
        ideal: PathBuf,
        relations: PathBuf,
        #[arg(long, default_value_t = 1)]
        power: u64,
        #[arg(long, default_value = "q")]
        field: String,
    },
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    match run(&cli) {
        Ok((out, code)) => {
            print!("{out}");
            ExitCode::from(code)
        }
        Err(e) => {
            eprintln!("divrel: {e}");
            print!(
                "{}",
                to_json(&json!({"status": "error", "kind": e.kind(), "message": e.to_string()}))
            );
            ExitCode::from(e.exit_code())
        }
    }
}

fn limits(g: &Global) -> Limits {
    let mut l = Limits::default();
    if let Some(n) = g.cap_subsets {
        l.max_subset_universe = n;
    }
    if let Some(n) = g.cap_faces {
        l.max_slice_faces = n;
    }
    if let Some(n) = g.cap_generators {
        l.max_lattice_generators = n;
    }
    l.threads = g.threads;
    l
}

fn read_input(path: &Path) -> Result<String, CliError> {
    let io_err = |source| CliError::Io {
        path: path.display().to_string(),
        source,
    };
    if path == Path::new("-") {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s).map_err(io_err)?;
        Ok(s)
    } else {
        fs::read_to_string(path).map_err(io_err)
    }
}

fn parse_json<T: serde::de::DeserializeOwned>(path: &Path, text: &str) -> Result<T, CliError> {
    serde_json::from_str(text).map_err(|e| CliError::Json {
        path: path.display().to_string(),
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })
}

fn read_ideal(path: &Path, format: Format) -> Result<GeneratorList, CliError> {
    let text = read_input(path)?;
    match format {
        Format::Json => parse_json::<IdealDocument>(path, &text)?.to_generators(),
        Format::Monomials => parse_monomial_lines(&text),
    }
}

fn read_relations(path: &Path) -> Result<RelationSet, CliError> {
    let text = read_input(path)?;
    parse_json::<RelationDocument>(path, &text)?.to_relations()
}

fn parse_field(s: &str) -> Result<Field, CliError> {
    match s {
        "q" | "Q" | "QQ" | "0" => Ok(Field::Rational),
        _ => {
            let p: u64 = s
                .parse()
                .map_err(|_| CliError::Input(format!("field must be `q` or a prime, got `{s}`")))?;
            Ok(Field::prime(p)?)
        }
    }
}

fn parse_targets(s: &str) -> Result<IndexSet, CliError> {
    s.split(',')
        .map(|t| {
            t.trim()
                .parse::<usize>()
                .map_err(|_| CliError::Input(format!("bad target list `{s}`")))
        })
        .collect()
}

fn relation_json(r: &DivRel) -> serde_json::Value {
    json!([r.base(), r.targets().to_vec()])
}

type Output = (String, u8);

fn run(cli: &Cli) -> Result<Output, CliError> {
    let g = &cli.global;
    let lim = limits(g);
    match &cli.command {
        Command::Relations { ideal, mingen } => {
            let u = read_ideal(ideal, g.format)?;
            let d = if *mingen {
                extract_minimal_generating(&u)?
            } else {
                div_min(&u)?
            };
            Ok((to_json(&RelationDocument::from_relations(&d)), 0))
        }
        Command::Closure {
            relations,
            naive,
            member,
        } => {
            let d = read_relations(relations)?;
            let core = if *naive {
                minimize(&compose_closure_naive(&d, lim.closure_cap)?)
            } else {
                closure_with_cap(&d, lim.closure_cap)?.min_core().clone()
            };
            match member {
                Some(args) => {
                    let b: usize = args[0]
                        .parse()
                        .map_err(|_| CliError::Input(format!("bad base `{}`", args[0])))?;
                    let r = DivRel::new(b, parse_targets(&args[1])?)?;
                    r.check_universe(d.q())?;
                    let is_member = r.is_trivial() || core.dominates(&r);
                    let out = json!({"relation": relation_json(&r), "member": is_member});
                    Ok((to_json(&out), 0))
                }
                None => Ok((to_json(&RelationDocument::from_relations(&core)), 0)),
            }
        }
        Command::Extremal { relations } => {
            let d = read_relations(relations)?;
            let e = extremal_ideal_with(&d, d.q(), &lim)?;
            let doc = IdealDocument::from_parts(e.variables(), e.gens())?;
            Ok((to_json(&doc), 0))
        }
        Command::Decide {
            relations,
            base,
            targets,
            tree,
        } => {
            let d = read_relations(relations)?;
            let r = DivRel::new(*base, parse_targets(targets)?)?;
            let v = membership_with_certificate(&d, &r)?;
            let mut out = verdict_json(&r, &v);
            if *tree && !r.is_trivial() && d.base_set().contains(r.base()) {
                let t = build_tree(&d, r.base(), r.targets())?;
                out["tree"] = serde_json::to_value(t.to_document()).expect("serializable");
                out["tree_text"] = json!(t.to_text());
            }
            Ok((to_json(&out), 0))
        }
        Command::Betti { ideal, power, field } => {
            let field = parse_field(field)?;
            let u = read_ideal(ideal, g.format)?;
            let t = if *power == 1 {
                betti_with(&u, field, &lim)?
            } else {
                betti_power(&u, *power, field, &lim)?
            };
            let mut out = serde_json::to_value(t.to_document()).expect("serializable");
            out["power"] = json!(power);
            Ok((to_json(&out), 0))
        }
        Command::Verify {
            relations,
            ideal,
            suites,
            random,
        } => verify(g, &lim, relations.as_deref(), ideal.as_deref(), suites, *random),
        Command::Bounds {
            ideal,
            relations,
            power,
            field,
        } => {
            let field = parse_field(field)?;
            let u = read_ideal(ideal, g.format)?;
            let d = read_relations(relations)?;
            let report = bound_check_with(&u, &d, *power, field, &lim)?;
            let eq = q_extremal(u.len())?;
            let eq_table = betti_extremal_power(&eq, *power, field, &lim)?;
            let taylor = taylor_binomial_bounds(u.len(), *power);
            let passed = report.passed();
            let out = json!({
                "power": power,
                "field": field.to_string(),
                "actual": report.actual,
                "extremal": report.extremal,
                "q_extremal": eq_table.total(),
                "taylor": taylor,
                "per_index": report.per_index,
                "graded_violations": report.graded_violations,
                "passed": passed,
            });
            Ok((to_json(&out), if passed { 0 } else { 1 }))
        }
    }
}

fn verdict_json(r: &DivRel, v: &Verdict) -> serde_json::Value {
    match v {
        Verdict::InTrivial => json!({
            "query": relation_json(r),
            "member": true,
            "certificate": {"kind": "trivial"},
        }),
        Verdict::InDerivation(der) => json!({
            "query": relation_json(r),
            "member": true,
            "certificate": {
                "kind": "derivation",
                "result": relation_json(&der.evaluate()),
                "steps": der.transcript().iter().map(|s| json!({
                    "left": relation_json(&s.left),
                    "right": relation_json(&s.right),
                    "result": relation_json(&s.result),
                })).collect::<Vec<_>>(),
                "derivation": der,
            },
        }),
        Verdict::NotIn { witness, kind } => json!({
            "query": relation_json(r),
            "member": false,
            "certificate": {"kind": "witness", "reason": kind, "witness": witness},
        }),
    }
}

#[derive(Serialize)]
struct InstanceReport {
    relations: RelationDocument,
    ideal: Option<Vec<String>>,
    suites: Vec<SuiteReport>,
}

fn verify(
    g: &Global,
    lim: &Limits,
    relations: Option<&Path>,
    ideal: Option<&Path>,
    suites: &[String],
    random: Option<usize>,
) -> Result<Output, CliError> {
    let suites: Vec<Suite> = if suites.is_empty() {
        Suite::ALL.to_vec()
    } else {
        suites.iter().map(|s| s.parse()).collect::<Result<_, _>>()?
    };
    let mut r = rng(g.seed);
    let instances: Vec<Instance> = match (random, relations, ideal) {
        (Some(n), None, None) => (0..n)
            .map(|_| {
                let q = rand::Rng::gen_range(&mut r, 2..=4);
                if rand::Rng::gen_bool(&mut r, 0.5) {
                    let i = random_squarefree_ideal(&mut r, 6, q)?;
                    let d = random_satisfied_relations(&mut r, &i, 3);
                    Ok(Instance {
                        relations: d,
                        ideal: Some(i),
                    })
                } else {
                    let d = random_relation_set(&mut r, q, 3);
                    instance_from_relations(d, lim)
                }
            })
            .collect::<Result<_, CliError>>()?,
        (Some(_), _, _) => {
            return Err(CliError::Input("--random cannot be combined with input files".into()))
        }
        (None, None, None) => {
            return Err(CliError::Input("give --relations, --ideal, or --random".into()))
        }
        (None, rel, id) => {
            let i = id.map(|p| read_ideal(p, g.format)).transpose()?;
            let d = match (rel, &i) {
                (Some(p), _) => read_relations(p)?,
                (None, Some(i)) => extract_minimal_generating(i)?,
                (None, None) => unreachable!(),
            };
            match i {
                Some(i) => vec![Instance {
                    relations: d,
                    ideal: Some(i),
                }],
                None => vec![instance_from_relations(d, lim)?],
            }
        }
    };
    let mut reports = Vec::with_capacity(instances.len());
    let mut passed = true;
    for inst in &instances {
        let mut out = Vec::with_capacity(suites.len());
        for &s in &suites {
            let rep = match run_suite(s, inst, &mut r, lim) {
                Ok(rep) => rep,
                Err(Error::RelationFails(rel)) => SuiteReport {
                    suite: s,
                    checks: 1,
                    failures: vec![format!("ideal does not satisfy D: relation {rel} fails")],
                },
                Err(e) => return Err(e.into()),
            };
            passed &= rep.passed();
            out.push(rep);
        }
        reports.push(InstanceReport {
            relations: RelationDocument::from_relations(&inst.relations),
            ideal: inst.ideal.as_ref().map(GeneratorList::render),
            suites: out,
        });
    }
    let out = json!({"passed": passed, "instances": reports});
    Ok((to_json(&out), if passed { 0 } else { 1 }))
}

/// Pairs relations with their own extremal ideal, which satisfies them.
fn instance_from_relations(d: RelationSet, lim: &Limits) -> Result<Instance, CliError> {
    let ideal = extremal_ideal_with(&d, d.q(), lim)?.generator_list().ok();
    Ok(Instance { relations: d, ideal })
}
