//! Subcommand implementations. Each returns the JSON document to print and the
//! process exit code.

use std::io::Read;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use coqforge::catalog;
use coqforge::certify::{certify, BfsLimits, CertifyOptions};
use coqforge::coq::CyclicOrder;
use coqforge::graph::Digraph;
use coqforge::invariants::summarize;
use coqforge::io::{
    error_json, int_json, ints_json, parse_document, polynomial_json, seed_json, vertices_json, zero_based, Document,
    QuiverDoc,
};
use coqforge::{BigQuiver, Coq, Error, Int, Seed};
use serde_json::{json, Value};

pub const EXIT_OK: i32 = 0;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_PRECONDITION: i32 = 3;
pub const EXIT_INCONCLUSIVE: i32 = 4;

#[derive(Parser, Debug)]
#[command(
    name = "coqforge",
    version,
    about = "Quiver mutation, COQ invariants and mutation-acyclicity certificates"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Mutate a quiver along a path, optionally tracking the seed matrices.
    Mutate {
        #[command(flatten)]
        input: Input,
        /// Comma-separated 1-based vertices, e.g. `3,2,5` or `1..4`.
        #[arg(long, value_parser = parse_vertex_list, default_value = "")]
        at: VertexList,
        /// Track B, C, A and U from the (acyclic) input quiver.
        #[arg(long)]
        track_seed: bool,
        /// With --track-seed, accept a principally framed quiver and track its mutable part.
        #[arg(long, requires = "track_seed")]
        from_framed: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Alexander polynomial, Markov invariant, det(B), GCD multiset and cosquare
    /// characteristic polynomial for a cyclic ordering.
    Invariants {
        #[command(flatten)]
        input: Input,
        /// 1-based cyclic order; defaults to the file's order, then to a topological order.
        #[arg(long, value_parser = parse_vertex_list)]
        order: Option<VertexList>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Decide mutation-acyclicity where possible. Exit 0 if definitive, 4 if inconclusive.
    Certify {
        #[command(flatten)]
        input: Input,
        /// 1-based cyclic order assumed totally proper; enables the invariant obstructions.
        #[arg(long, value_parser = parse_vertex_list)]
        order: Option<VertexList>,
        /// Breadth-first search depth for an acyclic member.
        #[arg(long, default_value_t = BfsLimits::default().depth)]
        depth: usize,
        /// Branches with an entry of larger absolute value are pruned.
        #[arg(long, default_value_t = BfsLimits::default().entry_cap)]
        entry_cap: u64,
        /// Upper bound on distinct quivers visited by the search.
        #[arg(long, default_value_t = BfsLimits::default().max_states)]
        max_states: usize,
        /// Upper bound on quivers produced while enumerating acyclic candidates.
        #[arg(long, default_value_t = CertifyOptions::default().max_candidates)]
        max_candidates: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print a built-in example as JSON, or list the names.
    Example { name: Option<String> },
    /// Serve the session HTTP API.
    Serve {
        #[arg(long, default_value_t = 8080)]
        port: u16,
        #[arg(long, default_value = "127.0.0.1")]
        host: std::net::IpAddr,
        /// Directory for append-only session logs.
        #[arg(long, env = "COQFORGE_STATE_DIR")]
        state_dir: Option<PathBuf>,
    },
}

#[derive(Args, Debug)]
pub struct Input {
    /// Quiver JSON file, or `-` for standard input.
    #[arg(required_unless_present = "example", conflicts_with = "example")]
    pub file: Option<PathBuf>,
    /// Use a built-in example instead of a file.
    #[arg(long)]
    pub example: Option<String>,
}

pub type VertexList = Vec<usize>;

/// `1,4,2,3`, `1..10` (inclusive) or a mix such as `1..3,7`.
pub fn parse_vertex_list(s: &str) -> Result<VertexList, String> {
    let mut out = Vec::new();
    for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let num = |x: &str| {
            x.trim()
                .parse::<usize>()
                .map_err(|_| format!("{x:?} is not a vertex number"))
        };
        match part.split_once("..") {
            Some((a, b)) => {
                let (a, b) = (num(a)?, num(b.trim_start_matches('='))?);
                if a > b {
                    return Err(format!("empty range {part}"));
                }
                out.extend(a..=b);
            }
            None => out.push(num(part)?),
        }
    }
    Ok(out)
}

pub struct Outcome {
    pub code: i32,
    pub stdout: Option<(Value, Option<PathBuf>)>,
    pub stderr: Option<Value>,
}

impl Outcome {
    fn ok(v: Value, out: Option<PathBuf>, code: i32) -> Self {
        Outcome {
            code,
            stdout: Some((v, out)),
            stderr: None,
        }
    }

    fn fail(e: &Error) -> Self {
        let code = match e {
            Error::Parse(_) => EXIT_PARSE,
            _ => EXIT_PRECONDITION,
        };
        Outcome {
            code,
            stdout: None,
            stderr: Some(error_json(e)),
        }
    }
}

fn load(input: &Input) -> Result<Document<Int>, Error> {
    if let Some(name) = &input.example {
        let e = catalog::named::<Int>(name).ok_or_else(|| Error::Parse(format!("unknown example {name:?}")))?;
        return Ok(Document {
            quiver: e.quiver,
            path: e.path,
            order: e.order,
        });
    }
    let path = input.file.as_deref().unwrap_or(Path::new("-"));
    let text = if path == Path::new("-") {
        let mut s = String::new();
        std::io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| Error::Parse(format!("standard input: {e}")))?;
        s
    } else {
        std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?
    };
    parse_document(&text)
}

pub fn run(cmd: Command) -> Outcome {
    let r = match cmd {
        Command::Mutate {
            input,
            at,
            track_seed,
            from_framed,
            out,
        } => mutate(&input, &at, track_seed, from_framed).map(|v| Outcome::ok(v, out, EXIT_OK)),
        Command::Invariants { input, order, out } => {
            invariants(&input, order.as_deref()).map(|v| Outcome::ok(v, out, EXIT_OK))
        }
        Command::Certify {
            input,
            order,
            depth,
            entry_cap,
            max_states,
            max_candidates,
            out,
        } => {
            let opts = CertifyOptions {
                bfs: BfsLimits {
                    depth,
                    entry_cap,
                    max_states,
                },
                max_candidates,
            };
            certify_cmd(&input, order.as_deref(), &opts).map(|(v, definitive)| {
                let code = if definitive { EXIT_OK } else { EXIT_INCONCLUSIVE };
                Outcome::ok(v, out, code)
            })
        }
        Command::Example { name } => example(name.as_deref()).map(|v| Outcome::ok(v, None, EXIT_OK)),
        Command::Serve { .. } => unreachable!("serve is handled by main"),
    };
    r.unwrap_or_else(|e| Outcome::fail(&e))
}

/// The mutable part of a principal framing, or an error if `q` is not one.
fn unframe(q: &BigQuiver) -> Result<BigQuiver, Error> {
    let base = q.mutable_part();
    let mutable = q.mutable_vertices();
    let frozen = q.frozen_vertices();
    let reordered: Vec<usize> = mutable.iter().chain(&frozen).copied().collect();
    let framed = q.subquiver(&reordered)?;
    if frozen.len() != mutable.len() || framed.b() != base.frame()?.b() {
        return Err(Error::BadOrder(
            "input is not a principal framing (v' -> v for each mutable v, frozen listed in vertex order)".into(),
        ));
    }
    Ok(base)
}

fn mutate(input: &Input, at: &[usize], track_seed: bool, from_framed: bool) -> Result<Value, Error> {
    let doc = load(input)?;
    let n = doc.quiver.n();
    let at = zero_based(at, n, "--at")?;
    let mut path = doc.path.clone().unwrap_or_default();
    path.extend(&at);
    if track_seed {
        let q0 = if from_framed {
            unframe(&doc.quiver)?
        } else if doc.quiver.has_frozen() {
            return Err(Error::AlreadyFramed);
        } else {
            doc.quiver.clone()
        };
        return seed_json(&Seed::replay(&q0, &path)?);
    }
    let q = doc.quiver.mutate_path(&path)?;
    Ok(serde_json::to_value(QuiverDoc::from_quiver(&q)).expect("quiver documents serialize"))
}

fn order_for(doc: &Document<Int>, order: Option<&[usize]>) -> Result<Option<Vec<usize>>, Error> {
    match order {
        Some(o) => Ok(Some(zero_based(o, doc.quiver.n(), "--order")?)),
        None => Ok(doc.order.clone()),
    }
}

fn invariants(input: &Input, order: Option<&[usize]>) -> Result<Value, Error> {
    let doc = load(input)?;
    let q = &doc.quiver;
    let order = match order_for(&doc, order)? {
        Some(o) => o,
        None => Digraph::from_quiver(q)
            .topological_sort()
            .map_err(|_| Error::BadOrder("the quiver is not acyclic, so an order is required".into()))?,
    };
    let c = Coq::with_order(q.clone(), CyclicOrder::new(order, q.n())?)?;
    let s = summarize(&c);
    Ok(json!({
        "order": vertices_json(c.order().as_slice()),
        "alexander": polynomial_json(&s.alexander),
        "alexander_text": s.alexander.to_string(),
        "markov": int_json(&s.markov),
        "det": int_json(&s.det),
        "gcds": ints_json(&s.gcds),
        "cosquare_charpoly": polynomial_json(&s.cosquare_charpoly),
    }))
}

fn certify_cmd(input: &Input, order: Option<&[usize]>, opts: &CertifyOptions) -> Result<(Value, bool), Error> {
    let doc = load(input)?;
    let order = order_for(&doc, order)?;
    let report = certify(&doc.quiver, order.as_deref(), opts)?;
    let definitive = report.is_definitive();
    Ok((serde_json::to_value(report).expect("reports serialize"), definitive))
}

fn example(name: Option<&str>) -> Result<Value, Error> {
    let Some(name) = name else {
        let names: Vec<&str> = catalog::entries::<Int>().iter().map(|e| e.name).collect();
        return Ok(json!(names));
    };
    let e = catalog::named::<Int>(name).ok_or_else(|| Error::Parse(format!("unknown example {name:?}")))?;
    let mut doc = QuiverDoc::from_quiver(&e.quiver);
    doc.order = e.order.map(|o| o.iter().map(|v| v + 1).collect());
    doc.path = e.path.map(|p| p.iter().map(|v| v + 1).collect());
    Ok(serde_json::to_value(doc).expect("quiver documents serialize"))
}
