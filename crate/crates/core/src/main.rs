//! `pvds` command-line front end.
//!
//! Exit codes: 0 = YES (or success), 1 = NO (or a bench bound violation),
//! 2 = usage, parse or internal error.

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;
use serde_json::json;
use thiserror::Error;

use pvds::edgelist::{self, EdgeList, ParseError};
use pvds::generator::{make_pumpkin, planted, random_digraph, GenError, PlantSpec};
use pvds::oracle::{brute_force_pvds, brute_force_rpvds, OracleError, OracleResult};
use pvds::{solve_pvds, solve_rpvds, Instance, SearchStats, Solution, SolveError, VertexId};

const STATS_SCHEMA: u32 = 1;
const BOUND_FACTOR: f64 = 10.0;

#[derive(Parser)]
#[command(name = "pvds", version, about = "Exact solver for Pumpkin Vertex Deletion Set")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide an instance with the branching algorithm.
    Solve {
        input: PathBuf,
        #[command(flatten)]
        target: Target,
        /// Emit search statistics as JSON.
        #[arg(long)]
        stats: bool,
        /// Re-check the certificate with the recognizer before printing.
        #[arg(long)]
        certify: bool,
        /// Print a single JSON object instead of text.
        #[arg(long)]
        json: bool,
    },
    /// Decide an instance by exhaustive enumeration.
    Oracle {
        input: PathBuf,
        #[command(flatten)]
        target: Target,
    },
    /// Write a generated instance as an edge list.
    Gen {
        kind: GenKind,
        /// Path lengths, comma separated (pumpkin, planted).
        #[arg(long, value_delimiter = ',', default_value = "2,2")]
        paths: Vec<usize>,
        /// Noise vertices (planted).
        #[arg(long, default_value_t = 0)]
        noise: usize,
        /// Attachment attempts per noise vertex (planted).
        #[arg(long, default_value_t = 2)]
        noise_edges: usize,
        /// Vertex count (random).
        #[arg(long, default_value_t = 6)]
        n: usize,
        /// Arc probability (random).
        #[arg(long, default_value_t = 0.3)]
        p: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Output file; standard output when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Solve every planted instance in a directory and audit node counts.
    Bench {
        corpus: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(clap::Args)]
struct Target {
    #[arg(long, allow_negative_numbers = true)]
    k: i64,
    #[arg(long)]
    source: Option<u32>,
    #[arg(long)]
    sink: Option<u32>,
}

#[derive(Clone, Copy, ValueEnum)]
enum GenKind {
    Pumpkin,
    Planted,
    Random,
}

#[derive(Debug, Error)]
enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: io::Error },
    #[error("{path}: {source}")]
    Parse { path: PathBuf, source: ParseError },
    #[error(transparent)]
    Solve(#[from] SolveError),
    #[error(transparent)]
    Oracle(#[from] OracleError),
    #[error(transparent)]
    Gen(#[from] GenError),
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error("certificate failed verification")]
    Certify,
}

enum Verdict {
    Yes,
    No,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Solve {
            input,
            target,
            stats,
            certify,
            json,
        } => cmd_solve(&input, &target, stats, certify, json),
        Command::Oracle { input, target } => cmd_oracle(&input, &target),
        Command::Gen {
            kind,
            paths,
            noise,
            noise_edges,
            n,
            p,
            seed,
            out,
        } => {
            let spec = PlantSpec {
                path_lengths: paths,
                noise_vertices: noise,
                noise_edges_per_vertex: noise_edges,
                seed,
            };
            cmd_gen(kind, &spec, n, p, out.as_deref()).map(|_| Verdict::Yes)
        }
        Command::Bench { corpus, out } => cmd_bench(&corpus, &out),
    };
    match result {
        Ok(Verdict::Yes) => ExitCode::from(0),
        Ok(Verdict::No) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn read_input(path: &Path) -> Result<EdgeList, CliError> {
    let text = fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_owned(),
        source,
    })?;
    edgelist::parse(&text).map_err(|source| CliError::Parse {
        path: path.to_owned(),
        source,
    })
}

fn terminals(list: &EdgeList, target: &Target) -> Result<Option<(VertexId, VertexId)>, CliError> {
    match (target.source, target.sink) {
        (None, None) => Ok(None),
        (Some(s), Some(t)) => {
            let (s, t) = (VertexId(s), VertexId(t));
            for v in [s, t] {
                if !list.graph.is_alive(v) {
                    return Err(CliError::Usage(format!("vertex {v} is not in the graph")));
                }
            }
            if s == t {
                return Err(CliError::Usage("source and sink must differ".into()));
            }
            Ok(Some((s, t)))
        }
        _ => Err(CliError::Usage("--source and --sink must be given together".into())),
    }
}

fn certificate_line(sol: &Solution) -> String {
    sol.vertices()
        .map(|v| v.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

#[derive(Serialize)]
struct StatsReport<'a> {
    schema: u32,
    #[serde(flatten)]
    stats: &'a SearchStats,
    elapsed_ms: f64,
}

fn cmd_solve(input: &Path, target: &Target, want_stats: bool, certify: bool, as_json: bool) -> Result<Verdict, CliError> {
    let list = read_input(input)?;
    let fixed = terminals(&list, target)?;
    let started = Instant::now();
    let (found, stats) = match fixed {
        Some((s, t)) => {
            let inst = Instance {
                g: list.graph.clone(),
                k: target.k,
                s,
                t,
            };
            let (sol, stats) = solve_rpvds(&inst)?;
            (sol.map(|sol| (s, t, sol)), stats)
        }
        None => {
            let (found, stats) = solve_pvds(&list.graph, target.k)?;
            (found.map(|f| (f.s, f.t, f.solution)), stats)
        }
    };
    let elapsed_ms = started.elapsed().as_secs_f64() * 1e3;
    if certify {
        if let Some((s, t, sol)) = &found {
            if !sol.certifies(&list.graph, *s, *t) || sol.len() as i64 > target.k {
                return Err(CliError::Certify);
            }
        }
    }
    let report = StatsReport {
        schema: STATS_SCHEMA,
        stats: &stats,
        elapsed_ms,
    };

    let mut out = io::stdout().lock();
    if as_json {
        let mut doc = json!({
            "schema": STATS_SCHEMA,
            "answer": if found.is_some() { "YES" } else { "NO" },
            "source": found.as_ref().map(|f| f.0.0),
            "sink": found.as_ref().map(|f| f.1.0),
            "certificate": found.as_ref().map(|f| f.2.vertices().map(|v| v.0).collect::<Vec<_>>()),
        });
        if want_stats {
            doc["stats"] = serde_json::to_value(&report).expect("stats serialise");
        }
        let _ = writeln!(out, "{doc}");
    } else {
        match &found {
            Some((s, t, sol)) => {
                let _ = writeln!(out, "YES");
                let _ = writeln!(out, "{}", certificate_line(sol));
                if fixed.is_none() {
                    let _ = writeln!(out, "terminals {s} {t}");
                }
            }
            None => {
                let _ = writeln!(out, "NO");
            }
        }
        if want_stats {
            let _ = writeln!(out, "{}", serde_json::to_string(&report).expect("stats serialise"));
        }
    }
    Ok(if found.is_some() { Verdict::Yes } else { Verdict::No })
}

fn cmd_oracle(input: &Path, target: &Target) -> Result<Verdict, CliError> {
    let list = read_input(input)?;
    let result: OracleResult = match terminals(&list, target)? {
        Some((s, t)) => brute_force_rpvds(&Instance {
            g: list.graph.clone(),
            k: target.k,
            s,
            t,
        })?,
        None => brute_force_pvds(&list.graph, target.k)?,
    };
    let mut out = io::stdout().lock();
    match (&result.witness, result.min_size) {
        (Some(w), Some(size)) => {
            let _ = writeln!(out, "YES");
            let _ = writeln!(out, "{}", certificate_line(w));
            let _ = writeln!(out, "min_size {size}");
            if target.source.is_none() {
                if let Some((s, t)) = result.terminals {
                    let _ = writeln!(out, "terminals {s} {t}");
                }
            }
            Ok(Verdict::Yes)
        }
        _ => {
            let _ = writeln!(out, "NO");
            Ok(Verdict::No)
        }
    }
}

fn cmd_gen(kind: GenKind, spec: &PlantSpec, n: usize, p: f64, out: Option<&Path>) -> Result<(), CliError> {
    let list = match kind {
        GenKind::Pumpkin => {
            let (graph, s, t) = make_pumpkin(&spec.path_lengths)?;
            EdgeList {
                graph,
                source: Some(s),
                sink: Some(t),
                planted_k: None,
            }
        }
        GenKind::Planted => {
            let inst = planted(spec)?;
            EdgeList {
                graph: inst.g,
                source: Some(inst.s),
                sink: Some(inst.t),
                planted_k: Some(inst.k),
            }
        }
        GenKind::Random => EdgeList {
            graph: random_digraph(n, p, spec.seed)?,
            ..EdgeList::default()
        },
    };
    let text = edgelist::write(&list);
    match out {
        Some(path) => fs::write(path, text).map_err(|source| CliError::Io {
            path: path.to_owned(),
            source,
        }),
        None => {
            let _ = io::stdout().lock().write_all(text.as_bytes());
            Ok(())
        }
    }
}

#[derive(Serialize)]
struct BenchRow {
    file: String,
    n: usize,
    m: usize,
    k: i64,
    answer: &'static str,
    nodes: u64,
    leaves: u64,
    max_depth: u64,
    elapsed_ms: String,
    bound_ratio: String,
}

fn bench_one(path: &Path) -> Result<(BenchRow, f64), CliError> {
    let list = read_input(path)?;
    let missing = |what: &str| CliError::Usage(format!("{}: missing \"# {what}\" metadata", path.display()));
    let s = list.source.ok_or_else(|| missing("source"))?;
    let t = list.sink.ok_or_else(|| missing("sink"))?;
    let k = list.planted_k.ok_or_else(|| missing("planted_k"))?;
    let inst = Instance::new(list.graph.clone(), k, s, t).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?;
    let started = Instant::now();
    let (sol, stats) = solve_rpvds(&inst)?;
    let elapsed_ms = started.elapsed().as_secs_f64() * 1e3;
    let ratio = stats.nodes as f64 / 2f64.powi(k.max(0) as i32);
    let row = BenchRow {
        file: path
            .file_name()
            .map(|f| f.to_string_lossy().into_owned())
            .unwrap_or_default(),
        n: inst.g.num_vertices(),
        m: inst.g.num_edges(),
        k,
        answer: if sol.is_some() { "YES" } else { "NO" },
        nodes: stats.nodes,
        leaves: stats.leaves,
        max_depth: stats.max_depth,
        elapsed_ms: format!("{elapsed_ms:.3}"),
        bound_ratio: format!("{ratio:.6}"),
    };
    Ok((row, ratio))
}

fn cmd_bench(corpus: &Path, out: &Path) -> Result<Verdict, CliError> {
    let io_err = |path: &Path| {
        let path = path.to_owned();
        move |source| CliError::Io { path, source }
    };
    let mut files: Vec<PathBuf> = fs::read_dir(corpus)
        .map_err(io_err(corpus))?
        .map(|e| e.map(|e| e.path()))
        .collect::<Result<_, _>>()
        .map_err(io_err(corpus))?;
    files.retain(|p| p.is_file());
    files.sort();

    let results: Vec<(BenchRow, f64)> = files
        .par_iter()
        .map(|p| bench_one(p))
        .collect::<Result<_, _>>()?;

    let mut writer = csv::Writer::from_path(out)?;
    if results.is_empty() {
        writer.write_record([
            "file", "n", "m", "k", "answer", "nodes", "leaves", "max_depth", "elapsed_ms", "bound_ratio",
        ])?;
    }
    let mut worst: f64 = 0.0;
    for (row, ratio) in &results {
        writer.serialize(row)?;
        worst = worst.max(*ratio);
    }
    writer.flush().map_err(io_err(out))?;
    println!("instances {} max_bound_ratio {worst:.6}", results.len());
    Ok(if worst <= BOUND_FACTOR { Verdict::Yes } else { Verdict::No })
}
