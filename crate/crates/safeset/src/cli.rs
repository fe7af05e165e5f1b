//! `safeset solve | verify | gen`.
//!
//! Reports go to stdout as JSON, diagnostics to stderr. Exit status is 0
//! for a feasible or valid answer, 1 for an infeasible or invalid one and
//! 2 for usage and input errors.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use safeset_core::cw::CExpression;
use safeset_core::graph::find_violation;
use safeset_core::oracle::{BruteForce, DEFAULT_CAP};
use safeset_core::{branch, cw, nd, preprocess, reductions, Graph, Problem, SolveResult, VertexSet};
use serde::Serialize;

use crate::formats::{self, Sidecar};
use crate::report::{RunReport, Stats, VerifyReport};

#[derive(Debug, Parser)]
#[command(name = "safeset", version, about = "Safe set and connected safe set solvers")]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Compute a minimum (connected) safe set.
    Solve(SolveArgs),
    /// Check whether a vertex set is a (connected) safe set.
    Verify(VerifyArgs),
    /// Build a safe set instance from a dominating set instance.
    Gen(GenArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Algo {
    Oracle,
    Nd,
    Cw,
    Branch,
    Approx,
}

#[derive(Debug, clap::Args)]
struct SolveArgs {
    #[arg(long, value_enum)]
    algo: Algo,
    /// Ask for a connected safe set.
    #[arg(long)]
    connected: bool,
    /// Solution size bound for `branch`.
    #[arg(short)]
    k: Option<usize>,
    /// Clique-width expression for `cw`.
    #[arg(long)]
    expr: Option<PathBuf>,
    /// Largest graph the oracle accepts.
    #[arg(long, env = "SAFESET_BF_CAP", default_value_t = DEFAULT_CAP)]
    bf_cap: usize,
    /// Graph file; for `cw` it defaults to the graph of the expression and
    /// must match it when given.
    graph: Option<PathBuf>,
}

#[derive(Debug, clap::Args)]
struct VerifyArgs {
    #[arg(long)]
    connected: bool,
    /// Comma-separated vertex ids.
    #[arg(long, allow_hyphen_values = true)]
    set: String,
    graph: PathBuf,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum GenKind {
    /// From Dominating Set; the input is a graph file.
    Ds,
    /// From Red-Blue Dominating Set; the input is a bigraph file.
    Rbds,
}

#[derive(Debug, clap::Args)]
struct GenArgs {
    #[arg(value_enum)]
    kind: GenKind,
    #[arg(short)]
    k: usize,
    input: PathBuf,
    /// Output graph; the sidecar goes to `<OUT>.json`.
    #[arg(short)]
    o: PathBuf,
    /// Also write the certificate built from a smallest source solution.
    #[arg(long)]
    cert: Option<PathBuf>,
    /// Also write the path decomposition (`ds` only).
    #[arg(long)]
    decomp: Option<PathBuf>,
}

pub fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn status(ok: bool) -> ExitCode {
    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

pub fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Solve(args) => solve(args),
        Command::Verify(args) => verify(args),
        Command::Gen(args) => generate(args),
    }
}

fn read(path: &Path) -> Result<Vec<u8>> {
    fs::read(path).with_context(|| format!("cannot read {}", path.display()))
}

fn load_graph(path: &Path) -> Result<(Graph, Vec<u8>)> {
    let bytes = read(path)?;
    let text = String::from_utf8(bytes.clone()).with_context(|| format!("{} is not UTF-8", path.display()))?;
    let g = formats::parse_graph(&text).with_context(|| format!("in {}", path.display()))?;
    Ok((g, bytes))
}

fn print_json(value: &impl Serialize) -> Result<()> {
    println!("{}", serde_json::to_string_pretty(value)?);
    Ok(())
}

fn solve(args: SolveArgs) -> Result<ExitCode> {
    let problem = Problem::from_connected(args.connected);
    let expr = match (&args.expr, args.algo) {
        (Some(path), _) => {
            let text = String::from_utf8(read(path)?).context("expression is not UTF-8")?;
            Some(CExpression::parse(&text).with_context(|| format!("in {}", path.display()))?)
        }
        (None, Algo::Cw) => bail!("--algo cw requires --expr"),
        (None, _) => None,
    };
    let (g, input) = match (&args.graph, &expr) {
        (Some(path), _) => load_graph(path)?,
        (None, Some(e)) if args.algo == Algo::Cw => {
            let bytes = e.to_string().into_bytes();
            (e.eval_graph().0, bytes)
        }
        (None, _) => bail!("missing GRAPH argument"),
    };
    let mut stats = Stats::of(&g);
    stats.c = expr.as_ref().map(CExpression::labels);
    let start = Instant::now();
    let mut result: SolveResult = match args.algo {
        Algo::Oracle => BruteForce::with_cap(args.bf_cap).solve(&g, problem)?,
        Algo::Approx => preprocess::approx_safe_set(&g),
        Algo::Nd => {
            stats.nd = Some(nd::twin_partition(&g).len());
            nd::solve_nd(&g, problem)
        }
        Algo::Branch => {
            let Some(k) = args.k else { bail!("--algo branch requires -k") };
            branch::branch_solve(&g, k, problem)?
        }
        Algo::Cw => {
            let e = expr.as_ref().expect("checked above");
            if e.eval_graph().0 != g {
                bail!("the expression does not evaluate to the given graph");
            }
            cw::solve_cw(e, problem)?
        }
    };
    result.elapsed = start.elapsed();
    if let Some(w) = &result.witness {
        let violation = find_violation(&g, w, problem)?;
        if violation.is_some() {
            bail!("internal error: witness fails verification: {violation:?}");
        }
    }
    print_json(&RunReport::new(&result, problem, stats, &input))?;
    Ok(status(result.feasible))
}

fn verify(args: VerifyArgs) -> Result<ExitCode> {
    let problem = Problem::from_connected(args.connected);
    let members = formats::parse_vertex_list(&args.set).map_err(anyhow::Error::msg).context("malformed --set")?;
    let (g, _) = load_graph(&args.graph)?;
    let s = VertexSet::from_members(g.n(), members).context("malformed --set")?;
    let violation = find_violation(&g, &s, problem)?;
    let report = VerifyReport {
        problem: problem.tag(),
        valid: violation.is_none(),
        violation: violation.map(Into::into),
    };
    print_json(&report)?;
    Ok(status(report.valid))
}

#[derive(Serialize)]
struct GenSummary {
    target: usize,
    n: usize,
    m: usize,
    graph: PathBuf,
    sidecar: PathBuf,
    #[serde(skip_serializing_if = "Option::is_none")]
    certificate: Option<PathBuf>,
    #[serde(skip_serializing_if = "Option::is_none")]
    decomposition: Option<PathBuf>,
}

#[derive(Serialize)]
struct Certificate {
    /// Source solution: a dominating set, or blue indices for `rbds`.
    source: Vec<usize>,
    safe_set: Vec<usize>,
}

fn write(path: &Path, contents: impl AsRef<[u8]>) -> Result<()> {
    fs::write(path, contents).with_context(|| format!("cannot write {}", path.display()))
}

fn generate(args: GenArgs) -> Result<ExitCode> {
    let text = String::from_utf8(read(&args.input)?).context("input is not UTF-8")?;
    let (out, certificate) = match args.kind {
        GenKind::Ds => {
            let g = formats::parse_graph(&text).with_context(|| format!("in {}", args.input.display()))?;
            let out = reductions::ds_to_ss(&g, args.k)?;
            let cert = match args.cert {
                None => None,
                Some(_) => BruteForce::default().dominating_set(&g, args.k)?.witness.map(|d| {
                    let s = reductions::ds_forward_certificate(&d, &out).expect("oracle output dominates");
                    Certificate { source: d.to_vec(), safe_set: s.to_vec() }
                }),
            };
            (out, cert)
        }
        GenKind::Rbds => {
            if args.decomp.is_some() {
                bail!("--decomp is only available for `gen ds`");
            }
            let bg = formats::parse_bigraph(&text).with_context(|| format!("in {}", args.input.display()))?;
            let out = reductions::rbds_to_ss(&bg, args.k)?;
            let cert = match args.cert {
                None => None,
                Some(_) => safeset_core::oracle::red_blue_dominating_set_bf(&bg, args.k).map(|d| {
                    let s = reductions::rbds_forward_certificate(&d, &out).expect("oracle output dominates");
                    Certificate { source: d, safe_set: s.to_vec() }
                }),
            };
            (out, cert)
        }
    };
    write(&args.o, formats::write_graph(&out.graph))?;
    let mut sidecar = args.o.clone().into_os_string();
    sidecar.push(".json");
    let sidecar = PathBuf::from(sidecar);
    write(&sidecar, serde_json::to_string_pretty(&Sidecar::new(&out))?)?;
    if let Some(path) = &args.decomp {
        write(path, formats::decomposition_json(&reductions::ds_path_decomposition(&out)?))?;
    }
    let mut ok = true;
    if let Some(path) = &args.cert {
        match &certificate {
            Some(c) => write(path, serde_json::to_string_pretty(c)?)?,
            None => {
                eprintln!("no source solution of size at most {}; certificate not written", args.k);
                ok = false;
            }
        }
    }
    print_json(&GenSummary {
        target: out.target,
        n: out.graph.n(),
        m: out.graph.m(),
        graph: args.o,
        sidecar,
        certificate: args.cert.filter(|_| ok),
        decomposition: args.decomp,
    })?;
    Ok(status(ok))
}
