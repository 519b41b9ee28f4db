//! Command-line front end.
//!
//! Every command builds a [`RunReport`]. It is written to `--report` when
//! given and printed to stdout otherwise. Exit codes: 0 on success, 1 when a
//! contract, verification, parse, budget or I/O check fails, 2 on usage
//! errors (including invalid argument values).

use std::ffi::OsString;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand};

use crate::constructions::{blow_up, ers_bound, irregular_host, verify_lemma8, verify_lemma9, PartitionedBipartite};
use crate::edgelist::{format_bipartite, format_blocks, format_edgelist, parse_blocks, parse_edgelist, ParsedGraph};
use crate::error::{Error, Result};
use crate::extraction::{run_pipeline, validate_outcome, Mode, SamplerConfig, DEFAULT_RETRIES};
use crate::graph::{girth, is_c4_free, BipartiteGraph, Girth, Graph, Vertex};
use crate::oracle::{
    best_c4free_avg_degree, has_3_regular_subgraph, max_c4free_edges, shortest_cycle_reference, OracleBudget,
};
use crate::planes::{build_plane, incidence_graph, reiman_embed};
use crate::rational::{fmt_rational, int};
use crate::report::{digest, emit_report, EmbeddedGraph, RunReport};

#[derive(Debug, Parser)]
#[command(name = "girthforge", version, about = "Certified extraction of dense C4-free subgraphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Write generated graphs as edge lists.
    #[command(subcommand)]
    Gen(GenCommand),
    /// Run the extraction pipeline on an edge list.
    Extract(ExtractArgs),
    /// Check the density ceilings of the lower-bound construction.
    #[command(subcommand)]
    Verify(VerifyCommand),
    /// Brute-force ground truth for small graphs.
    #[command(subcommand)]
    Oracle(OracleCommand),
}

#[derive(Debug, Args)]
struct ReportArg {
    /// Write the run report here instead of stdout.
    #[arg(long)]
    report: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct InputArgs {
    #[arg(long = "in", value_name = "EDGELIST")]
    input: PathBuf,
    #[command(flatten)]
    report: ReportArg,
}

#[derive(Debug, Subcommand)]
enum GenCommand {
    /// Incidence graph of the projective plane over GF(q).
    Plane {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        out: PathBuf,
        #[command(flatten)]
        report: ReportArg,
    },
    /// Plane incidence graph padded to sit inside K_{4k^2,4k^2}.
    Reiman {
        #[arg(long)]
        k: u64,
        #[arg(long)]
        out: PathBuf,
        #[command(flatten)]
        report: ReportArg,
    },
    /// Replace every host vertex by d^2 vertices and every edge by a complete bipartite graph.
    Blowup {
        #[arg(long, value_name = "EDGELIST")]
        host: PathBuf,
        #[arg(long)]
        d: usize,
        #[arg(long)]
        out: PathBuf,
        /// Also write the block partition.
        #[arg(long)]
        blocks: Option<PathBuf>,
        #[command(flatten)]
        report: ReportArg,
    },
    /// Balanced host with class-A degree d and spread class-B degrees.
    Irregular {
        #[arg(long)]
        d: usize,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
        #[command(flatten)]
        report: ReportArg,
    },
}

#[derive(Debug, Args)]
struct ExtractArgs {
    #[arg(long, default_value = "single")]
    mode: Mode,
    #[arg(long)]
    t: u64,
    #[arg(long)]
    seed: u64,
    #[arg(long, default_value_t = DEFAULT_RETRIES)]
    retries: u32,
    #[arg(long = "in", value_name = "EDGELIST")]
    input: PathBuf,
    #[arg(long)]
    report: PathBuf,
    /// Also write the extracted subgraph as an edge list.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
enum VerifyCommand {
    /// Density of a C4-free subgraph of a blow-up against 13kd.
    Lemma8 {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long)]
        blocks: PathBuf,
        #[arg(long)]
        d: usize,
        /// Blow-up the subgraph must lie in (defaults to the subgraph itself).
        #[arg(long, value_name = "EDGELIST")]
        host: Option<PathBuf>,
    },
    /// Density of a C4-free graph with block-regular neighbourhoods against 18d.
    Lemma9 {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long)]
        blocks: PathBuf,
        #[arg(long)]
        d: usize,
    },
    /// Edge count of a C4-free graph against n^{3/2}/2 + n/4.
    Ers {
        #[command(flatten)]
        input: InputArgs,
    },
}

#[derive(Debug, Subcommand)]
enum OracleCommand {
    /// Largest C4-free edge subset.
    Maxc4free(InputArgs),
    /// Best average degree of a C4-free subgraph.
    Bestavg(InputArgs),
    /// Girth by exhaustive cycle search.
    Girth(InputArgs),
    /// Search for a 3-regular subgraph.
    Threeregular(InputArgs),
}

struct Outcome {
    report: RunReport,
    destination: Option<PathBuf>,
    ok: bool,
}

/// Parses `argv` (program name first), runs the command and returns the
/// process exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let argv: Vec<OsString> = argv.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&argv) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    let command: Vec<String> = argv.iter().skip(1).map(|a| a.to_string_lossy().into_owned()).collect();
    let start = Instant::now();
    let result = execute(cli.command, command).and_then(|mut out| {
        out.report.wall_time_ms = start.elapsed().as_millis() as u64;
        match &out.destination {
            Some(path) => {
                emit_report(&out.report, path)?;
                println!("{} ({}) -> {}", out.report.outcome, if out.ok { "ok" } else { "failed" }, path.display());
            }
            None => print!("{}", out.report.to_json()?),
        }
        Ok(out.ok)
    });
    match result {
        Ok(true) => 0,
        Ok(false) => 1,
        Err(e) => {
            eprintln!("girthforge: {e}");
            match e {
                Error::Argument(_) => 2,
                _ => 1,
            }
        }
    }
}

fn read_input(path: &Path, report: &mut RunReport) -> Result<ParsedGraph> {
    let bytes = std::fs::read(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    report.input_digest = Some(digest(&bytes));
    let text = String::from_utf8(bytes).map_err(|_| Error::Parse { line: 0, message: "input is not UTF-8".into() })?;
    parse_edgelist(&text)
}

fn require_bipartite(parsed: ParsedGraph, path: &Path) -> Result<BipartiteGraph> {
    match parsed {
        ParsedGraph::Bipartite(bg) => Ok(bg),
        ParsedGraph::Plain(_) => {
            Err(Error::Contract(format!("{} has no \"A:\" line; a bipartite edge list is required", path.display())))
        }
    }
}

fn read_blocks(path: &Path) -> Result<Vec<(usize, Vec<Vertex>)>> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    let mut blocks = parse_blocks(&text)?;
    blocks.sort_by_key(|(id, _)| *id);
    Ok(blocks)
}

fn write(path: &Path, text: &str, report: &mut RunReport) -> Result<()> {
    std::fs::write(path, text).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    report.artifacts.push(path.display().to_string());
    Ok(())
}

fn to_value<T: serde::Serialize>(v: &T) -> Result<serde_json::Value> {
    serde_json::to_value(v).map_err(|e| Error::Internal(e.to_string()))
}

fn execute(command: Command, argv: Vec<String>) -> Result<Outcome> {
    match command {
        Command::Gen(g) => gen(g, argv),
        Command::Extract(a) => extract(a, argv),
        Command::Verify(v) => verify(v, argv),
        Command::Oracle(o) => oracle(o, argv),
    }
}

fn gen(cmd: GenCommand, argv: Vec<String>) -> Result<Outcome> {
    let mut r = RunReport::new(argv, "generated");
    let destination = match cmd {
        GenCommand::Plane { q, out, report } => {
            let bg = incidence_graph(&build_plane(q)?);
            let g = girth(bg.graph());
            r.param("q", q).param("girth", g);
            r.achieved(&bg.average_degree());
            r.guarantee_met = Some(g == Girth::Cycle(6));
            r.output = Some(EmbeddedGraph::from_graph(bg.graph()));
            write(&out, &format_bipartite(&bg, &[&format!("projective plane incidence graph, q = {q}")]), &mut r)?;
            report.report
        }
        GenCommand::Reiman { k, out, report } => {
            let emb = reiman_embed(k)?;
            r.param("k", k).param("q", emb.q).param("s", emb.s);
            r.param("padded_average_degree", fmt_rational(&emb.padded_average_degree));
            r.achieved(&emb.unpadded_average_degree);
            r.guarantee_met = Some(emb.unpadded_average_degree >= int(k as i128) && is_c4_free(emb.graph.graph()));
            r.notes.push("achieved is the average degree of the unpadded incidence graph".into());
            r.output = Some(EmbeddedGraph::from_graph(emb.graph.graph()));
            let comment = format!("plane of order {} padded into K_{{{s},{s}}}", emb.q, s = emb.s);
            write(&out, &format_bipartite(&emb.graph, &[&comment]), &mut r)?;
            report.report
        }
        GenCommand::Blowup { host, d, out, blocks, report } => {
            if d == 0 {
                return Err(Error::Argument("blow-up needs d >= 1".into()));
            }
            let parsed = read_input(&host, &mut r)?;
            let host_bg = require_bipartite(parsed, &host)?;
            let pb = blow_up(&host_bg, d);
            r.param("d", d).param("host_vertices", host_bg.graph().n()).param("host_edges", host_bg.graph().m());
            r.achieved(&pb.bg.average_degree());
            r.output = Some(EmbeddedGraph::from_graph(pb.bg.graph()));
            write(&out, &format_bipartite(&pb.bg, &[&format!("blow-up with d = {d}")]), &mut r)?;
            if let Some(path) = blocks {
                let all: Vec<Vec<Vertex>> = pb.blocks_a.iter().chain(&pb.blocks_b).cloned().collect();
                write(&path, &format_blocks(&all, 0), &mut r)?;
            }
            report.report
        }
        GenCommand::Irregular { d, m, seed, out, report } => {
            let bg = irregular_host(d, m, seed)?;
            r.seed = Some(seed);
            r.param("d", d).param("m", m);
            r.achieved(&bg.average_degree());
            r.notes.push("heuristic host: freeness of dense bounded-degree subgraphs is not certified".into());
            r.output = Some(EmbeddedGraph::from_graph(bg.graph()));
            write(&out, &format_bipartite(&bg, &[&format!("irregular host d = {d}, m = {m}, seed = {seed}")]), &mut r)?;
            report.report
        }
    };
    Ok(Outcome { report: r, destination, ok: true })
}

fn extract(a: ExtractArgs, argv: Vec<String>) -> Result<Outcome> {
    let mut r = RunReport::new(argv, "c4free");
    let parsed = read_input(&a.input, &mut r)?;
    let g = parsed.graph();
    let cfg = SamplerConfig::new(a.seed).with_retries(a.retries);
    let (outcome, trace) = run_pipeline(g, a.t, a.mode, &cfg)?;
    validate_outcome(g, &outcome).map_err(Error::Internal)?;
    let res = outcome.c4free().ok_or_else(|| Error::Internal("pipeline returned a witness".into()))?;
    r.outcome = outcome.kind().to_string();
    r.seed = Some(a.seed);
    r.param("mode", a.mode).param("t", a.t).param("retries", a.retries);
    r.param("input_vertices", g.n()).param("input_edges", g.m());
    r.achieved(&res.achieved);
    r.guarantee_met = Some(res.guarantee_met);
    r.output = Some(EmbeddedGraph::from_graph(&res.subgraph));
    r.trace = Some(trace);
    if let Some(out) = &a.out {
        let sub = Graph::from_edges(g.n(), &res.subgraph.origin_edges())?;
        write(out, &format_edgelist(&sub, None, &[&format!("extracted with t = {}, seed = {}", a.t, a.seed)]), &mut r)?;
    }
    Ok(Outcome { report: r, destination: Some(a.report), ok: true })
}

fn verify(cmd: VerifyCommand, argv: Vec<String>) -> Result<Outcome> {
    let mut r = RunReport::new(argv, "verified");
    let (vr, destination) = match cmd {
        VerifyCommand::Ers { input } => {
            let parsed = read_input(&input.input, &mut r)?;
            let g = parsed.graph();
            if !is_c4_free(g) {
                return Err(Error::Contract(format!("{} contains a C4", input.input.display())));
            }
            let bound = ers_bound(g.n() as u64);
            let mut vr = crate::constructions::VerificationReport::default();
            vr.param("n", g.n());
            vr.param("bound_value", fmt_rational(&bound.value));
            vr.param("bound_exact", bound.exact);
            vr.push("e(G) <= floor(n^{3/2}/2 + n/4)", int(g.m() as i128), int(bound.floor as i128));
            (vr, input.report.report)
        }
        VerifyCommand::Lemma9 { input, blocks, d } => {
            let parsed = read_input(&input.input, &mut r)?;
            let bg = require_bipartite(parsed, &input.input)?;
            let blocks: Vec<Vec<Vertex>> = read_blocks(&blocks)?.into_iter().map(|(_, b)| b).collect();
            (verify_lemma9(&bg, &blocks, d)?, input.report.report)
        }
        VerifyCommand::Lemma8 { input, blocks, d, host } => {
            let parsed = read_input(&input.input, &mut r)?;
            let sub_bg = require_bipartite(parsed, &input.input)?;
            let host_bg = match &host {
                Some(path) => {
                    let text =
                        std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
                    require_bipartite(parse_edgelist(&text)?, path)?
                }
                None => sub_bg.clone(),
            };
            if host_bg.graph().n() != sub_bg.graph().n() {
                return Err(Error::Argument("subgraph and host have different vertex counts".into()));
            }
            let (mut blocks_a, mut blocks_b) = (Vec::new(), Vec::new());
            for (id, block) in read_blocks(&blocks)? {
                match block.iter().find(|&&v| v >= host_bg.graph().n()) {
                    Some(v) => {
                        return Err(Error::Argument(format!("block {id} lists vertex {v}, which is out of range")))
                    }
                    None if block.iter().all(|&v| host_bg.in_a(v)) => blocks_a.push(block),
                    None if block.iter().all(|&v| !host_bg.in_a(v)) => blocks_b.push(block),
                    None => return Err(Error::Argument(format!("block {id} mixes both classes"))),
                }
            }
            let pb = PartitionedBipartite::new(host_bg, blocks_a, blocks_b)?;
            (verify_lemma8(&pb, sub_bg.graph(), d)?, input.report.report)
        }
    };
    let ok = vr.passed();
    if !ok {
        r.outcome = "violated".into();
    }
    r.guarantee_met = Some(ok);
    r.result = Some(to_value(&vr)?);
    Ok(Outcome { report: r, destination, ok })
}

fn oracle(cmd: OracleCommand, argv: Vec<String>) -> Result<Outcome> {
    let budget = OracleBudget::from_env()?;
    let mut r = RunReport::new(argv, "oracle");
    let input = match &cmd {
        OracleCommand::Maxc4free(i)
        | OracleCommand::Bestavg(i)
        | OracleCommand::Girth(i)
        | OracleCommand::Threeregular(i) => i,
    };
    let g = read_input(&input.input, &mut r)?.graph().clone();
    r.param("vertices", g.n()).param("edges", g.m());
    match &cmd {
        OracleCommand::Maxc4free(_) => {
            let (m, edges) = max_c4free_edges(&g, &budget)?;
            r.param("max_c4free_edges", m);
            r.output = Some(EmbeddedGraph::from_graph(&Graph::from_edges(g.n(), &edges)?));
        }
        OracleCommand::Bestavg(_) => {
            let (best, sub) = best_c4free_avg_degree(&g, &budget)?;
            r.achieved(&best);
            r.output = Some(EmbeddedGraph::from_graph(&sub));
        }
        OracleCommand::Girth(_) => {
            r.param("girth", shortest_cycle_reference(&g));
        }
        OracleCommand::Threeregular(_) => {
            let found = has_3_regular_subgraph(&g, &budget)?;
            r.param("has_3_regular_subgraph", found.is_some());
            if let Some(edges) = found {
                r.output = Some(EmbeddedGraph::from_graph(&Graph::from_edges(g.n(), &edges)?));
            }
        }
    }
    Ok(Outcome { report: r, destination: input.report.report.clone(), ok: true })
}
