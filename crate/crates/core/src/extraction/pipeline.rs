//! The end-to-end iteration: narrow to witness neighbourhoods until either a
//! dense C4-free subgraph appears or a complete bipartite graph `K_{s,s}`
//! can be read off, which then hosts a projective-plane subgraph.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use super::steps::short_circuit;
use super::{double_exp_step, iterate_step, sparsify_bounded_degree, C4FreeResult, ExtractionOutcome, SamplerConfig};
use crate::error::{argument, Error, Result};
use crate::graph::{bipartize, induced_bipartite, BipartiteGraph, Graph, Vertex};
use crate::planes::reiman_embed;
use crate::rational::{int, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    /// Density recursion `d -> d / 50t`.
    Single,
    /// Density recursion `d -> d^{1/5}`.
    Double,
}

impl FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "single" => Ok(Mode::Single),
            "double" => Ok(Mode::Double),
            other => argument(format!("unknown mode {other:?} (expected single or double)")),
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Single => "single",
            Mode::Double => "double",
        })
    }
}

/// State after iteration `i`; vertex ids refer to the pipeline input.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IterationRecord {
    pub i: usize,
    /// Witness vertex `v_i`; absent for the starting graph and for steps
    /// that did not narrow.
    pub v: Option<Vertex>,
    pub size_a: usize,
    pub size_b: usize,
    #[serde(with = "crate::rational::serde_fraction")]
    pub density: Rational,
    pub step: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
    pub a: Vec<Vertex>,
    pub b: Vec<Vertex>,
}

/// A verified `K_{s,s}`: every `a`-`b` pair is an edge of the input.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Harvest {
    pub s: usize,
    pub a: Vec<Vertex>,
    pub b: Vec<Vertex>,
    /// How many of `b` are earlier witness vertices.
    pub from_witnesses: usize,
    pub edges: Vec<(Vertex, Vertex)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Candidate {
    pub source: String,
    #[serde(with = "crate::rational::serde_fraction")]
    pub achieved: Rational,
    pub guarantee_met: bool,
    pub edges: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PipelineTrace {
    pub mode: Mode,
    pub t: u64,
    pub s: usize,
    pub max_iterations: usize,
    pub iterations: Vec<IterationRecord>,
    pub harvest: Option<Harvest>,
    pub candidates: Vec<Candidate>,
    /// Index into `candidates` of the returned subgraph.
    pub selected: usize,
}

fn record(i: usize, v: Option<Vertex>, bg: &BipartiteGraph, step: &str, detail: Option<String>) -> IterationRecord {
    let g = bg.graph();
    let a: Vec<Vertex> = bg.class_a().into_iter().map(|x| g.origin_of(x)).collect();
    let b: Vec<Vertex> = bg.class_b().into_iter().map(|x| g.origin_of(x)).collect();
    IterationRecord {
        i,
        v,
        size_a: a.len(),
        size_b: b.len(),
        density: bg.average_degree(),
        step: step.to_string(),
        detail,
        a,
        b,
    }
}

/// Looks for `s` vertices of one current class and `s` hubs adjacent to all
/// of them in `g`. Hubs are earlier witness vertices or vertices of the
/// other current class. The `s` class vertices are those with most
/// neighbours in the other class (lowest id on ties).
fn find_kss(g: &Graph, a: &[Vertex], b: &[Vertex], witnesses: &[Vertex], s: usize) -> Option<Harvest> {
    for (side, other) in [(a, b), (b, a)] {
        if side.len() < s || other.len() + witnesses.len() < s {
            continue;
        }
        let other_set: BTreeSet<Vertex> = other.iter().copied().collect();
        let mut ranked: Vec<(usize, Vertex)> =
            side.iter().map(|&x| (g.neighbors(x).iter().filter(|y| other_set.contains(y)).count(), x)).collect();
        ranked.sort_by(|p, q| q.0.cmp(&p.0).then(p.1.cmp(&q.1)));
        let mut xs: Vec<Vertex> = ranked[..s].iter().map(|&(_, x)| x).collect();
        xs.sort_unstable();
        let hubs: BTreeSet<Vertex> =
            witnesses.iter().chain(other).copied().filter(|&y| xs.iter().all(|&x| g.has_edge(x, y))).collect();
        if hubs.len() < s {
            continue;
        }
        let ys: Vec<Vertex> = hubs.into_iter().take(s).collect();
        let from_witnesses = ys.iter().filter(|y| witnesses.contains(y)).count();
        let edges: Vec<(Vertex, Vertex)> =
            xs.iter().flat_map(|&x| ys.iter().map(move |&y| (x.min(y), x.max(y)))).collect();
        debug_assert!(edges.iter().all(|&(x, y)| g.has_edge(x, y)));
        return Some(Harvest { s, a: xs, b: ys, from_witnesses, edges });
    }
    None
}

/// Reads a `K_{s,s}` off the last state of a trace, using the trace's
/// witness vertices as additional hubs. Edges are checked against `g`, the
/// graph the pipeline was run on.
pub fn harvest_kss(g: &Graph, trace: &PipelineTrace, s: usize) -> Result<Option<Harvest>> {
    if s == 0 {
        return argument("harvest_kss needs s >= 1");
    }
    let last = trace.iterations.last().ok_or_else(|| Error::Argument("trace has no iterations".into()))?;
    let witnesses: Vec<Vertex> = trace.iterations.iter().filter_map(|r| r.v).collect();
    let n = g.n();
    if let Some(x) = last.a.iter().chain(&last.b).chain(&witnesses).find(|&&x| x >= n) {
        return argument(format!("trace vertex {x} is out of range for the graph (n = {n})"));
    }
    let harvest = find_kss(g, &last.a, &last.b, &witnesses, s);
    if let Some(h) = &harvest {
        if let Some(&(x, y)) = h.edges.iter().find(|&&(x, y)| !g.has_edge(x, y)) {
            return Err(Error::Internal(format!("harvested pair ({x}, {y}) is not an edge")));
        }
    }
    Ok(harvest)
}

/// Places the projective-plane subgraph of `K_{s,s}` on the harvested
/// vertices.
fn embed(harvest: &Harvest, t: u64) -> Result<C4FreeResult> {
    let emb = reiman_embed(t)?;
    let origin: Vec<Vertex> = harvest.a.iter().chain(&harvest.b).copied().collect();
    let sub = emb.graph.graph().clone().with_origin(origin)?;
    let r = C4FreeResult::new(sub, false, 0);
    let ok = r.achieved >= int(t as i128);
    Ok(C4FreeResult { guarantee_met: ok, ..r })
}

/// Runs the iteration for at most `8 t^2` rounds.
///
/// Every round first tries to harvest `K_{s,s}` with `s = 4t^2`; otherwise
/// the mode's step either returns a C4-free subgraph or a witness whose
/// neighbourhood becomes the next graph. If no candidate reaches average
/// degree `t`, bounded-degree sparsification of the bipartized input is
/// added as a fallback and the densest candidate is returned.
pub fn run_pipeline(g: &Graph, t: u64, mode: Mode, cfg: &SamplerConfig) -> Result<(ExtractionOutcome, PipelineTrace)> {
    if t < 2 {
        return argument(format!("run_pipeline needs t >= 2, got {t}"));
    }
    let root = g.clone().rooted();
    let target = int(t as i128);
    let s = (4 * t * t) as usize;
    let max_iterations = 2 * s;
    let mut trace = PipelineTrace {
        mode,
        t,
        s,
        max_iterations,
        iterations: Vec::new(),
        harvest: None,
        candidates: Vec::new(),
        selected: 0,
    };
    let mut found: Vec<C4FreeResult> = Vec::new();
    let push = |trace: &mut PipelineTrace, found: &mut Vec<C4FreeResult>, source: &str, r: C4FreeResult| {
        trace.candidates.push(Candidate {
            source: source.to_string(),
            achieved: r.achieved,
            guarantee_met: r.guarantee_met,
            edges: r.subgraph.m(),
        });
        found.push(r);
    };

    let bg0 = bipartize(&root);
    if let Some(r) = short_circuit(&root, &target) {
        trace.iterations.push(record(0, None, &bg0, "input", None));
        push(&mut trace, &mut found, "input", r);
    } else {
        trace.iterations.push(record(0, None, &bg0, "bipartize", None));
        let mut current = bg0.clone();
        let mut witnesses: Vec<Vertex> = Vec::new();
        for i in 1..=max_iterations + 1 {
            let last = trace.iterations.last().expect("initial record");
            if let Some(h) = find_kss(&root, &last.a, &last.b, &witnesses, s) {
                let r = embed(&h, t)?;
                trace.harvest = Some(h);
                push(&mut trace, &mut found, "harvest", r);
                break;
            }
            if i > max_iterations {
                break;
            }
            let d = current.average_degree();
            if d == int(0) {
                break;
            }
            let step = match mode {
                Mode::Single => iterate_step(&current, &d, &target, cfg),
                Mode::Double => double_exp_step(&current, &d, &target, cfg),
            };
            match step {
                Err(e) => {
                    trace.iterations.push(record(i, None, &current, "stopped", Some(e.to_string())));
                    break;
                }
                Ok(ExtractionOutcome::C4Free(r)) => {
                    trace.iterations.push(record(i, None, &current, "c4free", None));
                    push(&mut trace, &mut found, &format!("step {i}"), r);
                    break;
                }
                Ok(ExtractionOutcome::Witness(w)) => {
                    let next = induced_bipartite(current.graph(), &w.a_prime, &w.b_prime)?;
                    let v = current.graph().origin_of(w.v);
                    witnesses.push(v);
                    trace.iterations.push(record(i, Some(v), &next, "witness", None));
                    current = next;
                }
            }
        }
        if !found.iter().any(|r| r.guarantee_met) {
            let r = sparsify_bounded_degree(bg0.graph(), cfg);
            let ok = r.achieved >= target;
            push(&mut trace, &mut found, "fallback", C4FreeResult { guarantee_met: ok, ..r });
        }
    }

    let selected = found.iter().position(|r| r.guarantee_met).unwrap_or_else(|| {
        (0..found.len()).fold(0, |best, i| if found[i].achieved > found[best].achieved { i } else { best })
    });
    trace.selected = selected;
    Ok((ExtractionOutcome::C4Free(found.swap_remove(selected)), trace))
}
