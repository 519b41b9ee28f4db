//! Upper-bound machinery: the codegree dichotomy, sparsify-and-alter
//! extractors, degree splitting, and the iterative pipelines that either
//! find a dense C4-free subgraph or grow a complete bipartite graph.
//!
//! Every randomized step is a Las Vegas loop over seeds `seed, seed + 1,
//! ...`; the first sample meeting its bound wins, otherwise the best sample
//! (lowest seed on ties) is returned with `guarantee_met = false`.

mod codegree;
mod pipeline;
mod sparsify;
mod split;
mod steps;

pub use codegree::{codegree_reduce, CodegreeSplit, Spanning};
pub use pipeline::{harvest_kss, run_pipeline, Candidate, Harvest, IterationRecord, Mode, PipelineTrace};
pub use sparsify::{alter, sparsify_bounded_degree, sparsify_skew, sparsify_smallcodeg};
pub use split::{reduce_max_degree, split_unbalanced_or_lowdeg, MaxDegreeReduction, SplitOutcome};
pub use steps::{double_exp_step, extract_lowdeg_c4free, iterate_step, LowDegOutcome};

use std::collections::HashMap;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::graph::{induced_bipartite, is_c4_free, Graph, Vertex};
use crate::rational::Rational;

pub const DEFAULT_RETRIES: u32 = 100;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SamplerConfig {
    pub seed: u64,
    pub max_retries: u32,
}

impl SamplerConfig {
    pub fn new(seed: u64) -> Self {
        SamplerConfig { seed, max_retries: DEFAULT_RETRIES }
    }

    pub fn with_retries(self, max_retries: u32) -> Self {
        SamplerConfig { max_retries: max_retries.max(1), ..self }
    }

    pub(crate) fn rng(&self, attempt: u32) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.seed.wrapping_add(attempt as u64))
    }
}

/// A certified C4-free subgraph. Its origin table maps into the root graph;
/// isolated vertices are dropped so `achieved` is the density of the
/// vertices actually used.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct C4FreeResult {
    pub subgraph: Graph,
    pub achieved: Rational,
    pub guarantee_met: bool,
    /// 1-based index of the kept sample; 0 when nothing was sampled.
    pub attempts: u32,
}

impl C4FreeResult {
    pub(crate) fn new(subgraph: Graph, guarantee_met: bool, attempts: u32) -> Self {
        let subgraph = subgraph.without_isolated();
        debug_assert!(is_c4_free(&subgraph));
        let achieved = subgraph.average_degree();
        C4FreeResult { subgraph, achieved, guarantee_met, attempts }
    }
}

/// Vertex `v` with `a_prime ⊆ N(v)` and `b_prime` disjoint from both, in
/// the local ids of the graph the witness was found in.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NeighborhoodWitness {
    pub v: Vertex,
    pub a_prime: Vec<Vertex>,
    pub b_prime: Vec<Vertex>,
    #[serde(with = "crate::rational::serde_fraction")]
    pub density: Rational,
}

impl NeighborhoodWitness {
    pub(crate) fn new(g: &Graph, v: Vertex, mut a_prime: Vec<Vertex>, mut b_prime: Vec<Vertex>) -> Self {
        a_prime.sort_unstable();
        b_prime.sort_unstable();
        let density = induced_bipartite(g, &a_prime, &b_prime).expect("witness sets are disjoint").average_degree();
        NeighborhoodWitness { v, a_prime, b_prime, density }
    }

    /// Re-expresses the witness in the local ids of `target`, which must
    /// contain every witness vertex (matched through origin ids).
    pub(crate) fn relocate(&self, from: &Graph, target: &Graph) -> Self {
        let index = local_index(target);
        let map = |x: Vertex| index[&from.origin_of(x)];
        NeighborhoodWitness::new(
            target,
            map(self.v),
            self.a_prime.iter().map(|&x| map(x)).collect(),
            self.b_prime.iter().map(|&x| map(x)).collect(),
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ExtractionOutcome {
    C4Free(C4FreeResult),
    Witness(NeighborhoodWitness),
}

impl ExtractionOutcome {
    pub fn kind(&self) -> &'static str {
        match self {
            ExtractionOutcome::C4Free(_) => "c4free",
            ExtractionOutcome::Witness(_) => "witness",
        }
    }

    pub fn c4free(&self) -> Option<&C4FreeResult> {
        match self {
            ExtractionOutcome::C4Free(r) => Some(r),
            ExtractionOutcome::Witness(_) => None,
        }
    }
}

/// Root id to local id.
pub(crate) fn local_index(g: &Graph) -> HashMap<Vertex, Vertex> {
    g.origin().iter().enumerate().map(|(i, &r)| (r, i)).collect()
}

/// Checks the structural promises of an outcome against the graph it was
/// computed from. Returns a description of the first violation.
pub fn validate_outcome(input: &Graph, outcome: &ExtractionOutcome) -> std::result::Result<(), String> {
    match outcome {
        ExtractionOutcome::C4Free(r) => {
            if !is_c4_free(&r.subgraph) {
                return Err("subgraph contains a C4".into());
            }
            if r.achieved != r.subgraph.average_degree() {
                return Err("achieved differs from the subgraph's average degree".into());
            }
            let index = local_index(input);
            for (u, v) in r.subgraph.origin_edges() {
                match (index.get(&u), index.get(&v)) {
                    (Some(&x), Some(&y)) if input.has_edge(x, y) => {}
                    _ => return Err(format!("edge ({u}, {v}) is not in the input")),
                }
            }
            Ok(())
        }
        ExtractionOutcome::Witness(w) => {
            let n = input.n();
            if w.v >= n || w.a_prime.iter().chain(&w.b_prime).any(|&x| x >= n) {
                return Err("witness vertex out of range".into());
            }
            if let Some(a) = w.a_prime.iter().find(|&&a| !input.has_edge(w.v, a)) {
                return Err(format!("{a} is in A' but not adjacent to v = {}", w.v));
            }
            if w.b_prime.contains(&w.v) {
                return Err("v lies in B'".into());
            }
            if w.a_prime.iter().any(|a| w.b_prime.binary_search(a).is_ok()) {
                return Err("A' and B' intersect".into());
            }
            let density = induced_bipartite(input, &w.a_prime, &w.b_prime).map_err(|e| e.to_string())?.average_degree();
            if density != w.density {
                return Err(format!("recorded density {} differs from {}", w.density, density));
            }
            Ok(())
        }
    }
}

/// Las Vegas driver: runs `sample` for seeds `seed, seed + 1, ...` and
/// stops at the first sample whose flag is set. Otherwise returns the best
/// score seen, the earliest attempt winning ties. A `deterministic` sampler
/// is run once.
pub(crate) fn best_of<T>(
    cfg: &SamplerConfig,
    deterministic: bool,
    mut sample: impl FnMut(&mut ChaCha8Rng) -> (T, Rational, bool),
) -> (T, Rational, bool, u32) {
    let tries = if deterministic { 1 } else { cfg.max_retries.max(1) };
    let mut best: Option<(T, Rational, bool, u32)> = None;
    for attempt in 0..tries {
        let (value, score, ok) = sample(&mut cfg.rng(attempt));
        if ok {
            return (value, score, ok, attempt + 1);
        }
        if best.as_ref().is_none_or(|b| score > b.1) {
            best = Some((value, score, ok, attempt + 1));
        }
    }
    best.expect("at least one attempt")
}
