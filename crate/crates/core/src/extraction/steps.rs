//! Composite iteration steps built from the primitives.

use super::{
    codegree_reduce, reduce_max_degree, sparsify_bounded_degree, sparsify_skew, sparsify_smallcodeg,
    split_unbalanced_or_lowdeg, C4FreeResult, CodegreeSplit, ExtractionOutcome, SamplerConfig, SplitOutcome,
};
use crate::error::{contract, Result};
use crate::graph::{degree_select, is_c4_free, peel_survivors, BipartiteGraph, Graph, Vertex};
use crate::rational::{int, root_floor, Rational};

/// Returns the input itself when it is already C4-free and dense enough.
pub(crate) fn short_circuit(g: &Graph, t: &Rational) -> Option<C4FreeResult> {
    if !is_c4_free(g) {
        return None;
    }
    let r = C4FreeResult::new(g.clone(), true, 0);
    (r.achieved >= *t).then_some(r)
}

fn with_target(mut r: C4FreeResult, t: &Rational) -> C4FreeResult {
    r.guarantee_met = r.achieved >= *t;
    r
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LowDegOutcome {
    C4Free(C4FreeResult),
    /// Dense part with `|A| >= k^6 |B|` and A-degrees at most `k`.
    Unbalanced(BipartiteGraph),
}

/// Either a C4-free subgraph (through the low-degree branch: max-degree
/// reduction followed by bounded-degree sparsification) or the unbalanced
/// part of the degree split. `guarantee_met` means `achieved >= t`.
pub fn extract_lowdeg_c4free(
    bg: &BipartiteGraph,
    k: &Rational,
    t: &Rational,
    cfg: &SamplerConfig,
) -> Result<LowDegOutcome> {
    if let Some(r) = short_circuit(bg.graph(), t) {
        return Ok(LowDegOutcome::C4Free(r));
    }
    if bg.average_degree() < *k {
        return contract(format!("extract_lowdeg_c4free needs d(G) >= k, got {} < {k}", bg.average_degree()));
    }
    match split_unbalanced_or_lowdeg(bg, k)? {
        SplitOutcome::Unbalanced(h) => Ok(LowDegOutcome::Unbalanced(h)),
        SplitOutcome::LowMaxDeg(h) => {
            let reduced = reduce_max_degree(&h, k, cfg)?;
            let r = sparsify_bounded_degree(reduced.subgraph.graph(), cfg);
            Ok(LowDegOutcome::C4Free(with_target(r, t)))
        }
    }
}

/// One round of the single-exponential iteration: a C4-free subgraph of
/// average degree `t`, or a witness of density `d / 50t` (at least 1).
pub fn iterate_step(bg: &BipartiteGraph, d: &Rational, t: &Rational, cfg: &SamplerConfig) -> Result<ExtractionOutcome> {
    if let Some(r) = short_circuit(bg.graph(), t) {
        return Ok(ExtractionOutcome::C4Free(r));
    }
    if bg.average_degree() < *d {
        return contract(format!("iterate_step needs d(G) >= d, got {} < {d}", bg.average_degree()));
    }
    let h = match extract_lowdeg_c4free(bg, d, t, cfg)? {
        LowDegOutcome::C4Free(r) => return Ok(ExtractionOutcome::C4Free(r)),
        LowDegOutcome::Unbalanced(h) => h,
    };
    let lambda = (*d / (int(50) * *t)).max(int(1));
    match codegree_reduce(&h, &lambda)? {
        CodegreeSplit::Witness(w) => Ok(ExtractionOutcome::Witness(w.relocate(h.graph(), bg.graph()))),
        CodegreeSplit::Spanning(s) => {
            let r = sparsify_skew(&s.subgraph, d, cfg)?;
            Ok(ExtractionOutcome::C4Free(with_target(r, t)))
        }
    }
}

/// One round of the double-exponential iteration: peel below `d/2`, keep
/// `ceil(d/2)` edges per vertex of the larger class, reduce codegrees to
/// `d^{1/5}` and sparsify.
///
/// `d^{1/5}` is taken as a 16-bit dyadic lower approximation, floored at 1.
pub fn double_exp_step(
    bg: &BipartiteGraph,
    d: &Rational,
    t: &Rational,
    cfg: &SamplerConfig,
) -> Result<ExtractionOutcome> {
    if let Some(r) = short_circuit(bg.graph(), t) {
        return Ok(ExtractionOutcome::C4Free(r));
    }
    if bg.average_degree() < *d {
        return contract(format!("double_exp_step needs d(G) >= d, got {} < {d}", bg.average_degree()));
    }
    let alive = peel_survivors(bg.graph(), &(*d / int(2)));
    let keep: Vec<Vertex> = (0..alive.len()).filter(|&v| alive[v]).collect();
    let g0 = bg.induced(&keep).larger_side_a();
    let g1 = degree_select(&g0, d)?;
    let lambda = root_floor(d, 5, 16).max(int(1));
    match codegree_reduce(&g1, &lambda)? {
        CodegreeSplit::Witness(w) => Ok(ExtractionOutcome::Witness(w.relocate(g1.graph(), bg.graph()))),
        CodegreeSplit::Spanning(s) => {
            let r = sparsify_smallcodeg(&s.subgraph, d, cfg);
            Ok(ExtractionOutcome::C4Free(with_target(r, t)))
        }
    }
}
