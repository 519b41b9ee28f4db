//! Sample, then delete one edge from every surviving 4-cycle.

use std::collections::HashSet;

use rand::RngCore;
use rand_chacha::ChaCha8Rng;

use super::{best_of, C4FreeResult, SamplerConfig};
use crate::error::{argument, Result};
use crate::graph::{enumerate_c4, BipartiteGraph, Graph, Vertex};
use crate::rational::{int, pow_ge, Probability, Rational};

/// Removes the smallest edge of the smallest surviving canonical 4-cycle
/// until none is left.
///
/// Deleting edges never creates a cycle, so the survivors at any point are
/// exactly the original cycles with all four edges intact and one sorted
/// pass suffices.
pub fn alter(g: &Graph) -> Graph {
    let mut gone: HashSet<(Vertex, Vertex)> = HashSet::new();
    for cycle in enumerate_c4(g) {
        let edges = cycle.edges();
        if edges.iter().all(|e| !gone.contains(e)) {
            gone.insert(edges[0]);
        }
    }
    if gone.is_empty() {
        g.clone()
    } else {
        g.filter_edges(|u, v| !gone.contains(&(u, v)))
    }
}

fn sample_edges(g: &Graph, p: Probability, rng: &mut ChaCha8Rng) -> Graph {
    if p.is_one() {
        return g.clone();
    }
    g.filter_edges(|_, _| p.keep(rng.next_u32()))
}

fn finish(best: (Graph, Rational, bool, u32)) -> C4FreeResult {
    let (graph, _, ok, attempts) = best;
    C4FreeResult::new(graph, ok, attempts)
}

/// Keeps each edge with probability `3 d^{-1/2}`.
///
/// The bound `d^{1/4}` is claimed only when `|A| >= |B|`, B-codegrees are at
/// most `d^{1/5}`, A-degrees at most `d` and `d(G) >= d^{3/4}`.
pub fn sparsify_smallcodeg(bg: &BipartiteGraph, d: &Rational, cfg: &SamplerConfig) -> C4FreeResult {
    let g = bg.graph();
    let hypotheses = bg.size_a() >= bg.size_b()
        && pow_ge(d, 1, &int(bg.max_b_codegree() as i128), 5)
        && int(bg.max_a_degree() as i128) <= *d
        && pow_ge(&g.average_degree(), 4, d, 3);
    let p = Probability::scaled_inverse_root(&int(3), d, 1, 2);
    finish(best_of(cfg, p.is_one(), |rng| {
        let h = alter(&sample_edges(g, p, rng)).without_isolated();
        let achieved = h.average_degree();
        let ok = hypotheses && pow_ge(&achieved, 4, d, 1);
        (h, achieved, ok)
    }))
}

/// Keeps each edge with probability `Δ^{-3/4} / 2`; the bound
/// `d Δ^{-3/4} / 4` is claimed only when `d >= Δ^{3/4}`.
pub fn sparsify_bounded_degree(g: &Graph, cfg: &SamplerConfig) -> C4FreeResult {
    if g.m() == 0 {
        return C4FreeResult::new(g.clone(), false, 1);
    }
    let delta = int(g.max_degree() as i128);
    let d = g.average_degree();
    let hypothesis = pow_ge(&d, 4, &delta, 3);
    let p = Probability::scaled_inverse_root(&Rational::new(1, 2), &delta, 3, 4);
    finish(best_of(cfg, p.is_one(), |rng| {
        let h = alter(&sample_edges(g, p, rng)).without_isolated();
        let achieved = h.average_degree();
        // achieved >= d Δ^{-3/4} / 4  <=>  (4 achieved)^4 Δ^3 >= d^4
        let ok = hypothesis && {
            let lhs = crate::rational::to_big(&(achieved * int(4)));
            let lhs = num_traits::pow(lhs, 4) * num_traits::pow(crate::rational::to_big(&delta), 3);
            lhs >= num_traits::pow(crate::rational::to_big(&d), 4)
        };
        (h, achieved, ok)
    }))
}

/// Keeps each class-A vertex with probability `d^{-6}` and all of class B,
/// then alters the induced subgraph.
///
/// The bound `d(G)/5` is claimed only when `|A| >= d^6 |B|`, B-codegrees
/// are at most `d` and A-degrees at most `d`.
pub fn sparsify_skew(bg: &BipartiteGraph, d: &Rational, cfg: &SamplerConfig) -> Result<C4FreeResult> {
    if *d < int(2) {
        return argument(format!("sparsify_skew needs d >= 2, got {d}"));
    }
    let g = bg.graph();
    let d6 = crate::rational::to_big(d).pow(6);
    let hypotheses = crate::rational::to_big(&int(bg.size_a() as i128))
        >= d6 * crate::rational::to_big(&int(bg.size_b() as i128))
        && int(bg.max_b_codegree() as i128) <= *d
        && int(bg.max_a_degree() as i128) <= *d;
    let target = g.average_degree() / int(5);
    let p = Probability::from_rational(&(Rational::from_integer(1) / crate::rational::pow(d, 6)));
    Ok(finish(best_of(cfg, p.is_one(), |rng| {
        let keep: Vec<Vertex> = (0..g.n()).filter(|&v| !bg.in_a(v) || p.keep(rng.next_u32())).collect();
        let h = alter(&g.induced(&keep)).without_isolated();
        let achieved = h.average_degree();
        let ok = hypotheses && achieved >= target;
        (h, achieved, ok)
    })))
}
