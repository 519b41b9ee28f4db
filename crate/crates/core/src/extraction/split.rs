use rand::RngCore;

use super::{best_of, SamplerConfig};
use crate::error::{argument, contract, Error, Result};
use crate::graph::{degree_select, peel_survivors, BipartiteGraph, Vertex};
use crate::rational::{ceil_log2_pow, int, log2_ge, pow_ge, Probability, Rational};

/// Result of splitting a dense bipartite graph by B-degree. Both variants
/// have `d(H) >= k/4` and class-A degrees at most `k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SplitOutcome {
    /// `|A| >= k^6 |B|`.
    Unbalanced(BipartiteGraph),
    /// `Δ(H) <= k^7`.
    LowMaxDeg(BipartiteGraph),
}

impl SplitOutcome {
    pub fn graph(&self) -> &BipartiteGraph {
        match self {
            SplitOutcome::Unbalanced(h) | SplitOutcome::LowMaxDeg(h) => h,
        }
    }
}

/// Peels below `k/2`, orients so `|A| >= |B|`, keeps `ceil(k/2)` edges per
/// A-vertex, then separates B-vertices of degree at least `k^7`. The
/// low-degree side is preferred whenever it is dense enough.
pub fn split_unbalanced_or_lowdeg(bg: &BipartiteGraph, k: &Rational) -> Result<SplitOutcome> {
    if *k < int(2) {
        return argument(format!("split needs k >= 2, got {k}"));
    }
    if bg.average_degree() < *k {
        return contract(format!("split needs d(G) >= k, got d(G) = {} < {k}", bg.average_degree()));
    }
    let alive = peel_survivors(bg.graph(), &(*k / int(2)));
    let keep: Vec<Vertex> = (0..alive.len()).filter(|&v| alive[v]).collect();
    let g0 = bg.induced(&keep).larger_side_a();
    let g1 = degree_select(&g0, k)?;
    let g = g1.graph();
    let heavy = |v: Vertex| pow_ge(&int(g.degree(v) as i128), 1, k, 7);
    let (b1, b2): (Vec<Vertex>, Vec<Vertex>) = g1.class_b().into_iter().partition(|&v| heavy(v));
    let class_a = g1.class_a();
    let side = |b: &[Vertex]| g1.induced(&class_a.iter().chain(b).copied().collect::<Vec<_>>());
    let quarter = *k / int(4);
    let low = side(&b2);
    if low.average_degree() >= quarter {
        return Ok(SplitOutcome::LowMaxDeg(low));
    }
    let high = side(&b1);
    if high.average_degree() >= quarter {
        return Ok(SplitOutcome::Unbalanced(high));
    }
    Err(Error::Internal(format!("neither side of the degree split reaches density {quarter}")))
}

/// Output of the maximum-degree reduction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MaxDegreeReduction {
    pub subgraph: BipartiteGraph,
    pub guarantee_met: bool,
    /// Dyadic bucket `i` of the kept B-vertices: degrees in `[2^{i-1}, 2^i)`.
    pub bucket: u32,
    /// True when the bucket already had maximum degree at most `k`.
    pub early_exit: bool,
}

/// Reduces the maximum degree to `k` while keeping average degree about
/// `k / (400 log2 k)`.
///
/// B is split into dyadic degree buckets and the bucket with most edges is
/// kept. If its degrees are already at most `k` it is returned; otherwise
/// class A is sampled with probability `k/4d` and B-vertices left with more
/// than `k` sampled neighbours are dropped.
pub fn reduce_max_degree(bg: &BipartiteGraph, k: &Rational, cfg: &SamplerConfig) -> Result<MaxDegreeReduction> {
    if *k < int(2) {
        return argument(format!("reduce_max_degree needs k >= 2, got {k}"));
    }
    let g0 = bg.without_isolated();
    if g0.graph().n() == 0 {
        return contract("reduce_max_degree: graph is empty after removing isolated vertices");
    }
    let g = g0.graph();
    let mut failed = Vec::new();
    if !pow_ge(k, 7, &int(g.max_degree() as i128), 1) {
        failed.push(format!("max degree {} > k^7", g.max_degree()));
    }
    if g.average_degree() < *k / int(4) {
        failed.push(format!("average degree {} < k/4", g.average_degree()));
    }
    if int(g0.max_a_degree() as i128) > *k {
        failed.push(format!("class-A degree {} > k", g0.max_a_degree()));
    }
    if !failed.is_empty() {
        return contract(format!("reduce_max_degree hypotheses failed: {}", failed.join("; ")));
    }

    let r = ceil_log2_pow(k, 10).max(1);
    let mut bucket_edges = vec![0usize; r as usize + 1];
    let bucket_of = |v: Vertex| (usize::BITS - g.degree(v).leading_zeros()) as usize;
    let class_b = g0.class_b();
    for &v in &class_b {
        bucket_edges[bucket_of(v)] += g.degree(v);
    }
    // largest e(G_i), lowest i on ties
    let i = (1..=r as usize).fold(1, |best, i| if bucket_edges[i] > bucket_edges[best] { i } else { best });
    let class_a = g0.class_a();
    let members: Vec<Vertex> = class_b.iter().copied().filter(|&v| bucket_of(v) == i).collect();
    let gi = g0.induced(&class_a.iter().chain(&members).copied().collect::<Vec<_>>()).without_isolated();
    let d = 1usize << (i - 1);
    let floor = |achieved: &Rational| {
        // achieved >= k / (400 log2 k)  <=>  log2 k >= k / (400 achieved)
        *achieved > int(0) && log2_ge(k, &(*k / (int(400) * *achieved)))
    };
    if int(2 * d as i128) <= *k {
        let achieved = gi.average_degree();
        return Ok(MaxDegreeReduction {
            guarantee_met: floor(&achieved),
            subgraph: gi,
            bucket: i as u32,
            early_exit: true,
        });
    }

    let p = Probability::from_rational(&(*k / int(4 * d as i128)));
    let gg = gi.graph();
    let (subgraph, _, guarantee_met, _) = best_of(cfg, p.is_one(), |rng| {
        let sampled: Vec<bool> = (0..gg.n()).map(|v| gi.in_a(v) && p.keep(rng.next_u32())).collect();
        let keep: Vec<Vertex> = (0..gg.n())
            .filter(|&v| {
                sampled[v]
                    || (!gi.in_a(v) && int(gg.neighbors(v).iter().filter(|&&a| sampled[a]).count() as i128) <= *k)
            })
            .collect();
        let h = gi.induced(&keep).without_isolated();
        let achieved = h.average_degree();
        let ok = floor(&achieved);
        (h, achieved, ok)
    });
    Ok(MaxDegreeReduction { subgraph, guarantee_met, bucket: i as u32, early_exit: false })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Graph;

    #[test]
    fn k33_with_k2_goes_low_degree() {
        match split_unbalanced_or_lowdeg(&BipartiteGraph::complete(3, 3), &int(2)).unwrap() {
            SplitOutcome::LowMaxDeg(h) => {
                assert!(h.average_degree() >= Rational::new(1, 2));
                assert!(h.graph().max_degree() <= 3);
            }
            other => panic!("expected low max degree, got {other:?}"),
        }
    }

    #[test]
    fn k22_with_k2_goes_low_degree() {
        let out = split_unbalanced_or_lowdeg(&BipartiteGraph::complete(2, 2), &int(2)).unwrap();
        assert!(matches!(out, SplitOutcome::LowMaxDeg(_)));
    }

    #[test]
    fn double_star_goes_unbalanced() {
        // two hubs over 300 leaves: every leaf keeps its edge to the first hub
        let k = BipartiteGraph::complete(2, 300);
        match split_unbalanced_or_lowdeg(&k, &int(2)).unwrap() {
            SplitOutcome::Unbalanced(h) => {
                assert_eq!((h.size_a(), h.size_b()), (300, 1));
                assert!(h.size_a() >= 64 * h.size_b());
                assert!(h.max_a_degree() <= 2);
                assert!(h.average_degree() >= Rational::new(1, 2));
            }
            other => panic!("expected unbalanced, got {other:?}"),
        }
    }

    #[test]
    fn sparse_star_is_a_contract_error() {
        let star = BipartiteGraph::complete(1, 300);
        assert!(matches!(split_unbalanced_or_lowdeg(&star, &int(2)), Err(Error::Contract(_))));
    }

    #[test]
    fn early_exit_when_buckets_are_light() {
        // hub 0 in A with four B-leaves: B-degrees all 1, bucket 1
        let g = Graph::from_edges(5, &[(0, 1), (0, 2), (0, 3), (0, 4)]).unwrap();
        let bg = BipartiteGraph::new(g, &[0]).unwrap();
        let r = reduce_max_degree(&bg, &int(4), &SamplerConfig::new(0)).unwrap();
        assert!(r.early_exit);
        assert_eq!(r.bucket, 1);
        assert_eq!(r.subgraph, bg);
        // the same input asks too much for k = 16
        assert!(matches!(reduce_max_degree(&bg, &int(16), &SamplerConfig::new(0)), Err(Error::Contract(_))));
    }

    #[test]
    fn k33_with_k8_exits_early() {
        let k33 = BipartiteGraph::complete(3, 3);
        let r = reduce_max_degree(&k33, &int(8), &SamplerConfig::new(0)).unwrap();
        assert!(r.early_exit);
        assert_eq!(r.bucket, 2);
        assert_eq!(r.subgraph, k33);
    }

    #[test]
    fn sampling_branch_caps_degrees() {
        // K_{64,8} with A the 64 side: B-degree 64 lands in bucket 7 and
        // 2 * 64 > k = 8, so class A is sampled at 8/256
        let k = BipartiteGraph::complete(64, 8);
        let r = reduce_max_degree(&k, &int(8), &SamplerConfig::new(3)).unwrap();
        assert!(!r.early_exit);
        assert_eq!(r.bucket, 7);
        assert!(r.subgraph.graph().max_degree() <= 8);
        assert!(r.guarantee_met);
        let again = reduce_max_degree(&k, &int(8), &SamplerConfig::new(3)).unwrap();
        assert_eq!(again, r);
    }

    #[test]
    fn empty_input_is_a_contract_error() {
        let bg = BipartiteGraph::new(Graph::empty(3), &[0]).unwrap();
        assert!(matches!(reduce_max_degree(&bg, &int(4), &SamplerConfig::new(0)), Err(Error::Contract(_))));
    }
}
