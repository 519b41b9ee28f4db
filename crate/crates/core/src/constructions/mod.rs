//! Lower-bound constructions: blow-ups of bipartite hosts, block skeletons,
//! edge typing and the Turán-type edge ceiling for C4-free graphs.

mod verify;

pub use verify::{verify_lemma8, verify_lemma9, Check, VerificationReport};

use num_integer::Roots;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{argument, Result};
use crate::graph::{is_c4_free, BipartiteGraph, Graph, Vertex};
use crate::rational::{rat, Rational};

/// A bipartite graph whose classes are partitioned into blocks.
#[derive(Debug, Clone)]
pub struct PartitionedBipartite {
    pub bg: BipartiteGraph,
    pub blocks_a: Vec<Vec<Vertex>>,
    pub blocks_b: Vec<Vec<Vertex>>,
    /// Index of each vertex's block within its own class.
    pub block_of: Vec<usize>,
}

impl PartitionedBipartite {
    pub fn new(bg: BipartiteGraph, blocks_a: Vec<Vec<Vertex>>, blocks_b: Vec<Vec<Vertex>>) -> Result<Self> {
        let n = bg.graph().n();
        let mut block_of = vec![usize::MAX; n];
        for (blocks, side_a) in [(&blocks_a, true), (&blocks_b, false)] {
            for (i, block) in blocks.iter().enumerate() {
                if block.is_empty() {
                    return argument(format!("empty block {i}"));
                }
                for &v in block {
                    if v >= n {
                        return argument(format!("block vertex {v} out of range"));
                    }
                    if bg.in_a(v) != side_a {
                        return argument(format!("vertex {v} is placed in a block of the wrong class"));
                    }
                    if block_of[v] != usize::MAX {
                        return argument(format!("vertex {v} appears in two blocks"));
                    }
                    block_of[v] = i;
                }
            }
        }
        if let Some(v) = block_of.iter().position(|&b| b == usize::MAX) {
            return argument(format!("vertex {v} is not covered by any block"));
        }
        Ok(PartitionedBipartite { bg, blocks_a, blocks_b, block_of })
    }

    pub fn n(&self) -> usize {
        self.bg.graph().n()
    }

    pub fn max_block_size(&self) -> usize {
        self.blocks_a.iter().chain(&self.blocks_b).map(Vec::len).max().unwrap_or(0)
    }

    /// Checks that `sub` lives on this vertex set and only uses its edges.
    pub(crate) fn admit(&self, sub: &Graph) -> Result<()> {
        if sub.n() != self.n() {
            return argument(format!("subgraph has {} vertices, partition has {}", sub.n(), self.n()));
        }
        if let Some((u, v)) = sub.edges().find(|&(u, v)| !self.bg.graph().has_edge(u, v)) {
            return argument(format!("edge ({u}, {v}) is not an edge of the partitioned graph"));
        }
        Ok(())
    }

    /// `(A-side vertex, B-side vertex)` for an edge.
    pub(crate) fn orient(&self, u: Vertex, v: Vertex) -> (Vertex, Vertex) {
        if self.bg.in_a(u) {
            (u, v)
        } else {
            (v, u)
        }
    }
}

/// Replaces every host vertex by a block of `d^2` vertices and every host
/// edge by a complete bipartite graph between the two blocks.
pub fn blow_up(host: &BipartiteGraph, d: usize) -> PartitionedBipartite {
    assert!(d >= 1, "blow-up factor must be positive");
    let w = d * d;
    let h = host.graph();
    let block = |v: Vertex| (v * w..(v + 1) * w).collect::<Vec<_>>();
    let mut edges = Vec::with_capacity(h.m() * w * w);
    for (u, v) in h.edges() {
        for x in block(u) {
            for y in block(v) {
                edges.push((x, y));
            }
        }
    }
    let g = Graph::from_edges(h.n() * w, &edges).expect("blow-up is simple");
    let class_a: Vec<Vertex> = host.class_a().into_iter().flat_map(block).collect();
    let bg = BipartiteGraph::new(g, &class_a).expect("blow-up stays bipartite");
    let blocks_a = host.class_a().into_iter().map(block).collect();
    let blocks_b = host.class_b().into_iter().map(block).collect();
    PartitionedBipartite::new(bg, blocks_a, blocks_b).expect("blocks partition the blow-up")
}

/// Balanced bipartite host on `m + m` vertices where every class-A vertex
/// has degree exactly `d` and class-B degrees follow a Zipf-like profile.
///
/// This is a heuristic stand-in for hosts without dense bounded-degree
/// subgraphs; it carries no such certificate.
pub fn irregular_host(d: usize, m: usize, seed: u64) -> Result<BipartiteGraph> {
    if d == 0 {
        return argument("irregular_host needs d >= 1");
    }
    if m < d {
        return argument(format!("class-A degree {d} cannot exceed |B| = {m}"));
    }
    let mut target = zipf_profile(d, m);
    let edges = loop {
        if let Some(edges) = realize(d, &target) {
            break edges;
        }
        // move one unit from the heaviest to the lightest vertex; the
        // uniform profile is always realisable
        let hi = (0..m).max_by_key(|&j| (target[j], std::cmp::Reverse(j))).unwrap();
        let lo = (0..m).min_by_key(|&j| (target[j], j)).unwrap();
        target[hi] -= 1;
        target[lo] += 1;
    };
    let mut labels: Vec<usize> = (0..m).collect();
    labels.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    let edges: Vec<_> = edges.into_iter().map(|(a, b)| (a, m + labels[b])).collect();
    let g = Graph::from_edges(2 * m, &edges).expect("realisation is simple");
    BipartiteGraph::new(g, &(0..m).collect::<Vec<_>>())
}

/// Every B vertex gets degree 1; the remaining `(d-1) m` units are spread
/// proportionally to `1/(j+1)` by largest remainder, capped at `m`
/// (`d <= m` leaves room for all `d m` units).
fn zipf_profile(d: usize, m: usize) -> Vec<usize> {
    let extra = (d - 1) * m;
    let weights: Vec<Rational> = (0..m).map(|j| rat(1, j as i128 + 1)).collect();
    let total: Rational = weights.iter().sum();
    let shares: Vec<Rational> = weights.iter().map(|w| *w * rat(extra as i128, 1) / total).collect();
    let mut target: Vec<usize> = shares.iter().map(|s| (1 + s.floor().to_integer() as usize).min(m)).collect();
    let mut left = d * m - target.iter().sum::<usize>();
    let mut order: Vec<usize> = (0..m).collect();
    order.sort_by(|&i, &j| (shares[j] - shares[j].floor()).cmp(&(shares[i] - shares[i].floor())).then(i.cmp(&j)));
    for &j in order.iter().cycle() {
        if left == 0 {
            break;
        }
        if target[j] < m {
            target[j] += 1;
            left -= 1;
        }
    }
    target
}

/// Bipartite Havel-Hakimi: each A vertex takes the `d` B vertices with the
/// largest residual demand.
fn realize(d: usize, target: &[usize]) -> Option<Vec<(Vertex, Vertex)>> {
    let m = target.len();
    let mut residual = target.to_vec();
    let mut edges = Vec::with_capacity(d * m);
    for a in 0..m {
        let mut order: Vec<usize> = (0..m).collect();
        order.sort_by_key(|&j| (std::cmp::Reverse(residual[j]), j));
        for &b in &order[..d] {
            if residual[b] == 0 {
                return None;
            }
            residual[b] -= 1;
            edges.push((a, b));
        }
    }
    residual.iter().all(|&r| r == 0).then_some(edges)
}

/// Block-level graph: `a_i` (ids `0..r`) is joined to `b_j` (ids `r..r+s`)
/// iff the subgraph has an edge between `A_i` and `B_j`.
#[derive(Debug, Clone)]
pub struct Skeleton {
    pub graph: BipartiteGraph,
    pub r: usize,
    pub s: usize,
}

impl Skeleton {
    pub fn has_pair(&self, i: usize, j: usize) -> bool {
        self.graph.graph().has_edge(i, self.r + j)
    }

    fn from_pairs(r: usize, s: usize, pairs: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let mut edges: Vec<_> = pairs.into_iter().map(|(i, j)| (i, r + j)).collect();
        edges.sort_unstable();
        edges.dedup();
        let g = Graph::from_edges(r + s, &edges).expect("skeleton is simple");
        let graph = BipartiteGraph::new(g, &(0..r).collect::<Vec<_>>()).expect("skeleton is bipartite");
        Skeleton { graph, r, s }
    }
}

pub fn skeleton(pb: &PartitionedBipartite, sub: &Graph) -> Result<Skeleton> {
    pb.admit(sub)?;
    let pairs = sub.edges().map(|(u, v)| {
        let (a, b) = pb.orient(u, v);
        (pb.block_of[a], pb.block_of[b])
    });
    Ok(Skeleton::from_pairs(pb.blocks_a.len(), pb.blocks_b.len(), pairs))
}

/// Edges of a subgraph split by how many neighbours their endpoints have in
/// the opposite endpoint's block. Edges of both Type 1 and Type 2 are
/// placed in `g1` and also recorded in `dual`.
#[derive(Debug, Clone)]
pub struct EdgeTypeSplit {
    pub g1: Graph,
    pub g2: Graph,
    pub g3: Graph,
    pub dual: Graph,
}

impl EdgeTypeSplit {
    /// All Type-2 edges, including those filed under `g1`.
    pub fn type2_all(&self) -> Graph {
        self.g2.union(&self.dual)
    }
}

pub fn classify_edges(pb: &PartitionedBipartite, sub: &Graph, d: usize) -> Result<EdgeTypeSplit> {
    pb.admit(sub)?;
    let n = pb.n();
    // per vertex: number of sub-neighbours inside each opposite block
    let mut block_counts: Vec<std::collections::HashMap<usize, usize>> = vec![Default::default(); n];
    for (u, v) in sub.edges() {
        *block_counts[u].entry(pb.block_of[v]).or_default() += 1;
        *block_counts[v].entry(pb.block_of[u]).or_default() += 1;
    }
    let kind = |u: Vertex, v: Vertex| {
        let (a, b) = pb.orient(u, v);
        let t1 = block_counts[a][&pb.block_of[b]] >= d;
        let t2 = block_counts[b][&pb.block_of[a]] >= d;
        (t1, t2)
    };
    Ok(EdgeTypeSplit {
        g1: sub.filter_edges(|u, v| kind(u, v).0),
        g2: sub.filter_edges(|u, v| !kind(u, v).0 && kind(u, v).1),
        g3: sub.filter_edges(|u, v| !kind(u, v).0 && !kind(u, v).1),
        dual: sub.filter_edges(|u, v| kind(u, v) == (true, true)),
    })
}

/// Block pairs carrying a vertex with two neighbours in the other block
/// (`h1`) versus the remaining skeleton pairs (`h2`).
#[derive(Debug, Clone)]
pub struct BlockPairSplit {
    pub h1: Skeleton,
    pub h2: Skeleton,
    pub report: VerificationReport,
}

pub fn build_h1_h2(pb: &PartitionedBipartite, sub: &Graph) -> Result<BlockPairSplit> {
    let skel = skeleton(pb, sub)?;
    if !is_c4_free(sub) {
        return crate::error::contract("build_h1_h2 needs a C4-free subgraph");
    }
    let (r, s) = (skel.r, skel.s);
    let mut heavy = std::collections::BTreeSet::new();
    for a in pb.bg.class_a() {
        let mut per_block = std::collections::HashMap::<usize, usize>::new();
        for &b in sub.neighbors(a) {
            *per_block.entry(pb.block_of[b]).or_default() += 1;
        }
        heavy.extend(per_block.into_iter().filter(|&(_, c)| c >= 2).map(|(j, _)| (pb.block_of[a], j)));
    }
    let h1 = Skeleton::from_pairs(r, s, heavy.iter().copied());
    let light = skel.graph.graph().edges().map(|(i, rj)| (i, rj - r)).filter(|p| !heavy.contains(p));
    let h2 = Skeleton::from_pairs(r, s, light);

    let mut report = VerificationReport::default();
    for (j, block) in pb.blocks_b.iter().enumerate() {
        let deg = h1.graph.graph().degree(r + j) as i128;
        let pairs = (block.len() * block.len().saturating_sub(1) / 2) as i128;
        report.push(format!("d_H1(b_{j}) <= C(|B_{j}|, 2)"), deg.into(), pairs.into());
    }
    for a in pb.bg.class_a() {
        let i = pb.block_of[a];
        let g2_deg = sub.neighbors(a).iter().filter(|&&b| h2.has_pair(i, pb.block_of[b])).count() as i128;
        let bound = h2.graph.graph().degree(i) as i128;
        report.push(format!("d_G2({a}) <= d_H2(a_{i})"), g2_deg.into(), bound.into());
    }
    Ok(BlockPairSplit { h1, h2, report })
}

/// Edge ceiling `n^{3/2}/2 + n/4` for C4-free graphs on `n` vertices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ErsBound {
    pub n: u64,
    /// `floor(n^{3/2}/2 + n/4)`.
    pub floor: u64,
    /// `(isqrt(4n^3) + n) / 4`: a lower bound on the real value, equal to it
    /// when `n` is a perfect square.
    #[serde(with = "crate::rational::serde_fraction")]
    pub value: Rational,
    pub exact: bool,
}

impl ErsBound {
    pub fn admits(&self, edges: u64) -> bool {
        edges <= self.floor
    }
}

pub fn ers_bound(n: u64) -> ErsBound {
    let cube4 = 4 * (n as u128).pow(3);
    let root = cube4.sqrt();
    let exact = root * root == cube4;
    let value = rat(root as i128 + n as i128, 4);
    let floor = ((root + n as u128) / 4) as u64;
    ErsBound { n, floor, value, exact }
}
