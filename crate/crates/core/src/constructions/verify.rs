use std::collections::HashMap;

use serde::Serialize;

use super::{classify_edges, ers_bound, skeleton, PartitionedBipartite};
use crate::error::{argument, contract, Result};
use crate::graph::{degeneracy, is_c4_free, BipartiteGraph, Graph, Vertex};
use crate::rational::{int, Rational};

/// One inequality `lhs <= rhs`, evaluated exactly.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    #[serde(with = "crate::rational::serde_fraction")]
    pub lhs: Rational,
    #[serde(with = "crate::rational::serde_fraction")]
    pub rhs: Rational,
    pub holds: bool,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub parameters: Vec<(String, String)>,
    pub checks: Vec<Check>,
}

impl VerificationReport {
    pub fn push(&mut self, name: impl Into<String>, lhs: Rational, rhs: Rational) {
        let holds = lhs <= rhs;
        self.checks.push(Check { name: name.into(), lhs, rhs, holds });
    }

    pub fn param(&mut self, key: &str, value: impl ToString) {
        self.parameters.push((key.to_string(), value.to_string()));
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.holds)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.holds)
    }

    fn absorb(&mut self, prefix: &str, other: VerificationReport) {
        for c in other.checks {
            self.checks.push(Check { name: format!("{prefix}{}", c.name), ..c });
        }
    }
}

/// Checks the edge ceiling for C4-free bipartite graphs in which every
/// class-B vertex sees each class-A block in either zero or at least `d`
/// vertices.
///
/// Besides `d(G) <= 18d` the per-block steps are checked as well: the heavy
/// neighbours `B'_i` of block `A_i` number at most `2|A_i|`, and
/// `e(A_i, B) <= 9d |A_i|`.
pub fn verify_lemma9(bg: &BipartiteGraph, blocks: &[Vec<Vertex>], d: usize) -> Result<VerificationReport> {
    if d < 2 {
        return argument(format!("verify_lemma9 needs d >= 2, got {d}"));
    }
    let g = bg.graph();
    let n = g.n();
    let mut block_of = vec![usize::MAX; n];
    for (i, block) in blocks.iter().enumerate() {
        for &v in block {
            if v >= n || !bg.in_a(v) {
                return argument(format!("block {i} contains {v}, which is not a class-A vertex"));
            }
            if block_of[v] != usize::MAX {
                return argument(format!("vertex {v} appears in two blocks"));
            }
            block_of[v] = i;
        }
    }
    if let Some(v) = bg.class_a().into_iter().find(|&v| block_of[v] == usize::MAX) {
        return argument(format!("class-A vertex {v} is not covered by any block"));
    }
    if !is_c4_free(g) {
        return contract("verify_lemma9 needs a C4-free graph");
    }
    if let Some(i) = blocks.iter().position(|b| b.len() > d * d) {
        return contract(format!("block {i} has {} > d^2 = {} vertices", blocks[i].len(), d * d));
    }

    let mut counts: Vec<HashMap<usize, usize>> = vec![HashMap::new(); n];
    for b in bg.class_b() {
        for &a in g.neighbors(b) {
            *counts[b].entry(block_of[a]).or_default() += 1;
        }
        let mut bad: Vec<_> = counts[b].iter().filter(|(_, &c)| c < d).map(|(&i, &c)| (i, c)).collect();
        bad.sort_unstable();
        if let Some(&(i, c)) = bad.first() {
            return contract(format!("vertex {b} has {c} neighbours in block {i}; needs 0 or at least d = {d}"));
        }
    }

    let mut report = VerificationReport::default();
    report.param("d", d);
    let d_r = int(d as i128);
    for (i, block) in blocks.iter().enumerate() {
        let heavy: Vec<Vertex> =
            bg.class_b().into_iter().filter(|&b| counts[b].get(&i).is_some_and(|&c| c >= d)).collect();
        let e_block: usize = heavy.iter().map(|b| counts[*b][&i]).sum();
        let size = block.len() as i128;
        report.push(format!("|B'_{i}| <= 2|A_{i}|"), int(heavy.len() as i128), int(2 * size));
        let ers = ers_bound((block.len() + heavy.len()) as u64);
        report.push(
            format!("e(A_{i}, B'_{i}) <= ers(|A_{i}| + |B'_{i}|)"),
            int(e_block as i128),
            int(ers.floor as i128),
        );
        report.push(format!("e(A_{i}, B) <= 9d|A_{i}|"), int(e_block as i128), int(9 * size) * d_r);
    }
    report.push("d(G) <= 18d", g.average_degree(), int(18) * d_r);
    Ok(report)
}

/// Checks the average-degree ceiling `13 k d` for a C4-free subgraph of a
/// block-partitioned bipartite graph whose block skeleton is
/// `k`-degenerate, together with the intermediate claims: the Type-1 and
/// Type-2 parts satisfy the `18d` ceiling and the Type-3 part is
/// `kd`-degenerate.
///
/// Averages are taken over the non-isolated vertices of `sub` with blocks
/// restricted accordingly.
pub fn verify_lemma8(pb: &PartitionedBipartite, sub: &Graph, d: usize) -> Result<VerificationReport> {
    pb.admit(sub)?;
    if d < 2 {
        return argument(format!("verify_lemma8 needs d >= 2, got {d}"));
    }
    if !is_c4_free(sub) {
        return contract("verify_lemma8 needs a C4-free subgraph");
    }
    if pb.max_block_size() > d * d {
        return contract(format!("a block has {} > d^2 = {} vertices", pb.max_block_size(), d * d));
    }
    let skel = skeleton(pb, sub)?;
    let (k, _) = degeneracy(skel.graph.graph());
    let split = classify_edges(pb, sub, d)?;

    let keep: Vec<Vertex> = (0..sub.n()).filter(|&v| sub.degree(v) > 0).collect();
    let mut local = vec![usize::MAX; sub.n()];
    for (i, &v) in keep.iter().enumerate() {
        local[v] = i;
    }
    let restrict = |blocks: &[Vec<Vertex>]| -> Vec<Vec<Vertex>> {
        blocks
            .iter()
            .map(|b| b.iter().filter(|&&v| local[v] != usize::MAX).map(|&v| local[v]).collect::<Vec<_>>())
            .filter(|b| !b.is_empty())
            .collect()
    };
    let blocks_a = restrict(&pb.blocks_a);
    let blocks_b = restrict(&pb.blocks_b);
    let sides: Vec<bool> = keep.iter().map(|&v| pb.bg.in_a(v)).collect();
    let g = sub.induced(&keep);
    let g1 = split.g1.induced(&keep);
    let g2 = split.g2.induced(&keep);
    let g3 = split.g3.induced(&keep);
    let type2 = split.type2_all().induced(&keep);

    let mut report = VerificationReport::default();
    report.param("d", d);
    report.param("k", k);
    report.param("vertices", keep.len());

    let type1_bg = BipartiteGraph::from_sides(g1.clone(), sides.iter().map(|a| !a).collect())?;
    report.absorb("type1: ", verify_lemma9(&type1_bg, &blocks_b, d)?);
    let type2_bg = BipartiteGraph::from_sides(type2, sides)?;
    report.absorb("type2: ", verify_lemma9(&type2_bg, &blocks_a, d)?);

    let (kr, dr) = (int(k as i128), int(d as i128));
    report.push("d(G1) <= 18d", g1.average_degree(), int(18) * dr);
    report.push("d(G2) <= 18d", g2.average_degree(), int(18) * dr);
    report.push("degeneracy(G3) <= kd", int(degeneracy(&g3).0 as i128), kr * dr);
    report.push("d(G3) <= 2kd", g3.average_degree(), int(2) * kr * dr);
    report.push(
        "d(G) <= d(G1) + d(G2) + d(G3)",
        g.average_degree(),
        g1.average_degree() + g2.average_degree() + g3.average_degree(),
    );
    report.push("d(G) <= 13kd", g.average_degree(), int(13) * kr * dr);
    Ok(report)
}
