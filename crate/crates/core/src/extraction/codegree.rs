use super::NeighborhoodWitness;
use crate::error::{argument, Result};
use crate::graph::{BipartiteGraph, Vertex};
use crate::rational::{int, Rational};

/// Spanning subgraph with all class-B codegrees below `codegree_bound`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Spanning {
    pub subgraph: BipartiteGraph,
    pub codegree_bound: Rational,
    /// `(v_i, d_{G_{i-1}}(v_i))` for every class-B vertex in processing order.
    pub history: Vec<(Vertex, usize)>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CodegreeSplit {
    Witness(NeighborhoodWitness),
    Spanning(Spanning),
}

/// Processes class B in id order. For `v_i`, the later B-vertices with at
/// least `lambda` neighbours in `N(v_i)` form `V_i`; if they send at least
/// `lambda d(v_i)` edges into `N(v_i)` the pair is returned as a witness,
/// otherwise those edges are deleted.
///
/// Vertices whose current degree is zero are skipped: their witness would be
/// empty.
pub fn codegree_reduce(bg: &BipartiteGraph, lambda: &Rational) -> Result<CodegreeSplit> {
    if *lambda < int(1) {
        return argument(format!("codegree_reduce needs lambda >= 1, got {lambda}"));
    }
    let g = bg.graph();
    let n = g.n();
    let mut adj: Vec<Vec<Vertex>> = (0..n).map(|v| g.neighbors(v).to_vec()).collect();
    let mut count = vec![0usize; n];
    let mut history = Vec::new();
    for vi in bg.class_b() {
        let nbhd = adj[vi].clone();
        history.push((vi, nbhd.len()));
        if nbhd.is_empty() {
            continue;
        }
        let mut touched = Vec::new();
        for &a in &nbhd {
            for &w in &adj[a] {
                if w > vi {
                    if count[w] == 0 {
                        touched.push(w);
                    }
                    count[w] += 1;
                }
            }
        }
        touched.sort_unstable();
        let heavy: Vec<Vertex> = touched.iter().copied().filter(|&w| int(count[w] as i128) >= *lambda).collect();
        let cross: usize = heavy.iter().map(|&w| count[w]).sum();
        for &w in &touched {
            count[w] = 0;
        }
        if heavy.is_empty() {
            continue;
        }
        if int(cross as i128) >= *lambda * int(nbhd.len() as i128) {
            return Ok(CodegreeSplit::Witness(NeighborhoodWitness::new(g, vi, nbhd, heavy)));
        }
        for &w in &heavy {
            adj[w].retain(|a| nbhd.binary_search(a).is_err());
        }
        for &a in &nbhd {
            adj[a].retain(|w| heavy.binary_search(w).is_err());
        }
    }
    let keep = |u: Vertex, v: Vertex| adj[u].binary_search(&v).is_ok();
    let h = g.filter_edges(keep);
    let subgraph = BipartiteGraph::from_sides(h, bg.sides().to_vec()).expect("spanning subgraph keeps classes");
    Ok(CodegreeSplit::Spanning(Spanning { subgraph, codegree_bound: *lambda, history }))
}
