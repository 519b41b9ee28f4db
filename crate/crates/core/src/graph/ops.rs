use std::collections::BTreeSet;

use super::{BipartiteGraph, Graph, Vertex};
use crate::error::{argument, contract, Result};
use crate::rational::{ceil_usize, int, Rational};

/// Spanning bipartite subgraph keeping at least `ceil(m/2)` edges.
///
/// Vertices are first placed greedily opposite the majority of their placed
/// neighbours, then single vertices are moved (lowest id first) while that
/// strictly increases the cut. At the local optimum every vertex has at
/// least half of its edges crossing.
pub fn bipartize(g: &Graph) -> BipartiteGraph {
    let n = g.n();
    let mut in_a = vec![true; n];
    for v in 0..n {
        let (mut on_a, mut on_b) = (0usize, 0usize);
        for &w in g.neighbors(v).iter().filter(|&&w| w < v) {
            if in_a[w] {
                on_a += 1;
            } else {
                on_b += 1;
            }
        }
        in_a[v] = on_a <= on_b;
    }
    loop {
        let flip = (0..n).find(|&v| {
            let same = g.neighbors(v).iter().filter(|&&w| in_a[w] == in_a[v]).count();
            2 * same > g.degree(v)
        });
        match flip {
            Some(v) => in_a[v] = !in_a[v],
            None => break,
        }
    }
    let cut = g.filter_edges(|u, v| in_a[u] != in_a[v]);
    BipartiteGraph::from_sides(cut, in_a).expect("cut edges cross the partition")
}

/// Repeatedly deletes the lowest-id vertex whose degree is below
/// `threshold`.
pub fn min_degree_peel(g: &Graph, threshold: &Rational) -> Graph {
    let alive = peel_survivors(g, threshold);
    let keep: Vec<_> = (0..g.n()).filter(|&v| alive[v]).collect();
    g.induced(&keep)
}

pub(crate) fn peel_survivors(g: &Graph, threshold: &Rational) -> Vec<bool> {
    let n = g.n();
    let mut deg: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    let low = |d: usize| int(d as i128) < *threshold;
    let mut alive = vec![true; n];
    let mut pending: BTreeSet<Vertex> = (0..n).filter(|&v| low(deg[v])).collect();
    while let Some(v) = pending.pop_first() {
        alive[v] = false;
        for &w in g.neighbors(v) {
            if alive[w] {
                deg[w] -= 1;
                if low(deg[w]) {
                    pending.insert(w);
                }
            }
        }
    }
    alive
}

/// Every class-A vertex keeps exactly `ceil(k/2)` of its lowest-id
/// neighbours; class-B vertices are all retained.
pub fn degree_select(bg: &BipartiteGraph, k: &Rational) -> Result<BipartiteGraph> {
    let keep = ceil_usize(&(*k / int(2)));
    let g = bg.graph();
    if let Some(v) = bg.class_a().into_iter().find(|&v| g.degree(v) < keep) {
        return contract(format!(
            "degree_select needs every class-A degree >= {keep}, vertex {v} has degree {}",
            g.degree(v)
        ));
    }
    Ok(bg.filter_edges(|u, v| {
        let (a, b) = if bg.in_a(u) { (u, v) } else { (v, u) };
        g.neighbors(a)[..keep].binary_search(&b).is_ok()
    }))
}

/// Degeneracy and the minimum-degree elimination order that certifies it
/// (ties broken by lowest id).
pub fn degeneracy(g: &Graph) -> (usize, Vec<Vertex>) {
    let n = g.n();
    let mut deg: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    let mut queue: BTreeSet<(usize, Vertex)> = (0..n).map(|v| (deg[v], v)).collect();
    let mut removed = vec![false; n];
    let mut order = Vec::with_capacity(n);
    let mut k = 0;
    while let Some((d, v)) = queue.pop_first() {
        k = k.max(d);
        removed[v] = true;
        order.push(v);
        for &w in g.neighbors(v) {
            if !removed[w] {
                queue.remove(&(deg[w], w));
                deg[w] -= 1;
                queue.insert((deg[w], w));
            }
        }
    }
    (k, order)
}

/// `G[A, B]`: only edges between the two disjoint sets survive.
pub fn induced_bipartite(g: &Graph, a: &[Vertex], b: &[Vertex]) -> Result<BipartiteGraph> {
    let n = g.n();
    let mut side: Vec<Option<bool>> = vec![None; n];
    for (&v, is_a) in a.iter().map(|v| (v, true)).chain(b.iter().map(|v| (v, false))) {
        if v >= n {
            return argument(format!("vertex {v} out of range"));
        }
        match side[v] {
            Some(s) if s != is_a => return argument(format!("vertex {v} is in both sets")),
            _ => side[v] = Some(is_a),
        }
    }
    let keep: Vec<_> = (0..n).filter(|&v| side[v].is_some()).collect();
    let sub = g.induced(&keep);
    let in_a: Vec<bool> = keep.iter().map(|&v| side[v] == Some(true)).collect();
    let sub = sub.filter_edges(|u, v| in_a[u] != in_a[v]);
    BipartiteGraph::from_sides(sub, in_a)
}
