use std::collections::VecDeque;

use rayon::prelude::*;
use serde::Serialize;

use super::{Graph, Vertex};

/// Length of a shortest cycle, or `Acyclic` for forests.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub enum Girth {
    Cycle(usize),
    Acyclic,
}

impl std::fmt::Display for Girth {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Girth::Cycle(l) => write!(f, "{l}"),
            Girth::Acyclic => write!(f, "acyclic"),
        }
    }
}

/// Shortest cycle via a breadth-first search from every vertex.
pub fn girth(g: &Graph) -> Girth {
    let n = g.n();
    let mut best = usize::MAX;
    let mut dist = vec![usize::MAX; n];
    let mut parent = vec![usize::MAX; n];
    let mut queue = VecDeque::new();
    for root in 0..n {
        let mut seen = vec![root];
        dist[root] = 0;
        queue.push_back(root);
        'bfs: while let Some(u) = queue.pop_front() {
            // no shorter cycle can be closed from this depth
            if 2 * dist[u] + 1 >= best {
                break;
            }
            for &w in g.neighbors(u) {
                if dist[w] == usize::MAX {
                    dist[w] = dist[u] + 1;
                    parent[w] = u;
                    seen.push(w);
                    queue.push_back(w);
                } else if parent[u] != w {
                    best = best.min(dist[u] + dist[w] + 1);
                    if best == 3 {
                        break 'bfs;
                    }
                }
            }
        }
        queue.clear();
        for v in seen {
            dist[v] = usize::MAX;
            parent[v] = usize::MAX;
        }
        if best == 3 {
            break;
        }
    }
    if best == usize::MAX {
        Girth::Acyclic
    } else {
        Girth::Cycle(best)
    }
}

/// A 4-cycle `a-b-c-d-a` in canonical form: `a` is the smallest vertex,
/// `c` is opposite to it and `b < d`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct C4(pub [Vertex; 4]);

impl C4 {
    /// Canonicalises any cyclic ordering of four distinct vertices.
    pub fn canonical(cycle: [Vertex; 4]) -> Self {
        let i = (0..4).min_by_key(|&i| cycle[i]).unwrap();
        let a = cycle[i];
        let (b, c, d) = (cycle[(i + 1) % 4], cycle[(i + 2) % 4], cycle[(i + 3) % 4]);
        if b < d {
            C4([a, b, c, d])
        } else {
            C4([a, d, c, b])
        }
    }

    /// The four edges as `(min, max)` pairs, sorted.
    pub fn edges(&self) -> [(Vertex, Vertex); 4] {
        let [a, b, c, d] = self.0;
        let e = |x: Vertex, y: Vertex| (x.min(y), x.max(y));
        let mut out = [e(a, b), e(b, c), e(c, d), e(d, a)];
        out.sort_unstable();
        out
    }
}

/// Every 4-cycle exactly once, in lexicographic canonical order.
pub fn enumerate_c4(g: &Graph) -> Vec<C4> {
    let mut cycles: Vec<C4> = (0..g.n())
        .into_par_iter()
        .flat_map_iter(|a| {
            let mut local = Vec::new();
            let upper: Vec<Vertex> = g.neighbors(a).iter().copied().filter(|&x| x > a).collect();
            for (i, &b) in upper.iter().enumerate() {
                for &d in &upper[i + 1..] {
                    for c in common_above(g.neighbors(b), g.neighbors(d), a) {
                        local.push(C4([a, b, c, d]));
                    }
                }
            }
            local
        })
        .collect();
    cycles.sort_unstable();
    cycles
}

fn common_above(x: &[Vertex], y: &[Vertex], floor: Vertex) -> Vec<Vertex> {
    let (mut i, mut j) = (x.partition_point(|&v| v <= floor), y.partition_point(|&v| v <= floor));
    let mut out = Vec::new();
    while i < x.len() && j < y.len() {
        match x[i].cmp(&y[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                out.push(x[i]);
                i += 1;
                j += 1;
            }
        }
    }
    out
}

/// Counts 4-cycles from codegrees: each cycle is seen once from each of its
/// two diagonals.
pub fn count_c4(g: &Graph) -> u64 {
    let n = g.n();
    let mut count = vec![0u64; n];
    let mut twice = 0u64;
    for x in 0..n {
        let mut touched = Vec::new();
        for &w in g.neighbors(x) {
            for &y in g.neighbors(w) {
                if y > x {
                    if count[y] == 0 {
                        touched.push(y);
                    }
                    count[y] += 1;
                }
            }
        }
        for y in touched {
            twice += count[y] * (count[y] - 1) / 2;
            count[y] = 0;
        }
    }
    twice / 2
}

/// True iff no pair of vertices has two common neighbours.
pub fn is_c4_free(g: &Graph) -> bool {
    let n = g.n();
    let mut mark = vec![usize::MAX; n];
    for x in 0..n {
        for &w in g.neighbors(x) {
            for &y in g.neighbors(w) {
                if y > x {
                    if mark[y] == x {
                        return false;
                    }
                    mark[y] = x;
                }
            }
        }
    }
    true
}

pub fn has_triangle(g: &Graph) -> bool {
    g.edges().any(|(u, v)| super::sorted_intersection_len(g.neighbors(u), g.neighbors(v)) > 0)
}
