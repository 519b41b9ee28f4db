//! Simple undirected graphs over contiguous vertex ids.
//!
//! Every derived graph (induced subgraph, spanning subgraph, peeled core)
//! carries an `origin` table mapping its local ids back to the ids of the
//! graph the computation started from, so certificates can always be
//! checked against the original input.

mod cycles;
mod ops;

pub use cycles::{count_c4, enumerate_c4, girth, has_triangle, is_c4_free, Girth, C4};
pub(crate) use ops::peel_survivors;
pub use ops::{bipartize, degeneracy, degree_select, induced_bipartite, min_degree_peel};

use crate::error::{argument, Result};
use crate::rational::{rat, Rational};

pub type Vertex = usize;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    adj: Vec<Vec<Vertex>>,
    m: usize,
    origin: Vec<Vertex>,
}

impl Graph {
    pub fn empty(n: usize) -> Self {
        Graph { adj: vec![Vec::new(); n], m: 0, origin: (0..n).collect() }
    }

    /// Builds a simple graph, rejecting self-loops, duplicates and
    /// out-of-range endpoints.
    pub fn from_edges(n: usize, edges: &[(Vertex, Vertex)]) -> Result<Self> {
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in edges {
            if u >= n || v >= n {
                return argument(format!("edge ({u}, {v}) out of range for n = {n}"));
            }
            if u == v {
                return argument(format!("self-loop at vertex {u}"));
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        for (v, list) in adj.iter_mut().enumerate() {
            list.sort_unstable();
            if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
                let (a, b) = (v.min(w[0]), v.max(w[0]));
                return argument(format!("duplicate edge ({a}, {b})"));
            }
        }
        Ok(Graph { adj, m: edges.len(), origin: (0..n).collect() })
    }

    /// Assembles a graph from already-sorted, symmetric adjacency lists.
    fn from_parts(adj: Vec<Vec<Vertex>>, origin: Vec<Vertex>) -> Self {
        let m = adj.iter().map(Vec::len).sum::<usize>() / 2;
        let g = Graph { adj, m, origin };
        debug_assert!(g.check_invariants());
        g
    }

    pub fn complete(n: usize) -> Self {
        let edges: Vec<_> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
        Graph::from_edges(n, &edges).expect("complete graph is simple")
    }

    pub fn cycle(n: usize) -> Self {
        assert!(n >= 3, "cycles need at least 3 vertices");
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Graph::from_edges(n, &edges).expect("cycle is simple")
    }

    pub fn path(n: usize) -> Self {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Graph::from_edges(n, &edges).expect("path is simple")
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.adj[v]
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        u < self.n() && self.adj[u].binary_search(&v).is_ok()
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        self.adj.iter().enumerate().flat_map(|(u, ns)| ns.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn min_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).min().unwrap_or(0)
    }

    pub fn average_degree(&self) -> Rational {
        average_degree(self)
    }

    /// Root id of local vertex `v`.
    pub fn origin_of(&self, v: Vertex) -> Vertex {
        self.origin[v]
    }

    pub fn origin(&self) -> &[Vertex] {
        &self.origin
    }

    /// Forgets the origin table, making this graph its own root.
    pub fn rooted(mut self) -> Self {
        self.origin = (0..self.n()).collect();
        self
    }

    /// Replaces the origin table; `origin` must have one entry per vertex.
    pub fn with_origin(mut self, origin: Vec<Vertex>) -> Result<Self> {
        if origin.len() != self.n() {
            return argument(format!("origin table has {} entries for {} vertices", origin.len(), self.n()));
        }
        self.origin = origin;
        Ok(self)
    }

    /// Edges translated to root ids, each as `(min, max)`, sorted.
    pub fn origin_edges(&self) -> Vec<(Vertex, Vertex)> {
        let mut out: Vec<_> = self
            .edges()
            .map(|(u, v)| {
                let (a, b) = (self.origin[u], self.origin[v]);
                (a.min(b), a.max(b))
            })
            .collect();
        out.sort_unstable();
        out
    }

    /// Subgraph induced on `vertices`; local ids follow the order of the
    /// sorted, deduplicated input.
    pub fn induced(&self, vertices: &[Vertex]) -> Graph {
        let mut keep: Vec<Vertex> = vertices.to_vec();
        keep.sort_unstable();
        keep.dedup();
        let mut local = vec![usize::MAX; self.n()];
        for (i, &v) in keep.iter().enumerate() {
            local[v] = i;
        }
        let adj = keep
            .iter()
            .map(|&v| self.adj[v].iter().filter_map(|&w| Some(local[w]).filter(|&l| l != usize::MAX)).collect())
            .collect();
        let origin = keep.iter().map(|&v| self.origin[v]).collect();
        Graph::from_parts(adj, origin)
    }

    /// Same vertex set, keeping only edges accepted by `keep`.
    pub fn filter_edges(&self, mut keep: impl FnMut(Vertex, Vertex) -> bool) -> Graph {
        let mut adj = vec![Vec::new(); self.n()];
        for (u, v) in self.edges() {
            if keep(u, v) {
                adj[u].push(v);
                adj[v].push(u);
            }
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        Graph::from_parts(adj, self.origin.clone())
    }

    /// Edge union of two graphs on the same vertex set; keeps `self`'s origin.
    pub fn union(&self, other: &Graph) -> Graph {
        assert_eq!(self.n(), other.n(), "union needs equal vertex sets");
        let adj = self
            .adj
            .iter()
            .zip(&other.adj)
            .map(|(x, y)| {
                let mut merged: Vec<Vertex> = x.iter().chain(y).copied().collect();
                merged.sort_unstable();
                merged.dedup();
                merged
            })
            .collect();
        Graph::from_parts(adj, self.origin.clone())
    }

    /// Drops degree-zero vertices.
    pub fn without_isolated(&self) -> Graph {
        let keep: Vec<_> = (0..self.n()).filter(|&v| self.degree(v) > 0).collect();
        self.induced(&keep)
    }

    pub fn check_invariants(&self) -> bool {
        let deg_sum: usize = self.adj.iter().map(Vec::len).sum();
        deg_sum == 2 * self.m
            && self.origin.len() == self.adj.len()
            && self.adj.iter().enumerate().all(|(v, ns)| {
                ns.windows(2).all(|w| w[0] < w[1])
                    && ns.iter().all(|&w| w != v && w < self.adj.len() && self.adj[w].binary_search(&v).is_ok())
            })
    }
}

/// `2m / n` as an exact fraction; zero for the empty graph.
pub fn average_degree(g: &Graph) -> Rational {
    if g.n() == 0 {
        Rational::from_integer(0)
    } else {
        rat(2 * g.m() as i128, g.n() as i128)
    }
}

/// Number of common neighbours of two distinct vertices.
pub fn codegree(g: &Graph, x: Vertex, y: Vertex) -> Result<usize> {
    if x >= g.n() || y >= g.n() {
        return argument(format!("vertex out of range: ({x}, {y}) with n = {}", g.n()));
    }
    if x == y {
        return argument(format!("codegree needs distinct vertices, got {x} twice"));
    }
    Ok(sorted_intersection_len(g.neighbors(x), g.neighbors(y)))
}

pub(crate) fn sorted_intersection_len(a: &[Vertex], b: &[Vertex]) -> usize {
    let (mut i, mut j, mut c) = (0, 0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                c += 1;
                i += 1;
                j += 1;
            }
        }
    }
    c
}

/// A graph together with a two-class vertex partition; every edge crosses.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BipartiteGraph {
    graph: Graph,
    in_a: Vec<bool>,
}

impl BipartiteGraph {
    /// Class B is the complement of `class_a`.
    pub fn new(graph: Graph, class_a: &[Vertex]) -> Result<Self> {
        let mut in_a = vec![false; graph.n()];
        for &v in class_a {
            if v >= graph.n() {
                return argument(format!("class A vertex {v} out of range"));
            }
            in_a[v] = true;
        }
        Self::from_sides(graph, in_a)
    }

    pub fn from_sides(graph: Graph, in_a: Vec<bool>) -> Result<Self> {
        if in_a.len() != graph.n() {
            return argument("side table length differs from vertex count");
        }
        if let Some((u, v)) = graph.edges().find(|&(u, v)| in_a[u] == in_a[v]) {
            return argument(format!("edge ({u}, {v}) lies inside one class"));
        }
        Ok(BipartiteGraph { graph, in_a })
    }

    /// `K_{a,b}` with class A = `0..a`.
    pub fn complete(a: usize, b: usize) -> Self {
        let edges: Vec<_> = (0..a).flat_map(|u| (a..a + b).map(move |v| (u, v))).collect();
        let g = Graph::from_edges(a + b, &edges).expect("complete bipartite graph is simple");
        BipartiteGraph::new(g, &(0..a).collect::<Vec<_>>()).expect("classes are independent")
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn into_graph(self) -> Graph {
        self.graph
    }

    pub fn in_a(&self, v: Vertex) -> bool {
        self.in_a[v]
    }

    pub fn sides(&self) -> &[bool] {
        &self.in_a
    }

    pub fn class_a(&self) -> Vec<Vertex> {
        (0..self.graph.n()).filter(|&v| self.in_a[v]).collect()
    }

    pub fn class_b(&self) -> Vec<Vertex> {
        (0..self.graph.n()).filter(|&v| !self.in_a[v]).collect()
    }

    pub fn size_a(&self) -> usize {
        self.in_a.iter().filter(|&&a| a).count()
    }

    pub fn size_b(&self) -> usize {
        self.graph.n() - self.size_a()
    }

    pub fn average_degree(&self) -> Rational {
        self.graph.average_degree()
    }

    /// Exchanges the roles of the two classes.
    pub fn swapped(&self) -> Self {
        BipartiteGraph { graph: self.graph.clone(), in_a: self.in_a.iter().map(|a| !a).collect() }
    }

    /// Orients so that `|A| >= |B|`.
    pub fn larger_side_a(self) -> Self {
        if self.size_a() >= self.size_b() {
            self
        } else {
            self.swapped()
        }
    }

    pub fn induced(&self, vertices: &[Vertex]) -> Self {
        let g = self.graph.induced(vertices);
        let mut keep: Vec<Vertex> = vertices.to_vec();
        keep.sort_unstable();
        keep.dedup();
        let in_a = keep.iter().map(|&v| self.in_a[v]).collect();
        BipartiteGraph { graph: g, in_a }
    }

    pub fn filter_edges(&self, keep: impl FnMut(Vertex, Vertex) -> bool) -> Self {
        BipartiteGraph { graph: self.graph.filter_edges(keep), in_a: self.in_a.clone() }
    }

    pub fn without_isolated(&self) -> Self {
        let keep: Vec<_> = (0..self.graph.n()).filter(|&v| self.graph.degree(v) > 0).collect();
        self.induced(&keep)
    }

    /// Largest codegree over distinct pairs of class-B vertices.
    pub fn max_b_codegree(&self) -> usize {
        self.max_codegree_on(false)
    }

    pub fn max_a_codegree(&self) -> usize {
        self.max_codegree_on(true)
    }

    fn max_codegree_on(&self, side_a: bool) -> usize {
        let n = self.graph.n();
        let mut count = vec![0usize; n];
        let mut best = 0;
        for x in (0..n).filter(|&x| self.in_a[x] == side_a) {
            let mut touched = Vec::new();
            for &w in self.graph.neighbors(x) {
                for &y in self.graph.neighbors(w) {
                    if y > x {
                        if count[y] == 0 {
                            touched.push(y);
                        }
                        count[y] += 1;
                    }
                }
            }
            for y in touched {
                best = best.max(count[y]);
                count[y] = 0;
            }
        }
        best
    }

    /// Maximum degree over class-A vertices.
    pub fn max_a_degree(&self) -> usize {
        (0..self.graph.n()).filter(|&v| self.in_a[v]).map(|v| self.graph.degree(v)).max().unwrap_or(0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    #[test]
    fn average_degree_examples() {
        assert_eq!(average_degree(&Graph::cycle(4)), int(2));
        assert_eq!(average_degree(BipartiteGraph::complete(3, 3).graph()), int(3));
        assert_eq!(average_degree(&Graph::path(2)), int(1));
        assert_eq!(average_degree(&Graph::empty(0)), int(0));
    }

    #[test]
    fn codegree_examples() {
        let k33 = BipartiteGraph::complete(3, 3);
        assert_eq!(codegree(k33.graph(), 0, 1).unwrap(), 3);
        assert_eq!(codegree(&Graph::path(3), 0, 2).unwrap(), 1);
        assert_eq!(codegree(&Graph::empty(2), 0, 1).unwrap(), 0);
        assert!(codegree(&Graph::path(3), 1, 1).is_err());
        assert!(codegree(&Graph::path(3), 0, 7).is_err());
    }

    #[test]
    fn construction_rejects_non_simple_input() {
        assert!(Graph::from_edges(3, &[(0, 0)]).is_err());
        assert!(Graph::from_edges(3, &[(0, 1), (1, 0)]).is_err());
        assert!(Graph::from_edges(3, &[(0, 3)]).is_err());
        let g = Graph::from_edges(3, &[(2, 1), (0, 1)]).unwrap();
        assert_eq!(g.edges().collect::<Vec<_>>(), vec![(0, 1), (1, 2)]);
        assert!(g.check_invariants());
    }

    #[test]
    fn bipartite_rejects_inner_edges() {
        let g = Graph::path(3);
        assert!(BipartiteGraph::new(g.clone(), &[0, 1]).is_err());
        let bg = BipartiteGraph::new(g, &[1]).unwrap();
        assert_eq!(bg.class_a(), vec![1]);
        assert_eq!(bg.class_b(), vec![0, 2]);
        assert_eq!(bg.max_b_codegree(), 1);
    }

    #[test]
    fn induced_subgraphs_track_origin() {
        let g = Graph::complete(5);
        let h = g.induced(&[4, 1, 3]);
        assert_eq!(h.n(), 3);
        assert_eq!(h.m(), 3);
        assert_eq!(h.origin(), &[1, 3, 4]);
        let hh = h.induced(&[0, 2]);
        assert_eq!(hh.origin(), &[1, 4]);
        assert_eq!(hh.origin_edges(), vec![(1, 4)]);
    }

    #[test]
    fn filter_edges_keeps_vertices() {
        let g = Graph::complete(4).filter_edges(|u, _| u == 0);
        assert_eq!(g.n(), 4);
        assert_eq!(g.m(), 3);
        assert_eq!(g.without_isolated().n(), 4);
        let g = Graph::complete(4).filter_edges(|u, v| (u, v) == (1, 2));
        assert_eq!(g.without_isolated().origin(), &[1, 2]);
    }
}
