#![allow(dead_code)]

use girthforge::{BipartiteGraph, Graph};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

/// Random bipartite graph with class A = `0..a`, class B = `a..a+b`.
pub fn random_bipartite(rng: &mut ChaCha8Rng, a: usize, b: usize, p: f64) -> BipartiteGraph {
    let mut edges = Vec::new();
    for u in 0..a {
        for v in a..a + b {
            if rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    let g = Graph::from_edges(a + b, &edges).unwrap();
    BipartiteGraph::new(g, &(0..a).collect::<Vec<_>>()).unwrap()
}

pub fn random_graph(rng: &mut ChaCha8Rng, n: usize, p: f64) -> Graph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, &edges).unwrap()
}

pub fn complete_bipartite_file(a: usize, b: usize) -> String {
    girthforge::edgelist::format_bipartite(&BipartiteGraph::complete(a, b), &[])
}
