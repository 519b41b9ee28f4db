//! Prime-order projective planes and their point/line incidence graphs.

use std::collections::HashMap;

use crate::error::{argument, Error, Result};
use crate::graph::{BipartiteGraph, Graph, Vertex};
use crate::rational::{int, Rational};

/// Trial division; intended for desk-scale inputs (below 10^9).
pub fn is_prime(x: u64) -> bool {
    if x < 2 {
        return false;
    }
    if x.is_multiple_of(2) {
        return x == 2;
    }
    let mut d = 3;
    while d * d <= x {
        if x.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// Smallest prime in `[lo, hi]`.
pub fn prime_in_range(lo: u64, hi: u64) -> Option<u64> {
    (lo.max(2)..=hi).find(|&x| is_prime(x))
}

/// Arithmetic modulo a certified prime.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PrimeField {
    q: u64,
}

impl PrimeField {
    pub fn new(q: u64) -> Result<Self> {
        if !is_prime(q) {
            return argument(format!("{q} is not prime (only prime orders are supported)"));
        }
        Ok(PrimeField { q })
    }

    pub fn order(&self) -> u64 {
        self.q
    }

    pub fn reduce(&self, x: u64) -> u64 {
        x % self.q
    }

    pub fn add(&self, a: u64, b: u64) -> u64 {
        (a + b) % self.q
    }

    pub fn sub(&self, a: u64, b: u64) -> u64 {
        (a + self.q - b % self.q) % self.q
    }

    pub fn mul(&self, a: u64, b: u64) -> u64 {
        (a * b) % self.q
    }

    pub fn pow(&self, mut base: u64, mut e: u64) -> u64 {
        let mut acc = 1 % self.q;
        base %= self.q;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// Multiplicative inverse by Fermat's little theorem.
    pub fn inv(&self, a: u64) -> Option<u64> {
        let a = self.reduce(a);
        (a != 0).then(|| self.pow(a, self.q - 2))
    }

    pub fn dot(&self, x: &Triple, y: &Triple) -> u64 {
        x.iter().zip(y).fold(0, |acc, (&a, &b)| self.add(acc, self.mul(a, b)))
    }

    /// Scales so the leftmost nonzero coordinate is 1.
    pub fn normalize(&self, t: &Triple) -> Option<Triple> {
        let lead = t.iter().map(|&c| self.reduce(c)).find(|&c| c != 0)?;
        let s = self.inv(lead)?;
        Some([self.mul(t[0], s), self.mul(t[1], s), self.mul(t[2], s)])
    }

    pub fn cross(&self, x: &Triple, y: &Triple) -> Triple {
        [
            self.sub(self.mul(x[1], y[2]), self.mul(x[2], y[1])),
            self.sub(self.mul(x[2], y[0]), self.mul(x[0], y[2])),
            self.sub(self.mul(x[0], y[1]), self.mul(x[1], y[0])),
        ]
    }
}

pub type Triple = [u64; 3];

/// The plane PG(2, q): points and lines are both the canonical nonzero
/// triples, and a point lies on a line iff their dot product vanishes.
#[derive(Debug, Clone)]
pub struct ProjectivePlane {
    field: PrimeField,
    points: Vec<Triple>,
    index: HashMap<Triple, usize>,
}

impl ProjectivePlane {
    pub fn order(&self) -> u64 {
        self.field.order()
    }

    pub fn field(&self) -> &PrimeField {
        &self.field
    }

    pub fn points(&self) -> &[Triple] {
        &self.points
    }

    /// Lines share the point representation.
    pub fn lines(&self) -> &[Triple] {
        &self.points
    }

    pub fn incident(&self, point: usize, line: usize) -> bool {
        self.field.dot(&self.points[point], &self.points[line]) == 0
    }

    pub fn points_on(&self, line: usize) -> Vec<usize> {
        (0..self.points.len()).filter(|&p| self.incident(p, line)).collect()
    }

    pub fn lines_through(&self, point: usize) -> Vec<usize> {
        (0..self.points.len()).filter(|&l| self.incident(point, l)).collect()
    }

    /// Index of the unique line through two distinct points.
    pub fn line_through(&self, p: usize, r: usize) -> Option<usize> {
        let c = self.field.cross(&self.points[p], &self.points[r]);
        self.field.normalize(&c).and_then(|t| self.index.get(&t).copied())
    }
}

pub fn build_plane(q: u64) -> Result<ProjectivePlane> {
    let field = PrimeField::new(q)?;
    let mut points: Vec<Triple> = Vec::with_capacity((q * q + q + 1) as usize);
    points.push([0, 0, 1]);
    for z in 0..q {
        points.push([0, 1, z]);
    }
    for y in 0..q {
        for z in 0..q {
            points.push([1, y, z]);
        }
    }
    let index = points.iter().enumerate().map(|(i, &t)| (t, i)).collect();
    Ok(ProjectivePlane { field, points, index })
}

/// Points get ids `0..N`, lines `N..2N`; class A is the point set.
pub fn incidence_graph(plane: &ProjectivePlane) -> BipartiteGraph {
    let n = plane.points.len();
    let mut edges = Vec::with_capacity(n * (plane.order() as usize + 1));
    for p in 0..n {
        for l in 0..n {
            if plane.incident(p, l) {
                edges.push((p, n + l));
            }
        }
    }
    let g = Graph::from_edges(2 * n, &edges).expect("incidence graph is simple");
    BipartiteGraph::new(g, &(0..n).collect::<Vec<_>>()).expect("points and lines are independent")
}

/// A C4-free subgraph of `K_{s,s}` with `s = 4k^2` built from the plane of
/// the smallest prime order `q` in `[k, 2k-1]`.
///
/// Class A is `0..s` (points first, then isolated padding), class B is
/// `s..2s` (lines first, then padding).
#[derive(Debug, Clone)]
pub struct ReimanEmbedding {
    pub k: u64,
    pub q: u64,
    pub s: usize,
    /// Points (equivalently lines) actually used: `q^2 + q + 1`.
    pub core: usize,
    pub graph: BipartiteGraph,
    pub unpadded_average_degree: Rational,
    pub padded_average_degree: Rational,
}

impl ReimanEmbedding {
    pub fn core_vertices(&self) -> Vec<Vertex> {
        (0..self.core).chain(self.s..self.s + self.core).collect()
    }

    /// The incidence graph without padding.
    pub fn unpadded(&self) -> BipartiteGraph {
        self.graph.induced(&self.core_vertices())
    }
}

pub fn reiman_embed(k: u64) -> Result<ReimanEmbedding> {
    if k < 2 {
        return argument(format!("reiman_embed needs k >= 2, got {k}"));
    }
    let q = prime_in_range(k, 2 * k - 1).ok_or_else(|| Error::Internal(format!("no prime in [{k}, {}]", 2 * k - 1)))?;
    let plane = build_plane(q)?;
    let core = plane.points.len();
    let s = (4 * k * k) as usize;
    if core > s {
        return Err(Error::Internal(format!("plane of order {q} does not fit in K_{{{s},{s}}}")));
    }
    let mut edges = Vec::new();
    for p in 0..core {
        for l in 0..core {
            if plane.incident(p, l) {
                edges.push((p, s + l));
            }
        }
    }
    let g = Graph::from_edges(2 * s, &edges).expect("incidence graph is simple");
    let graph = BipartiteGraph::new(g, &(0..s).collect::<Vec<_>>()).expect("points and lines are independent");
    let unpadded_average_degree = int(2 * edges.len() as i128) / int(2 * core as i128);
    let padded_average_degree = graph.average_degree();
    Ok(ReimanEmbedding { k, q, s, core, graph, unpadded_average_degree, padded_average_degree })
}
