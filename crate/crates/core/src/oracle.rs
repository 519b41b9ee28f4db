//! Brute-force ground truth for small graphs.
//!
//! Nothing here shares code paths with the fast primitives in
//! [`crate::graph`] beyond the `Graph` container itself: C4 detection uses
//! bitmask path checks, girth uses exhaustive cycle search.

use std::time::{Duration, Instant};

use crate::error::{Error, Result};
use crate::graph::{Girth, Graph, Vertex};
use crate::rational::{int, rat, Rational};

pub const BUDGET_ENV: &str = "GIRTHFORGE_BUDGET_SECONDS";

/// Hard caps for exhaustive searches; oversize inputs are refused.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleBudget {
    pub max_vertices: usize,
    pub max_edges: usize,
    pub time_limit: Option<Duration>,
}

impl Default for OracleBudget {
    fn default() -> Self {
        OracleBudget { max_vertices: 12, max_edges: 24, time_limit: None }
    }
}

impl OracleBudget {
    /// Default caps, with the time limit taken from `GIRTHFORGE_BUDGET_SECONDS`.
    pub fn from_env() -> Result<Self> {
        let mut b = OracleBudget::default();
        if let Ok(v) = std::env::var(BUDGET_ENV) {
            let secs: f64 = v
                .trim()
                .parse()
                .map_err(|_| Error::Argument(format!("{BUDGET_ENV} must be a number of seconds, got {v:?}")))?;
            if !(secs.is_finite() && secs > 0.0) {
                return Err(Error::Argument(format!("{BUDGET_ENV} must be positive, got {v:?}")));
            }
            b.time_limit = Some(Duration::from_secs_f64(secs));
        }
        Ok(b)
    }

    fn admit(&self, g: &Graph) -> Result<()> {
        if g.n() > self.max_vertices || g.n() > 64 {
            return Err(Error::Budget(format!("{} vertices exceeds the budget of {}", g.n(), self.max_vertices)));
        }
        if g.m() > self.max_edges {
            return Err(Error::Budget(format!("{} edges exceeds the budget of {}", g.m(), self.max_edges)));
        }
        Ok(())
    }
}

struct Clock {
    deadline: Option<Instant>,
    ticks: u64,
}

impl Clock {
    fn new(b: &OracleBudget) -> Self {
        Clock { deadline: b.time_limit.map(|d| Instant::now() + d), ticks: 0 }
    }

    fn tick(&mut self) -> Result<()> {
        self.ticks += 1;
        if self.ticks.is_multiple_of(4096) {
            if let Some(d) = self.deadline {
                if Instant::now() > d {
                    return Err(Error::Budget("oracle time limit exceeded".into()));
                }
            }
        }
        Ok(())
    }
}

fn bit(v: Vertex) -> u64 {
    1u64 << v
}

/// Would adding `uv` close a 4-cycle `u-x-y-v`?
fn closes_c4(adj: &[u64], u: Vertex, v: Vertex) -> bool {
    let mut xs = adj[u] & !bit(v);
    while xs != 0 {
        let x = xs.trailing_zeros() as usize;
        xs &= xs - 1;
        if adj[x] & adj[v] & !bit(u) != 0 {
            return true;
        }
    }
    false
}

struct MaxC4Free<'a> {
    edges: &'a [(Vertex, Vertex)],
    adj: Vec<u64>,
    chosen: Vec<usize>,
    best: Vec<usize>,
    clock: Clock,
}

impl MaxC4Free<'_> {
    fn search(&mut self, idx: usize) -> Result<()> {
        self.clock.tick()?;
        if self.chosen.len() + (self.edges.len() - idx) <= self.best.len() {
            return Ok(());
        }
        if idx == self.edges.len() {
            self.best = self.chosen.clone();
            return Ok(());
        }
        let (u, v) = self.edges[idx];
        if !closes_c4(&self.adj, u, v) {
            self.adj[u] |= bit(v);
            self.adj[v] |= bit(u);
            self.chosen.push(idx);
            self.search(idx + 1)?;
            self.chosen.pop();
            self.adj[u] &= !bit(v);
            self.adj[v] &= !bit(u);
        }
        self.search(idx + 1)
    }
}

fn max_c4free_with_clock(g: &Graph, clock: Clock) -> Result<(Vec<(Vertex, Vertex)>, Clock)> {
    let edges: Vec<_> = g.edges().collect();
    let mut s = MaxC4Free { edges: &edges, adj: vec![0; g.n()], chosen: Vec::new(), best: Vec::new(), clock };
    s.search(0)?;
    let witness = s.best.iter().map(|&i| edges[i]).collect();
    Ok((witness, s.clock))
}

/// Largest C4-free spanning subgraph by branch and bound over the edges in
/// id order. The witness is re-verified before returning.
pub fn max_c4free_edges(g: &Graph, budget: &OracleBudget) -> Result<(usize, Vec<(Vertex, Vertex)>)> {
    budget.admit(g)?;
    let (witness, _) = max_c4free_with_clock(g, Clock::new(budget))?;
    verify_c4_free(g.n(), &witness)?;
    Ok((witness.len(), witness))
}

fn verify_c4_free(n: usize, edges: &[(Vertex, Vertex)]) -> Result<()> {
    let h = Graph::from_edges(n, edges)?;
    if !crate::graph::is_c4_free(&h) {
        return Err(Error::Internal("oracle witness contains a 4-cycle".into()));
    }
    Ok(())
}

/// Exact maximum average degree over all C4-free subgraphs (any vertex
/// subset, any edge subset). The witness keeps root ids in its origin.
pub fn best_c4free_avg_degree(g: &Graph, budget: &OracleBudget) -> Result<(Rational, Graph)> {
    budget.admit(g)?;
    let n = g.n();
    let mut clock = Clock::new(budget);
    let mut best = int(0);
    let mut witness = g.induced(&[]);
    for mask in 1u64..(1u64 << n) {
        let verts: Vec<Vertex> = (0..n).filter(|&v| mask & bit(v) != 0).collect();
        let size = verts.len() as i128;
        let sub = g.induced(&verts);
        let ceiling = (sub.m() as u64).min(crate::constructions::ers_bound(verts.len() as u64).floor);
        if rat(2 * ceiling as i128, size) <= best {
            continue;
        }
        let (edges, c) = max_c4free_with_clock(&sub, clock)?;
        clock = c;
        let value = rat(2 * edges.len() as i128, size);
        if value > best {
            best = value;
            let kept: std::collections::HashSet<_> = edges.into_iter().collect();
            witness = sub.filter_edges(|u, v| kept.contains(&(u, v)));
        }
    }
    if !crate::graph::is_c4_free(&witness) {
        return Err(Error::Internal("oracle witness contains a 4-cycle".into()));
    }
    Ok((best, witness))
}

/// Girth by exhaustive search for simple cycles through their minimum
/// vertex, up to length `min(n, 12)`. Longer girths are settled by a
/// union-find forest test and, failing that, the breadth-first routine.
pub fn shortest_cycle_reference(g: &Graph) -> Girth {
    const EXHAUSTIVE_LIMIT: usize = 12;
    let n = g.n();
    let limit = n.min(EXHAUSTIVE_LIMIT);
    let mut best = usize::MAX;
    let mut on_path = vec![false; n];
    for s in 0..n {
        on_path[s] = true;
        cycle_dfs(g, s, s, 1, limit, &mut on_path, &mut best);
        on_path[s] = false;
    }
    if best != usize::MAX {
        return Girth::Cycle(best);
    }
    if n <= EXHAUSTIVE_LIMIT || is_forest(g) {
        return Girth::Acyclic;
    }
    crate::graph::girth(g)
}

fn cycle_dfs(g: &Graph, start: Vertex, at: Vertex, len: usize, limit: usize, on_path: &mut [bool], best: &mut usize) {
    for &w in g.neighbors(at) {
        if w == start && len >= 3 {
            *best = (*best).min(len);
        }
    }
    if len + 1 > limit.min(best.saturating_sub(1)) {
        return;
    }
    for &w in g.neighbors(at) {
        if w > start && !on_path[w] {
            on_path[w] = true;
            cycle_dfs(g, start, w, len + 1, limit, on_path, best);
            on_path[w] = false;
        }
    }
}

fn is_forest(g: &Graph) -> bool {
    let mut parent: Vec<usize> = (0..g.n()).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    for (u, v) in g.edges() {
        let (a, b) = (find(&mut parent, u), find(&mut parent, v));
        if a == b {
            return false;
        }
        parent[a] = b;
    }
    true
}

/// Searches every even vertex subset of size at least 4 for an edge subset
/// in which all chosen vertices have degree exactly 3.
pub fn has_3_regular_subgraph(g: &Graph, budget: &OracleBudget) -> Result<Option<Vec<(Vertex, Vertex)>>> {
    budget.admit(g)?;
    let n = g.n();
    let mut clock = Clock::new(budget);
    let adj: Vec<u64> = (0..n).map(|v| g.neighbors(v).iter().fold(0, |m, &w| m | bit(w))).collect();
    for mask in 1u64..(1u64 << n) {
        let size = mask.count_ones();
        if size < 4 || size % 2 == 1 {
            continue;
        }
        if (0..n).any(|v| mask & bit(v) != 0 && (adj[v] & mask).count_ones() < 3) {
            continue;
        }
        let verts: Vec<Vertex> = (0..n).filter(|&v| mask & bit(v) != 0).collect();
        let edges: Vec<(Vertex, Vertex)> =
            g.edges().filter(|&(u, v)| mask & bit(u) != 0 && mask & bit(v) != 0).collect();
        let mut remaining = vec![0usize; n];
        for &(u, v) in &edges {
            remaining[u] += 1;
            remaining[v] += 1;
        }
        let mut deg = vec![0usize; n];
        let mut chosen = Vec::new();
        if cubic_search(&edges, 0, &verts, &mut deg, &mut remaining, &mut chosen, &mut clock)? {
            return Ok(Some(chosen));
        }
    }
    Ok(None)
}

fn cubic_search(
    edges: &[(Vertex, Vertex)],
    idx: usize,
    verts: &[Vertex],
    deg: &mut [usize],
    remaining: &mut [usize],
    chosen: &mut Vec<(Vertex, Vertex)>,
    clock: &mut Clock,
) -> Result<bool> {
    clock.tick()?;
    if verts.iter().any(|&v| deg[v] + remaining[v] < 3) {
        return Ok(false);
    }
    if idx == edges.len() {
        return Ok(verts.iter().all(|&v| deg[v] == 3));
    }
    let (u, v) = edges[idx];
    remaining[u] -= 1;
    remaining[v] -= 1;
    if deg[u] < 3 && deg[v] < 3 {
        deg[u] += 1;
        deg[v] += 1;
        chosen.push((u, v));
        if cubic_search(edges, idx + 1, verts, deg, remaining, chosen, clock)? {
            return Ok(true);
        }
        chosen.pop();
        deg[u] -= 1;
        deg[v] -= 1;
    }
    let found = cubic_search(edges, idx + 1, verts, deg, remaining, chosen, clock)?;
    remaining[u] += 1;
    remaining[v] += 1;
    Ok(found)
}
