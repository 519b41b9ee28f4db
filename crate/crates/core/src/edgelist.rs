//! Plain-text edge lists.
//!
//! ```text
//! # optional comments
//! n m
//! A: 0 2 4        (bipartite files only)
//! u v             (m lines, 0 <= u < v < n)
//! ```
//!
//! Block files hold one `blockId: v1 v2 ...` line per block.

use std::fmt::Write as _;
use std::path::Path;

use crate::error::{Error, Result};
use crate::graph::{BipartiteGraph, Graph, Vertex};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParsedGraph {
    Plain(Graph),
    Bipartite(BipartiteGraph),
}

impl ParsedGraph {
    pub fn graph(&self) -> &Graph {
        match self {
            ParsedGraph::Plain(g) => g,
            ParsedGraph::Bipartite(bg) => bg.graph(),
        }
    }

    pub fn bipartite(&self) -> Option<&BipartiteGraph> {
        match self {
            ParsedGraph::Bipartite(bg) => Some(bg),
            ParsedGraph::Plain(_) => None,
        }
    }
}

fn parse_err<T>(line: usize, message: impl Into<String>) -> Result<T> {
    Err(Error::Parse { line, message: message.into() })
}

fn parse_ids(line: usize, fields: &str) -> Result<Vec<usize>> {
    fields
        .split_whitespace()
        .map(|tok| {
            tok.parse::<usize>()
                .map_err(|_| Error::Parse { line, message: format!("expected a vertex id, found {tok:?}") })
        })
        .collect()
}

pub fn parse_edgelist(text: &str) -> Result<ParsedGraph> {
    let mut header: Option<(usize, usize)> = None;
    let mut class_a: Option<(usize, Vec<Vertex>)> = None;
    let mut edges = Vec::new();
    let mut seen = std::collections::HashSet::new();
    let mut last_line = 0;
    for (idx, raw) in text.lines().enumerate() {
        let lineno = idx + 1;
        last_line = lineno;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let Some((n, m)) = header else {
            let ids = parse_ids(lineno, line)?;
            if ids.len() != 2 {
                return parse_err(lineno, "header must be \"n m\"");
            }
            header = Some((ids[0], ids[1]));
            continue;
        };
        if let Some(rest) = line.strip_prefix("A:") {
            if class_a.is_some() {
                return parse_err(lineno, "second \"A:\" line");
            }
            let ids = parse_ids(lineno, rest)?;
            if let Some(&v) = ids.iter().find(|&&v| v >= n) {
                return parse_err(lineno, format!("class A vertex {v} out of range for n = {n}"));
            }
            class_a = Some((lineno, ids));
            continue;
        }
        let ids = parse_ids(lineno, line)?;
        if ids.len() != 2 {
            return parse_err(lineno, "edge lines must be \"u v\"");
        }
        let (u, v) = (ids[0], ids[1]);
        if u == v {
            return parse_err(lineno, format!("self-loop at vertex {u}"));
        }
        if u >= n || v >= n {
            return parse_err(lineno, format!("edge ({u}, {v}) out of range for n = {n}"));
        }
        if edges.len() == m {
            return parse_err(lineno, format!("more than the declared {m} edges"));
        }
        let key = (u.min(v), u.max(v));
        if !seen.insert(key) {
            return parse_err(lineno, format!("duplicate edge ({}, {})", key.0, key.1));
        }
        edges.push(key);
    }
    let Some((n, m)) = header else {
        return parse_err(last_line.max(1), "missing \"n m\" header");
    };
    if edges.len() != m {
        return parse_err(last_line, format!("declared {m} edges, found {}", edges.len()));
    }
    let g = Graph::from_edges(n, &edges)?;
    match class_a {
        None => Ok(ParsedGraph::Plain(g)),
        Some((lineno, a)) => BipartiteGraph::new(g, &a)
            .map(ParsedGraph::Bipartite)
            .map_err(|e| Error::Parse { line: lineno, message: format!("inconsistent bipartition: {e}") }),
    }
}

pub fn read_edgelist(path: &Path) -> Result<ParsedGraph> {
    parse_edgelist(&std::fs::read_to_string(path)?)
}

/// Canonical text form; `class_a` adds the `A:` line.
pub fn format_edgelist(g: &Graph, class_a: Option<&[Vertex]>, comments: &[&str]) -> String {
    let mut out = String::new();
    for c in comments {
        let _ = writeln!(out, "# {c}");
    }
    let _ = writeln!(out, "{} {}", g.n(), g.m());
    if let Some(a) = class_a {
        let ids: Vec<String> = a.iter().map(|v| v.to_string()).collect();
        let _ = writeln!(out, "A: {}", ids.join(" "));
    }
    for (u, v) in g.edges() {
        let _ = writeln!(out, "{u} {v}");
    }
    out
}

pub fn format_bipartite(bg: &BipartiteGraph, comments: &[&str]) -> String {
    format_edgelist(bg.graph(), Some(&bg.class_a()), comments)
}

/// Blocks in file order as `(block id, members)`.
pub fn parse_blocks(text: &str) -> Result<Vec<(usize, Vec<Vertex>)>> {
    let mut blocks: Vec<(usize, Vec<Vertex>)> = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let lineno = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let Some((id, members)) = line.split_once(':') else {
            return parse_err(lineno, "block lines must be \"id: v1 v2 ...\"");
        };
        let id: usize =
            id.trim().parse().map_err(|_| Error::Parse { line: lineno, message: format!("bad block id {id:?}") })?;
        if blocks.iter().any(|(b, _)| *b == id) {
            return parse_err(lineno, format!("block {id} listed twice"));
        }
        let members = parse_ids(lineno, members)?;
        if members.is_empty() {
            return parse_err(lineno, format!("block {id} is empty"));
        }
        blocks.push((id, members));
    }
    Ok(blocks)
}

pub fn format_blocks(blocks: &[Vec<Vertex>], first_id: usize) -> String {
    let mut out = String::new();
    for (i, b) in blocks.iter().enumerate() {
        let ids: Vec<String> = b.iter().map(|v| v.to_string()).collect();
        let _ = writeln!(out, "{}: {}", first_id + i, ids.join(" "));
    }
    out
}
