//! Machine-readable run records.
//!
//! A report is a single JSON document. Field order is fixed by the struct
//! layout and maps are ordered, so two runs with the same inputs and seed
//! produce identical bytes apart from `wall_time_ms`.

use std::collections::BTreeMap;
use std::path::Path;

use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::extraction::PipelineTrace;
use crate::graph::{Graph, Vertex};
use crate::rational::{fmt_rational, Rational};

/// An output graph inlined into a report, in the ids of the command's input.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EmbeddedGraph {
    pub vertices: usize,
    pub edge_count: usize,
    pub edges: Vec<(Vertex, Vertex)>,
}

impl EmbeddedGraph {
    pub fn from_graph(g: &Graph) -> Self {
        let edges = g.origin_edges();
        EmbeddedGraph { vertices: g.n(), edge_count: edges.len(), edges }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunReport {
    /// Arguments after the program name.
    pub command: Vec<String>,
    /// `sha256:<hex>` of the input file bytes.
    pub input_digest: Option<String>,
    pub seed: Option<u64>,
    pub params: BTreeMap<String, String>,
    pub outcome: String,
    /// Exact fraction such as `"4/3"`.
    pub achieved: Option<String>,
    pub guarantee_met: Option<bool>,
    pub notes: Vec<String>,
    pub result: Option<serde_json::Value>,
    pub trace: Option<PipelineTrace>,
    pub output: Option<EmbeddedGraph>,
    pub artifacts: Vec<String>,
    pub wall_time_ms: u64,
}

impl RunReport {
    pub fn new(command: Vec<String>, outcome: impl Into<String>) -> Self {
        RunReport {
            command,
            input_digest: None,
            seed: None,
            params: BTreeMap::new(),
            outcome: outcome.into(),
            achieved: None,
            guarantee_met: None,
            notes: Vec::new(),
            result: None,
            trace: None,
            output: None,
            artifacts: Vec::new(),
            wall_time_ms: 0,
        }
    }

    pub fn param(&mut self, key: &str, value: impl ToString) -> &mut Self {
        self.params.insert(key.to_string(), value.to_string());
        self
    }

    pub fn achieved(&mut self, r: &Rational) -> &mut Self {
        self.achieved = Some(fmt_rational(r));
        self
    }

    pub fn to_json(&self) -> Result<String> {
        let mut s = serde_json::to_string_pretty(self).map_err(|e| Error::Internal(e.to_string()))?;
        s.push('\n');
        Ok(s)
    }
}

pub fn digest(bytes: &[u8]) -> String {
    format!("sha256:{}", hex::encode(Sha256::digest(bytes)))
}

pub fn emit_report(r: &RunReport, path: &Path) -> Result<()> {
    std::fs::write(path, r.to_json()?).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}
