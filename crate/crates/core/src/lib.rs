//! Certified extraction of dense C4-free subgraphs.
//!
//! The crate bundles exact graph primitives, projective-plane incidence
//! graphs, randomized sparsify-and-alter extractors with an iterative
//! pipeline, lower-bound constructions with their verifiers, and
//! brute-force oracles used to cross-check all of the above.

pub mod cli;
pub mod constructions;
pub mod edgelist;
pub mod error;
pub mod extraction;
pub mod graph;
pub mod oracle;
pub mod planes;
pub mod rational;
pub mod report;

pub use error::{Error, Result};
pub use graph::{BipartiteGraph, Graph, Vertex};
pub use rational::Rational;
