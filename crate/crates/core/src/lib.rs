//! Rainbow triangle problems for colored directed graphs.
//!
//! A colored digraph is a sequence of directed graphs `G_1, ..., G_c` on a
//! common vertex set. The crate detects rainbow directed and transitive
//! triangles, generates the extremal constructions, computes exact extremal
//! values for small graphs, and re-derives the local edge-count bounds used
//! in the matching-decomposition arguments.

pub mod cli;
pub mod constructions;
pub mod error;
pub mod graph;
pub mod localbounds;
pub mod optcheck;
pub mod patterns;
pub mod search;

pub use error::{Error, Result};
pub use graph::{ColoredDigraph, EdgeRef, GraphBuilder, VertexSetPair};
pub use patterns::{find_rainbow, RainbowWitness, TrianglePattern};
