//! Graph-level decision procedures for Leavitt path algebras of graphs with
//! finitely many vertices, including graphs with infinite emitters.
//!
//! Graphs are finite presentations: each edge bundle carries a multiplicity
//! that is a positive integer or omega. On top of the [`graph`] model the
//! crate decides Conditions (L) and (K) ([`cycles`]), enumerates the lattice
//! of hereditary saturated sets ([`lattice`]), builds the quotient,
//! approximating and ideal graphs ([`constructions`]), and classifies the
//! stable rank of the associated algebra as 1, 2 or infinity ([`classify`]).
//!
//! ```
//! use leavitt_rank::classify::{stable_rank, RankMode, RankValue};
//! use leavitt_rank::graph::Graph;
//! use leavitt_rank::lattice::DEFAULT_LATTICE_LIMIT;
//!
//! let rose = Graph::builder()
//!     .vertex("v")
//!     .edge("a", "v", "v", 1)
//!     .edge("b", "v", "v", 1)
//!     .build()
//!     .unwrap();
//! let sr = stable_rank(&rose, RankMode::Unital, DEFAULT_LATTICE_LIMIT).unwrap();
//! assert_eq!(sr.value, RankValue::Infinite);
//! ```

pub mod classify;
pub mod cli;
pub mod constructions;
pub mod corpus;
pub mod cycles;
pub mod document;
pub mod error;
pub mod graph;
pub mod lattice;
pub mod lp;
pub mod oracle;

pub use error::{GraphError, Result};
pub use graph::{ConcreteEdge, Cycle, Graph, Multiplicity, Path, Vertex, VertexSet};
