//! The JSON graph document format read by the command-line tool.
//!
//! ```json
//! {
//!   "name": "toeplitz",
//!   "vertices": ["v", "w"],
//!   "edges": [
//!     {"id": "e", "src": "v", "dst": "v", "mult": 1},
//!     {"id": "f", "src": "v", "dst": "w", "mult": "omega"}
//!   ]
//! }
//! ```
//!
//! `mult` is a positive integer or the string `"omega"`. Unknown keys are
//! rejected. The full grammar is in `docs/graph-format.md`.

use std::fmt;

use serde::de::{self, Visitor};
use serde::{Deserialize, Deserializer, Serialize};
use thiserror::Error;

use crate::error::GraphError;
use crate::graph::{BundleSpec, Graph, Multiplicity};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphDocument {
    #[serde(default)]
    pub name: String,
    pub vertices: Vec<String>,
    #[serde(default)]
    pub edges: Vec<EdgeEntry>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EdgeEntry {
    pub id: String,
    pub src: String,
    pub dst: String,
    #[serde(deserialize_with = "deserialize_mult")]
    pub mult: Multiplicity,
}

#[derive(Debug, Error)]
pub enum DocumentError {
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error(transparent)]
    Graph(#[from] GraphError),
}

impl GraphDocument {
    pub fn parse(text: &str) -> Result<GraphDocument, DocumentError> {
        serde_json::from_str(text).map_err(|e| DocumentError::Syntax {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        })
    }

    pub fn to_graph(&self) -> Result<Graph, GraphError> {
        Graph::new(
            self.vertices.iter().cloned(),
            self.edges
                .iter()
                .map(|e| BundleSpec::new(e.id.clone(), e.src.clone(), e.dst.clone(), e.mult)),
        )
    }

    pub fn from_graph(name: impl Into<String>, graph: &Graph) -> GraphDocument {
        let (vertices, bundles) = graph.to_specs();
        GraphDocument {
            name: name.into(),
            vertices,
            edges: bundles
                .into_iter()
                .map(|b| EdgeEntry {
                    id: b.id,
                    src: b.source,
                    dst: b.target,
                    mult: b.mult,
                })
                .collect(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("documents always serialize")
    }
}

/// Parses and validates a graph document.
pub fn parse_graph(text: &str) -> Result<Graph, DocumentError> {
    Ok(GraphDocument::parse(text)?.to_graph()?)
}

fn deserialize_mult<'de, D: Deserializer<'de>>(d: D) -> Result<Multiplicity, D::Error> {
    struct MultVisitor;

    impl Visitor<'_> for MultVisitor {
        type Value = Multiplicity;

        fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
            f.write_str("a non-negative integer or \"omega\"")
        }

        fn visit_u64<E: de::Error>(self, n: u64) -> Result<Multiplicity, E> {
            Ok(Multiplicity::Finite(n))
        }

        fn visit_i64<E: de::Error>(self, n: i64) -> Result<Multiplicity, E> {
            u64::try_from(n)
                .map(Multiplicity::Finite)
                .map_err(|_| E::invalid_value(de::Unexpected::Signed(n), &self))
        }

        fn visit_str<E: de::Error>(self, s: &str) -> Result<Multiplicity, E> {
            match s {
                "omega" => Ok(Multiplicity::Omega),
                _ => Err(E::invalid_value(de::Unexpected::Str(s), &self)),
            }
        }
    }

    d.deserialize_any(MultVisitor)
}
