//! Graph constructions: restriction, quotients by admissible pairs, finite
//! approximating graphs, ideal graphs, the `H₀` set and a truncated
//! desingularization.

mod approx;
mod desing;
mod ideal;

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

pub use approx::{approx_graph, approx_tower, ApproxGraph, ApproxVertex, Selection, TowerStage};
pub use desing::{desingularize, DesingVertex, Desingularized};
pub use ideal::{compute_h0, ideal_graph, H0Decomposition, IdealGraph, IdealGraphData, InfiniteWitness};

use crate::graph::{BundleSpec, Graph};
use crate::lattice::{breaking_vertices, AdmissiblePair, HsSet};

/// `E \ H`: the vertices outside `H` and the bundles whose range lies
/// outside `H`. Since `H` is hereditary, no kept bundle starts in `H`.
pub fn restrict(graph: &Graph, h: &HsSet) -> Graph {
    let vertices = graph
        .vertices()
        .filter(|&v| !h.contains(v))
        .map(|v| graph.name(v).to_string());
    let bundles = graph
        .bundles()
        .iter()
        .filter(|b| !h.contains(b.target))
        .map(|b| BundleSpec {
            id: b.id.clone(),
            source: graph.name(b.source).to_string(),
            target: graph.name(b.target).to_string(),
            mult: b.mult,
        });
    Graph::new(vertices, bundles).expect("restriction of a valid graph is valid")
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum VertexOrigin {
    Inherited,
    /// The sink `v′` added for a breaking vertex `v ∉ B`.
    BreakingCopy { of: String },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum BundleOrigin {
    Inherited,
    /// The copy `e′` of a bundle `e` that ends at a breaking vertex.
    Copy { of: String },
}

/// `E/(H, B)` with the provenance of every vertex and bundle, keyed by the
/// identifiers used in `graph`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientGraph {
    pub graph: Graph,
    pub vertex_origin: BTreeMap<String, VertexOrigin>,
    pub bundle_origin: BTreeMap<String, BundleOrigin>,
}

/// The quotient graph of an admissible pair `(H, B)`.
///
/// Starts from `E \ H`; each breaking vertex `v ∈ B_H \ B` gets a new sink
/// `v′`, and every kept bundle ending at `v` gets a parallel copy of the
/// same multiplicity ending at `v′`.
pub fn quotient(graph: &Graph, pair: &AdmissiblePair) -> QuotientGraph {
    let (mut vertices, mut bundles) = restrict(graph, &pair.h).to_specs();
    let mut vertex_origin: BTreeMap<String, VertexOrigin> =
        vertices.iter().map(|v| (v.clone(), VertexOrigin::Inherited)).collect();
    let mut bundle_origin: BTreeMap<String, BundleOrigin> =
        bundles.iter().map(|b| (b.id.clone(), BundleOrigin::Inherited)).collect();

    let mut taken_vertices: BTreeSet<String> = graph.names().iter().cloned().collect();
    let mut taken_bundles: BTreeSet<String> = graph.bundles().iter().map(|b| b.id.clone()).collect();

    let missing = breaking_vertices(graph, &pair.h).difference(&pair.b);
    let kept = bundles.clone();
    for v in missing.iter() {
        let name = graph.name(v);
        let copy = fresh_name(&mut taken_vertices, format!("{name}'"));
        vertices.push(copy.clone());
        vertex_origin.insert(copy.clone(), VertexOrigin::BreakingCopy { of: name.to_string() });
        for b in kept.iter().filter(|b| b.target == name) {
            let id = fresh_name(&mut taken_bundles, format!("{}'", b.id));
            bundle_origin.insert(id.clone(), BundleOrigin::Copy { of: b.id.clone() });
            bundles.push(BundleSpec {
                id,
                source: b.source.clone(),
                target: copy.clone(),
                mult: b.mult,
            });
        }
    }
    QuotientGraph {
        graph: Graph::new(vertices, bundles).expect("quotient construction yields a valid graph"),
        vertex_origin,
        bundle_origin,
    }
}

/// Returns `base`, or `base` followed by enough primes to avoid `taken`,
/// and records the result as taken.
pub(crate) fn fresh_name(taken: &mut BTreeSet<String>, base: String) -> String {
    let mut name = base;
    while taken.contains(&name) {
        name.push('\'');
    }
    taken.insert(name.clone());
    name
}
