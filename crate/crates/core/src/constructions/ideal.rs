use std::collections::{BTreeMap, BTreeSet};

use crate::cycles::find_cycle_within;
use crate::error::{GraphError, Result};
use crate::graph::{BundleSpec, ConcreteEdge, Cycle, Graph, Multiplicity, Vertex, VertexSet};
use crate::lattice::{close, HsSet};

use super::fresh_name;

/// Why the set of paths entering `H` is infinite.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum InfiniteWitness {
    /// A cycle outside `H` whose vertices reach `H`.
    Cycle(Cycle),
    /// An omega bundle from outside `H` whose target is in `H` or reaches it.
    OmegaBundle { bundle: usize },
}

impl InfiniteWitness {
    /// Re-checks the witness against the graph.
    pub fn verify(&self, graph: &Graph, h: &HsSet) -> bool {
        match self {
            InfiniteWitness::Cycle(c) => {
                let vs = c.vertices(graph);
                vs.iter().all(|&v| !h.contains(v)) && graph.reaches(vs[0], h.set())
            }
            InfiniteWitness::OmegaBundle { bundle } => {
                let b = graph.bundle(*bundle);
                b.mult.is_omega() && !h.contains(b.source) && graph.reaches(b.target, h.set())
            }
        }
    }

    pub fn describe(&self, graph: &Graph) -> String {
        match self {
            InfiniteWitness::Cycle(c) => format!("cycle {} outside H reaches H", c.label(graph)),
            InfiniteWitness::OmegaBundle { bundle } => {
                format!("omega bundle `{}` leads into H", graph.bundle(*bundle).id)
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdealGraphData {
    pub graph: Graph,
    /// Vertices of the form `α ∈ F_E(H)`, with the path they stand for.
    pub path_vertices: BTreeMap<String, Vec<ConcreteEdge>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IdealGraph {
    Finite(IdealGraphData),
    Infinite(InfiniteWitness),
}

/// Builds `_HE`: vertices `H ∪ F_E(H)` and edges `s⁻¹(H)` plus one edge
/// `ᾱ: α → r(α)` for each path `α` that enters `H` exactly at its last edge.
///
/// `F_E(H)` is finite unless some cycle outside `H` reaches `H`, or some
/// omega bundle outside `H` leads into `H`; then a witness is returned
/// instead of a graph.
pub fn ideal_graph(graph: &Graph, h: &HsSet) -> Result<IdealGraph> {
    if h.is_empty() {
        return Err(GraphError::EmptyHereditarySet);
    }
    let feeds = graph.coreachable_to(h.set()).difference(h.set());

    if let Some(bundle) = graph
        .bundles()
        .iter()
        .position(|b| {
            b.mult.is_omega() && feeds.contains(b.source) && (h.contains(b.target) || feeds.contains(b.target))
        })
    {
        return Ok(IdealGraph::Infinite(InfiniteWitness::OmegaBundle { bundle }));
    }
    if let Some(cycle) = find_cycle_within(graph, |v| feeds.contains(v)) {
        return Ok(IdealGraph::Infinite(InfiniteWitness::Cycle(cycle)));
    }

    let mut paths = Vec::new();
    for start in feeds.iter() {
        collect_entry_paths(graph, h.set(), &feeds, start, &mut Vec::new(), &mut paths);
    }

    let mut taken: BTreeSet<String> = h.names(graph).into_iter().collect();
    let mut taken_ids: BTreeSet<String> = BTreeSet::new();
    let mut vertices: Vec<String> = h.names(graph);
    let mut bundles: Vec<BundleSpec> = graph
        .bundles()
        .iter()
        .filter(|b| h.contains(b.source))
        .map(|b| {
            taken_ids.insert(b.id.clone());
            BundleSpec {
                id: b.id.clone(),
                source: graph.name(b.source).to_string(),
                target: graph.name(b.target).to_string(),
                mult: b.mult,
            }
        })
        .collect();
    let mut path_vertices = BTreeMap::new();
    for path in paths {
        let label = path.iter().map(|&e| graph.edge_label(e)).collect::<Vec<_>>().join(".");
        let name = fresh_name(&mut taken, format!("[{label}]"));
        let range = graph.range_of(*path.last().expect("entry paths are nonempty"));
        bundles.push(BundleSpec {
            id: fresh_name(&mut taken_ids, format!("bar[{label}]")),
            source: name.clone(),
            target: graph.name(range).to_string(),
            mult: Multiplicity::ONE,
        });
        vertices.push(name.clone());
        path_vertices.insert(name, path);
    }
    Ok(IdealGraph::Finite(IdealGraphData {
        graph: Graph::new(vertices, bundles).expect("ideal graph is valid"),
        path_vertices,
    }))
}

/// Depth-first enumeration of paths from `at` that stay outside `h` until
/// their final edge lands in `h`, stepping only through `feeds` (the
/// vertices outside `h` that reach it). Terminates because the caller has
/// ruled out cycles and omega bundles among `feeds`.
fn collect_entry_paths(
    graph: &Graph,
    h: &VertexSet,
    feeds: &VertexSet,
    at: Vertex,
    prefix: &mut Vec<ConcreteEdge>,
    out: &mut Vec<Vec<ConcreteEdge>>,
) {
    for &b in graph.out_bundles(at) {
        let bundle = graph.bundle(b);
        if !h.contains(bundle.target) && !feeds.contains(bundle.target) {
            continue;
        }
        let count = bundle.mult.finite().expect("no omega bundle feeds H");
        for k in 0..count {
            prefix.push(ConcreteEdge::new(b, k));
            if h.contains(bundle.target) {
                out.push(prefix.clone());
            } else {
                collect_entry_paths(graph, h, feeds, bundle.target, prefix, out);
            }
            prefix.pop();
        }
    }
}

/// `H₀` and its hereditary saturated closure.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct H0Decomposition {
    pub h0: VertexSet,
    pub h: HsSet,
}

/// `H₀` collects the vertices emitting two distinct edges whose ranges both
/// lead back to the vertex. Two indices of one bundle count as distinct
/// edges.
pub fn compute_h0(graph: &Graph) -> H0Decomposition {
    let h0: VertexSet = graph
        .vertices()
        .filter(|&v| {
            let home = VertexSet::singleton(v);
            let returning: Multiplicity = graph
                .out_bundles(v)
                .iter()
                .map(|&b| graph.bundle(b))
                .filter(|b| graph.reaches(b.target, &home))
                .map(|b| b.mult)
                .sum();
            returning.at_least(2)
        })
        .collect();
    let h = close(graph, &h0);
    H0Decomposition { h0, h }
}
