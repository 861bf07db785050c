use std::collections::{BTreeMap, BTreeSet};

use crate::error::{GraphError, Result};
use crate::graph::{BundleSpec, ConcreteEdge, Graph, Multiplicity, Vertex, VertexSet};

use super::fresh_name;

/// A finite set `G = G⁰ ∪ G¹` of vertices and concrete edges.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Selection {
    pub vertices: VertexSet,
    pub edges: BTreeSet<ConcreteEdge>,
}

impl Selection {
    /// Stage `i ≥ 1` of the standard exhausting chain: every vertex, every
    /// edge of every finite bundle, and indices `0..i` of each omega bundle.
    pub fn stage(graph: &Graph, i: u64) -> Selection {
        let edges = graph
            .bundles()
            .iter()
            .enumerate()
            .flat_map(|(b, bundle)| {
                let count = bundle.mult.finite().unwrap_or(i);
                (0..count).map(move |k| ConcreteEdge::new(b, k))
            })
            .collect();
        Selection {
            vertices: graph.all_vertices(),
            edges,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ApproxVertex {
    /// An edge of `G¹` acting as a vertex.
    Edge(ConcreteEdge),
    /// A vertex of `G⁰` that is a sink of the original graph or emits an
    /// edge outside `G¹`; it is always a sink of the approximation.
    Vertex(Vertex),
}

/// The finite graph `E_G` together with what each of its vertices stands for.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ApproxGraph {
    pub graph: Graph,
    pub origin: BTreeMap<String, ApproxVertex>,
}

/// Builds `E_G`.
///
/// Vertices are the edges of `G¹` plus the vertices of `G⁰` that are sinks
/// or emit some edge outside `G¹` (an omega bundle always does). There is
/// one edge `(e, x)` for every `e ∈ G¹` and vertex `x` of `E_G` with
/// `r(e) = s(x)`, where a vertex-vertex `x` counts as its own source. All
/// multiplicities are one.
pub fn approx_graph(graph: &Graph, selection: &Selection) -> Result<ApproxGraph> {
    for &e in &selection.edges {
        graph.check_edge(e)?;
        if !selection.vertices.contains(graph.range_of(e)) {
            return Err(GraphError::RangeOutsideSelection(graph.edge_label(e)));
        }
    }
    for v in selection.vertices.iter() {
        if v >= graph.vertex_count() {
            return Err(GraphError::UnknownVertex(format!("#{v}")));
        }
    }

    let emits_outside = |v: Vertex| {
        graph.out_bundles(v).iter().any(|&b| match graph.bundle(b).mult {
            Multiplicity::Omega => true,
            Multiplicity::Finite(m) => (0..m).any(|k| !selection.edges.contains(&ConcreteEdge::new(b, k))),
        })
    };

    let mut taken = BTreeSet::new();
    // (name, what it stands for, its source vertex in the original graph)
    let mut nodes: Vec<(String, ApproxVertex, Vertex)> = Vec::new();
    for v in selection.vertices.iter() {
        if graph.is_sink(v) || emits_outside(v) {
            let name = fresh_name(&mut taken, graph.name(v).to_string());
            nodes.push((name, ApproxVertex::Vertex(v), v));
        }
    }
    for &e in &selection.edges {
        let name = fresh_name(&mut taken, graph.edge_label(e));
        nodes.push((name, ApproxVertex::Edge(e), graph.source_of(e)));
    }

    let mut taken_ids = BTreeSet::new();
    let mut bundles = Vec::new();
    for (from, kind, _) in &nodes {
        let ApproxVertex::Edge(e) = *kind else { continue };
        let range = graph.range_of(e);
        for (to, _, source) in &nodes {
            if *source == range {
                bundles.push(BundleSpec {
                    id: fresh_name(&mut taken_ids, format!("({from},{to})")),
                    source: from.clone(),
                    target: to.clone(),
                    mult: Multiplicity::ONE,
                });
            }
        }
    }

    let origin = nodes.iter().map(|(n, k, _)| (n.clone(), *k)).collect();
    let vertices = nodes.into_iter().map(|(n, _, _)| n);
    Ok(ApproxGraph {
        graph: Graph::new(vertices, bundles).expect("approximating graph is valid"),
        origin,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TowerStage {
    pub stage: u64,
    pub selection: Selection,
    pub approx: ApproxGraph,
}

/// The approximating graphs of stages `1..=steps` of [`Selection::stage`].
pub fn approx_tower(graph: &Graph, steps: u64) -> Result<Vec<TowerStage>> {
    if steps == 0 {
        return Err(GraphError::InvalidArgument("tower needs at least one stage".into()));
    }
    (1..=steps)
        .map(|stage| {
            let selection = Selection::stage(graph, stage);
            let approx = approx_graph(graph, &selection)?;
            Ok(TowerStage {
                stage,
                selection,
                approx,
            })
        })
        .collect()
}
