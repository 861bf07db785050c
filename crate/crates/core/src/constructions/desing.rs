use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::graph::{BundleSpec, ConcreteEdge, Graph, Multiplicity};

use super::fresh_name;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum DesingVertex {
    Original,
    /// Step `step` of the tail grown at a sink. The last step of a tail is
    /// a sink only because the tail was cut off.
    SinkTail { sink: String, step: u64, truncated: bool },
    /// Step `step` of the tail replacing an infinite emitter.
    EmitterTail { emitter: String, step: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Desingularized {
    pub graph: Graph,
    pub depth: u64,
    pub origin: BTreeMap<String, DesingVertex>,
}

/// Depth-`depth` truncation of the desingularization.
///
/// Every sink grows a tail of `depth` new vertices. Every infinite emitter
/// `v` is replaced by a tail `v = v₀ → v₁ → …` and its outgoing edges,
/// enumerated as all edges of its finite bundles (by bundle id) followed by
/// indices `0..=depth` of its omega bundles (round-robin over bundles), are
/// re-sourced so that `vⱼ` emits the `j`-th edge. Finite emitters keep their
/// bundles. The result is row-finite.
pub fn desingularize(graph: &Graph, depth: u64) -> Desingularized {
    let mut taken: BTreeSet<String> = graph.names().iter().cloned().collect();
    let mut taken_ids: BTreeSet<String> = graph.bundles().iter().map(|b| b.id.clone()).collect();
    let mut vertices: Vec<String> = graph.names().to_vec();
    let mut origin: BTreeMap<String, DesingVertex> =
        vertices.iter().map(|v| (v.clone(), DesingVertex::Original)).collect();
    let mut bundles: Vec<BundleSpec> = Vec::new();

    for v in graph.vertices() {
        let name = graph.name(v).to_string();
        if graph.is_sink(v) {
            let mut prev = name.clone();
            for step in 1..=depth {
                let t = fresh_name(&mut taken, format!("{name}~{step}"));
                bundles.push(BundleSpec {
                    id: fresh_name(&mut taken_ids, format!("tail({prev},{t})")),
                    source: prev,
                    target: t.clone(),
                    mult: Multiplicity::ONE,
                });
                vertices.push(t.clone());
                origin.insert(
                    t.clone(),
                    DesingVertex::SinkTail {
                        sink: name.clone(),
                        step,
                        truncated: step == depth,
                    },
                );
                prev = t;
            }
        } else if graph.is_infinite_emitter(v) {
            let (finite, omega): (Vec<usize>, Vec<usize>) = graph
                .out_bundles(v)
                .iter()
                .partition(|&&b| !graph.bundle(b).mult.is_omega());
            let mut order: Vec<ConcreteEdge> = finite
                .iter()
                .flat_map(|&b| {
                    let m = graph.bundle(b).mult.finite().unwrap_or(0);
                    (0..m).map(move |k| ConcreteEdge::new(b, k))
                })
                .collect();
            for k in 0..=depth {
                order.extend(omega.iter().map(|&b| ConcreteEdge::new(b, k)));
            }

            let mut carrier = name.clone();
            for (step, &e) in order.iter().enumerate() {
                if step > 0 {
                    let t = fresh_name(&mut taken, format!("{name}~{step}"));
                    bundles.push(BundleSpec {
                        id: fresh_name(&mut taken_ids, format!("tail({carrier},{t})")),
                        source: carrier,
                        target: t.clone(),
                        mult: Multiplicity::ONE,
                    });
                    vertices.push(t.clone());
                    origin.insert(
                        t.clone(),
                        DesingVertex::EmitterTail {
                            emitter: name.clone(),
                            step,
                        },
                    );
                    carrier = t;
                }
                bundles.push(BundleSpec {
                    id: fresh_name(&mut taken_ids, graph.edge_label(e)),
                    source: carrier.clone(),
                    target: graph.name(graph.range_of(e)).to_string(),
                    mult: Multiplicity::ONE,
                });
            }
        } else {
            bundles.extend(graph.out_bundles(v).iter().map(|&b| {
                let b = graph.bundle(b);
                BundleSpec {
                    id: b.id.clone(),
                    source: name.clone(),
                    target: graph.name(b.target).to_string(),
                    mult: b.mult,
                }
            }));
        }
    }

    Desingularized {
        graph: Graph::new(vertices, bundles).expect("desingularization is valid"),
        depth,
        origin,
    }
}
