//! Cycles, return paths and the decision procedures for Conditions (L) and (K).

use serde::Serialize;

use crate::error::{GraphError, Result};
use crate::graph::{ConcreteEdge, Cycle, Graph, Multiplicity, Vertex};

/// Enumerates all simple closed paths up to rotation.
///
/// Each cycle starts at its least vertex and uses edge index 0 of every
/// bundle it traverses; parallel bundles yield distinct cycles. Cycles are
/// listed by base vertex, then in depth-first order over bundle ids.
pub fn find_cycles(graph: &Graph) -> Vec<Cycle> {
    let mut cycles = Vec::new();
    let mut on_path = vec![false; graph.vertex_count()];
    let mut stack = Vec::new();
    for start in graph.vertices() {
        on_path[start] = true;
        extend_cycles(graph, start, start, &mut on_path, &mut stack, &mut cycles);
        on_path[start] = false;
    }
    cycles
}

fn extend_cycles(
    graph: &Graph,
    start: Vertex,
    at: Vertex,
    on_path: &mut [bool],
    stack: &mut Vec<ConcreteEdge>,
    out: &mut Vec<Cycle>,
) {
    for &b in graph.out_bundles(at) {
        let next = graph.bundle(b).target;
        stack.push(ConcreteEdge::new(b, 0));
        if next == start {
            out.push(Cycle::new(graph, stack.clone()).expect("dfs builds simple cycles"));
        } else if next > start && !on_path[next] {
            on_path[next] = true;
            extend_cycles(graph, start, next, on_path, stack, out);
            on_path[next] = false;
        }
        stack.pop();
    }
}

/// Whether the graph has no closed path at all.
pub fn is_acyclic(graph: &Graph) -> bool {
    find_cycle_within(graph, |_| true).is_none()
}

/// Finds one simple closed path whose vertices all satisfy `allowed`,
/// rotated so that its least vertex comes first.
pub fn find_cycle_within(graph: &Graph, allowed: impl Fn(Vertex) -> bool) -> Option<Cycle> {
    #[derive(Clone, Copy, PartialEq)]
    enum Mark {
        New,
        Active,
        Done,
    }
    let n = graph.vertex_count();
    let mut mark = vec![Mark::New; n];
    // parent edge of each active vertex on the dfs stack
    let mut via: Vec<Option<usize>> = vec![None; n];

    for root in graph.vertices() {
        if mark[root] != Mark::New || !allowed(root) {
            continue;
        }
        let mut stack: Vec<(Vertex, usize)> = vec![(root, 0)];
        mark[root] = Mark::Active;
        while let Some(&mut (v, ref mut pos)) = stack.last_mut() {
            let out = graph.out_bundles(v);
            if *pos == out.len() {
                mark[v] = Mark::Done;
                stack.pop();
                continue;
            }
            let b = out[*pos];
            *pos += 1;
            let w = graph.bundle(b).target;
            if !allowed(w) {
                continue;
            }
            match mark[w] {
                Mark::Active => {
                    let mut edges = vec![ConcreteEdge::new(b, 0)];
                    let mut u = v;
                    while u != w {
                        let e = via[u].expect("active vertex has a parent edge");
                        edges.push(ConcreteEdge::new(e, 0));
                        u = graph.bundle(e).source;
                    }
                    edges.reverse();
                    return Some(Cycle::canonical(graph, edges).expect("back edge closes a simple cycle"));
                }
                Mark::New => {
                    mark[w] = Mark::Active;
                    via[w] = Some(b);
                    stack.push((w, 0));
                }
                Mark::Done => {}
            }
        }
    }
    None
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConditionL {
    pub holds: bool,
    /// A simple closed path with no exit, when the condition fails.
    pub exitless_cycle: Option<Cycle>,
}

/// Condition (L): every simple closed path has an exit.
///
/// A cycle lacks an exit exactly when each of its vertices emits a single
/// edge, so the check looks for a cycle among vertices of out-degree one.
/// Distinct indices of an omega bundle count as distinct edges.
pub fn condition_l(graph: &Graph) -> ConditionL {
    let exitless_cycle = find_cycle_within(graph, |v| graph.out_degree(v) == Multiplicity::ONE);
    ConditionL {
        holds: exitless_cycle.is_none(),
        exitless_cycle,
    }
}

/// How many return paths (closed paths meeting their base only at the
/// endpoints) a vertex is the base of.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ReturnPathClass {
    Zero,
    ExactlyOne,
    AtLeastTwo,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReturnPaths {
    pub class: ReturnPathClass,
    /// The unique return path, present iff `class` is `ExactlyOne`.
    pub unique: Option<Cycle>,
}

/// Classifies the return paths based at `v`.
///
/// Split `v` into an emitting copy and an absorbing copy. The bundles that
/// lie on some walk between the two copies form a subgraph; there is no
/// return path iff it is empty, and exactly one iff every vertex of it
/// (the emitting copy included) emits exactly one edge inside it.
pub fn return_path_class(graph: &Graph, v: Vertex) -> Result<ReturnPaths> {
    if v >= graph.vertex_count() {
        return Err(GraphError::UnknownVertex(format!("#{v}")));
    }
    let n = graph.vertex_count();
    // forward from v, backward into v, never passing through v itself
    let forward = avoiding_search(n, v, |u| graph.successors(u).collect());
    let backward = avoiding_search(n, v, |u| graph.predecessors(u).collect());

    let relevant = |b: usize| {
        let bundle = graph.bundle(b);
        (bundle.source == v || forward[bundle.source]) && (bundle.target == v || backward[bundle.target])
    };

    let mut inner = vec![Multiplicity::ZERO; n];
    let mut any = false;
    for (b, bundle) in graph.bundles().iter().enumerate() {
        if relevant(b) {
            any = true;
            inner[bundle.source] = inner[bundle.source] + bundle.mult;
        }
    }
    if !any {
        return Ok(ReturnPaths {
            class: ReturnPathClass::Zero,
            unique: None,
        });
    }
    if inner.iter().any(|m| m.at_least(2)) {
        return Ok(ReturnPaths {
            class: ReturnPathClass::AtLeastTwo,
            unique: None,
        });
    }

    let mut edges = Vec::new();
    let mut at = v;
    loop {
        let b = *graph
            .out_bundles(at)
            .iter()
            .find(|&&b| relevant(b))
            .expect("every vertex on a return walk continues");
        edges.push(ConcreteEdge::new(b, 0));
        at = graph.bundle(b).target;
        if at == v {
            break;
        }
    }
    let cycle = Cycle::new(graph, edges).expect("the unique return path is simple");
    Ok(ReturnPaths {
        class: ReturnPathClass::ExactlyOne,
        unique: Some(cycle),
    })
}

/// Marks vertices other than `base` reached from `base` by one or more
/// steps of `next` without revisiting `base`.
fn avoiding_search(n: usize, base: Vertex, next: impl Fn(Vertex) -> Vec<Vertex>) -> Vec<bool> {
    let mut seen = vec![false; n];
    let mut stack = vec![base];
    while let Some(u) = stack.pop() {
        for w in next(u) {
            if w != base && !seen[w] {
                seen[w] = true;
                stack.push(w);
            }
        }
    }
    seen
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConditionK {
    pub holds: bool,
    /// A vertex based at exactly one return path, with that path.
    pub witness: Option<(Vertex, Cycle)>,
}

/// Condition (K): no vertex is the base of exactly one return path.
pub fn condition_k(graph: &Graph) -> ConditionK {
    for v in graph.vertices() {
        let rp = return_path_class(graph, v).expect("vertex in range");
        if let Some(cycle) = rp.unique {
            return ConditionK {
                holds: false,
                witness: Some((v, cycle)),
            };
        }
    }
    ConditionK {
        holds: true,
        witness: None,
    }
}

/// Every vertex is the base of at most one return path.
pub fn has_isolated_cycles(graph: &Graph) -> bool {
    graph.vertices().all(|v| {
        return_path_class(graph, v).expect("vertex in range").class != ReturnPathClass::AtLeastTwo
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn single_loop(mult: Multiplicity) -> Graph {
        Graph::builder().vertex("v").edge("e", "v", "v", mult).build().unwrap()
    }

    fn toeplitz() -> Graph {
        Graph::builder()
            .vertices(["v", "w"])
            .edge("e", "v", "v", 1)
            .edge("f", "v", "w", 1)
            .build()
            .unwrap()
    }

    fn rose(n: usize) -> Graph {
        (0..n)
            .fold(Graph::builder().vertex("v"), |b, i| b.edge(format!("l{i}"), "v", "v", 1))
            .build()
            .unwrap()
    }

    fn line() -> Graph {
        Graph::builder()
            .vertices(["v", "w"])
            .edge("e", "v", "w", 1)
            .build()
            .unwrap()
    }

    #[test]
    fn cycles_of_small_graphs() {
        let g = single_loop(Multiplicity::ONE);
        let cycles = find_cycles(&g);
        assert_eq!(cycles.len(), 1);
        assert_eq!(cycles[0].len(), 1);

        assert!(find_cycles(&line()).is_empty());
        assert!(is_acyclic(&line()));

        let t = toeplitz();
        let cycles = find_cycles(&t);
        assert_eq!(cycles.len(), 1);
        assert_eq!(cycles[0].label(&t), "e#0");
        assert!(!is_acyclic(&t));
    }

    #[test]
    fn omega_loop_is_a_cycle() {
        let g = single_loop(Multiplicity::Omega);
        assert_eq!(find_cycles(&g).len(), 1);
        assert!(!is_acyclic(&g));
    }

    #[test]
    fn cycles_are_rotated_to_least_vertex() {
        let g = Graph::builder()
            .vertices(["a", "b", "c"])
            .edge("x", "c", "a", 1)
            .edge("y", "b", "c", 1)
            .edge("z", "a", "b", 1)
            .build()
            .unwrap();
        let cycles = find_cycles(&g);
        assert_eq!(cycles.len(), 1);
        assert_eq!(cycles[0].base(), g.vertex("a").unwrap());
        assert_eq!(cycles[0].label(&g), "z#0 y#0 x#0");
        let found = find_cycle_within(&g, |_| true).unwrap();
        assert_eq!(found, cycles[0]);
    }

    #[test]
    fn condition_l_examples() {
        let g = single_loop(Multiplicity::ONE);
        let l = condition_l(&g);
        assert!(!l.holds);
        assert_eq!(l.exitless_cycle.unwrap().label(&g), "e#0");
        assert!(condition_l(&single_loop(Multiplicity::Omega)).holds);
        assert!(condition_l(&toeplitz()).holds);
    }

    #[test]
    fn return_path_examples() {
        let t = toeplitz();
        let w = t.vertex("w").unwrap();
        assert_eq!(return_path_class(&t, w).unwrap().class, ReturnPathClass::Zero);
        let rp = return_path_class(&single_loop(Multiplicity::ONE), 0).unwrap();
        assert_eq!(rp.class, ReturnPathClass::ExactlyOne);
        assert!(rp.unique.is_some());
        assert_eq!(return_path_class(&rose(2), 0).unwrap().class, ReturnPathClass::AtLeastTwo);
        assert_eq!(
            return_path_class(&single_loop(Multiplicity::Finite(2)), 0).unwrap().class,
            ReturnPathClass::AtLeastTwo
        );
        assert!(return_path_class(&t, 9).is_err());
    }

    #[test]
    fn return_paths_through_other_cycles() {
        // v -> a, a -> a, a -> v: infinitely many return paths at v
        let g = Graph::builder()
            .vertices(["a", "v"])
            .edge("p", "v", "a", 1)
            .edge("q", "a", "a", 1)
            .edge("r", "a", "v", 1)
            .build()
            .unwrap();
        let v = g.vertex("v").unwrap();
        let a = g.vertex("a").unwrap();
        assert_eq!(return_path_class(&g, v).unwrap().class, ReturnPathClass::AtLeastTwo);
        // at a: the loop q, and p r (after leaving through r)
        assert_eq!(return_path_class(&g, a).unwrap().class, ReturnPathClass::AtLeastTwo);
    }

    #[test]
    fn condition_k_examples() {
        assert!(condition_k(&rose(2)).holds);
        let t = toeplitz();
        let k = condition_k(&t);
        assert!(!k.holds);
        assert_eq!(k.witness.unwrap().0, t.vertex("v").unwrap());
        assert!(condition_k(&line()).holds);
    }

    #[test]
    fn isolated_cycle_examples() {
        assert!(has_isolated_cycles(&single_loop(Multiplicity::ONE)));
        assert!(!has_isolated_cycles(&rose(2)));
        assert!(has_isolated_cycles(&line()));
    }

    #[test]
    fn two_cycle_unique_return_path() {
        let g = Graph::builder()
            .vertices(["a", "b", "c"])
            .edge("x", "a", "b", 1)
            .edge("y", "b", "a", 1)
            .edge("z", "b", "c", 1)
            .build()
            .unwrap();
        let a = g.vertex("a").unwrap();
        let rp = return_path_class(&g, a).unwrap();
        assert_eq!(rp.class, ReturnPathClass::ExactlyOne);
        assert_eq!(rp.unique.unwrap().label(&g), "x#0 y#0");
        assert!(condition_l(&g).holds);
        assert!(!condition_k(&g).holds);
    }
}
