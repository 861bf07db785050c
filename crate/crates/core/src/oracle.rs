//! Brute-force counterparts of the main decision procedures.
//!
//! These are deliberately naive: subsets are filtered one by one, cycles
//! are found by trying vertex sequences, return paths by walking edges.
//! They are exponential and meant for small graphs, as cross-checks for
//! the tests and for the command-line `--oracle` flag.

use crate::classify::RankValue;
use crate::constructions::restrict;
use crate::cycles::ReturnPathClass;
use crate::graph::{Graph, Multiplicity, Vertex, VertexSet};
use crate::lattice::HsSet;

/// Largest vertex count the subset-filtering oracles accept.
pub const MAX_BRUTE_FORCE_VERTICES: usize = 20;

fn total_out(graph: &Graph, v: Vertex) -> Multiplicity {
    let mut total = Multiplicity::ZERO;
    for b in graph.bundles() {
        if b.source == v {
            total = total + b.mult;
        }
    }
    total
}

fn subset_is_hs(graph: &Graph, mask: u64) -> bool {
    let inside = |v: Vertex| mask >> v & 1 == 1;
    for b in graph.bundles() {
        if inside(b.source) && !inside(b.target) {
            return false;
        }
    }
    for v in graph.vertices() {
        if inside(v) {
            continue;
        }
        let finite_emitter = matches!(total_out(graph, v), Multiplicity::Finite(k) if k > 0);
        let all_inside = graph
            .bundles()
            .iter()
            .filter(|b| b.source == v)
            .all(|b| inside(b.target));
        if finite_emitter && all_inside {
            return false;
        }
    }
    true
}

/// All hereditary saturated sets by testing every subset, sorted by size
/// then lexicographically. `None` for graphs above
/// [`MAX_BRUTE_FORCE_VERTICES`].
pub fn brute_force_lattice(graph: &Graph) -> Option<Vec<VertexSet>> {
    let n = graph.vertex_count();
    if n > MAX_BRUTE_FORCE_VERTICES {
        return None;
    }
    let mut sets: Vec<VertexSet> = (0..1u64 << n)
        .filter(|&mask| subset_is_hs(graph, mask))
        .map(|mask| (0..n).filter(|&v| mask >> v & 1 == 1).collect())
        .collect();
    sets.sort();
    Some(sets)
}

/// Simple closed paths as bundle sequences starting at their least vertex,
/// found by trying every sequence of distinct vertices.
pub fn brute_force_cycles(graph: &Graph) -> Vec<Vec<usize>> {
    fn grow(graph: &Graph, seq: &mut Vec<Vertex>, out: &mut Vec<Vec<usize>>) {
        let first = seq[0];
        let last = *seq.last().unwrap();
        // close the sequence: every choice of bundle along it
        let mut hops: Vec<Vec<usize>> = seq
            .windows(2)
            .map(|w| bundles_between(graph, w[0], w[1]))
            .collect();
        hops.push(bundles_between(graph, last, first));
        if hops.iter().all(|h| !h.is_empty()) {
            let mut choices = vec![Vec::new()];
            for h in &hops {
                choices = choices
                    .into_iter()
                    .flat_map(|c: Vec<usize>| {
                        h.iter().map(move |&b| {
                            let mut c = c.clone();
                            c.push(b);
                            c
                        })
                    })
                    .collect();
            }
            out.extend(choices);
        }
        for next in first + 1..graph.vertex_count() {
            if !seq.contains(&next) {
                seq.push(next);
                grow(graph, seq, out);
                seq.pop();
            }
        }
    }

    let mut out = Vec::new();
    for start in graph.vertices() {
        grow(graph, &mut vec![start], &mut out);
    }
    out.sort();
    out
}

fn bundles_between(graph: &Graph, from: Vertex, to: Vertex) -> Vec<usize> {
    graph
        .bundles()
        .iter()
        .enumerate()
        .filter(|(_, b)| b.source == from && b.target == to)
        .map(|(i, _)| i)
        .collect()
}

/// Condition (L) by checking every brute-force cycle for a vertex that
/// emits a second edge.
pub fn brute_force_condition_l(graph: &Graph) -> bool {
    brute_force_cycles(graph).iter().all(|cycle| {
        cycle
            .iter()
            .any(|&b| total_out(graph, graph.bundle(b).source).at_least(2))
    })
}

/// Classifies the return paths at `v` by walking concrete edges from `v`
/// (indices 0 and 1 of any bundle with room for them), using each at most
/// twice and never passing through `v` before the end, stopping once two
/// distinct return walks are found.
pub fn bounded_walk_return_class(graph: &Graph, v: Vertex) -> ReturnPathClass {
    // only step to vertices from which v can be reached at all
    let mut leads_home = vec![false; graph.vertex_count()];
    leads_home[v] = true;
    let mut changed = true;
    while changed {
        changed = false;
        for b in graph.bundles() {
            if leads_home[b.target] && !leads_home[b.source] {
                leads_home[b.source] = true;
                changed = true;
            }
        }
    }

    let edges: Vec<(usize, u64)> = graph
        .bundles()
        .iter()
        .enumerate()
        .flat_map(|(i, b)| (0..2u64).filter(move |&k| b.mult.has_index(k)).map(move |k| (i, k)))
        .collect();
    let mut uses = vec![0u8; edges.len()];
    let mut found = 0usize;

    fn walk(
        graph: &Graph,
        base: Vertex,
        at: Vertex,
        edges: &[(usize, u64)],
        uses: &mut [u8],
        leads_home: &[bool],
        found: &mut usize,
    ) {
        for (i, &(b, _)) in edges.iter().enumerate() {
            if *found >= 2 {
                return;
            }
            let bundle = graph.bundle(b);
            if bundle.source != at || uses[i] >= 2 || !leads_home[bundle.target] {
                continue;
            }
            if bundle.target == base {
                *found += 1;
                continue;
            }
            uses[i] += 1;
            walk(graph, base, bundle.target, edges, uses, leads_home, found);
            uses[i] -= 1;
        }
    }

    walk(graph, v, v, &edges, &mut uses, &leads_home, &mut found);
    match found {
        0 => ReturnPathClass::Zero,
        1 => ReturnPathClass::ExactlyOne,
        _ => ReturnPathClass::AtLeastTwo,
    }
}

/// Condition (K) as "every quotient `E \ H` satisfies Condition (L)", with
/// the lattice and Condition (L) both computed by brute force.
pub fn condition_k_by_quotients(graph: &Graph) -> Option<bool> {
    let lattice = brute_force_lattice(graph)?;
    Some(lattice.into_iter().all(|h| {
        let h = HsSet::new(graph, h).expect("brute-force members are hereditary saturated");
        brute_force_condition_l(&restrict(graph, &h))
    }))
}

/// Whether infinitely many paths enter `h` with every earlier vertex
/// outside `h`, decided by walking such paths over edge indices 0 and 1.
/// The set is infinite iff some walk repeats a vertex (a cycle feeds `h`)
/// or crosses an omega bundle (its other indices give more paths).
pub fn entry_paths_infinite(graph: &Graph, h: &VertexSet) -> bool {
    let bound = graph.vertex_count();

    fn explore(graph: &Graph, h: &VertexSet, at: Vertex, depth: usize, bound: usize, omega: bool) -> bool {
        let mut infinite = false;
        for b in graph.bundles().iter().filter(|b| b.source == at) {
            let omega = omega || b.mult.is_omega();
            if h.contains(b.target) {
                infinite |= omega;
            } else if depth + 1 > bound {
                // longer than any vertex-simple path outside h
                infinite |= graph.reaches(b.target, h);
            } else {
                infinite |= explore(graph, h, b.target, depth + 1, bound, omega);
            }
        }
        infinite
    }

    graph
        .vertices()
        .filter(|&v| !h.contains(v))
        .any(|v| explore(graph, h, v, 0, bound, false))
}

/// The trichotomy for row-finite graphs, phrased as: 1 iff there is no
/// cycle; infinity iff some proper quotient `E \ H` has only trivial
/// hereditary saturated sets, satisfies Condition (L), and every vertex of
/// it connects to a cycle; 2 otherwise. Everything is brute force.
pub fn row_finite_stable_rank(graph: &Graph) -> Option<RankValue> {
    if !graph.is_row_finite() {
        return None;
    }
    if brute_force_cycles(graph).is_empty() {
        return Some(RankValue::One);
    }
    for h in brute_force_lattice(graph)? {
        if h.len() == graph.vertex_count() {
            continue;
        }
        let h = HsSet::new(graph, h).expect("brute-force members are hereditary saturated");
        let q = restrict(graph, &h);
        let cycles = brute_force_cycles(&q);
        let on_cycle: VertexSet = cycles
            .iter()
            .flatten()
            .map(|&b| q.bundle(b).source)
            .collect();
        let connects = q.vertices().all(|v| q.reaches(v, &on_cycle));
        let simple = brute_force_lattice(&q)?.len() == 2;
        if !cycles.is_empty() && connects && simple && brute_force_condition_l(&q) {
            return Some(RankValue::Infinite);
        }
    }
    Some(RankValue::Two)
}
