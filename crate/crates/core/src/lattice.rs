//! Hereditary saturated subsets, their lattice, breaking vertices and
//! admissible pairs.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use crate::error::{GraphError, Result};
use crate::graph::{Graph, Multiplicity, Vertex, VertexSet};

/// Default bound on the number of lattice members (and admissible pairs)
/// an enumeration may produce.
pub const DEFAULT_LATTICE_LIMIT: usize = 1 << 20;

/// A vertex set known to be hereditary and saturated. Only obtainable
/// through a check or a closure, so the certificate cannot go stale.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HsSet(VertexSet);

impl HsSet {
    pub fn new(graph: &Graph, set: VertexSet) -> Result<HsSet> {
        match hs_violation(graph, &set) {
            None => Ok(HsSet(set)),
            Some(v) => Err(GraphError::NotHereditarySaturated(v.describe(graph))),
        }
    }

    pub fn empty() -> HsSet {
        HsSet(VertexSet::new())
    }

    pub fn full(graph: &Graph) -> HsSet {
        HsSet(graph.all_vertices())
    }

    pub fn set(&self) -> &VertexSet {
        &self.0
    }

    pub fn into_set(self) -> VertexSet {
        self.0
    }

    pub fn contains(&self, v: Vertex) -> bool {
        self.0.contains(v)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn names(&self, graph: &Graph) -> Vec<String> {
        self.0.names(graph)
    }
}

/// Why a set fails to be hereditary and saturated.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Violation {
    /// The bundle leaves the set.
    NotHereditary { bundle: usize },
    /// The finite emitter sends every edge into the set but is outside it.
    NotSaturated { vertex: Vertex },
}

impl Violation {
    pub fn describe(&self, graph: &Graph) -> String {
        match *self {
            Violation::NotHereditary { bundle } => {
                let b = graph.bundle(bundle);
                format!(
                    "bundle `{}` leaves the set ({} -> {})",
                    b.id,
                    graph.name(b.source),
                    graph.name(b.target)
                )
            }
            Violation::NotSaturated { vertex } => {
                format!("finite emitter `{}` has all targets inside the set", graph.name(vertex))
            }
        }
    }
}

/// Returns the first violation of heredity (checked first) or saturation.
/// Infinite emitters never trigger the saturation rule.
pub fn hs_violation(graph: &Graph, set: &VertexSet) -> Option<Violation> {
    for (i, b) in graph.bundles().iter().enumerate() {
        if set.contains(b.source) && !set.contains(b.target) {
            return Some(Violation::NotHereditary { bundle: i });
        }
    }
    graph
        .vertices()
        .find(|&v| !set.contains(v) && saturates(graph, v, set))
        .map(|vertex| Violation::NotSaturated { vertex })
}

pub fn is_hereditary_saturated(graph: &Graph, set: &VertexSet) -> bool {
    hs_violation(graph, set).is_none()
}

fn saturates(graph: &Graph, v: Vertex, set: &VertexSet) -> bool {
    graph.is_finite_emitter(v) && graph.successors(v).all(|w| set.contains(w))
}

/// The hereditary saturated closure of a set, with the stage at which each
/// member entered: stage 0 is forward reachability, each later stage adds
/// the finite emitters whose targets all lie in the previous stage.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Closure {
    pub set: HsSet,
    pub stages: BTreeMap<Vertex, usize>,
}

pub fn closure(graph: &Graph, seed: &VertexSet) -> Closure {
    let current = graph.reachable_from(seed);
    let mut stages: BTreeMap<Vertex, usize> = current.iter().map(|v| (v, 0)).collect();
    let set = saturate(graph, current, |v, stage| {
        stages.insert(v, stage);
    });
    Closure {
        set: HsSet(set),
        stages,
    }
}

/// Closure without the stage bookkeeping.
pub fn close(graph: &Graph, seed: &VertexSet) -> HsSet {
    HsSet(saturate(graph, graph.reachable_from(seed), |_, _| {}))
}

fn saturate(graph: &Graph, mut current: VertexSet, mut record: impl FnMut(Vertex, usize)) -> VertexSet {
    let mut stage = 0;
    loop {
        stage += 1;
        let added: Vec<Vertex> = graph
            .vertices()
            .filter(|&v| !current.contains(v) && saturates(graph, v, &current))
            .collect();
        if added.is_empty() {
            return current;
        }
        for v in added {
            record(v, stage);
            current.insert(v);
        }
    }
}

/// All hereditary saturated subsets, sorted by size then lexicographically.
///
/// Every member is the join of the singleton closures it contains, so the
/// lattice is generated from those by a worklist that joins each new member
/// with every generator.
pub fn enumerate_hs_sets(graph: &Graph, limit: usize) -> Result<Vec<HsSet>> {
    let generators: BTreeSet<VertexSet> = graph
        .vertices()
        .map(|v| close(graph, &VertexSet::singleton(v)).into_set())
        .collect();

    let mut seen: BTreeSet<VertexSet> = BTreeSet::new();
    let mut queue: VecDeque<VertexSet> = VecDeque::new();
    for s in std::iter::once(VertexSet::new()).chain(generators.iter().cloned()) {
        if seen.insert(s.clone()) {
            queue.push_back(s);
        }
    }
    if seen.len() > limit {
        return Err(GraphError::LatticeTooLarge { limit });
    }
    while let Some(member) = queue.pop_front() {
        for g in &generators {
            if g.is_subset(&member) {
                continue;
            }
            let joined = close(graph, &member.union(g)).into_set();
            if !seen.contains(&joined) {
                seen.insert(joined.clone());
                if seen.len() > limit {
                    return Err(GraphError::LatticeTooLarge { limit });
                }
                queue.push_back(joined);
            }
        }
    }
    Ok(seen.into_iter().map(HsSet).collect())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TrivialLattice {
    pub trivial: bool,
    /// The graph has no vertices, so `∅ = E⁰` and the answer is vacuous.
    pub degenerate: bool,
    /// A proper nonempty member when the lattice is not trivial.
    pub proper_member: Option<HsSet>,
}

/// Whether the only hereditary saturated sets are `∅` and `E⁰`, decided by
/// checking that every singleton closes to the whole vertex set.
pub fn is_trivial_lattice(graph: &Graph) -> TrivialLattice {
    let all = graph.all_vertices();
    let proper_member = graph
        .vertices()
        .map(|v| close(graph, &VertexSet::singleton(v)))
        .find(|c| *c.set() != all);
    TrivialLattice {
        trivial: proper_member.is_none(),
        degenerate: graph.is_empty(),
        proper_member,
    }
}

/// Total multiplicity of the bundles from `v` whose target lies outside `h`.
pub fn out_multiplicity_avoiding(graph: &Graph, v: Vertex, h: &VertexSet) -> Multiplicity {
    graph
        .out_bundles(v)
        .iter()
        .map(|&b| graph.bundle(b))
        .filter(|b| !h.contains(b.target))
        .map(|b| b.mult)
        .sum()
}

/// `B_H`: infinite emitters outside `H` with finitely many, but at least
/// one, edges into the complement of `H`.
pub fn breaking_vertices(graph: &Graph, h: &HsSet) -> VertexSet {
    graph
        .vertices()
        .filter(|&v| !h.contains(v) && graph.is_infinite_emitter(v))
        .filter(|&v| matches!(out_multiplicity_avoiding(graph, v, h.set()), Multiplicity::Finite(k) if k > 0))
        .collect()
}

/// `(H, B)` with `H` hereditary saturated and `B ⊆ B_H`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdmissiblePair {
    pub h: HsSet,
    pub b: VertexSet,
}

impl AdmissiblePair {
    pub fn new(graph: &Graph, h: HsSet, b: VertexSet) -> Result<AdmissiblePair> {
        let bh = breaking_vertices(graph, &h);
        if let Some(v) = b.iter().find(|&v| !bh.contains(v)) {
            return Err(GraphError::NotBreaking(graph.name(v).to_string()));
        }
        Ok(AdmissiblePair { h, b })
    }

    /// The pair `(H, B_H)`.
    pub fn saturated(graph: &Graph, h: HsSet) -> AdmissiblePair {
        let b = breaking_vertices(graph, &h);
        AdmissiblePair { h, b }
    }
}

/// Every admissible pair, ordered by `H` then by `B` (size, then lex).
pub fn admissible_pairs(graph: &Graph, limit: usize) -> Result<Vec<AdmissiblePair>> {
    let mut pairs = Vec::new();
    for h in enumerate_hs_sets(graph, limit)? {
        let bh: Vec<Vertex> = breaking_vertices(graph, &h).iter().collect();
        if bh.len() >= usize::BITS as usize - 1 || pairs.len() + (1usize << bh.len()) > limit {
            return Err(GraphError::LatticeTooLarge { limit });
        }
        let mut subsets: Vec<VertexSet> = (0..1usize << bh.len())
            .map(|mask| {
                bh.iter()
                    .enumerate()
                    .filter(|(i, _)| mask >> i & 1 == 1)
                    .map(|(_, &v)| v)
                    .collect()
            })
            .collect();
        subsets.sort();
        pairs.extend(subsets.into_iter().map(|b| AdmissiblePair { h: h.clone(), b }));
    }
    Ok(pairs)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn toeplitz() -> Graph {
        Graph::builder()
            .vertices(["v", "w"])
            .edge("e", "v", "v", 1)
            .edge("f", "v", "w", 1)
            .build()
            .unwrap()
    }

    fn fork() -> Graph {
        // v -ω-> w, v -> u
        Graph::builder()
            .vertices(["u", "v", "w"])
            .omega("a", "v", "w")
            .edge("b", "v", "u", 1)
            .build()
            .unwrap()
    }

    fn names(g: &Graph, sets: &[HsSet]) -> Vec<Vec<String>> {
        sets.iter().map(|s| s.names(g)).collect()
    }

    #[test]
    fn closure_examples() {
        let line = Graph::builder()
            .vertices(["v", "w"])
            .edge("e", "v", "w", 1)
            .build()
            .unwrap();
        assert!(closure(&line, &VertexSet::new()).set.is_empty());

        let c = closure(&line, &line.vertex_set(["v"]).unwrap());
        assert_eq!(c.set.names(&line), ["v", "w"]);
        assert_eq!(c.stages.values().copied().collect::<Vec<_>>(), [0, 0]);

        let c = closure(&line, &line.vertex_set(["w"]).unwrap());
        assert_eq!(c.set.names(&line), ["v", "w"]);
        assert_eq!(c.stages[&line.vertex("v").unwrap()], 1);
    }

    #[test]
    fn hs_check_examples() {
        let t = toeplitz();
        assert!(is_hereditary_saturated(&t, &t.vertex_set(["w"]).unwrap()));
        let v = hs_violation(&t, &t.vertex_set(["v"]).unwrap()).unwrap();
        assert_eq!(v, Violation::NotHereditary { bundle: 1 });

        let g = fork();
        assert!(is_hereditary_saturated(&g, &g.vertex_set(["u", "w"]).unwrap()));
    }

    #[test]
    fn saturation_violation_is_reported() {
        let line = Graph::builder()
            .vertices(["v", "w"])
            .edge("e", "v", "w", 1)
            .build()
            .unwrap();
        let v = hs_violation(&line, &line.vertex_set(["w"]).unwrap()).unwrap();
        assert_eq!(v, Violation::NotSaturated { vertex: 0 });
        assert!(HsSet::new(&line, line.vertex_set(["w"]).unwrap()).is_err());
    }

    #[test]
    fn lattice_examples() {
        let single = Graph::builder().vertex("v").build().unwrap();
        let l = enumerate_hs_sets(&single, DEFAULT_LATTICE_LIMIT).unwrap();
        assert_eq!(names(&single, &l), vec![vec![], vec!["v".to_string()]]);

        let t = toeplitz();
        let l = enumerate_hs_sets(&t, DEFAULT_LATTICE_LIMIT).unwrap();
        assert_eq!(names(&t, &l), vec![vec![], vec!["w".to_string()], vec!["v".into(), "w".into()]]);

        let rose = Graph::builder()
            .vertex("v")
            .edge("a", "v", "v", 1)
            .edge("b", "v", "v", 1)
            .build()
            .unwrap();
        assert_eq!(enumerate_hs_sets(&rose, DEFAULT_LATTICE_LIMIT).unwrap().len(), 2);
    }

    #[test]
    fn lattice_limit() {
        let g = Graph::builder().vertices(["a", "b", "c"]).build().unwrap();
        assert_eq!(enumerate_hs_sets(&g, 8).unwrap().len(), 8);
        assert_eq!(enumerate_hs_sets(&g, 7), Err(GraphError::LatticeTooLarge { limit: 7 }));
    }

    #[test]
    fn trivial_lattice_examples() {
        let rose = Graph::builder()
            .vertex("v")
            .edge("a", "v", "v", 1)
            .edge("b", "v", "v", 1)
            .build()
            .unwrap();
        assert!(is_trivial_lattice(&rose).trivial);
        let t = is_trivial_lattice(&toeplitz());
        assert!(!t.trivial);
        assert_eq!(t.proper_member.unwrap().names(&toeplitz()), ["w"]);
        let two = Graph::builder().vertices(["a", "b"]).build().unwrap();
        assert!(!is_trivial_lattice(&two).trivial);
        let empty = Graph::builder().build().unwrap();
        let e = is_trivial_lattice(&empty);
        assert!(e.trivial && e.degenerate);
    }

    #[test]
    fn breaking_vertex_examples() {
        let g = fork();
        let h = HsSet::new(&g, g.vertex_set(["w"]).unwrap()).unwrap();
        assert_eq!(breaking_vertices(&g, &h).names(&g), ["v"]);
        let h = HsSet::new(&g, g.vertex_set(["u", "w"]).unwrap()).unwrap();
        assert!(breaking_vertices(&g, &h).is_empty());
        // an omega bundle out of H disqualifies
        let h = HsSet::new(&g, g.vertex_set(["u"]).unwrap()).unwrap();
        assert!(breaking_vertices(&g, &h).is_empty());
    }

    #[test]
    fn admissible_pair_examples() {
        let t = toeplitz();
        let pairs = admissible_pairs(&t, DEFAULT_LATTICE_LIMIT).unwrap();
        assert_eq!(pairs.len(), 3);
        assert!(pairs.iter().all(|p| p.b.is_empty()));

        let g = fork();
        let pairs = admissible_pairs(&g, DEFAULT_LATTICE_LIMIT).unwrap();
        let w = g.vertex_set(["w"]).unwrap();
        let with_w: Vec<_> = pairs.iter().filter(|p| *p.h.set() == w).collect();
        assert_eq!(with_w.len(), 2);
        assert!(with_w[0].b.is_empty());
        assert_eq!(with_w[1].b.names(&g), ["v"]);

        let h = HsSet::new(&g, w).unwrap();
        assert!(AdmissiblePair::new(&g, h.clone(), g.vertex_set(["v"]).unwrap()).is_ok());
        assert_eq!(
            AdmissiblePair::new(&g, h, g.vertex_set(["u"]).unwrap()),
            Err(GraphError::NotBreaking("u".into()))
        );
    }
}
