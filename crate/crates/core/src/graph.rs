//! Finite presentations of directed graphs that may contain infinite emitters.
//!
//! A graph has a finite vertex set and a finite list of edge *bundles*. A
//! bundle stands for `mult` parallel edges between the same two vertices,
//! where `mult` is a positive integer or [`Multiplicity::Omega`] (countably
//! many). Individual edges inside a bundle are addressed by
//! [`ConcreteEdge`]s.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;
use std::ops::Add;

use serde::Serialize;

use crate::error::{GraphError, Result};

/// Index of a vertex in a validated [`Graph`]. Vertices are stored in
/// lexicographic order of their identifiers, so index order is name order.
pub type Vertex = usize;

/// Number of parallel edges in a bundle, or an out-degree.
///
/// `Finite(0)` is only produced as a degree; bundles never carry it.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Multiplicity {
    Finite(u64),
    Omega,
}

impl Multiplicity {
    pub const ZERO: Self = Multiplicity::Finite(0);
    pub const ONE: Self = Multiplicity::Finite(1);

    pub fn is_omega(self) -> bool {
        matches!(self, Multiplicity::Omega)
    }

    pub fn finite(self) -> Option<u64> {
        match self {
            Multiplicity::Finite(n) => Some(n),
            Multiplicity::Omega => None,
        }
    }

    /// Whether edge `index` exists in a bundle of this multiplicity.
    pub fn has_index(self, index: u64) -> bool {
        match self {
            Multiplicity::Finite(n) => index < n,
            Multiplicity::Omega => true,
        }
    }

    pub fn at_least(self, n: u64) -> bool {
        match self {
            Multiplicity::Finite(m) => m >= n,
            Multiplicity::Omega => true,
        }
    }
}

impl Add for Multiplicity {
    type Output = Multiplicity;

    fn add(self, rhs: Self) -> Self {
        match (self, rhs) {
            (Multiplicity::Finite(a), Multiplicity::Finite(b)) => Multiplicity::Finite(a.saturating_add(b)),
            _ => Multiplicity::Omega,
        }
    }
}

impl std::iter::Sum for Multiplicity {
    fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(Multiplicity::ZERO, Add::add)
    }
}

impl From<u64> for Multiplicity {
    fn from(n: u64) -> Self {
        Multiplicity::Finite(n)
    }
}

/// Serialized as a number, or the string `"omega"`.
impl Serialize for Multiplicity {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Multiplicity::Finite(n) => s.serialize_u64(*n),
            Multiplicity::Omega => s.serialize_str("omega"),
        }
    }
}

impl fmt::Display for Multiplicity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Multiplicity::Finite(n) => write!(f, "{n}"),
            Multiplicity::Omega => f.write_str("omega"),
        }
    }
}

/// An edge bundle of a validated graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bundle {
    pub id: String,
    pub source: Vertex,
    pub target: Vertex,
    pub mult: Multiplicity,
}

/// An unvalidated bundle that names its endpoints.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BundleSpec {
    pub id: String,
    pub source: String,
    pub target: String,
    pub mult: Multiplicity,
}

impl BundleSpec {
    pub fn new(
        id: impl Into<String>,
        source: impl Into<String>,
        target: impl Into<String>,
        mult: impl Into<Multiplicity>,
    ) -> Self {
        BundleSpec {
            id: id.into(),
            source: source.into(),
            target: target.into(),
            mult: mult.into(),
        }
    }
}

/// A single edge: the `index`-th member of bundle number `bundle`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ConcreteEdge {
    pub bundle: usize,
    pub index: u64,
}

impl ConcreteEdge {
    pub fn new(bundle: usize, index: u64) -> Self {
        ConcreteEdge { bundle, index }
    }
}

/// A validated graph. Immutable once built.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    names: Vec<String>,
    bundles: Vec<Bundle>,
    out: Vec<Vec<usize>>,
    inc: Vec<Vec<usize>>,
}

impl Graph {
    /// Validates a raw vertex list and bundle list. Vertices and bundles are
    /// reordered lexicographically by identifier.
    pub fn new<S: Into<String>>(
        vertices: impl IntoIterator<Item = S>,
        bundles: impl IntoIterator<Item = BundleSpec>,
    ) -> Result<Graph> {
        let mut names: Vec<String> = vertices.into_iter().map(Into::into).collect();
        names.sort();
        if let Some(w) = names.windows(2).find(|w| w[0] == w[1]) {
            return Err(GraphError::DuplicateVertex(w[0].clone()));
        }
        let index: BTreeMap<&str, Vertex> =
            names.iter().enumerate().map(|(i, n)| (n.as_str(), i)).collect();

        let mut specs: Vec<BundleSpec> = bundles.into_iter().collect();
        specs.sort_by(|a, b| a.id.cmp(&b.id));
        if let Some(w) = specs.windows(2).find(|w| w[0].id == w[1].id) {
            return Err(GraphError::DuplicateBundle(w[0].id.clone()));
        }

        let mut out = vec![Vec::new(); names.len()];
        let mut inc = vec![Vec::new(); names.len()];
        let mut validated = Vec::with_capacity(specs.len());
        for (i, spec) in specs.into_iter().enumerate() {
            let lookup = |v: &str| {
                index.get(v).copied().ok_or_else(|| GraphError::DanglingEndpoint {
                    bundle: spec.id.clone(),
                    vertex: v.to_string(),
                })
            };
            let source = lookup(&spec.source)?;
            let target = lookup(&spec.target)?;
            if spec.mult == Multiplicity::ZERO {
                return Err(GraphError::ZeroMultiplicity(spec.id));
            }
            out[source].push(i);
            inc[target].push(i);
            validated.push(Bundle {
                id: spec.id,
                source,
                target,
                mult: spec.mult,
            });
        }
        Ok(Graph {
            names,
            bundles: validated,
            out,
            inc,
        })
    }

    pub fn builder() -> GraphBuilder {
        GraphBuilder::default()
    }

    pub fn vertex_count(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn vertices(&self) -> std::ops::Range<Vertex> {
        0..self.names.len()
    }

    pub fn name(&self, v: Vertex) -> &str {
        &self.names[v]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    /// Looks up a vertex by identifier.
    pub fn vertex(&self, name: &str) -> Option<Vertex> {
        self.names.binary_search_by(|n| n.as_str().cmp(name)).ok()
    }

    pub fn vertex_or_err(&self, name: &str) -> Result<Vertex> {
        self.vertex(name)
            .ok_or_else(|| GraphError::UnknownVertex(name.to_string()))
    }

    pub fn bundles(&self) -> &[Bundle] {
        &self.bundles
    }

    pub fn bundle(&self, i: usize) -> &Bundle {
        &self.bundles[i]
    }

    pub fn bundle_index(&self, id: &str) -> Option<usize> {
        self.bundles.binary_search_by(|b| b.id.as_str().cmp(id)).ok()
    }

    /// Indices of the bundles leaving `v`, in bundle-id order.
    pub fn out_bundles(&self, v: Vertex) -> &[usize] {
        &self.out[v]
    }

    /// Indices of the bundles entering `v`, in bundle-id order.
    pub fn in_bundles(&self, v: Vertex) -> &[usize] {
        &self.inc[v]
    }

    pub fn successors(&self, v: Vertex) -> impl Iterator<Item = Vertex> + '_ {
        self.out[v].iter().map(move |&b| self.bundles[b].target)
    }

    pub fn predecessors(&self, v: Vertex) -> impl Iterator<Item = Vertex> + '_ {
        self.inc[v].iter().map(move |&b| self.bundles[b].source)
    }

    /// Total number of edges leaving `v`; `Finite(0)` for a sink.
    pub fn out_degree(&self, v: Vertex) -> Multiplicity {
        self.out[v].iter().map(|&b| self.bundles[b].mult).sum()
    }

    pub fn is_sink(&self, v: Vertex) -> bool {
        self.out[v].is_empty()
    }

    pub fn is_infinite_emitter(&self, v: Vertex) -> bool {
        self.out[v].iter().any(|&b| self.bundles[b].mult.is_omega())
    }

    pub fn is_finite_emitter(&self, v: Vertex) -> bool {
        !self.is_sink(v) && !self.is_infinite_emitter(v)
    }

    pub fn is_row_finite(&self) -> bool {
        self.bundles.iter().all(|b| !b.mult.is_omega())
    }

    pub fn source_of(&self, e: ConcreteEdge) -> Vertex {
        self.bundles[e.bundle].source
    }

    pub fn range_of(&self, e: ConcreteEdge) -> Vertex {
        self.bundles[e.bundle].target
    }

    pub fn check_edge(&self, e: ConcreteEdge) -> Result<()> {
        let bundle = self
            .bundles
            .get(e.bundle)
            .ok_or_else(|| GraphError::UnknownBundle(format!("#{}", e.bundle)))?;
        if bundle.mult.has_index(e.index) {
            Ok(())
        } else {
            Err(GraphError::EdgeIndexOutOfRange {
                bundle: bundle.id.clone(),
                index: e.index,
            })
        }
    }

    /// Renders a concrete edge as `bundle#index`.
    pub fn edge_label(&self, e: ConcreteEdge) -> String {
        format!("{}#{}", self.bundles[e.bundle].id, e.index)
    }

    /// Parses `bundle#index` (or a bare bundle id, meaning index 0).
    pub fn parse_edge(&self, label: &str) -> Result<ConcreteEdge> {
        let (id, index) = match label.rsplit_once('#') {
            Some((id, idx)) => {
                let index = idx
                    .parse::<u64>()
                    .map_err(|_| GraphError::InvalidArgument(format!("bad edge index in `{label}`")))?;
                (id, index)
            }
            None => (label, 0),
        };
        let bundle = self
            .bundle_index(id)
            .ok_or_else(|| GraphError::UnknownBundle(id.to_string()))?;
        let e = ConcreteEdge::new(bundle, index);
        self.check_edge(e)?;
        Ok(e)
    }

    /// Builds a vertex set from identifiers.
    pub fn vertex_set<S: AsRef<str>>(&self, names: impl IntoIterator<Item = S>) -> Result<VertexSet> {
        names
            .into_iter()
            .map(|n| self.vertex_or_err(n.as_ref()))
            .collect()
    }

    pub fn all_vertices(&self) -> VertexSet {
        self.vertices().collect()
    }

    /// Converts back to the raw form accepted by [`Graph::new`].
    pub fn to_specs(&self) -> (Vec<String>, Vec<BundleSpec>) {
        let bundles = self
            .bundles
            .iter()
            .map(|b| BundleSpec {
                id: b.id.clone(),
                source: self.names[b.source].clone(),
                target: self.names[b.target].clone(),
                mult: b.mult,
            })
            .collect();
        (self.names.clone(), bundles)
    }

    /// Vertices reachable from `start` by paths of length zero or more.
    pub fn reachable_from(&self, start: &VertexSet) -> VertexSet {
        self.search(start.iter(), |g, v| g.successors(v).collect())
    }

    /// Vertices with a path (of length zero or more) into `targets`.
    pub fn coreachable_to(&self, targets: &VertexSet) -> VertexSet {
        self.search(targets.iter(), |g, v| g.predecessors(v).collect())
    }

    fn search(
        &self,
        start: impl Iterator<Item = Vertex>,
        next: impl Fn(&Graph, Vertex) -> Vec<Vertex>,
    ) -> VertexSet {
        let mut seen = vec![false; self.vertex_count()];
        let mut queue: VecDeque<Vertex> = VecDeque::new();
        for v in start {
            if !seen[v] {
                seen[v] = true;
                queue.push_back(v);
            }
        }
        while let Some(v) = queue.pop_front() {
            for w in next(self, v) {
                if !seen[w] {
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
        VertexSet::from_mask(&seen)
    }

    /// `v ≥ X`: some path, possibly of length zero, runs from `v` into `set`.
    pub fn reaches(&self, v: Vertex, set: &VertexSet) -> bool {
        if set.contains(v) {
            return true;
        }
        let mut seen = vec![false; self.vertex_count()];
        let mut stack = vec![v];
        seen[v] = true;
        while let Some(u) = stack.pop() {
            for w in self.successors(u) {
                if set.contains(w) {
                    return true;
                }
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        false
    }
}

#[derive(Clone, Debug, Default)]
pub struct GraphBuilder {
    vertices: Vec<String>,
    bundles: Vec<BundleSpec>,
}

impl GraphBuilder {
    pub fn vertex(mut self, name: impl Into<String>) -> Self {
        self.vertices.push(name.into());
        self
    }

    pub fn vertices<S: Into<String>>(mut self, names: impl IntoIterator<Item = S>) -> Self {
        self.vertices.extend(names.into_iter().map(Into::into));
        self
    }

    pub fn edge(
        mut self,
        id: impl Into<String>,
        source: impl Into<String>,
        target: impl Into<String>,
        mult: impl Into<Multiplicity>,
    ) -> Self {
        self.bundles.push(BundleSpec::new(id, source, target, mult));
        self
    }

    pub fn omega(self, id: impl Into<String>, source: impl Into<String>, target: impl Into<String>) -> Self {
        self.edge(id, source, target, Multiplicity::Omega)
    }

    pub fn build(self) -> Result<Graph> {
        Graph::new(self.vertices, self.bundles)
    }
}

/// A set of vertices, ordered by size and then lexicographically.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct VertexSet(BTreeSet<Vertex>);

impl VertexSet {
    pub fn new() -> Self {
        VertexSet(BTreeSet::new())
    }

    pub fn singleton(v: Vertex) -> Self {
        VertexSet(BTreeSet::from([v]))
    }

    pub(crate) fn from_mask(mask: &[bool]) -> Self {
        mask.iter()
            .enumerate()
            .filter_map(|(i, &b)| b.then_some(i))
            .collect()
    }

    pub fn contains(&self, v: Vertex) -> bool {
        self.0.contains(&v)
    }

    pub fn insert(&mut self, v: Vertex) -> bool {
        self.0.insert(v)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl DoubleEndedIterator<Item = Vertex> + '_ {
        self.0.iter().copied()
    }

    pub fn is_subset(&self, other: &VertexSet) -> bool {
        self.0.is_subset(&other.0)
    }

    pub fn union(&self, other: &VertexSet) -> VertexSet {
        VertexSet(self.0.union(&other.0).copied().collect())
    }

    pub fn intersection(&self, other: &VertexSet) -> VertexSet {
        VertexSet(self.0.intersection(&other.0).copied().collect())
    }

    pub fn difference(&self, other: &VertexSet) -> VertexSet {
        VertexSet(self.0.difference(&other.0).copied().collect())
    }

    pub fn names(&self, graph: &Graph) -> Vec<String> {
        self.iter().map(|v| graph.name(v).to_string()).collect()
    }
}

impl FromIterator<Vertex> for VertexSet {
    fn from_iter<I: IntoIterator<Item = Vertex>>(iter: I) -> Self {
        VertexSet(iter.into_iter().collect())
    }
}

impl Extend<Vertex> for VertexSet {
    fn extend<I: IntoIterator<Item = Vertex>>(&mut self, iter: I) {
        self.0.extend(iter)
    }
}

impl Ord for VertexSet {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.0.iter().cmp(other.0.iter()))
    }
}

impl PartialOrd for VertexSet {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// A path of concrete edges. A path of length zero is just its start vertex.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Path {
    start: Vertex,
    edges: Vec<ConcreteEdge>,
}

impl Path {
    pub fn vertex(v: Vertex) -> Self {
        Path {
            start: v,
            edges: Vec::new(),
        }
    }

    pub fn new(graph: &Graph, edges: Vec<ConcreteEdge>) -> Result<Path> {
        let first = edges.first().ok_or(GraphError::BrokenPath(0))?;
        graph.check_edge(*first)?;
        for (i, pair) in edges.windows(2).enumerate() {
            graph.check_edge(pair[1])?;
            if graph.range_of(pair[0]) != graph.source_of(pair[1]) {
                return Err(GraphError::BrokenPath(i + 1));
            }
        }
        Ok(Path {
            start: graph.source_of(*first),
            edges,
        })
    }

    pub fn edges(&self) -> &[ConcreteEdge] {
        &self.edges
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn source(&self) -> Vertex {
        self.start
    }

    pub fn range(&self, graph: &Graph) -> Vertex {
        self.edges.last().map_or(self.start, |&e| graph.range_of(e))
    }

    /// Sources of the edges, in order.
    pub fn edge_sources<'a>(&'a self, graph: &'a Graph) -> impl Iterator<Item = Vertex> + 'a {
        self.edges.iter().map(|&e| graph.source_of(e))
    }

    pub fn label(&self, graph: &Graph) -> String {
        if self.edges.is_empty() {
            return graph.name(self.start).to_string();
        }
        self.edges
            .iter()
            .map(|&e| graph.edge_label(e))
            .collect::<Vec<_>>()
            .join(" ")
    }
}

/// A simple closed path: source equals range and the edge sources are
/// pairwise distinct.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Cycle(Path);

impl Cycle {
    pub fn new(graph: &Graph, edges: Vec<ConcreteEdge>) -> Result<Cycle> {
        let path = Path::new(graph, edges)?;
        if path.range(graph) != path.source() {
            return Err(GraphError::NotACycle);
        }
        let sources: BTreeSet<Vertex> = path.edge_sources(graph).collect();
        if sources.len() != path.len() {
            return Err(GraphError::NotACycle);
        }
        Ok(Cycle(path))
    }

    /// Rotates `edges` so the least source comes first, then validates.
    pub fn canonical(graph: &Graph, mut edges: Vec<ConcreteEdge>) -> Result<Cycle> {
        if let Some(pos) = (0..edges.len()).min_by_key(|&i| graph.source_of(edges[i])) {
            edges.rotate_left(pos);
        }
        Cycle::new(graph, edges)
    }

    pub fn path(&self) -> &Path {
        &self.0
    }

    pub fn edges(&self) -> &[ConcreteEdge] {
        self.0.edges()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn base(&self) -> Vertex {
        self.0.source()
    }

    pub fn vertices(&self, graph: &Graph) -> Vec<Vertex> {
        self.0.edge_sources(graph).collect()
    }

    pub fn label(&self, graph: &Graph) -> String {
        self.0.label(graph)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum EmitterKind {
    Sink,
    FiniteEmitter,
    InfiniteEmitter,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct VertexClass {
    pub kind: EmitterKind,
    pub out_degree: Multiplicity,
}

impl VertexClass {
    pub fn is_sink(&self) -> bool {
        self.kind == EmitterKind::Sink
    }

    pub fn is_finite_emitter(&self) -> bool {
        self.kind == EmitterKind::FiniteEmitter
    }

    pub fn is_infinite_emitter(&self) -> bool {
        self.kind == EmitterKind::InfiniteEmitter
    }
}

/// Labels every vertex as a sink, finite emitter or infinite emitter.
pub fn classify_vertices(graph: &Graph) -> Vec<VertexClass> {
    graph
        .vertices()
        .map(|v| {
            let out_degree = graph.out_degree(v);
            let kind = match out_degree {
                Multiplicity::Finite(0) => EmitterKind::Sink,
                Multiplicity::Finite(_) => EmitterKind::FiniteEmitter,
                Multiplicity::Omega => EmitterKind::InfiniteEmitter,
            };
            VertexClass { kind, out_degree }
        })
        .collect()
}
