use std::fmt;

use serde::Serialize;

use super::pis::{evaluate_quotients, purely_infinite_simple, PisVerdict};
use crate::constructions::{compute_h0, quotient, restrict, QuotientGraph};
use crate::cycles::{find_cycle_within, has_isolated_cycles, is_acyclic};
use crate::error::Result;
use crate::graph::{Cycle, Graph, VertexSet};
use crate::lattice::{AdmissiblePair, HsSet};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RankValue {
    One,
    Two,
    Infinite,
}

impl fmt::Display for RankValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RankValue::One => "1",
            RankValue::Two => "2",
            RankValue::Infinite => "infinity",
        })
    }
}

impl Serialize for RankValue {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            RankValue::One => s.serialize_u8(1),
            RankValue::Two => s.serialize_u8(2),
            RankValue::Infinite => s.serialize_str("infinity"),
        }
    }
}

/// How "`E \ H` is finite" is read when looking for a purely infinite
/// simple quotient.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RankMode {
    /// Finitely many vertices, i.e. the quotient is unital. Always true for
    /// the graphs handled here.
    #[default]
    Unital,
    /// Finitely many vertices and edges: no omega bundle may survive in `E \ H`.
    StrictFinite,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RankCertificate {
    /// The graph has no closed path.
    Acyclic,
    /// `E \ H` satisfies the three purely-infinite-simple conditions.
    PisQuotient { h: HsSet, verdict: PisVerdict },
    /// The graph has a closed path and none of the `candidates` proper
    /// hereditary saturated sets gives a qualifying quotient.
    Exhausted { candidates: usize, cycle: Cycle },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StableRank {
    pub value: RankValue,
    pub mode: RankMode,
    pub certificate: RankCertificate,
}

impl StableRank {
    /// Re-derives the certificate from the graph.
    pub fn verify(&self, graph: &Graph, limit: usize) -> bool {
        match &self.certificate {
            RankCertificate::Acyclic => self.value == RankValue::One && is_acyclic(graph),
            RankCertificate::PisQuotient { h, .. } => {
                let Ok(h) = HsSet::new(graph, h.set().clone()) else {
                    return false;
                };
                let q = restrict(graph, &h);
                self.value == RankValue::Infinite
                    && h.len() < graph.vertex_count()
                    && purely_infinite_simple(&q).verdict
                    && (self.mode == RankMode::Unital || q.is_row_finite())
            }
            RankCertificate::Exhausted { candidates, cycle } => {
                let Ok(recheck) = Cycle::new(graph, cycle.edges().to_vec()) else {
                    return false;
                };
                let Ok(all) = evaluate_quotients(graph, limit) else {
                    return false;
                };
                self.value == RankValue::Two
                    && recheck == *cycle
                    && all.len() == *candidates
                    && !all.iter().any(|q| qualifies(self.mode, q.verdict.verdict, q.edge_finite))
            }
        }
    }
}

fn qualifies(mode: RankMode, pis: bool, edge_finite: bool) -> bool {
    pis && (mode == RankMode::Unital || edge_finite)
}

/// The stable-rank trichotomy: 1 for acyclic graphs, infinity when some
/// quotient `E \ H` is finite and purely infinite simple, 2 otherwise.
pub fn stable_rank(graph: &Graph, mode: RankMode, limit: usize) -> Result<StableRank> {
    let Some(cycle) = find_cycle_within(graph, |_| true) else {
        return Ok(StableRank {
            value: RankValue::One,
            mode,
            certificate: RankCertificate::Acyclic,
        });
    };
    let candidates = evaluate_quotients(graph, limit)?;
    let count = candidates.len();
    if let Some(q) = candidates
        .into_iter()
        .find(|q| qualifies(mode, q.verdict.verdict, q.edge_finite))
    {
        return Ok(StableRank {
            value: RankValue::Infinite,
            mode,
            certificate: RankCertificate::PisQuotient {
                h: q.h,
                verdict: q.verdict,
            },
        });
    }
    Ok(StableRank {
        value: RankValue::Two,
        mode,
        certificate: RankCertificate::Exhausted {
            candidates: count,
            cycle,
        },
    })
}

/// The stable rank under both readings of finiteness.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RankComparison {
    pub unital: StableRank,
    pub strict: StableRank,
}

impl RankComparison {
    pub fn diverges(&self) -> bool {
        self.unital.value != self.strict.value
    }

    pub fn get(&self, mode: RankMode) -> &StableRank {
        match mode {
            RankMode::Unital => &self.unital,
            RankMode::StrictFinite => &self.strict,
        }
    }
}

pub fn compare_modes(graph: &Graph, limit: usize) -> Result<RankComparison> {
    Ok(RankComparison {
        unital: stable_rank(graph, RankMode::Unital, limit)?,
        strict: stable_rank(graph, RankMode::StrictFinite, limit)?,
    })
}

/// `H = closure(H₀)` and whether `E/(H, ∅)` has isolated cycles.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IsolatedCycleDecomposition {
    pub h0: VertexSet,
    pub h: HsSet,
    pub quotient: QuotientGraph,
    pub check: bool,
}

pub fn isolated_cycle_decomposition(graph: &Graph) -> IsolatedCycleDecomposition {
    let d = compute_h0(graph);
    let pair = AdmissiblePair {
        h: d.h.clone(),
        b: VertexSet::new(),
    };
    let q = quotient(graph, &pair);
    IsolatedCycleDecomposition {
        check: has_isolated_cycles(&q.graph),
        h0: d.h0,
        h: d.h,
        quotient: q,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::DEFAULT_LATTICE_LIMIT;

    const LIMIT: usize = DEFAULT_LATTICE_LIMIT;

    fn rank(g: &Graph) -> RankValue {
        let r = stable_rank(g, RankMode::Unital, LIMIT).unwrap();
        assert!(r.verify(g, LIMIT));
        r.value
    }

    fn rose_with(n: usize, extra: impl FnOnce(crate::graph::GraphBuilder) -> crate::graph::GraphBuilder) -> Graph {
        let b = (0..n).fold(Graph::builder().vertex("v"), |b, i| b.edge(format!("l{i}"), "v", "v", 1));
        extra(b).build().unwrap()
    }

    #[test]
    fn trichotomy_examples() {
        let isolated = Graph::builder().vertex("v").build().unwrap();
        assert_eq!(rank(&isolated), RankValue::One);
        let line = Graph::builder()
            .vertices(["v", "w"])
            .edge("e", "v", "w", 1)
            .build()
            .unwrap();
        assert_eq!(rank(&line), RankValue::One);
        assert_eq!(rank(&rose_with(1, |b| b)), RankValue::Two);
        let toeplitz = rose_with(1, |b| b.vertex("w").edge("f", "v", "w", 1));
        assert_eq!(rank(&toeplitz), RankValue::Two);
        assert_eq!(rank(&rose_with(2, |b| b)), RankValue::Infinite);
        let sourced = rose_with(2, |b| b.vertex("w").edge("s", "w", "v", 1));
        assert_eq!(rank(&sourced), RankValue::Infinite);
        let beside_loop = rose_with(2, |b| b.vertex("w").edge("c", "w", "w", 1));
        assert_eq!(rank(&beside_loop), RankValue::Infinite);
        let fed_loop = rose_with(2, |b| b.vertex("w").edge("c", "w", "w", 1).edge("s", "w", "v", 1));
        assert_eq!(rank(&fed_loop), RankValue::Two);
    }

    #[test]
    fn omega_rose_depends_on_mode() {
        let g = Graph::builder().vertex("v").omega("e", "v", "v").build().unwrap();
        let c = compare_modes(&g, LIMIT).unwrap();
        assert_eq!(c.unital.value, RankValue::Infinite);
        assert_eq!(c.strict.value, RankValue::Two);
        assert!(c.diverges());
        assert!(c.unital.verify(&g, LIMIT) && c.strict.verify(&g, LIMIT));
    }

    #[test]
    fn tampered_certificates_fail() {
        let rose = rose_with(2, |b| b);
        let mut r = stable_rank(&rose, RankMode::Unital, LIMIT).unwrap();
        r.value = RankValue::Two;
        assert!(!r.verify(&rose, LIMIT));
        let acyclic = StableRank {
            value: RankValue::One,
            mode: RankMode::Unital,
            certificate: RankCertificate::Acyclic,
        };
        assert!(!acyclic.verify(&rose, LIMIT));
    }

    #[test]
    fn decomposition_examples() {
        let toeplitz = rose_with(1, |b| b.vertex("w").edge("f", "v", "w", 1));
        let d = isolated_cycle_decomposition(&toeplitz);
        assert!(d.h.is_empty() && d.check);

        let rose = rose_with(2, |b| b);
        let d = isolated_cycle_decomposition(&rose);
        assert_eq!(d.h.names(&rose), ["v"]);
        assert!(d.quotient.graph.is_empty() && d.check);

        let chained = Graph::builder()
            .vertices(["r1", "r2"])
            .edge("a", "r1", "r1", 1)
            .edge("b", "r1", "r1", 1)
            .edge("c", "r2", "r2", 1)
            .edge("d", "r2", "r2", 1)
            .edge("e", "r1", "r2", 1)
            .build()
            .unwrap();
        let d = isolated_cycle_decomposition(&chained);
        assert_eq!(d.h0.len(), 2);
        assert_eq!(d.h.len(), 2);
        assert!(d.quotient.graph.is_empty() && d.check);
    }
}
