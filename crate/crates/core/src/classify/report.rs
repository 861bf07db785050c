use std::collections::BTreeMap;

use serde::Serialize;

use super::pis::{evaluate_quotients, purely_infinite_simple, PisVerdict};
use super::rank::{compare_modes, isolated_cycle_decomposition, RankCertificate, RankValue, StableRank};
use super::trace::{graph_trace, GraphTrace};
use crate::cycles::{condition_k, condition_l, find_cycles, has_isolated_cycles, is_acyclic};
use crate::error::Result;
use crate::graph::{classify_vertices, EmitterKind, Graph, Multiplicity};
use crate::lattice::{admissible_pairs, enumerate_hs_sets};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VertexReport {
    pub name: String,
    pub kind: EmitterKind,
    pub out_degree: Multiplicity,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConditionReport {
    pub holds: bool,
    pub witness: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LatticeReport {
    pub size: usize,
    pub trivial: bool,
    pub members: Vec<Vec<String>>,
    pub admissible_pairs: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PisReport {
    pub verdict: bool,
    pub trivial_lattice: bool,
    pub has_cycle: bool,
    pub condition_l: bool,
    pub proper_member: Option<Vec<String>>,
    pub exitless_cycle: Option<String>,
}

impl PisReport {
    pub fn new(verdict: &PisVerdict, graph: &Graph) -> PisReport {
        PisReport {
            verdict: verdict.verdict,
            trivial_lattice: verdict.trivial_lattice,
            has_cycle: verdict.has_cycle,
            condition_l: verdict.condition_l,
            proper_member: verdict.proper_member.as_ref().map(|h| h.names(graph)),
            exitless_cycle: verdict.exitless_cycle.as_ref().map(|c| c.label(graph)),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum CertificateReport {
    Acyclic,
    PisQuotient { h: Vec<String>, quotient: PisReport },
    Exhausted { candidates: usize, cycle: String },
}

impl CertificateReport {
    pub fn new(rank: &StableRank, graph: &Graph) -> CertificateReport {
        match &rank.certificate {
            RankCertificate::Acyclic => CertificateReport::Acyclic,
            RankCertificate::PisQuotient { h, verdict } => {
                let quotient = crate::constructions::restrict(graph, h);
                CertificateReport::PisQuotient {
                    h: h.names(graph),
                    quotient: PisReport::new(verdict, &quotient),
                }
            }
            RankCertificate::Exhausted { candidates, cycle } => CertificateReport::Exhausted {
                candidates: *candidates,
                cycle: cycle.label(graph),
            },
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RankReport {
    pub value: RankValue,
    pub certificate: CertificateReport,
    pub strict_value: RankValue,
    pub strict_certificate: CertificateReport,
    pub modes_diverge: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DecompositionReport {
    pub h0: Vec<String>,
    pub h: Vec<String>,
    pub quotient_vertices: Vec<String>,
    pub check: bool,
}

/// Everything the library decides about one graph, in a fixed field order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassificationReport {
    pub vertices: Vec<VertexReport>,
    pub row_finite: bool,
    pub acyclic: bool,
    pub cycles: Vec<String>,
    pub condition_l: ConditionReport,
    pub condition_k: ConditionReport,
    pub isolated_cycles: bool,
    pub lattice: LatticeReport,
    pub purely_infinite_simple: PisReport,
    pub pis_quotients: Vec<Vec<String>>,
    pub graph_trace: Option<BTreeMap<String, String>>,
    pub h0_decomposition: DecompositionReport,
    pub stable_rank: RankReport,
}

pub fn trace_values(trace: &GraphTrace, graph: &Graph) -> BTreeMap<String, String> {
    graph
        .vertices()
        .map(|v| (graph.name(v).to_string(), trace.value(v).to_string()))
        .collect()
}

pub fn classification_report(graph: &Graph, limit: usize) -> Result<ClassificationReport> {
    let vertices = classify_vertices(graph)
        .into_iter()
        .enumerate()
        .map(|(v, c)| VertexReport {
            name: graph.name(v).to_string(),
            kind: c.kind,
            out_degree: c.out_degree,
        })
        .collect();

    let l = condition_l(graph);
    let k = condition_k(graph);
    let members = enumerate_hs_sets(graph, limit)?;
    let pairs = admissible_pairs(graph, limit)?.len();
    let quotients = evaluate_quotients(graph, limit)?;
    let ranks = compare_modes(graph, limit)?;
    let decomposition = isolated_cycle_decomposition(graph);

    Ok(ClassificationReport {
        vertices,
        row_finite: graph.is_row_finite(),
        acyclic: is_acyclic(graph),
        cycles: find_cycles(graph).iter().map(|c| c.label(graph)).collect(),
        condition_l: ConditionReport {
            holds: l.holds,
            witness: l.exitless_cycle.map(|c| c.label(graph)),
        },
        condition_k: ConditionReport {
            holds: k.holds,
            witness: k
                .witness
                .map(|(v, c)| format!("{}: {}", graph.name(v), c.label(graph))),
        },
        isolated_cycles: has_isolated_cycles(graph),
        lattice: LatticeReport {
            size: members.len(),
            trivial: members.len() <= 2,
            members: members.iter().map(|h| h.names(graph)).collect(),
            admissible_pairs: pairs,
        },
        purely_infinite_simple: PisReport::new(&purely_infinite_simple(graph), graph),
        pis_quotients: quotients
            .iter()
            .filter(|q| q.verdict.verdict)
            .map(|q| q.h.names(graph))
            .collect(),
        graph_trace: graph_trace(graph).map(|t| trace_values(&t, graph)),
        h0_decomposition: DecompositionReport {
            h0: decomposition.h0.names(graph),
            h: decomposition.h.names(graph),
            quotient_vertices: decomposition.quotient.graph.names().to_vec(),
            check: decomposition.check,
        },
        stable_rank: RankReport {
            value: ranks.unital.value,
            certificate: CertificateReport::new(&ranks.unital, graph),
            strict_value: ranks.strict.value,
            strict_certificate: CertificateReport::new(&ranks.strict, graph),
            modes_diverge: ranks.diverges(),
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::DEFAULT_LATTICE_LIMIT;

    #[test]
    fn toeplitz_report() {
        let g = Graph::builder()
            .vertices(["v", "w"])
            .edge("e", "v", "v", 1)
            .edge("f", "v", "w", 1)
            .build()
            .unwrap();
        let r = classification_report(&g, DEFAULT_LATTICE_LIMIT).unwrap();
        assert_eq!(r.stable_rank.value, RankValue::Two);
        assert!(!r.condition_k.holds);
        assert!(r.condition_l.holds);
        assert_eq!(r.lattice.size, 3);
        assert_eq!(r.lattice.admissible_pairs, 3);
    }

    #[test]
    fn single_vertex_report() {
        let g = Graph::builder().vertex("v").build().unwrap();
        let r = classification_report(&g, DEFAULT_LATTICE_LIMIT).unwrap();
        assert_eq!(r.stable_rank.value, RankValue::One);
        assert!(r.condition_k.holds && r.condition_l.holds && r.isolated_cycles);
        assert!(r.cycles.is_empty());
    }

    #[test]
    fn rose_report() {
        let g = Graph::builder()
            .vertex("v")
            .edge("a", "v", "v", 1)
            .edge("b", "v", "v", 1)
            .build()
            .unwrap();
        let r = classification_report(&g, DEFAULT_LATTICE_LIMIT).unwrap();
        assert_eq!(r.stable_rank.value, RankValue::Infinite);
        assert!(r.purely_infinite_simple.verdict);
        assert!(r.graph_trace.is_none());
        let json = serde_json::to_string(&r).unwrap();
        assert!(json.contains("\"value\":\"infinity\""));
    }
}
