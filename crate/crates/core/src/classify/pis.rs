use crate::constructions::restrict;
use crate::cycles::{condition_l, is_acyclic};
use crate::error::Result;
use crate::graph::{Cycle, Graph};
use crate::lattice::{enumerate_hs_sets, is_trivial_lattice, HsSet};

/// The three graph conditions characterising purely infinite simplicity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PisVerdict {
    pub verdict: bool,
    /// The only hereditary saturated sets are `∅` and `E⁰`.
    pub trivial_lattice: bool,
    /// The graph contains a closed path.
    pub has_cycle: bool,
    pub condition_l: bool,
    /// A proper nonempty hereditary saturated set, when the lattice is not trivial.
    pub proper_member: Option<HsSet>,
    /// A closed path without exit, when Condition (L) fails.
    pub exitless_cycle: Option<Cycle>,
}

impl PisVerdict {
    /// Whether a failing verdict carries a checkable reason.
    pub fn failure_is_witnessed(&self, graph: &Graph) -> bool {
        if self.verdict {
            return false;
        }
        let lattice_witness = self.proper_member.as_ref().is_some_and(|h| {
            !h.is_empty() && h.len() < graph.vertex_count() && HsSet::new(graph, h.set().clone()).is_ok()
        });
        let l_witness = self.exitless_cycle.as_ref().is_some_and(|c| {
            c.vertices(graph)
                .iter()
                .all(|&v| graph.out_degree(v) == crate::graph::Multiplicity::ONE)
        });
        lattice_witness || !self.has_cycle && is_acyclic(graph) || l_witness
    }
}

pub fn purely_infinite_simple(graph: &Graph) -> PisVerdict {
    let lattice = is_trivial_lattice(graph);
    let has_cycle = !is_acyclic(graph);
    let l = condition_l(graph);
    PisVerdict {
        verdict: lattice.trivial && has_cycle && l.holds,
        trivial_lattice: lattice.trivial,
        has_cycle,
        condition_l: l.holds,
        proper_member: lattice.proper_member,
        exitless_cycle: l.exitless_cycle,
    }
}

/// A proper hereditary saturated set and the verdict on `E \ H`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientVerdict {
    pub h: HsSet,
    pub verdict: PisVerdict,
    /// `E \ H` has no omega bundles, so it is finite in the edge sense too.
    pub edge_finite: bool,
}

/// Evaluates `E \ H` for every `H ∈ 𝓗_E` other than `E⁰`, in lattice order.
pub fn evaluate_quotients(graph: &Graph, limit: usize) -> Result<Vec<QuotientVerdict>> {
    Ok(enumerate_hs_sets(graph, limit)?
        .into_iter()
        .filter(|h| h.len() < graph.vertex_count())
        .map(|h| {
            let quotient = restrict(graph, &h);
            QuotientVerdict {
                verdict: purely_infinite_simple(&quotient),
                edge_finite: quotient.is_row_finite(),
                h,
            }
        })
        .collect())
}

/// The `H` for which the quotient by `I(H, B_H)` is purely infinite simple.
pub fn pis_quotients(graph: &Graph, limit: usize) -> Result<Vec<QuotientVerdict>> {
    Ok(evaluate_quotients(graph, limit)?
        .into_iter()
        .filter(|q| q.verdict.verdict)
        .collect())
}
