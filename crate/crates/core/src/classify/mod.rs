//! Decision procedures built on the graph constructions: purely infinite
//! simplicity, purely infinite simple quotients, graph traces and the
//! stable-rank trichotomy.

mod pis;
mod rank;
mod report;
mod trace;

pub use pis::{evaluate_quotients, pis_quotients, purely_infinite_simple, PisVerdict, QuotientVerdict};
pub use rank::{
    compare_modes, isolated_cycle_decomposition, stable_rank, IsolatedCycleDecomposition, RankCertificate,
    RankComparison, RankMode, RankValue, StableRank,
};
pub use report::{
    classification_report, trace_values, CertificateReport, ClassificationReport, ConditionReport,
    DecompositionReport, LatticeReport, PisReport, RankReport, VertexReport,
};
pub use trace::{graph_trace, GraphTrace};
