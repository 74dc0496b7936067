//! Graded coefficient rings, bigraded cochains `C^{p,q} = Hom(C_p, A_q)` of
//! total degree `p - q`, the graded coboundary and cup product, and the
//! calculus of quadratic sign families.

pub mod cochain;
pub mod reindex;
pub mod ring;
pub mod signs;

pub use cochain::{bigraded_cohomology, graded_cup, graded_delta, ungraded_cup, BigradedCochain};
pub use reindex::{engine_to_paper, paper_to_engine, Indexing, Reindexing};
pub use ring::{GradedRing, Level};
pub use signs::{eta_commutation, Discrepancy, EtaReport, Mod2Poly, SignFamily};
