//! The bigraded complex built from `H_1 + H^1` of edge-deleted subgraphs,
//! its cohomology and the deletion filtration.

mod cohomology;
mod complex;
mod filtration;
mod hh;
pub mod wedge;

pub use cohomology::{cohomology, integral_torsion, rank_table, BigradedCohomology, RankEntry};
pub(crate) use complex::position_after;
pub use complex::{build_complex, edge_deletion_map, Cell, Summand, UpsilonComplex};
pub use filtration::{
    deletion_filtration, deletion_filtration_of, filtration_table, grading_filtration,
    DeletionFiltration, FiltrationEntry,
};
pub use hh::{d_prime, hh_space, HHSpace};
