//! Commuting graphs of generalized dihedral groups `D(G) = G ⋊ C2` over finite
//! abelian `G`.
//!
//! Every invariant is available twice: as a closed form in `(n, r)` and as an
//! exact computation on the graph itself. [`report`] runs both and records
//! where they agree.

pub mod abelian;
pub mod cache;
pub mod detour;
pub mod dihedral;
pub mod error;
pub mod graph;
pub mod invariants;
mod masks;
pub mod params;
pub mod report;
pub mod resolving;
pub mod sweep;

pub use abelian::{AbelianGroup, GroupElement};
pub use dihedral::{DihedralElement, DihedralGroup, Omega, OmegaPartition, Part, Sign};
pub use error::{Error, Result};
pub use graph::{
    build_commuting_graph, build_structural_graph, edge_sets_equal, CommutingGraph, VertexSelector,
};
pub use params::DihedralParams;
pub use report::{build_report, Caps, Fault, InvariantReport, ReportOptions};
pub use resolving::ResolvingPolynomial;
