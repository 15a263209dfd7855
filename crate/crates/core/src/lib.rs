//! Graph similarity through mismatch norms.
//!
//! Two graphs of the same order are compared by fixing a bijection between
//! their vertex sets and looking at the *mismatch graph*: a signed graph
//! whose positive edges are present only on the left and whose negative
//! edges are present only on the right. Several norms of that signed graph
//! (edge count, lp operator norms, maximum degree) induce graph metrics by
//! minimising over all bijections.
//!
//! The crate provides:
//!
//! * the basic vocabulary ([`graph`]): graphs, signed graphs, alignments and
//!   the mismatch-graph constructor;
//! * exact norm evaluation and certified intervals ([`metrics`]);
//! * dense spectral routines for the p = 2 cases ([`spectral`]);
//! * small-scale exact distance solvers: exhaustive search, branch and
//!   bound, and searches over structured alignment families ([`solve`]);
//! * degree-forcing gadget constructions — attached cliques, pendant leaves,
//!   chorded cycles — together with structural verifiers ([`gadgets`]);
//! * Cayley tables, Latin square graphs, strongly regular parameter
//!   detection and the twinned-cell alignment construction ([`latin`]);
//! * a fixture zoo and a catalog of small cubic graphs ([`fixtures`]).
//!
//! Everything is `no_std` + `alloc`; IO, file formats and the CLI live in
//! the companion `mismatch-cli` crate.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod dense;
pub mod fixtures;
pub mod gadgets;
pub mod graph;
pub mod hamilton;
pub mod iso;
pub mod latin;
pub mod metrics;
pub mod perm;
pub mod solve;
pub mod spectral;

mod flt;

pub use graph::{
    check_regular_balance, mismatch_graph, Alignment, Edge, Graph, GraphFacts, SignedGraph,
    VertexId,
};
pub use metrics::{mmc, mmc_sandwich, mu_abs_p, mu_edit, mu_p, MmcValue, NormValue, PExponent};
pub use solve::{DistanceQuery, DistanceResult, MetricKind, RestrictedFamily, SearchMode};
