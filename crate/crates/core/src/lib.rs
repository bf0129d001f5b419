//! Graphs that keep p disjoint c-cliques after any k vertex faults.
//!
//! The crate verifies the property exactly, builds the known extremal
//! families, recognises minimum graphs for a single fault, audits the
//! structural consequences of the property, and searches small orders
//! for the fewest edges.

pub mod audit;
pub mod blocks;
pub mod canon;
pub mod chordal;
pub mod combin;
pub mod connectivity;
pub mod construct;
pub mod error;
pub mod exec;
pub mod format;
pub mod graph;
pub mod packing;
pub mod search;
pub mod set;
pub mod verify;

pub use audit::{recognize_min_1ft, AuditReport, Recognition};
pub use canon::{canonical_form, CanonicalForm};
pub use error::{Error, Result};
pub use exec::Exec;
pub use graph::{Graph, GraphBuilder};
pub use packing::{find_disjoint_cliques, CliquePacking};
pub use search::{probe_conjecture, search_minimum, Budget, SearchOptions, SearchReport};
pub use set::VertexSet;
pub use verify::{verify_ft, FTParams, FTVerdict};
