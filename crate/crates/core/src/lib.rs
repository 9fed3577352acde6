//! Consensus Bayesian network structures.
//!
//! Several DAGs over one node set are fused into a single DAG whose
//! independence model is contained in each of theirs, aiming for the
//! fewest parameters. The building block is the minimal directed
//! independence map of a DAG relative to a node ordering, computed by
//! percolating arc reversals through the DAG ([`mdi`]). Separation
//! queries, exhaustive solvers for tiny inputs and ordering search round
//! things out.
//!
//! ```
//! use bnconsensus::{mdi_map, Dag, NodeOrder};
//!
//! let g = Dag::from_named(&["A", "B", "C"], &[("A", "B"), ("B", "C")]).unwrap();
//! let alpha = NodeOrder::from_names(&g, &["C", "B", "A"]).unwrap();
//! let h = mdi_map(&g, &alpha).unwrap();
//! assert!(h.has_arc(2, 1) && h.has_arc(1, 0));
//! ```

pub mod consensus;
pub mod dag;
pub mod enumerate;
mod error;
pub mod generate;
pub mod io;
pub mod mdi;
pub mod separation;
pub mod transform;

pub use consensus::{
    exact_consensus, heuristic_consensus, verify_imap, verify_instance, ConsensusInstance, ConsensusResult,
};
pub use dag::{Arc, CardinalityMap, Dag, NodeId, NodeOrder};
pub use error::{Error, Result};
pub use mdi::{construct_beta, mdi_map, Method, Step, TieBreak};
pub use num_bigint::BigUint;
pub use separation::{d_separated, SeparationQuery, Separator};
pub use transform::{g2h, validate_trace, TransformStep, TransformTrace};
