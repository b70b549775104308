//! Cooperative coloring of hypergraph families.
//!
//! * [`hypergraph`]: hypergraphs, families, colorings, chain systems, and the
//!   verifier.
//! * [`generators`]: tight and loose cycles and paths.
//! * [`chain_partition`]: the two-cycle partition construction and
//!   cooperative 2-coloring of chain-system pairs.
//! * [`multipartite`]: the `[k]^m` lower-bound family, bound formulas, and
//!   the semi-random colorer for k-partite families.
//! * [`oracle`]: exhaustive ground truth used to cross-check the above.
//! * [`doc`]: JSON documents for instances, chains, and colorings.
//! * [`experiment`]: seeded sweep trials and partition timings.

pub mod chain_partition;
pub mod doc;
pub mod error;
pub mod experiment;
pub mod generators;
pub mod hypergraph;
pub mod multipartite;
pub mod oracle;
pub mod rng;

pub use error::{Error, Result};
