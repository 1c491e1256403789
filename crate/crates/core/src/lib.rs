//! Core algorithms for building and calibrating a publication-level
//! topic classification from a direct-citation graph.
//!
//! The crate is `no_std` (with `alloc`) and operates on compact
//! integer-indexed structures. Mapping between external publication
//! identifiers and node indices, file formats and orchestration live in
//! the companion `topicgran` crate.
//!
//! The pipeline the pieces compose into:
//!
//! 1. [`graph::CiteGraph`] — the pruned direct-citation graph.
//! 2. [`baseline`] — synthesis-article baseline classes with disjoint
//!    reference memberships.
//! 3. [`relatedness`] — the normalized citation network fed to the
//!    clusterer.
//! 4. [`cluster`] — constant-Potts-model quality and the smart
//!    local moving optimizer.
//! 5. [`compare`] — baseline-restricted partitions and the Adjusted
//!    Rand Index.
//! 6. [`calibrate`] — the resolution sweep that picks the granularity
//!    with the best baseline agreement.
//! 7. [`analytics`] — class-size distributions and chi-square keyword
//!    labels.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod analytics;
pub mod baseline;
pub mod calibrate;
pub mod cluster;
pub mod compare;
pub mod graph;
pub mod partition;
pub mod relatedness;

pub use graph::{CiteGraph, DocType, GraphError};
pub use partition::Partition;
