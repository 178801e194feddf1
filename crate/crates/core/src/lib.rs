//! Citation-network analytics.
//!
//! The crate covers the family of link-based ranking measures used on
//! citation data: raw degree counts, PageRank, HITS hubs and authorities,
//! recursive journal influence weights, total cites, the two-year impact
//! factor, the h-index, and Bradford / concentration statistics over ranked
//! journal distributions. The [`study`] module contains the tabulation
//! machinery for sampling a researcher's most-cited works and comparing the
//! rankings of the journals they appeared in.
//!
//! Solvers run their inner loops through [`par`], which dispatches to rayon
//! when the `parallel` feature is enabled and falls back to plain iteration
//! otherwise. Both paths produce bit-identical results.

pub mod concentration;
pub mod eigen;
pub mod error;
pub mod graph;
pub mod io;
pub mod journal;
pub mod par;
pub mod report;
pub mod score;
pub mod study;

pub use error::{Error, Result};
pub use graph::{CitationGraph, DocType, DocumentRecord, JournalCitationMatrix, TimeWindow};
pub use par::Execution;
pub use score::ScoreVector;
