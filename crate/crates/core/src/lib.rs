//! Co-citation interdisciplinarity index (IDRI).
//!
//! A paper whose citers keep citing it alongside the same other papers sits
//! inside an established research area; a paper whose citers share few
//! co-references is interdisciplinary. This crate counts the duplicated
//! co-citations (non-redundant X-motifs) of every paper in a citation edge
//! list, turns them into the normalized XM ratio and IDRI = 1 - XM, and
//! pools papers into groups through the generalized mediant.
//!
//! Modules:
//! - [`graph`]: citation graph model, CSV ingestion, metadata.
//! - [`motif`]: per-paper counts `s`, `D`, `k`, `q` (fast path).
//! - [`oracle`]: brute-force X-motif enumeration for small graphs.
//! - [`metric`]: exact-rational metrics, mediant aggregation, rendering.
//! - [`synth`]: preferential-attachment generator and decay trend.
//! - [`cli`]: the `idri` command line.

pub mod cli;
pub mod correlation;
pub mod error;
pub mod graph;
pub mod metric;
pub mod motif;
pub mod oracle;
pub mod synth;

pub use error::{Error, Result};
pub use graph::{
    ingest_edges_csv, ingest_metadata, read_edges_csv, read_metadata_csv, write_edges_csv,
    CitationGraph, GraphBuilder, GroupingTable, IngestSummary, Metadata, MetadataRecord, PaperId,
    RefMode,
};
pub use metric::{
    aggregate, compute_metric, condition_11, generalized_mediant, mediant, render_decimal,
    render_percent, AggregateResult, AggregateStatus, IncludeRule, MetricResult, MetricStatus,
    Rational,
};
pub use motif::{
    all_focal_stats, co_citer_multiplicities, focal_profile, focal_stats, FocalProfile, FocalStats,
};
pub use oracle::enumerate_q;
pub use synth::{decay_trend, generate, SynthConfig};
