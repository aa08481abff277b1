//! Experiment orchestration: the end-to-end pipeline, parallel threshold
//! scans, audits, and the command line.

pub mod audit;
pub mod commands;
pub mod format;
pub mod pipeline;
pub mod scan;

pub use audit::{audit, elbr_report, AuditKind, AuditOptions, AuditOutput, ElbrReport, TraceReport};
pub use format::fmt_real;
pub use pipeline::{records_csv, run_pipeline, CapPolicy, Mode, PipelineOutcome, PipelineParams, ScanRecord, CSV_HEADER};
pub use scan::{scan, GridSummary, ScanConfig, ScanError, ScanOutput, ScanSummary, THREADS_ENV};
