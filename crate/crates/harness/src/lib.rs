//! Command-line harness: JSON file formats, deterministic instance
//! generators, and the verification suites that run every theorem-backed
//! check across generated corpora.

pub mod files;
pub mod generate;
pub mod report;
pub mod suites;
