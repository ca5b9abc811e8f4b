//! Parallel classification, JSON schemas, golden-table reproduction and the
//! `twistroot` command line, on top of `twistroot-core`.

pub mod output;
pub mod reproduce;
pub mod run;
pub mod schema;
pub mod tables;
