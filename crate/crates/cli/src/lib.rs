//! Job files, JSON reports and the example corpus behind the `gorenstein` binary.

pub mod app;
pub mod commands;
pub mod corpus;
pub mod error;
pub mod job;
pub mod report;
