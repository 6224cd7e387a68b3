//! Instance files, generators, reports and SVG output around
//! `committee-core`, plus the `committee` command line.

pub mod app;
pub mod generators;
pub mod instance;
pub mod report;
pub mod svg;
