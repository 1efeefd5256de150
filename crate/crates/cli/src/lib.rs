//! Command-line front end: presentation documents, verbs and reports.

pub mod commands;
pub mod demos;
pub mod document;
pub mod parser;
pub mod report;

pub use commands::{run, Cli, CliError, Outcome};
pub use document::Document;
pub use parser::{parse_document, ParseError};
pub use report::{Format, Report};
