//! Library surface of the command-line tool: the model document format
//! and the report types, shared with the binary and its tests.

pub mod doc;
pub mod report;
