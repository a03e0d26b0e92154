//! Library surface of the command-line front end: the expression parser
//! and the JSON document types, shared with the integration tests.

pub mod doc;
pub mod parse;
