//! Command-line front end: expression parsing, the verification sweep, the
//! on-disk representation cache, and the command implementations.

pub mod cache;
pub mod commands;
pub mod parser;
pub mod scalar;
pub mod sweep;
