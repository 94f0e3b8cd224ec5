//! Library side of the `helmsym` binary: flag parsing, table writers, command
//! implementations, and the acceptance suite.

pub mod commands;
pub mod output;
pub mod parse;
pub mod verify;
