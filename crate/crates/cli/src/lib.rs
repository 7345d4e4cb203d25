//! Command-line front end: graph codecs, JSON report documents and the
//! `qsym` subcommands.

pub mod commands;
pub mod document;
pub mod format;
