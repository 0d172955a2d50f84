//! Command implementations and the corpus runner behind the `hybrid` binary.

pub mod commands;
pub mod corpus;
