//! Command-line front end: argument types and command dispatch.

mod args;
mod commands;

pub use args::{Cli, Format, PhiArgs, SubsetArgs, Verb};
pub use commands::{run, Output};
