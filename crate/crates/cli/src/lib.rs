//! Command-line front end: JSON documents for series plus the `kvassoc` subcommands.

mod app;
pub mod document;
pub mod suites;

pub use app::{run, Cli, CliError};
pub use document::{DocError, Kind, Series, SeriesDocument, Term};
