//! A small text format for complexes, actions, maps and filtration data,
//! a command runner over parsed documents, and a built-in catalog of
//! worked examples with their expected values.

mod document;
mod entries;
mod parse;
mod print;
mod report;
mod run;

pub use document::*;
pub use entries::{catalog, check_catalog, check_entry, entry, CatalogEntry, Expected};
pub use parse::parse_document;
pub use print::print_document;
pub use report::{Format, Record, Report};
pub use run::{check_all, run, Command, Options, MAX_ENUMERATED_DIM};
