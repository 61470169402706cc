//! The catalogue of worked examples, bundled fixtures and the pencil file format.

mod entries;
mod file;
mod fixture;

pub use entries::{catalog, catalog_ids, run_catalog, CatalogEntry, Check, CheckStatus, EntryOutcome, Expected, RunConfig};
pub use file::{pencil_from_json, pencil_to_json, reattach_certificate, rebuild, FileEntry, PencilFile};
pub use fixture::{fixture_names, fixture_parse, fixture_text, parse_matrix_text};
