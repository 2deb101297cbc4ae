//! Graph file formats and side tables.

pub mod ndjson;
pub mod sort_triples;
pub mod tables;
pub mod turtle;

pub use ndjson::{load_ndjson, read_ndjson, save_ndjson, statement_key, write_ndjson};
pub use sort_triples::{emit_sort_triples, save_sort_triples};
pub use tables::{load_category_map, load_containment, load_inverse_map};
pub use turtle::{ingest_turtle, load_turtle, IngestReport};
