//! RDF data model, N-Triples I/O and the indexed triple store.

mod graph;
mod ntriples;
mod term;
pub mod vocab;

use std::path::PathBuf;

pub use graph::{graph_stats_primitives, rename_namespace, Graph, GraphPrimitives};
pub use ntriples::{
    literal_to_string, parse_ntriples, read_ntriples_file, serialize_ntriples, term_to_string, triple_to_line,
    write_ntriples_file,
};
pub use term::{Iri, Literal, Term, Triple};

#[derive(Debug, thiserror::Error)]
pub enum RdfError {
    #[error("invalid IRI {iri:?}: {reason}")]
    InvalidIri { iri: String, reason: &'static str },
    #[error("invalid language tag {0:?}")]
    InvalidLangTag(String),
    #[error("N-Triples parse error on line {line}: {message} (line: {content:?})")]
    Parse { line: usize, content: String, message: String },
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

/// Shorthand for vocabulary constants and other known-valid IRIs.
pub fn iri(value: &str) -> Iri {
    Iri::new_unchecked(value)
}
