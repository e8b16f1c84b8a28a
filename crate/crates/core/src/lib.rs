//! Knowledge-graph construction benchmark: RDF model, ontology, exchange
//! formats, pipeline engine, built-in tasks, metrics, ranking and the
//! benchmark generator.

pub mod benchgen;
pub mod exchange;
pub mod metrics;
pub mod ontology;
pub mod par;
pub mod pipeline;
pub mod ranking;
pub mod rdf;
pub mod similarity;
pub mod tasks;
