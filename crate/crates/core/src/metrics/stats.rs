//! Statistical metrics: sizes, typing and density.

use serde::{Deserialize, Serialize};

use crate::rdf::{graph_stats_primitives, vocab, Graph, Term};

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct StatReport {
    pub fact_count: usize,
    pub entity_count: usize,
    pub relation_name_count: usize,
    pub type_count: usize,
    pub untyped_count: usize,
    pub density: f64,
}

/// Density counts entity-to-entity triples over the `n(n-1)` directed pairs.
pub fn compute_statistics(kg: &Graph) -> StatReport {
    let prim = graph_stats_primitives(kg);
    let n = prim.entities.len();
    let untyped = prim.entities.iter().filter(|e| kg.types_of(e).next().is_none()).count();
    let edges =
        kg.iter().filter(|t| t.predicate.as_str() != vocab::RDF_TYPE && matches!(t.object, Term::Iri(_))).count();
    let density = if n <= 1 { 0.0 } else { (edges as f64 / (n as f64 * (n - 1) as f64)).min(1.0) };
    StatReport {
        fact_count: kg.len(),
        entity_count: n,
        relation_name_count: prim.predicates.len(),
        type_count: prim.classes.len(),
        untyped_count: untyped,
        density,
    }
}
