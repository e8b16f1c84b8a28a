//! Vocabulary IRIs used across the crate.

pub const RDF_NS: &str = "http://www.w3.org/1999/02/22-rdf-syntax-ns#";
pub const RDFS_NS: &str = "http://www.w3.org/2000/01/rdf-schema#";
pub const OWL_NS: &str = "http://www.w3.org/2002/07/owl#";
pub const SKOS_NS: &str = "http://www.w3.org/2004/02/skos/core#";
pub const XSD_NS: &str = "http://www.w3.org/2001/XMLSchema#";

pub const RDF_TYPE: &str = "http://www.w3.org/1999/02/22-rdf-syntax-ns#type";
pub const RDF_LANG_STRING: &str = "http://www.w3.org/1999/02/22-rdf-syntax-ns#langString";

pub const RDFS_LABEL: &str = "http://www.w3.org/2000/01/rdf-schema#label";
pub const RDFS_DOMAIN: &str = "http://www.w3.org/2000/01/rdf-schema#domain";
pub const RDFS_RANGE: &str = "http://www.w3.org/2000/01/rdf-schema#range";

pub const OWL_CLASS: &str = "http://www.w3.org/2002/07/owl#Class";
pub const OWL_OBJECT_PROPERTY: &str = "http://www.w3.org/2002/07/owl#ObjectProperty";
pub const OWL_DATATYPE_PROPERTY: &str = "http://www.w3.org/2002/07/owl#DatatypeProperty";
pub const OWL_DISJOINT_WITH: &str = "http://www.w3.org/2002/07/owl#disjointWith";
pub const OWL_EQUIVALENT_CLASS: &str = "http://www.w3.org/2002/07/owl#equivalentClass";
pub const OWL_EQUIVALENT_PROPERTY: &str = "http://www.w3.org/2002/07/owl#equivalentProperty";

pub const SKOS_ALT_LABEL: &str = "http://www.w3.org/2004/02/skos/core#altLabel";

pub const XSD_STRING: &str = "http://www.w3.org/2001/XMLSchema#string";
pub const XSD_INTEGER: &str = "http://www.w3.org/2001/XMLSchema#integer";
pub const XSD_DOUBLE: &str = "http://www.w3.org/2001/XMLSchema#double";
pub const XSD_DATE: &str = "http://www.w3.org/2001/XMLSchema#date";
pub const XSD_GYEAR: &str = "http://www.w3.org/2001/XMLSchema#gYear";
pub const XSD_BOOLEAN: &str = "http://www.w3.org/2001/XMLSchema#boolean";

/// Root of every IRI minted by this project.
pub const KGB_BASE: &str = "http://kgb.example.org/";
/// Direct max-cardinality annotation, used instead of OWL restriction patterns.
pub const KGB_MAX_CARDINALITY: &str = "http://kgb.example.org/vocab#maxCardinality";
/// Namespace of the benchmark ontology (classes and properties).
pub const ONTOLOGY_NS: &str = "http://kgb.example.org/ontology/";
/// Namespace of reference (and seed) entities.
pub const RESOURCE_NS: &str = "http://kgb.example.org/resource/";
/// Generic namespace used when lifting JSON without a mapping.
pub const GEN_NS: &str = "http://kgb.example.org/gen/";
pub const GEN_PROPERTY_NS: &str = "http://kgb.example.org/gen/property/";
pub const GEN_TYPE_NS: &str = "http://kgb.example.org/gen/type/";
pub const GEN_RESOURCE_NS: &str = "http://kgb.example.org/gen/resource/";
/// Entities minted for unresolved surface forms.
pub const NEW_NS: &str = "http://kgb.example.org/new/";

/// Base IRI of shaded source `index` (1-based). Renaming this prefix back to
/// [`KGB_BASE`] recovers the reference IRIs.
pub fn source_base(index: usize) -> String {
    format!("{KGB_BASE}source{index}/")
}
