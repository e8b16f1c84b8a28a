//! The movie ontology: three disjoint classes and 23 declared properties
//! (25 counting `rdfs:label` and `rdf:type`).

use std::collections::BTreeMap;

use crate::ontology::{OntologySchema, PropertyKind, PropertySpec};
use crate::rdf::vocab::{self, KGB_MAX_CARDINALITY, ONTOLOGY_NS};
use crate::rdf::{iri, Graph, Iri, Literal, Triple};

const DBO: &str = "http://dbpedia.org/ontology/";

pub const FILM: &str = "Film";
pub const PERSON: &str = "Person";
pub const COMPANY: &str = "Company";

pub fn onto(local: &str) -> Iri {
    iri(&format!("{ONTOLOGY_NS}{local}"))
}

struct Def {
    local: &'static str,
    domain: &'static str,
    /// Class local name for relations, xsd IRI for attributes.
    range: &'static str,
    label: &'static str,
    alt: &'static [&'static str],
    functional: bool,
    dbpedia: bool,
}

const fn rel(local: &'static str, range: &'static str, label: &'static str, alt: &'static [&'static str]) -> Def {
    Def { local, domain: FILM, range, label, alt, functional: false, dbpedia: true }
}

const fn attr(
    local: &'static str,
    domain: &'static str,
    range: &'static str,
    label: &'static str,
    alt: &'static [&'static str],
    functional: bool,
) -> Def {
    Def { local, domain, range, label, alt, functional, dbpedia: false }
}

const DEFS: [Def; 23] = [
    rel("director", PERSON, "director", &["directed by"]),
    rel("producer", PERSON, "producer", &["produced by"]),
    rel("writer", PERSON, "writer", &["written by", "screenplay"]),
    rel("starring", PERSON, "starring", &["starred", "cast", "stars"]),
    rel("musicComposer", PERSON, "music composer", &["music", "music by", "composer"]),
    rel("cinematography", PERSON, "cinematography", &["director of photography", "cinematographer"]),
    rel("productionCompany", COMPANY, "production company", &["studio"]),
    rel("distributor", COMPANY, "distributor", &["distributed by"]),
    attr("releaseDate", FILM, vocab::XSD_DATE, "release date", &["released", "released in"], true),
    attr("runtime", FILM, vocab::XSD_INTEGER, "runtime", &["runs for", "running time", "duration"], true),
    attr("budget", FILM, vocab::XSD_DOUBLE, "budget", &[], true),
    attr("gross", FILM, vocab::XSD_DOUBLE, "gross", &["box office"], true),
    attr("country", FILM, vocab::XSD_STRING, "country", &[], false),
    attr("language", FILM, vocab::XSD_STRING, "language", &[], false),
    attr("genre", FILM, vocab::XSD_STRING, "genre", &[], false),
    attr("birthDate", PERSON, vocab::XSD_DATE, "birth date", &["born", "date of birth"], true),
    attr("deathDate", PERSON, vocab::XSD_DATE, "death date", &["died"], true),
    attr("birthPlace", PERSON, vocab::XSD_STRING, "birth place", &["born in", "place of birth"], false),
    attr("birthName", PERSON, vocab::XSD_STRING, "birth name", &[], false),
    attr("occupation", PERSON, vocab::XSD_STRING, "occupation", &[], false),
    attr("foundingDate", COMPANY, vocab::XSD_DATE, "founding date", &["founded"], true),
    attr("headquarter", COMPANY, vocab::XSD_STRING, "headquarter", &["headquarters"], false),
    attr("revenue", COMPANY, vocab::XSD_DOUBLE, "revenue", &[], false),
];

/// Alternative labels of `rdfs:label`, used when matching JSON keys.
pub const LABEL_ALT_LABELS: [&str; 2] = ["name", "title"];

pub fn movie_schema() -> OntologySchema {
    let mut schema = OntologySchema::default();
    for class in [FILM, PERSON, COMPANY] {
        let c = onto(class);
        schema.classes.insert(c.clone());
        schema.class_labels.insert(c.clone(), class.to_lowercase());
        schema.class_equivalents.insert(c, vec![iri(&format!("{DBO}{class}"))]);
    }
    for (a, b) in [(FILM, PERSON), (FILM, COMPANY), (PERSON, COMPANY)] {
        let (a, b) = (onto(a), onto(b));
        schema.disjoint_pairs.insert(if a <= b { (a, b) } else { (b, a) });
    }
    for d in &DEFS {
        let kind = if d.range.starts_with(vocab::XSD_NS) { PropertyKind::Attribute } else { PropertyKind::Relation };
        let range = if kind == PropertyKind::Relation { onto(d.range) } else { iri(d.range) };
        let mut alt_labels: Vec<String> = d.alt.iter().map(|s| s.to_string()).collect();
        alt_labels.sort();
        let spec = PropertySpec {
            iri: onto(d.local),
            kind,
            domain: onto(d.domain),
            range,
            max_cardinality: d.functional.then_some(1),
            label: d.label.to_string(),
            alt_labels,
            equivalents: if d.dbpedia { vec![iri(&format!("{DBO}{}", d.local))] } else { vec![] },
        };
        schema.properties.insert(spec.iri.clone(), spec);
    }
    schema.core_alt_labels.insert(iri(vocab::RDFS_LABEL), LABEL_ALT_LABELS.iter().map(|s| s.to_string()).collect());
    schema
}

/// Encodes a schema with rdfs/owl/skos vocabulary; the inverse of
/// [`crate::ontology::load_ontology`].
pub fn schema_to_graph(schema: &OntologySchema) -> Graph {
    let mut g = Graph::new();
    let ty = iri(vocab::RDF_TYPE);
    let label = iri(vocab::RDFS_LABEL);
    let alt = iri(vocab::SKOS_ALT_LABEL);
    for c in &schema.classes {
        g.insert(Triple::new(c.clone(), ty.clone(), iri(vocab::OWL_CLASS)));
        if let Some(l) = schema.class_labels.get(c) {
            g.insert(Triple::new(c.clone(), label.clone(), Literal::string(l)));
        }
        for eq in schema.class_equivalents.get(c).into_iter().flatten() {
            g.insert(Triple::new(c.clone(), iri(vocab::OWL_EQUIVALENT_CLASS), eq.clone()));
        }
    }
    for (a, b) in &schema.disjoint_pairs {
        g.insert(Triple::new(a.clone(), iri(vocab::OWL_DISJOINT_WITH), b.clone()));
    }
    for p in schema.properties.values() {
        let kind = match p.kind {
            PropertyKind::Relation => vocab::OWL_OBJECT_PROPERTY,
            PropertyKind::Attribute => vocab::OWL_DATATYPE_PROPERTY,
        };
        g.insert(Triple::new(p.iri.clone(), ty.clone(), iri(kind)));
        g.insert(Triple::new(p.iri.clone(), iri(vocab::RDFS_DOMAIN), p.domain.clone()));
        g.insert(Triple::new(p.iri.clone(), iri(vocab::RDFS_RANGE), p.range.clone()));
        g.insert(Triple::new(p.iri.clone(), label.clone(), Literal::string(&p.label)));
        for a in &p.alt_labels {
            g.insert(Triple::new(p.iri.clone(), alt.clone(), Literal::string(a)));
        }
        if let Some(n) = p.max_cardinality {
            g.insert(Triple::new(
                p.iri.clone(),
                iri(KGB_MAX_CARDINALITY),
                Literal::typed(n.to_string(), iri(vocab::XSD_INTEGER)),
            ));
        }
        for eq in &p.equivalents {
            g.insert(Triple::new(p.iri.clone(), iri(vocab::OWL_EQUIVALENT_PROPERTY), eq.clone()));
        }
    }
    let core: BTreeMap<_, _> = schema.core_alt_labels.iter().collect();
    for (p, alts) in core {
        for a in alts {
            g.insert(Triple::new(p.clone(), alt.clone(), Literal::string(a)));
        }
    }
    g
}
