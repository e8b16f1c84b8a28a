//! Domain schema: classes, disjointness, properties with domain/range,
//! cardinality and labels, plus type materialization.

use std::collections::{BTreeMap, BTreeSet, HashSet};

use crate::rdf::vocab::{self, KGB_MAX_CARDINALITY};
use crate::rdf::{iri, Graph, Iri, Term, Triple};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PropertyKind {
    Relation,
    Attribute,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PropertySpec {
    pub iri: Iri,
    pub kind: PropertyKind,
    pub domain: Iri,
    /// A schema class for relations, an xsd datatype for attributes.
    pub range: Iri,
    pub max_cardinality: Option<u32>,
    pub label: String,
    pub alt_labels: Vec<String>,
    pub equivalents: Vec<Iri>,
}

impl PropertySpec {
    pub fn is_relation(&self) -> bool {
        self.kind == PropertyKind::Relation
    }

    pub fn is_functional(&self) -> bool {
        self.max_cardinality == Some(1)
    }

    /// Preferred label followed by the alternative labels.
    pub fn all_labels(&self) -> impl Iterator<Item = &str> {
        std::iter::once(self.label.as_str()).chain(self.alt_labels.iter().map(String::as_str))
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct OntologySchema {
    pub classes: BTreeSet<Iri>,
    pub class_labels: BTreeMap<Iri, String>,
    pub class_equivalents: BTreeMap<Iri, Vec<Iri>>,
    /// Unordered pairs stored with the smaller IRI first.
    pub disjoint_pairs: BTreeSet<(Iri, Iri)>,
    pub properties: BTreeMap<Iri, PropertySpec>,
    /// Alternative labels attached to `rdf:type` / `rdfs:label`.
    pub core_alt_labels: BTreeMap<Iri, Vec<String>>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum OntologyError {
    #[error("no classes declared")]
    NoClasses,
    #[error("property {property} has no {what}")]
    Missing { property: String, what: &'static str },
    #[error("property {property} references unknown class {class}")]
    UnknownClass { property: String, class: String },
    #[error("duplicate declaration of {what} for {subject}")]
    Duplicate { subject: String, what: &'static str },
    #[error("invalid property {property}: {reason}")]
    Invalid { property: String, reason: String },
}

impl OntologySchema {
    pub fn property(&self, p: &Iri) -> Option<&PropertySpec> {
        self.properties.get(p)
    }

    pub fn relations(&self) -> impl Iterator<Item = &PropertySpec> {
        self.properties.values().filter(|p| p.kind == PropertyKind::Relation)
    }

    pub fn attributes(&self) -> impl Iterator<Item = &PropertySpec> {
        self.properties.values().filter(|p| p.kind == PropertyKind::Attribute)
    }

    pub fn is_relation(&self, p: &Iri) -> bool {
        self.property(p).is_some_and(PropertySpec::is_relation)
    }

    pub fn is_attribute(&self, p: &Iri) -> bool {
        self.property(p).is_some_and(|s| s.kind == PropertyKind::Attribute)
    }

    pub fn is_class(&self, c: &Iri) -> bool {
        self.classes.contains(c)
    }

    /// Declared properties plus `rdf:type` and `rdfs:label`.
    pub fn property_count(&self) -> usize {
        self.properties.len() + 2
    }

    /// Whether `p` belongs to the schema vocabulary (declared properties,
    /// `rdf:type` and `rdfs:label`).
    pub fn in_vocabulary(&self, p: &Iri) -> bool {
        self.properties.contains_key(p) || p.as_str() == vocab::RDF_TYPE || p.as_str() == vocab::RDFS_LABEL
    }

    pub fn are_disjoint(&self, a: &Iri, b: &Iri) -> bool {
        let key = if a <= b { (a.clone(), b.clone()) } else { (b.clone(), a.clone()) };
        self.disjoint_pairs.contains(&key)
    }

    /// Every label a predicate is known by, preferred first.
    pub fn labels_of(&self, p: &Iri) -> Vec<String> {
        if let Some(spec) = self.property(p) {
            return spec.all_labels().map(str::to_string).collect();
        }
        let mut out = vec![p.local_name().to_string()];
        if let Some(alts) = self.core_alt_labels.get(p) {
            out.extend(alts.iter().cloned());
        }
        out
    }
}

fn single_object(g: &Graph, s: &Iri, p: &str, what: &'static str) -> Result<Option<Term>, OntologyError> {
    let p = iri(p);
    let mut objs = g.objects(s, &p);
    let first = objs.next().cloned();
    if objs.next().is_some() {
        return Err(OntologyError::Duplicate { subject: s.to_string(), what });
    }
    Ok(first)
}

fn string_objects(g: &Graph, s: &Iri, p: &str) -> Vec<String> {
    let p = iri(p);
    g.objects(s, &p).filter_map(|o| o.as_literal().map(|l| l.lexical().to_string())).collect()
}

fn iri_objects(g: &Graph, s: &Iri, p: &str) -> Vec<Iri> {
    let p = iri(p);
    g.objects(s, &p).filter_map(|o| o.as_iri().cloned()).collect()
}

fn subjects_typed(g: &Graph, class: &str) -> BTreeSet<Iri> {
    g.matching(None, Some(&iri(vocab::RDF_TYPE)), Some(&Term::Iri(iri(class))))
        .into_iter()
        .map(|t| t.subject.clone())
        .collect()
}

pub fn load_ontology(g: &Graph) -> Result<OntologySchema, OntologyError> {
    let classes = subjects_typed(g, vocab::OWL_CLASS);
    if classes.is_empty() {
        return Err(OntologyError::NoClasses);
    }
    let mut schema = OntologySchema { classes, ..Default::default() };
    for c in &schema.classes {
        if let Some(label) = single_object(g, c, vocab::RDFS_LABEL, "label")? {
            if let Some(l) = label.as_literal() {
                schema.class_labels.insert(c.clone(), l.lexical().to_string());
            }
        }
        let eq = iri_objects(g, c, vocab::OWL_EQUIVALENT_CLASS);
        if !eq.is_empty() {
            schema.class_equivalents.insert(c.clone(), eq);
        }
    }

    let disjoint = iri(vocab::OWL_DISJOINT_WITH);
    for t in g.with_predicate(&disjoint) {
        let other = t.object.as_iri().ok_or_else(|| OntologyError::Invalid {
            property: vocab::OWL_DISJOINT_WITH.into(),
            reason: "object must be a class IRI".into(),
        })?;
        for c in [&t.subject, other] {
            if !schema.classes.contains(c) {
                return Err(OntologyError::UnknownClass {
                    property: vocab::OWL_DISJOINT_WITH.into(),
                    class: c.to_string(),
                });
            }
        }
        let pair =
            if t.subject <= *other { (t.subject.clone(), other.clone()) } else { (other.clone(), t.subject.clone()) };
        schema.disjoint_pairs.insert(pair);
    }

    let object_props = subjects_typed(g, vocab::OWL_OBJECT_PROPERTY);
    let datatype_props = subjects_typed(g, vocab::OWL_DATATYPE_PROPERTY);
    if let Some(p) = object_props.intersection(&datatype_props).next() {
        return Err(OntologyError::Duplicate { subject: p.to_string(), what: "property kind" });
    }
    let declared = object_props
        .iter()
        .map(|p| (p, PropertyKind::Relation))
        .chain(datatype_props.iter().map(|p| (p, PropertyKind::Attribute)));
    for (p, kind) in declared {
        let spec = load_property(g, &schema, p, kind)?;
        schema.properties.insert(p.clone(), spec);
    }

    for core in [vocab::RDF_TYPE, vocab::RDFS_LABEL] {
        let core = iri(core);
        let mut alts = string_objects(g, &core, vocab::SKOS_ALT_LABEL);
        if !alts.is_empty() {
            alts.sort();
            schema.core_alt_labels.insert(core, alts);
        }
    }
    Ok(schema)
}

fn load_property(
    g: &Graph,
    schema: &OntologySchema,
    p: &Iri,
    kind: PropertyKind,
) -> Result<PropertySpec, OntologyError> {
    let name = p.to_string();
    let class_ref = |what: &'static str, predicate: &str| -> Result<Iri, OntologyError> {
        let term =
            single_object(g, p, predicate, what)?.ok_or(OntologyError::Missing { property: name.clone(), what })?;
        term.as_iri()
            .cloned()
            .ok_or_else(|| OntologyError::Invalid { property: name.clone(), reason: format!("{what} must be an IRI") })
    };
    let domain = class_ref("domain", vocab::RDFS_DOMAIN)?;
    let range = class_ref("range", vocab::RDFS_RANGE)?;
    if !schema.classes.contains(&domain) {
        return Err(OntologyError::UnknownClass { property: name, class: domain.to_string() });
    }
    match kind {
        PropertyKind::Relation if !schema.classes.contains(&range) => {
            return Err(OntologyError::UnknownClass { property: name, class: range.to_string() });
        }
        PropertyKind::Attribute if !range.starts_with(vocab::XSD_NS) => {
            return Err(OntologyError::Invalid {
                property: name,
                reason: format!("attribute range {range} is not an xsd datatype"),
            });
        }
        _ => {}
    }
    let max_cardinality = match single_object(g, p, KGB_MAX_CARDINALITY, "max cardinality")? {
        None => None,
        Some(term) => {
            let n = term.as_literal().and_then(|l| l.lexical().parse::<u32>().ok()).filter(|n| *n >= 1);
            Some(n.ok_or_else(|| OntologyError::Invalid {
                property: name.clone(),
                reason: "max cardinality must be a positive integer".into(),
            })?)
        }
    };
    let label = match single_object(g, p, vocab::RDFS_LABEL, "label")? {
        Some(t) => t.as_literal().map(|l| l.lexical().to_string()).ok_or_else(|| OntologyError::Invalid {
            property: name.clone(),
            reason: "label must be a literal".into(),
        })?,
        None => p.local_name().to_string(),
    };
    let mut alt_labels = string_objects(g, p, vocab::SKOS_ALT_LABEL);
    alt_labels.sort();
    let equivalents = iri_objects(g, p, vocab::OWL_EQUIVALENT_PROPERTY);
    Ok(PropertySpec { iri: p.clone(), kind, domain, range, max_cardinality, label, alt_labels, equivalents })
}

/// Whether `lexical` is a well-formed value of `datatype`. Datatypes outside
/// the xsd subset used by the schema accept anything.
pub fn lexical_conforms(lexical: &str, datatype: &Iri) -> bool {
    let digits = |s: &str| !s.is_empty() && s.bytes().all(|b| b.is_ascii_digit());
    let unsigned = |s: &str| s.strip_prefix(['+', '-']).unwrap_or(s).to_string();
    match datatype.as_str() {
        vocab::XSD_INTEGER => digits(&unsigned(lexical)),
        vocab::XSD_DOUBLE => {
            lexical.bytes().all(|b| b.is_ascii_digit() || b"+-.eE".contains(&b))
                && lexical.bytes().any(|b| b.is_ascii_digit())
                && lexical.parse::<f64>().is_ok()
        }
        vocab::XSD_BOOLEAN => matches!(lexical, "true" | "false" | "1" | "0"),
        vocab::XSD_GYEAR => {
            let y = lexical.strip_prefix('-').unwrap_or(lexical);
            y.len() >= 4 && digits(y)
        }
        vocab::XSD_DATE => {
            let parts: Vec<&str> = lexical.split('-').collect();
            let [y, m, d] = parts[..] else { return false };
            if y.len() != 4 || m.len() != 2 || d.len() != 2 || !digits(y) || !digits(m) || !digits(d) {
                return false;
            }
            let (y, m, d): (u32, u32, u32) = (y.parse().unwrap_or(0), m.parse().unwrap_or(0), d.parse().unwrap_or(0));
            let leap = (y % 4 == 0 && y % 100 != 0) || y % 400 == 0;
            let days = match m {
                1 | 3 | 5 | 7 | 8 | 10 | 12 => 31,
                4 | 6 | 9 | 11 => 30,
                2 if leap => 29,
                2 => 28,
                _ => return false,
            };
            (1..=days).contains(&d)
        }
        _ => true,
    }
}

/// Adds `rdf:type` triples implied by schema domains and ranges to entities
/// that have no type yet. Triples are visited in canonical order and the first
/// implied type wins; existing types are never changed.
pub fn infer_types(g: &Graph, schema: &OntologySchema) -> Graph {
    let rdf_type = iri(vocab::RDF_TYPE);
    let mut typed: HashSet<Iri> = g.with_predicate(&rdf_type).map(|t| t.subject.clone()).collect();
    let mut added = Vec::new();
    for t in g.iter() {
        let Some(spec) = schema.property(&t.predicate) else { continue };
        if typed.insert(t.subject.clone()) {
            added.push(Triple::new(t.subject.clone(), rdf_type.clone(), spec.domain.clone()));
        }
        if spec.is_relation() {
            if let Term::Iri(o) = &t.object {
                if typed.insert(o.clone()) {
                    added.push(Triple::new(o.clone(), rdf_type.clone(), spec.range.clone()));
                }
            }
        }
    }
    let mut out = g.clone();
    out.extend(added);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lexical_forms() {
        let dt = |s: &str| iri(s);
        assert!(lexical_conforms("-12", &dt(vocab::XSD_INTEGER)));
        assert!(!lexical_conforms("12.0", &dt(vocab::XSD_INTEGER)));
        assert!(lexical_conforms("1500000.0", &dt(vocab::XSD_DOUBLE)));
        assert!(lexical_conforms("1e6", &dt(vocab::XSD_DOUBLE)));
        assert!(!lexical_conforms("inf", &dt(vocab::XSD_DOUBLE)));
        assert!(!lexical_conforms("2h 15m", &dt(vocab::XSD_INTEGER)));
        assert!(lexical_conforms("2000-02-29", &dt(vocab::XSD_DATE)));
        assert!(!lexical_conforms("1900-02-29", &dt(vocab::XSD_DATE)));
        assert!(!lexical_conforms("1994", &dt(vocab::XSD_DATE)));
        assert!(lexical_conforms("1994", &dt(vocab::XSD_GYEAR)));
        assert!(lexical_conforms("anything", &dt(vocab::XSD_STRING)));
    }
    use crate::rdf::{parse_ntriples, Literal};

    const FIXTURE: &str = r#"
<http://o/Film> <http://www.w3.org/1999/02/22-rdf-syntax-ns#type> <http://www.w3.org/2002/07/owl#Class> .
<http://o/Person> <http://www.w3.org/1999/02/22-rdf-syntax-ns#type> <http://www.w3.org/2002/07/owl#Class> .
<http://o/Film> <http://www.w3.org/2002/07/owl#disjointWith> <http://o/Person> .
<http://o/director> <http://www.w3.org/1999/02/22-rdf-syntax-ns#type> <http://www.w3.org/2002/07/owl#ObjectProperty> .
<http://o/director> <http://www.w3.org/2000/01/rdf-schema#domain> <http://o/Film> .
<http://o/director> <http://www.w3.org/2000/01/rdf-schema#range> <http://o/Person> .
<http://o/director> <http://www.w3.org/2000/01/rdf-schema#label> "director" .
<http://o/director> <http://www.w3.org/2004/02/skos/core#altLabel> "directed by" .
<http://o/runtime> <http://www.w3.org/1999/02/22-rdf-syntax-ns#type> <http://www.w3.org/2002/07/owl#DatatypeProperty> .
<http://o/runtime> <http://www.w3.org/2000/01/rdf-schema#domain> <http://o/Film> .
<http://o/runtime> <http://www.w3.org/2000/01/rdf-schema#range> <http://www.w3.org/2001/XMLSchema#integer> .
<http://o/runtime> <http://kgb.example.org/vocab#maxCardinality> "1"^^<http://www.w3.org/2001/XMLSchema#integer> .
"#;

    fn schema() -> OntologySchema {
        load_ontology(&parse_ntriples(FIXTURE).unwrap()).unwrap()
    }

    fn i(s: &str) -> Iri {
        Iri::new(s).unwrap()
    }

    #[test]
    fn loads_fixture() {
        let s = schema();
        assert_eq!(s.classes.len(), 2);
        assert_eq!(s.property_count(), 4);
        assert!(s.are_disjoint(&i("http://o/Person"), &i("http://o/Film")));
        let d = s.property(&i("http://o/director")).unwrap();
        assert_eq!(d.kind, PropertyKind::Relation);
        assert_eq!(d.alt_labels, vec!["directed by"]);
        let r = s.property(&i("http://o/runtime")).unwrap();
        assert!(r.is_functional());
        assert_eq!(r.label, "runtime");
    }

    #[test]
    fn empty_graph_has_no_classes() {
        assert_eq!(load_ontology(&Graph::new()), Err(OntologyError::NoClasses));
        assert_eq!(OntologyError::NoClasses.to_string(), "no classes declared");
    }

    #[test]
    fn attribute_with_class_range_rejected() {
        let text = FIXTURE.replace(
            "<http://o/runtime> <http://www.w3.org/2000/01/rdf-schema#range> <http://www.w3.org/2001/XMLSchema#integer>",
            "<http://o/runtime> <http://www.w3.org/2000/01/rdf-schema#range> <http://o/Film>",
        );
        assert!(matches!(load_ontology(&parse_ntriples(&text).unwrap()), Err(OntologyError::Invalid { .. })));
    }

    #[test]
    fn missing_and_duplicate_declarations() {
        let no_domain: String = FIXTURE
            .lines()
            .filter(|l| !l.contains("<http://o/director> <http://www.w3.org/2000/01/rdf-schema#domain>"))
            .collect::<Vec<_>>()
            .join("\n");
        assert!(matches!(
            load_ontology(&parse_ntriples(&no_domain).unwrap()),
            Err(OntologyError::Missing { what: "domain", .. })
        ));

        let two_ranges =
            format!("{FIXTURE}<http://o/director> <http://www.w3.org/2000/01/rdf-schema#range> <http://o/Film> .\n");
        assert!(matches!(load_ontology(&parse_ntriples(&two_ranges).unwrap()), Err(OntologyError::Duplicate { .. })));

        let unknown = FIXTURE.replace("#range> <http://o/Person>", "#range> <http://o/Studio>");
        assert!(matches!(load_ontology(&parse_ntriples(&unknown).unwrap()), Err(OntologyError::UnknownClass { .. })));
    }

    #[test]
    fn infer_from_relation() {
        let s = schema();
        let g: Graph = [Triple::new(i("http://r/a"), i("http://o/director"), i("http://r/b"))].into_iter().collect();
        let out = infer_types(&g, &s);
        let ty = i(vocab::RDF_TYPE);
        assert_eq!(out.len(), 3);
        assert!(out.contains(&Triple::new(i("http://r/a"), ty.clone(), i("http://o/Film"))));
        assert!(out.contains(&Triple::new(i("http://r/b"), ty, i("http://o/Person"))));
    }

    #[test]
    fn typed_entities_unchanged_and_unknown_predicates_ignored() {
        let s = schema();
        let ty = i(vocab::RDF_TYPE);
        let g: Graph = [
            Triple::new(i("http://r/a"), i("http://o/director"), i("http://r/b")),
            Triple::new(i("http://r/a"), ty.clone(), i("http://o/Person")),
            Triple::new(i("http://r/b"), ty.clone(), i("http://o/Film")),
        ]
        .into_iter()
        .collect();
        assert_eq!(infer_types(&g, &s), g);

        let g: Graph = [Triple::new(i("http://r/x"), i("http://gen/foo"), Literal::string("1"))].into_iter().collect();
        assert_eq!(infer_types(&g, &s), g);
    }

    #[test]
    fn attribute_types_subject_only() {
        let s = schema();
        let g: Graph =
            [Triple::new(i("http://r/a"), i("http://o/runtime"), Literal::typed("90", i(vocab::XSD_INTEGER)))]
                .into_iter()
                .collect();
        let out = infer_types(&g, &s);
        assert_eq!(out.len(), 2);
        assert_eq!(out.types_of(&i("http://r/a")).collect::<Vec<_>>(), vec![&i("http://o/Film")]);
    }
}
