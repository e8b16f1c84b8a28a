//! Materializing linked KE documents as RDF.

use super::percent_encode;
use crate::exchange::KeDoc;
use crate::ontology::{lexical_conforms, OntologySchema};
use crate::rdf::vocab::{self, NEW_NS};
use crate::rdf::{iri, Graph, Iri, Literal, Triple};
use crate::similarity::normalize;

/// Deterministic IRI for a form no link resolved.
fn minted(form: &str) -> Option<Iri> {
    let n = normalize(form);
    if n.is_empty() {
        return None;
    }
    Some(iri(&format!("{NEW_NS}{}", percent_encode(&n.replace(' ', "_")))))
}

fn resolve(doc: &KeDoc, form: &str, g: &mut Graph) -> Option<Iri> {
    if let Some(l) = doc.best_link(form) {
        return Iri::new(&l.link).ok();
    }
    let m = minted(form)?;
    g.insert(Triple::new(m.clone(), iri(vocab::RDFS_LABEL), Literal::string(form)));
    Some(m)
}

fn attribute_value(lexical: &str, p: &Iri, schema: &OntologySchema) -> Literal {
    match schema.property(p) {
        Some(spec) if spec.range.as_str() != vocab::XSD_STRING && lexical_conforms(lexical, &spec.range) => {
            Literal::typed(lexical, spec.range.clone())
        }
        _ => Literal::string(lexical),
    }
}

/// Resolves each surface triple through the document's best links. Triples
/// with an unlinked relation are dropped; unlinked entity forms get an IRI in
/// the `new` namespace plus a label.
pub fn generate_rdf_ke(docs: &[KeDoc], schema: &OntologySchema) -> Graph {
    let mut g = Graph::new();
    for doc in docs {
        for t in &doc.triples {
            let Some(p) = doc.best_link(&t.rel).and_then(|l| Iri::new(&l.link).ok()) else { continue };
            let Some(s) = resolve(doc, &t.head, &mut g) else { continue };
            if schema.is_relation(&p) {
                if let Some(o) = resolve(doc, &t.tail, &mut g) {
                    g.insert(Triple::new(s, p, o));
                }
            } else {
                let o = attribute_value(&t.tail, &p, schema);
                g.insert(Triple::new(s, p, o));
            }
        }
    }
    g
}
