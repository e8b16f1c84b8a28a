//! Lifting JSON records to generic RDF, and direct linking of JSON records to
//! the KG and schema.

use serde_json::{Map, Value};
use sha2::{Digest, Sha256};

use super::text::{entity_index, property_index};
use crate::exchange::{KeDoc, KeLink, SurfaceTriple};
use crate::ontology::OntologySchema;
use crate::rdf::vocab::{self, GEN_PROPERTY_NS, GEN_RESOURCE_NS, GEN_TYPE_NS};
use crate::rdf::{iri, Graph, Iri, Literal, Triple};
use crate::similarity::LabelIndex;

const LABEL_KEYS: [&str; 3] = ["title", "name", "label"];

/// Percent-encodes everything outside the URI unreserved set.
pub(crate) fn percent_encode(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    for b in s.bytes() {
        if b.is_ascii_alphanumeric() || b"-._~".contains(&b) {
            out.push(b as char);
        } else {
            out.push_str(&format!("%{b:02X}"));
        }
    }
    out
}

/// Compact JSON with object keys sorted at every level.
fn canonical(v: &Value) -> String {
    match v {
        Value::Object(m) => {
            let mut keys: Vec<&String> = m.keys().collect();
            keys.sort();
            let body: Vec<String> =
                keys.iter().map(|k| format!("{}:{}", Value::String((*k).clone()), canonical(&m[*k]))).collect();
            format!("{{{}}}", body.join(","))
        }
        Value::Array(items) => format!("[{}]", items.iter().map(canonical).collect::<Vec<_>>().join(",")),
        scalar => scalar.to_string(),
    }
}

fn mint(v: &Value) -> Iri {
    let digest = Sha256::digest(canonical(v).as_bytes());
    let hex: String = digest.iter().take(10).map(|b| format!("{b:02x}")).collect();
    iri(&format!("{GEN_RESOURCE_NS}{hex}"))
}

fn scalar_literal(v: &Value) -> Option<Literal> {
    match v {
        Value::String(s) => Some(Literal::string(s)),
        Value::Bool(b) => Some(Literal::typed(b.to_string(), iri(vocab::XSD_BOOLEAN))),
        Value::Number(n) if n.is_i64() || n.is_u64() => Some(Literal::typed(n.to_string(), iri(vocab::XSD_INTEGER))),
        Value::Number(n) => Some(Literal::typed(n.to_string(), iri(vocab::XSD_DOUBLE))),
        _ => None,
    }
}

fn top_level(docs: &Value) -> Result<Vec<&Map<String, Value>>, String> {
    let items = docs.as_array().ok_or("JSON input must be an array of objects")?;
    items
        .iter()
        .enumerate()
        .map(|(i, d)| d.as_object().ok_or_else(|| format!("JSON element {i} is not an object")))
        .collect()
}

fn join_path(prefix: &str, key: &str) -> String {
    if prefix.is_empty() {
        key.to_string()
    } else {
        format!("{prefix}.{key}")
    }
}

fn lift(node: &Value, obj: &Map<String, Value>, path: &str, g: &mut Graph) -> Iri {
    let s = mint(node);
    let class = if path.is_empty() { "root".to_string() } else { percent_encode(path) };
    g.insert(Triple::new(s.clone(), iri(vocab::RDF_TYPE), iri(&format!("{GEN_TYPE_NS}{class}"))));
    for (k, v) in obj {
        let p = iri(&format!("{GEN_PROPERTY_NS}{}", percent_encode(k)));
        let child_path = join_path(path, k);
        let values: Vec<&Value> = match v {
            Value::Array(items) => items.iter().collect(),
            one => vec![one],
        };
        for v in values {
            if let Value::Object(child) = v {
                let o = lift(v, child, &child_path, g);
                g.insert(Triple::new(s.clone(), p.clone(), o));
            } else if let Some(l) = scalar_literal(v) {
                g.insert(Triple::new(s.clone(), p.clone(), l));
            }
        }
    }
    s
}

/// Generic RDF for an array of JSON records: one minted subject per object,
/// typed by its key path, with one `gen:` predicate per key.
pub fn json_to_rdf(docs: &Value) -> Result<Graph, String> {
    let mut g = Graph::new();
    for obj in top_level(docs)? {
        lift(&Value::Object(obj.clone()), obj, "", &mut g);
    }
    Ok(g)
}

fn lexical(v: &Value) -> Option<String> {
    match v {
        Value::String(s) => Some(s.clone()),
        Value::Number(_) | Value::Bool(_) => Some(v.to_string()),
        _ => None,
    }
}

/// The label of an object, or its scalar values joined when it has none.
fn head_form(obj: &Map<String, Value>) -> String {
    for k in LABEL_KEYS {
        if let Some(Value::String(s)) = obj.get(k) {
            return s.clone();
        }
    }
    obj.values().filter_map(lexical).collect::<Vec<_>>().join(" ")
}

fn surface(obj: &Map<String, Value>, path: &str, heads: &mut Vec<String>, out: &mut Vec<SurfaceTriple>) {
    let head = head_form(obj);
    heads.push(head.clone());
    for (k, v) in obj {
        let rel = join_path(path, k);
        let values: Vec<&Value> = match v {
            Value::Array(items) => items.iter().collect(),
            one => vec![one],
        };
        for v in values {
            if let Value::Object(child) = v {
                out.push(SurfaceTriple::new(&head, &rel, head_form(child)));
                surface(child, &rel, heads, out);
            } else if let Some(l) = lexical(v) {
                out.push(SurfaceTriple::new(&head, &rel, l));
            }
        }
    }
}

fn link_doc(obj: &Map<String, Value>, entities: &LabelIndex, properties: &LabelIndex, threshold: f64) -> KeDoc {
    let mut heads = Vec::new();
    let mut triples = Vec::new();
    surface(obj, "", &mut heads, &mut triples);
    let mut doc = KeDoc { text: Value::Object(obj.clone()).to_string(), triples, links: Vec::new() };
    for form in heads {
        if doc.has_link(&form) {
            continue;
        }
        if let Some((link, score)) = entities.best_match(&form, threshold) {
            doc.links.push(KeLink { form, link, score });
        }
    }
    let rels: std::collections::BTreeSet<String> = doc.triples.iter().map(|t| t.rel.clone()).collect();
    for rel in rels {
        let key = rel.rsplit('.').next().unwrap_or(&rel);
        if let Some((link, score)) = properties.best_match(key, threshold) {
            doc.links.push(KeLink { form: rel, link, score });
        }
    }
    doc.canonicalize();
    doc
}

/// One KE document per record: surface triples along key paths, entity links
/// for objects whose label resembles a KG label, and relation links for keys
/// resembling a schema property label.
pub fn json_linking(docs: &Value, kg: &Graph, schema: &OntologySchema, threshold: f64) -> Result<Vec<KeDoc>, String> {
    let objs = top_level(docs)?;
    let entities = entity_index(kg);
    let properties = property_index(schema);
    Ok(crate::par::map(&objs, |o| link_doc(o, &entities, &properties, threshold)))
}
