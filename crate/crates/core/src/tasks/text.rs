//! Pattern-based extraction from abstracts and similarity linking of surface
//! forms to KG entities and schema properties.

use std::sync::LazyLock;

use regex::Regex;

use crate::exchange::{KeDoc, KeLink, SurfaceTriple};
use crate::ontology::OntologySchema;
use crate::par;
use crate::rdf::{iri, vocab, Graph, Term};
use crate::similarity::LabelIndex;

enum Tail {
    One,
    List,
}

static RULES: LazyLock<Vec<(Regex, &'static str, Tail)>> = LazyLock::new(|| {
    let rule = |pattern: &str, rel, tail| (Regex::new(pattern).expect("valid rule"), rel, tail);
    vec![
        rule(r"^(.+?) was directed by (.+)$", "directed by", Tail::One),
        rule(r"^(.+?) starred (.+)$", "starred", Tail::List),
        rule(r"^(.+?) was produced by (.+)$", "produced by", Tail::One),
        rule(r"^(.+?) was released in (\d{4})$", "released in", Tail::One),
        rule(r"^(.+?) runs for (\d+) minutes$", "runs for", Tail::One),
        rule(r"^(.+?) was born in (.+)$", "born in", Tail::One),
    ]
});

fn sentences(paragraph: &str) -> impl Iterator<Item = &str> {
    paragraph.split(". ").map(|s| s.trim().trim_end_matches('.').trim()).filter(|s| !s.is_empty())
}

fn split_list(s: &str) -> Vec<&str> {
    let (init, last) = match s.rsplit_once(" and ") {
        Some((init, last)) => (init, Some(last)),
        None => (s, None),
    };
    init.split(", ").chain(last).map(str::trim).filter(|x| !x.is_empty()).collect()
}

fn extract_sentence(sentence: &str, out: &mut Vec<SurfaceTriple>) {
    for (re, rel, tail) in RULES.iter() {
        if let Some(c) = re.captures(sentence) {
            let head = c[1].trim();
            match tail {
                Tail::One => out.push(SurfaceTriple::new(head, *rel, c[2].trim())),
                Tail::List => out.extend(split_list(&c[2]).into_iter().map(|t| SurfaceTriple::new(head, *rel, t))),
            }
            return;
        }
    }
}

/// One document per blank-line separated paragraph, links left empty.
pub fn text_extract(text: &str) -> Vec<KeDoc> {
    let paragraphs: Vec<&str> = text.split("\n\n").map(str::trim).filter(|p| !p.is_empty()).collect();
    if paragraphs.is_empty() {
        return vec![KeDoc::default()];
    }
    par::map(&paragraphs, |p| {
        let mut triples = Vec::new();
        for s in sentences(p) {
            extract_sentence(s, &mut triples);
        }
        KeDoc { text: p.to_string(), triples, links: Vec::new() }
    })
}

/// Entities of `kg` indexed by their `rdfs:label` and `skos:altLabel` values.
pub(super) fn entity_index(kg: &Graph) -> LabelIndex {
    let mut index = LabelIndex::new();
    for p in [vocab::RDFS_LABEL, vocab::SKOS_ALT_LABEL] {
        for t in kg.with_predicate(&iri(p)) {
            if let Term::Literal(l) = &t.object {
                index.insert(t.subject.as_str(), l.lexical());
            }
        }
    }
    index
}

/// Schema properties plus `rdfs:label`, indexed by every label they carry.
pub(super) fn property_index(schema: &OntologySchema) -> LabelIndex {
    let mut index = LabelIndex::new();
    for p in schema.properties.values() {
        for l in p.all_labels() {
            index.insert(p.iri.as_str(), l);
        }
    }
    let label = iri(vocab::RDFS_LABEL);
    for l in schema.labels_of(&label) {
        index.insert(label.as_str(), &l);
    }
    index
}

fn link_forms(
    docs: &[KeDoc],
    index: &LabelIndex,
    threshold: f64,
    forms: impl Fn(&SurfaceTriple) -> Vec<&str> + Sync + Send,
) -> Vec<KeDoc> {
    par::map(docs, |doc| {
        let mut doc = doc.clone();
        let wanted: Vec<String> = doc.triples.iter().flat_map(&forms).map(str::to_string).collect();
        for form in wanted {
            if doc.has_link(&form) {
                continue;
            }
            if let Some((link, score)) = index.best_match(&form, threshold) {
                doc.links.push(KeLink { form, link, score });
            }
        }
        doc.canonicalize();
        doc
    })
}

/// Links head and tail forms without a link yet to the best-matching KG entity.
pub fn entity_link(docs: &[KeDoc], kg: &Graph, threshold: f64) -> Vec<KeDoc> {
    let index = entity_index(kg);
    link_forms(docs, &index, threshold, |t| vec![t.head.as_str(), t.tail.as_str()])
}

/// Links relation forms without a link yet to the best-matching schema property.
pub fn relation_link(docs: &[KeDoc], schema: &OntologySchema, threshold: f64) -> Vec<KeDoc> {
    let index = property_index(schema);
    link_forms(docs, &index, threshold, |t| vec![t.rel.as_str()])
}
