#![allow(dead_code)]

use std::collections::BTreeSet;

use rand::seq::IndexedRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use kgb_core::benchgen::{movie_schema, schema_to_graph};
use kgb_core::metrics::{SemReport, StatReport};
use kgb_core::ontology::{load_ontology, OntologySchema};
use kgb_core::rdf::{iri, vocab, Graph, Iri, Literal, Term, Triple};

pub fn schema() -> OntologySchema {
    load_ontology(&schema_to_graph(&movie_schema())).unwrap()
}

const DATATYPES: [&str; 6] =
    [vocab::XSD_STRING, vocab::XSD_INTEGER, vocab::XSD_DOUBLE, vocab::XSD_DATE, vocab::XSD_GYEAR, vocab::XSD_BOOLEAN];

const LEXICALS: [&str; 16] = [
    "Alpha",
    "97",
    "-3",
    "+12",
    "1h 37m",
    "1.5e3",
    "2.25",
    "abc",
    "1999-02-28",
    "2000-02-29",
    "1999-02-29",
    "1999-13-01",
    "1999",
    "true",
    "0",
    "",
];

/// A random graph over the movie schema with `n` insertion attempts: types
/// (some disjoint or foreign), relations in either direction, attributes
/// with well- and ill-formed literals, and out-of-vocabulary predicates.
pub fn random_kg(seed: u64, n: usize, schema: &OntologySchema) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let entities: Vec<Iri> = (0..(n / 4).max(2)).map(|i| iri(&format!("http://x/e{i}"))).collect();
    let mut classes: Vec<Iri> = schema.classes.iter().cloned().collect();
    classes.push(iri("http://x/Other"));
    let relations: Vec<_> = schema.relations().collect();
    let attributes: Vec<_> = schema.attributes().collect();
    let rdf_type = iri(vocab::RDF_TYPE);
    let mut g = Graph::new();
    for _ in 0..n {
        let s = entities.choose(&mut rng).unwrap().clone();
        let t = match rng.random_range(0..20) {
            0..=3 => Triple::new(s, rdf_type.clone(), classes.choose(&mut rng).unwrap().clone()),
            4..=10 => {
                let p = relations.choose(&mut rng).unwrap();
                let o: Term = if rng.random_bool(0.05) {
                    Literal::string("loose").into()
                } else {
                    entities.choose(&mut rng).unwrap().clone().into()
                };
                Triple::new(s, p.iri.clone(), o)
            }
            11..=17 => {
                let p = attributes.choose(&mut rng).unwrap();
                let o: Term = if rng.random_bool(0.1) {
                    entities.choose(&mut rng).unwrap().clone().into()
                } else {
                    let datatype =
                        if rng.random_bool(0.7) { p.range.clone() } else { iri(DATATYPES.choose(&mut rng).unwrap()) };
                    Literal::typed(*LEXICALS.choose(&mut rng).unwrap(), datatype).into()
                };
                Triple::new(s, p.iri.clone(), o)
            }
            _ => Triple::new(s, iri("http://x/p"), Literal::string(*LEXICALS.choose(&mut rng).unwrap())),
        };
        g.insert(t);
    }
    g
}

fn typed_by_scan(g: &Graph, e: &Iri, class: &Iri) -> bool {
    g.iter().any(|t| &t.subject == e && t.predicate.as_str() == vocab::RDF_TYPE && t.object.as_iri() == Some(class))
}

fn days_in(month: u32, year: i64) -> u32 {
    match month {
        2 if (year % 4 == 0 && year % 100 != 0) || year % 400 == 0 => 29,
        2 => 28,
        4 | 6 | 9 | 11 => 30,
        _ => 31,
    }
}

/// Independent lexical check covering the forms `random_kg` emits.
pub fn lexical_ok(lexical: &str, datatype: &str) -> bool {
    let digits = |s: &str| !s.is_empty() && s.chars().all(|c| c.is_ascii_digit());
    match datatype {
        vocab::XSD_INTEGER => digits(lexical.strip_prefix(['+', '-']).unwrap_or(lexical)),
        vocab::XSD_DOUBLE => {
            lexical.chars().all(|c| c.is_ascii_digit() || "+-.eE".contains(c))
                && lexical.chars().any(|c| c.is_ascii_digit())
                && lexical.parse::<f64>().is_ok()
        }
        vocab::XSD_BOOLEAN => ["true", "false", "1", "0"].contains(&lexical),
        vocab::XSD_GYEAR => {
            let y = lexical.strip_prefix('-').unwrap_or(lexical);
            y.len() >= 4 && digits(y)
        }
        vocab::XSD_DATE => {
            let parts: Vec<&str> = lexical.split('-').collect();
            if parts.len() != 3
                || parts[0].len() != 4
                || parts[1].len() != 2
                || parts[2].len() != 2
                || !parts.iter().all(|p| digits(p))
            {
                return false;
            }
            let (y, m, d): (i64, u32, u32) =
                (parts[0].parse().unwrap(), parts[1].parse().unwrap(), parts[2].parse().unwrap());
            (1..=12).contains(&m) && d >= 1 && d <= days_in(m, y)
        }
        _ => true,
    }
}

/// The six conformance scores by direct enumeration over the triple list.
pub fn semantic_oracle(g: &Graph, schema: &OntologySchema) -> [f64; 6] {
    let triples: Vec<&Triple> = g.iter().collect();
    let ratio = |bad: usize, all: usize| if all == 0 { 1.0 } else { (all - bad) as f64 / all as f64 };

    let typed: BTreeSet<&Iri> =
        triples.iter().filter(|t| t.predicate.as_str() == vocab::RDF_TYPE).map(|t| &t.subject).collect();
    let mut clashes = 0;
    for e in &typed {
        let mut clash = false;
        for a in &schema.classes {
            for b in &schema.classes {
                if a != b
                    && typed_by_scan(g, e, a)
                    && typed_by_scan(g, e, b)
                    && schema.disjoint_pairs.contains(&(a.clone(), b.clone()))
                {
                    clash = true;
                }
            }
        }
        clashes += usize::from(clash);
    }

    let (mut rel, mut dom_bad, mut rng_bad, mut dir_bad) = (0, 0, 0, 0);
    let (mut att, mut lt_bad, mut lf_bad) = (0, 0, 0);
    for t in &triples {
        let Some(p) = schema.properties.get(&t.predicate) else { continue };
        if p.is_relation() {
            rel += 1;
            let d = typed_by_scan(g, &t.subject, &p.domain);
            let r = match &t.object {
                Term::Iri(o) => typed_by_scan(g, o, &p.range),
                _ => false,
            };
            dom_bad += usize::from(!d);
            rng_bad += usize::from(!r);
            if !(d && r) {
                if let Term::Iri(o) = &t.object {
                    dir_bad += usize::from(typed_by_scan(g, o, &p.domain) && typed_by_scan(g, &t.subject, &p.range));
                }
            }
        } else {
            att += 1;
            match &t.object {
                Term::Literal(l) => {
                    lt_bad += usize::from(l.datatype().as_str() != p.range.as_str());
                    lf_bad += usize::from(!lexical_ok(l.lexical(), p.range.as_str()));
                }
                Term::Iri(_) => {
                    lt_bad += 1;
                    lf_bad += 1;
                }
            }
        }
    }
    [
        ratio(clashes, typed.len()),
        ratio(dom_bad, rel),
        ratio(rng_bad, rel),
        ratio(dir_bad, rel),
        ratio(lt_bad, att),
        ratio(lf_bad, att),
    ]
}

pub fn scores(r: &SemReport) -> [f64; 6] {
    [
        r.disjoint_types_score,
        r.domain_score,
        r.range_score,
        r.direction_score,
        r.literal_type_score,
        r.literal_format_score,
    ]
}

/// Size statistics in one pass over the triples.
pub fn statistics_oracle(g: &Graph) -> StatReport {
    let (mut subjects, mut objects, mut predicates, mut classes, mut typed) =
        (BTreeSet::new(), BTreeSet::new(), BTreeSet::new(), BTreeSet::new(), BTreeSet::new());
    let mut edges = 0usize;
    for t in g.iter() {
        subjects.insert(t.subject.as_str().to_string());
        predicates.insert(t.predicate.as_str().to_string());
        let is_type = t.predicate.as_str() == vocab::RDF_TYPE;
        if let Term::Iri(o) = &t.object {
            if is_type {
                classes.insert(o.as_str().to_string());
                typed.insert(t.subject.as_str().to_string());
            } else {
                objects.insert(o.as_str().to_string());
                edges += 1;
            }
        }
    }
    let entities: BTreeSet<String> = subjects.union(&objects).cloned().collect();
    let n = entities.len() as f64;
    StatReport {
        fact_count: g.len(),
        entity_count: entities.len(),
        relation_name_count: predicates.len(),
        type_count: classes.len(),
        untyped_count: entities.iter().filter(|e| !typed.contains(*e)).count(),
        density: if entities.len() < 2 { 0.0 } else { (edges as f64 / (n * (n - 1.0))).min(1.0) },
    }
}
