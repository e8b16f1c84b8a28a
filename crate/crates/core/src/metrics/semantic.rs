//! Schema conformance scores.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::ontology::{lexical_conforms, OntologySchema};
use crate::rdf::{Graph, Iri, Term};

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct ViolationCounts {
    pub disjoint_types: usize,
    pub domain: usize,
    pub range: usize,
    pub direction: usize,
    pub literal_type: usize,
    pub literal_format: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct SemReport {
    pub disjoint_types_score: f64,
    pub domain_score: f64,
    pub range_score: f64,
    pub direction_score: f64,
    pub literal_type_score: f64,
    pub literal_format_score: f64,
    pub average: f64,
    pub violation_counts: ViolationCounts,
}

fn compliance(violations: usize, total: usize) -> f64 {
    if total == 0 {
        1.0
    } else {
        1.0 - violations as f64 / total as f64
    }
}

pub fn compute_semantic(kg: &Graph, schema: &OntologySchema) -> SemReport {
    let types: BTreeMap<&Iri, BTreeSet<&Iri>> =
        kg.subjects().map(|e| (e, kg.types_of(e).collect::<BTreeSet<_>>())).filter(|(_, ts)| !ts.is_empty()).collect();
    let has_type = |e: &Iri, c: &Iri| types.get(e).is_some_and(|ts| ts.contains(c));

    let mut v = ViolationCounts::default();
    for ts in types.values() {
        let ts: Vec<&&Iri> = ts.iter().collect();
        let clash = ts.iter().enumerate().any(|(i, a)| ts[i + 1..].iter().any(|b| schema.are_disjoint(a, b)));
        v.disjoint_types += usize::from(clash);
    }

    let (mut relations, mut attributes) = (0, 0);
    for t in kg.iter() {
        let Some(spec) = schema.property(&t.predicate) else { continue };
        if spec.is_relation() {
            relations += 1;
            let domain_ok = has_type(&t.subject, &spec.domain);
            let range_ok = t.object.as_iri().is_some_and(|o| has_type(o, &spec.range));
            v.domain += usize::from(!domain_ok);
            v.range += usize::from(!range_ok);
            if !(domain_ok && range_ok) {
                let swapped =
                    t.object.as_iri().is_some_and(|o| has_type(o, &spec.domain) && has_type(&t.subject, &spec.range));
                v.direction += usize::from(swapped);
            }
        } else {
            attributes += 1;
            match &t.object {
                Term::Literal(l) => {
                    v.literal_type += usize::from(*l.datatype() != spec.range);
                    v.literal_format += usize::from(!lexical_conforms(l.lexical(), &spec.range));
                }
                Term::Iri(_) => {
                    v.literal_type += 1;
                    v.literal_format += 1;
                }
            }
        }
    }

    let scores = [
        compliance(v.disjoint_types, types.len()),
        compliance(v.domain, relations),
        compliance(v.range, relations),
        compliance(v.direction, relations),
        compliance(v.literal_type, attributes),
        compliance(v.literal_format, attributes),
    ];
    SemReport {
        disjoint_types_score: scores[0],
        domain_score: scores[1],
        range_score: scores[2],
        direction_score: scores[3],
        literal_type_score: scores[4],
        literal_format_score: scores[5],
        average: scores.iter().sum::<f64>() / 6.0,
        violation_counts: v,
    }
}
