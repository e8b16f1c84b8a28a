//! Current-KG-first fusion of a source graph into the seed.

use std::collections::{BTreeMap, BTreeSet};

use crate::exchange::{MatchRecord, MatchSet, MatchType};
use crate::ontology::{infer_types, OntologySchema};
use crate::rdf::{vocab, Graph, Iri, Term, Triple};

#[derive(Debug, Clone, Default, PartialEq)]
pub struct FusionOutcome {
    pub graph: Graph,
    pub warnings: Vec<String>,
}

/// Source-side id → (target id, score), keeping the best-scored target.
#[derive(Default)]
struct Rewrites(BTreeMap<Iri, (Iri, f64)>);

impl Rewrites {
    fn offer(&mut self, from: Iri, to: Iri, score: f64) {
        match self.0.get(&from) {
            Some((t, s)) if *s > score || (*s == score && *t <= to) => {}
            _ => {
                self.0.insert(from, (to, score));
            }
        }
    }

    fn apply(&self, x: &Iri) -> Iri {
        self.0.get(x).map_or_else(|| x.clone(), |(t, _)| t.clone())
    }
}

/// Orients a record so the id found in the source comes first.
fn orient(r: &MatchRecord, in_source: impl Fn(&Iri) -> bool) -> Result<Option<(Iri, Iri)>, String> {
    let (a, b) = match (Iri::new(&r.id1), Iri::new(&r.id2)) {
        (Ok(a), Ok(b)) => (a, b),
        _ => return Err(format!("{} match {} = {} is not a pair of IRIs", r.match_type.as_str(), r.id1, r.id2)),
    };
    if a == b {
        return Ok(None);
    }
    if in_source(&a) {
        Ok(Some((a, b)))
    } else if in_source(&b) {
        Ok(Some((b, a)))
    } else {
        Err(format!("{} match {} = {} names no id of the source graph", r.match_type.as_str(), r.id1, r.id2))
    }
}

fn admitted(t: &Triple, schema: &OntologySchema) -> bool {
    if t.predicate.as_str() == vocab::RDF_TYPE {
        return t.object.as_iri().is_some_and(|c| schema.is_class(c));
    }
    schema.in_vocabulary(&t.predicate)
}

/// Rewrites source ids and predicates through `matches`, keeps triples in the
/// schema vocabulary, adds them to the seed under the single-value policy
/// (seed value first, else the first source value in canonical order) and
/// materializes types. Seed triples are never removed.
pub fn fusion_first(seed: &Graph, source: &Graph, matches: &MatchSet, schema: &OntologySchema) -> FusionOutcome {
    let mut warnings = Vec::new();
    let mut entities = Rewrites::default();
    let mut predicates = Rewrites::default();
    for r in matches.records() {
        let oriented = match r.match_type {
            MatchType::Entity => orient(r, |x| source.mentions(x)),
            MatchType::Relation => orient(r, |x| source.has_predicate(x)),
        };
        match oriented {
            Ok(Some((from, to))) if r.match_type == MatchType::Entity => entities.offer(from, to, r.score),
            Ok(Some((from, to))) => predicates.offer(from, to, r.score),
            Ok(None) => {}
            Err(w) => warnings.push(w),
        }
    }

    let incoming: Graph = source
        .iter()
        .map(|t| {
            let object = match &t.object {
                Term::Iri(o) => Term::Iri(entities.apply(o)),
                lit => lit.clone(),
            };
            Triple::new(entities.apply(&t.subject), predicates.apply(&t.predicate), object)
        })
        .filter(|t| admitted(t, schema))
        .collect();

    let mut out = seed.clone();
    let mut filled: BTreeSet<(Iri, Iri)> = BTreeSet::new();
    for t in incoming.iter() {
        if schema.property(&t.predicate).is_some_and(|p| p.is_functional()) {
            let key = (t.subject.clone(), t.predicate.clone());
            if filled.contains(&key) || seed.objects(&t.subject, &t.predicate).next().is_some() {
                continue;
            }
            filled.insert(key);
        }
        out.insert(t.clone());
    }
    FusionOutcome { graph: infer_types(&out, schema), warnings }
}

/// Fusion for sources whose ids were already resolved upstream.
pub fn select_first(seed: &Graph, source: &Graph, schema: &OntologySchema) -> Graph {
    fusion_first(seed, source, &MatchSet::default(), schema).graph
}
