use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use super::term::{Iri, Term, Triple};
use super::vocab;

/// A set of triples with ordered subject, predicate and object indexes.
///
/// Iteration is always in the sorted order of [`Triple`], so insertion order is
/// never observable.
#[derive(Clone, Default)]
pub struct Graph {
    triples: BTreeSet<Triple>,
    by_subject: BTreeMap<Iri, BTreeSet<Triple>>,
    by_predicate: BTreeMap<Iri, BTreeSet<Triple>>,
    by_object: BTreeMap<Term, BTreeSet<Triple>>,
}

impl Graph {
    pub fn new() -> Self {
        Self::default()
    }

    /// Returns `true` if the triple was not already present.
    pub fn insert(&mut self, triple: Triple) -> bool {
        if self.triples.contains(&triple) {
            return false;
        }
        self.by_subject.entry(triple.subject.clone()).or_default().insert(triple.clone());
        self.by_predicate.entry(triple.predicate.clone()).or_default().insert(triple.clone());
        self.by_object.entry(triple.object.clone()).or_default().insert(triple.clone());
        self.triples.insert(triple)
    }

    pub fn remove(&mut self, triple: &Triple) -> bool {
        if !self.triples.remove(triple) {
            return false;
        }
        remove_indexed(&mut self.by_subject, &triple.subject, triple);
        remove_indexed(&mut self.by_predicate, &triple.predicate, triple);
        remove_indexed(&mut self.by_object, &triple.object, triple);
        true
    }

    pub fn contains(&self, triple: &Triple) -> bool {
        self.triples.contains(triple)
    }

    pub fn len(&self) -> usize {
        self.triples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.triples.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &Triple> + '_ {
        self.triples.iter()
    }

    pub fn with_subject<'a>(&'a self, subject: &Iri) -> impl Iterator<Item = &'a Triple> + 'a {
        self.by_subject.get(subject).into_iter().flatten()
    }

    pub fn with_predicate<'a>(&'a self, predicate: &Iri) -> impl Iterator<Item = &'a Triple> + 'a {
        self.by_predicate.get(predicate).into_iter().flatten()
    }

    pub fn with_object<'a>(&'a self, object: &Term) -> impl Iterator<Item = &'a Triple> + 'a {
        self.by_object.get(object).into_iter().flatten()
    }

    /// Pattern lookup; `None` is a wildcard. Uses the most selective index.
    pub fn matching(&self, subject: Option<&Iri>, predicate: Option<&Iri>, object: Option<&Term>) -> Vec<&Triple> {
        let filter = |t: &&Triple| {
            subject.is_none_or(|s| &t.subject == s)
                && predicate.is_none_or(|p| &t.predicate == p)
                && object.is_none_or(|o| &t.object == o)
        };
        let mut candidates: Vec<&BTreeSet<Triple>> = Vec::new();
        if let Some(s) = subject {
            match self.by_subject.get(s) {
                Some(set) => candidates.push(set),
                None => return Vec::new(),
            }
        }
        if let Some(p) = predicate {
            match self.by_predicate.get(p) {
                Some(set) => candidates.push(set),
                None => return Vec::new(),
            }
        }
        if let Some(o) = object {
            match self.by_object.get(o) {
                Some(set) => candidates.push(set),
                None => return Vec::new(),
            }
        }
        match candidates.into_iter().min_by_key(|set| set.len()) {
            Some(set) => set.iter().filter(filter).collect(),
            None => self.triples.iter().collect(),
        }
    }

    /// Objects of `(subject, predicate, ?)` in sorted order.
    pub fn objects<'a>(&'a self, subject: &Iri, predicate: &'a Iri) -> impl Iterator<Item = &'a Term> + 'a {
        self.with_subject(subject).filter(move |t| &t.predicate == predicate).map(|t| &t.object)
    }

    /// `rdf:type` objects asserted for `subject`.
    pub fn types_of<'a>(&'a self, subject: &Iri) -> impl Iterator<Item = &'a Iri> + 'a {
        self.with_subject(subject).filter(|t| t.predicate.as_str() == vocab::RDF_TYPE).filter_map(|t| t.object.as_iri())
    }

    /// First `rdfs:label` of `subject` in canonical order.
    pub fn label_of(&self, subject: &Iri) -> Option<&str> {
        self.with_subject(subject)
            .filter(|t| t.predicate.as_str() == vocab::RDFS_LABEL)
            .find_map(|t| t.object.as_literal().map(|l| l.lexical()))
    }

    pub fn subjects(&self) -> impl Iterator<Item = &Iri> + '_ {
        self.by_subject.keys()
    }

    pub fn has_subject(&self, subject: &Iri) -> bool {
        self.by_subject.contains_key(subject)
    }

    pub fn predicates(&self) -> impl Iterator<Item = &Iri> + '_ {
        self.by_predicate.keys()
    }

    pub fn has_predicate(&self, predicate: &Iri) -> bool {
        self.by_predicate.contains_key(predicate)
    }

    /// Whether the IRI occurs as subject or object.
    pub fn mentions(&self, iri: &Iri) -> bool {
        self.by_subject.contains_key(iri) || self.by_object.contains_key(&Term::Iri(iri.clone()))
    }

    pub fn extend<I: IntoIterator<Item = Triple>>(&mut self, triples: I) {
        for t in triples {
            self.insert(t);
        }
    }

    pub fn union(&self, other: &Graph) -> Graph {
        let mut out = self.clone();
        out.extend(other.iter().cloned());
        out
    }

    /// Triples of `self` absent from `other`.
    pub fn difference<'a>(&'a self, other: &'a Graph) -> impl Iterator<Item = &'a Triple> + 'a {
        self.triples.iter().filter(move |t| !other.contains(t))
    }

    pub fn into_triples(self) -> BTreeSet<Triple> {
        self.triples
    }
}

fn remove_indexed<K: Ord>(index: &mut BTreeMap<K, BTreeSet<Triple>>, key: &K, triple: &Triple) {
    if let Some(set) = index.get_mut(key) {
        set.remove(triple);
        if set.is_empty() {
            index.remove(key);
        }
    }
}

impl PartialEq for Graph {
    fn eq(&self, other: &Self) -> bool {
        self.triples == other.triples
    }
}

impl Eq for Graph {}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.triples.iter()).finish()
    }
}

impl FromIterator<Triple> for Graph {
    fn from_iter<I: IntoIterator<Item = Triple>>(iter: I) -> Self {
        let mut g = Graph::new();
        g.extend(iter);
        g
    }
}

impl<'a> IntoIterator for &'a Graph {
    type Item = &'a Triple;
    type IntoIter = std::collections::btree_set::Iter<'a, Triple>;

    fn into_iter(self) -> Self::IntoIter {
        self.triples.iter()
    }
}

/// Replaces the prefix `from` with `to` on every IRI in subject, predicate or
/// object position. Literals, including their datatypes, are left untouched.
pub fn rename_namespace(g: &Graph, from: &str, to: &str) -> Graph {
    assert!(!from.is_empty(), "namespace prefix to rename must be non-empty");
    let rename = |iri: &Iri| -> Iri {
        match iri.as_str().strip_prefix(from) {
            Some(rest) => Iri::new_unchecked(format!("{to}{rest}")),
            None => iri.clone(),
        }
    };
    g.iter()
        .map(|t| {
            let object = match &t.object {
                Term::Iri(iri) => Term::Iri(rename(iri)),
                lit => lit.clone(),
            };
            Triple { subject: rename(&t.subject), predicate: rename(&t.predicate), object }
        })
        .collect()
}

/// Entity, predicate and class sets underlying the size statistics.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct GraphPrimitives {
    pub entities: BTreeSet<Iri>,
    pub predicates: BTreeSet<Iri>,
    pub classes: BTreeSet<Iri>,
}

/// Entities are subjects plus IRI objects of non-type predicates; class IRIs
/// (objects of `rdf:type`) are not counted as entities.
pub fn graph_stats_primitives(g: &Graph) -> GraphPrimitives {
    let mut out = GraphPrimitives::default();
    for t in g.iter() {
        out.entities.insert(t.subject.clone());
        out.predicates.insert(t.predicate.clone());
        if let Term::Iri(o) = &t.object {
            if t.predicate.as_str() == vocab::RDF_TYPE {
                out.classes.insert(o.clone());
            } else {
                out.entities.insert(o.clone());
            }
        }
    }
    out
}
