//! Iterative joint entity/relation alignment of two graphs.
//!
//! Entities are compared by IDF-weighted Jaccard overlap of their literal
//! values (lexical forms, any predicate). Relations are then scored by the
//! fraction of their matched endpoint pairs that a seed predicate also
//! connects, and entity scores are recomputed with the translated relation
//! edges as extra evidence.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use super::SimilarityConfig;
use crate::exchange::{MatchRecord, MatchSet};
use crate::par;
use crate::rdf::{iri, vocab, Graph, Iri, Term};

/// Rarest values of a source entity used to find candidates.
const BLOCKING_VALUES: usize = 3;

struct Profile {
    values: BTreeSet<String>,
    links: BTreeSet<(Iri, Iri)>,
}

fn profile(g: &Graph, s: &Iri, rdf_type: &Iri) -> Profile {
    let mut values = BTreeSet::new();
    let mut links = BTreeSet::new();
    for t in g.with_subject(s) {
        match &t.object {
            Term::Literal(l) => {
                values.insert(l.lexical().to_string());
            }
            Term::Iri(o) if t.predicate != *rdf_type => {
                links.insert((t.predicate.clone(), o.clone()));
            }
            Term::Iri(_) => {}
        }
    }
    Profile { values, links }
}

fn idf(n: usize, df: usize) -> f64 {
    (1.0 + n as f64 / df.max(1) as f64).ln()
}

struct Aligner<'a> {
    seed: &'a Graph,
    source: &'a Graph,
    seed_ids: Vec<Iri>,
    seed_profiles: Vec<Profile>,
    source_ids: Vec<Iri>,
    source_profiles: Vec<Profile>,
    value_weight: HashMap<String, f64>,
    seed_value_total: Vec<f64>,
    source_value_total: Vec<f64>,
    candidates: Vec<Vec<usize>>,
    rdf_type: Iri,
}

impl<'a> Aligner<'a> {
    fn new(seed: &'a Graph, source: &'a Graph) -> Self {
        let rdf_type = iri(vocab::RDF_TYPE);
        let seed_ids: Vec<Iri> = seed.subjects().cloned().collect();
        // ids the source shares with the seed are already aligned
        let source_ids: Vec<Iri> = source.subjects().filter(|s| !seed.has_subject(s)).cloned().collect();
        let seed_profiles = par::map(&seed_ids, |s| profile(seed, s, &rdf_type));
        let source_profiles = par::map(&source_ids, |s| profile(source, s, &rdf_type));

        let mut df: HashMap<&str, usize> = HashMap::new();
        for p in seed_profiles.iter().chain(&source_profiles) {
            for v in &p.values {
                *df.entry(v.as_str()).or_default() += 1;
            }
        }
        let n = seed_ids.len() + source_ids.len();
        let value_weight: HashMap<String, f64> = df.iter().map(|(v, &d)| (v.to_string(), idf(n, d))).collect();
        let total = |p: &Profile| p.values.iter().map(|v| value_weight[v.as_str()]).sum::<f64>();
        let seed_value_total = seed_profiles.iter().map(total).collect();
        let source_value_total = source_profiles.iter().map(total).collect();

        let mut by_value: HashMap<&str, Vec<usize>> = HashMap::new();
        for (i, p) in seed_profiles.iter().enumerate() {
            for v in &p.values {
                by_value.entry(v.as_str()).or_default().push(i);
            }
        }
        let candidates = source_profiles
            .iter()
            .map(|p| {
                let mut rare: Vec<&str> =
                    p.values.iter().map(String::as_str).filter(|v| by_value.contains_key(v)).collect();
                rare.sort_by_key(|v| (df[v], *v));
                let mut c: BTreeSet<usize> = BTreeSet::new();
                for v in rare.into_iter().take(BLOCKING_VALUES) {
                    c.extend(&by_value[v]);
                }
                c.into_iter().collect()
            })
            .collect();
        Aligner {
            seed,
            source,
            seed_ids,
            seed_profiles,
            source_ids,
            source_profiles,
            value_weight,
            seed_value_total,
            source_value_total,
            candidates,
            rdf_type,
        }
    }

    fn resolve(&self, x: &Iri, entities: &BTreeMap<Iri, (Iri, f64)>) -> Option<Iri> {
        match entities.get(x) {
            Some((y, _)) => Some(y.clone()),
            None if self.seed.mentions(x) => Some(x.clone()),
            None => None,
        }
    }

    /// Best seed partner per source entity scoring at least `threshold`.
    fn match_entities(
        &self,
        threshold: f64,
        relations: &BTreeMap<Iri, (Iri, f64)>,
        previous: &BTreeMap<Iri, (Iri, f64)>,
    ) -> BTreeMap<Iri, (Iri, f64)> {
        let with_links = !relations.is_empty();
        let mut link_weight: HashMap<(Iri, Iri), f64> = HashMap::new();
        let mut translated: Vec<BTreeSet<(Iri, Iri)>> = Vec::new();
        if with_links {
            let pred = |p: &Iri| {
                relations.get(p).map(|(q, _)| q.clone()).or_else(|| self.seed.has_predicate(p).then(|| p.clone()))
            };
            translated = self
                .source_profiles
                .iter()
                .map(|p| p.links.iter().filter_map(|(l, o)| Some((pred(l)?, self.resolve(o, previous)?))).collect())
                .collect();
            let mut df: HashMap<&(Iri, Iri), usize> = HashMap::new();
            for links in self.seed_profiles.iter().map(|p| &p.links).chain(&translated) {
                for l in links {
                    *df.entry(l).or_default() += 1;
                }
            }
            let n = self.seed_ids.len() + self.source_ids.len();
            link_weight = df.into_iter().map(|(l, d)| (l.clone(), idf(n, d))).collect();
        }
        let indices: Vec<usize> = (0..self.source_ids.len()).collect();
        let best = par::map(&indices, |&j| {
            let src = &self.source_profiles[j];
            let mut best: Option<(f64, usize)> = None;
            for &i in &self.candidates[j] {
                let seed = &self.seed_profiles[i];
                let shared: f64 = src.values.intersection(&seed.values).map(|v| self.value_weight[v.as_str()]).sum();
                let union = self.seed_value_total[i] + self.source_value_total[j] - shared;
                let mut score = if union > 0.0 { shared / union } else { 0.0 };
                if with_links {
                    let t = &translated[j];
                    let shared_l: f64 = t.intersection(&seed.links).map(|l| link_weight[l]).sum();
                    let total = |ls: &BTreeSet<(Iri, Iri)>| ls.iter().map(|l| link_weight[l]).sum::<f64>();
                    let union_l = total(t) + total(&seed.links) - shared_l;
                    if union + union_l > 0.0 {
                        // relation evidence can only add to the literal score
                        score = score.max((shared + shared_l) / (union + union_l));
                    }
                }
                let better = match best {
                    None => true,
                    Some((b, bi)) => score > b || (score == b && self.seed_ids[i] < self.seed_ids[bi]),
                };
                if better {
                    best = Some((score, i));
                }
            }
            best.filter(|(s, _)| *s >= threshold).map(|(s, i)| (self.seed_ids[i].clone(), s.min(1.0)))
        });
        self.source_ids.iter().cloned().zip(best).filter_map(|(id, b)| Some((id, b?))).collect()
    }

    /// Best seed predicate per source predicate by endpoint agreement.
    fn match_relations(&self, threshold: f64, entities: &BTreeMap<Iri, (Iri, f64)>) -> BTreeMap<Iri, (Iri, f64)> {
        let preds: Vec<Iri> =
            self.source.predicates().filter(|p| **p != self.rdf_type && !self.seed.has_predicate(p)).cloned().collect();
        let scored = par::map(&preds, |p2| {
            let mut considered = 0usize;
            let mut counts: BTreeMap<Iri, usize> = BTreeMap::new();
            for t in self.source.with_predicate(p2) {
                let Some(s1) = self.resolve(&t.subject, entities) else { continue };
                let hits: BTreeSet<Iri> = match &t.object {
                    Term::Iri(o) => {
                        let Some(o1) = self.resolve(o, entities) else { continue };
                        self.seed
                            .matching(Some(&s1), None, Some(&Term::Iri(o1)))
                            .into_iter()
                            .map(|t1| t1.predicate.clone())
                            .collect()
                    }
                    Term::Literal(l) => self
                        .seed
                        .with_subject(&s1)
                        .filter(|t1| t1.object.as_literal().is_some_and(|l1| l1.lexical() == l.lexical()))
                        .map(|t1| t1.predicate.clone())
                        .collect(),
                };
                considered += 1;
                for p1 in hits.into_iter().filter(|p1| *p1 != self.rdf_type) {
                    *counts.entry(p1).or_default() += 1;
                }
            }
            // BTreeMap order makes the lower IRI win ties
            let (p1, n) = counts.into_iter().fold(None, |best: Option<(Iri, usize)>, (p, n)| match best {
                Some((_, bn)) if bn >= n => best,
                _ => Some((p, n)),
            })?;
            let score = n as f64 / considered as f64;
            (score >= threshold).then_some((p1, score))
        });
        preds.into_iter().zip(scored).filter_map(|(p, s)| Some((p, s?))).collect()
    }
}

/// Aligns `source` against `seed`. Ids and predicates present in both graphs
/// are taken as already aligned and are not reported.
pub fn graph_align(seed: &Graph, source: &Graph, cfg: &SimilarityConfig) -> Result<MatchSet, String> {
    if seed.is_empty() || source.is_empty() {
        return Err("graph_align needs two non-empty graphs".into());
    }
    let a = Aligner::new(seed, source);
    let none = BTreeMap::new();
    let mut entities = a.match_entities(cfg.entity_threshold, &none, &none);
    let mut relations = a.match_relations(cfg.relation_threshold, &entities);
    for _ in 1..cfg.max_iterations {
        let next = a.match_entities(cfg.entity_threshold, &relations, &entities);
        if next == entities {
            break;
        }
        entities = next;
        relations = a.match_relations(cfg.relation_threshold, &entities);
    }
    let records = entities
        .into_iter()
        .map(|(s, (t, score))| MatchRecord::entity(s.as_str(), t.as_str(), score))
        .chain(relations.into_iter().map(|(s, (t, score))| MatchRecord::relation(s.as_str(), t.as_str(), score)));
    Ok(MatchSet::new(records))
}
