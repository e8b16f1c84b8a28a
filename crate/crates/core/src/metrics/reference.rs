//! Fidelity against the reference KG and the per-split ground truth.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::exchange::{DataFormat, GroundTruthBundle, KeDoc, MatchSet, MatchType};
use crate::rdf::vocab::{self, GEN_PROPERTY_NS, KGB_BASE};
use crate::rdf::{iri, Graph, Iri, Literal, Term, Triple};
use crate::similarity::{similarity, LabelIndex};
use crate::tasks::percent_encode;

/// Label similarity accepted by the fuzzy source-entity check.
pub const FUZZY_ENTITY_THRESHOLD: f64 = 0.9;
/// Literal similarity accepted by the fuzzy-value coverage.
pub const FUZZY_VALUE_THRESHOLD: f64 = 0.8;

#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
pub struct PrecisionRecall {
    pub precision: f64,
    pub recall: f64,
    pub f1: f64,
}

impl PrecisionRecall {
    /// Empty denominators count as perfect.
    pub fn from_counts(hits_produced: usize, produced: usize, hits_expected: usize, expected: usize) -> Self {
        let ratio = |a: usize, b: usize| if b == 0 { 1.0 } else { a as f64 / b as f64 };
        Self::new(ratio(hits_produced, produced), ratio(hits_expected, expected))
    }

    pub fn new(precision: f64, recall: f64) -> Self {
        let f1 = if precision + recall == 0.0 { 0.0 } else { 2.0 * precision * recall / (precision + recall) };
        PrecisionRecall { precision, recall, f1 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LinkScores {
    pub precision: f64,
    pub recall: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct RefReport {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub entity_match: Option<PrecisionRecall>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ontology_match: Option<PrecisionRecall>,
    /// Entity and relation matches scored as one set.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub combined_match: Option<PrecisionRecall>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub entity_linking: Option<LinkScores>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub relation_linking_accuracy: Option<f64>,
    pub source_entity_recall: f64,
    pub fuzzy_source_entity_recall: f64,
    pub reference_kg: PrecisionRecall,
    pub fuzzy_reference_kg: PrecisionRecall,
    pub fuzzy_values_reference_kg: PrecisionRecall,
    pub fuzzy: String,
}

type PairKey = (MatchType, String, String);

fn pair_key(t: MatchType, a: String, b: String) -> PairKey {
    if a <= b {
        (t, a, b)
    } else {
        (t, b, a)
    }
}

fn score_sets(produced: &BTreeSet<PairKey>, gold: &BTreeSet<PairKey>) -> PrecisionRecall {
    let hits = produced.intersection(gold).count();
    PrecisionRecall::from_counts(hits, produced.len(), hits, gold.len())
}

/// Set precision/recall over unordered (id1, id2, type) pairs. An empty
/// produced set has precision 1.
pub fn evaluate_match_set(produced: &MatchSet, gold: &MatchSet) -> PrecisionRecall {
    let keys = |m: &MatchSet| -> BTreeSet<PairKey> {
        m.records().iter().map(|r| pair_key(r.match_type, r.id1.clone(), r.id2.clone())).collect()
    };
    score_sets(&keys(produced), &keys(gold))
}

/// Maps ids of shaded source namespaces back to reference ids.
#[derive(Debug, Clone, Default)]
pub struct Unshade(Vec<String>);

impl Unshade {
    pub fn new(n_sources: usize) -> Self {
        Unshade((1..=n_sources).map(vocab::source_base).collect())
    }

    pub fn id(&self, s: &str) -> String {
        for prefix in &self.0 {
            if let Some(rest) = s.strip_prefix(prefix.as_str()) {
                return format!("{KGB_BASE}{rest}");
            }
        }
        s.to_string()
    }

    /// `g` with every shaded IRI mapped back.
    pub fn graph(&self, g: &Graph) -> Graph {
        let map = |x: &Iri| iri(&self.id(x.as_str()));
        g.iter()
            .map(|t| {
                let object = match &t.object {
                    Term::Iri(o) => Term::Iri(map(o)),
                    lit => lit.clone(),
                };
                Triple::new(map(&t.subject), map(&t.predicate), object)
            })
            .collect()
    }

    fn graph_ids(&self, g: &Graph) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        for t in g.iter() {
            out.insert(self.id(t.subject.as_str()));
            out.insert(self.id(t.predicate.as_str()));
            if let Term::Iri(o) = &t.object {
                out.insert(self.id(o.as_str()));
            }
        }
        out
    }
}

/// Everything one increment's reference metrics depend on.
pub struct ReferenceInputs<'a> {
    pub kg: &'a Graph,
    /// The KG the increment started from.
    pub prior: &'a Graph,
    pub reference: &'a Graph,
    pub seed_region: &'a Graph,
    pub truth: &'a GroundTruthBundle,
    pub source_format: DataFormat,
    pub matches: Option<&'a MatchSet>,
    pub ke: Option<&'a [KeDoc]>,
    pub unshade: &'a Unshade,
}

/// Match scores after unshading both sides; gold is restricted to pairs whose
/// target already exists in the prior KG, the only ones a matcher can find.
fn match_scores(inp: &ReferenceInputs, produced: &MatchSet) -> [PrecisionRecall; 3] {
    let u = inp.unshade;
    let known = u.graph_ids(inp.prior);
    let key = |t: MatchType, a: &str, b: &str| pair_key(t, u.id(a), u.id(b));
    let gold: BTreeSet<PairKey> = inp
        .truth
        .expected_matches
        .records()
        .iter()
        .filter(|r| known.contains(&u.id(&r.id2)))
        .map(|r| key(r.match_type, &r.id1, &r.id2))
        .collect();
    let produced: BTreeSet<PairKey> = produced.records().iter().map(|r| key(r.match_type, &r.id1, &r.id2)).collect();
    let only = |s: &BTreeSet<PairKey>, t: MatchType| s.iter().filter(|k| k.0 == t).cloned().collect::<BTreeSet<_>>();
    [
        score_sets(&only(&produced, MatchType::Entity), &only(&gold, MatchType::Entity)),
        score_sets(&only(&produced, MatchType::Relation), &only(&gold, MatchType::Relation)),
        score_sets(&produced, &gold),
    ]
}

/// Film-link precision over every produced link of a gold film form, and
/// recall over gold films already in the prior KG.
fn entity_linking(inp: &ReferenceInputs, docs: &[KeDoc]) -> LinkScores {
    let gold: BTreeMap<&str, &str> = inp.truth.film_links.iter().map(|l| (l.form.as_str(), l.id.as_str())).collect();
    let known = inp.unshade.graph_ids(inp.prior);
    let (mut produced, mut correct) = (0, 0);
    let mut found: BTreeSet<&str> = BTreeSet::new();
    for doc in docs {
        for l in &doc.links {
            if let Some(&id) = gold.get(l.form.as_str()) {
                produced += 1;
                if inp.unshade.id(&l.link) == id {
                    correct += 1;
                    found.insert(id);
                }
            }
        }
    }
    let expected: BTreeSet<&str> = gold.values().copied().filter(|id| known.contains(*id)).collect();
    let recalled = expected.iter().filter(|id| found.contains(*id)).count();
    let pr = PrecisionRecall::from_counts(correct, produced, recalled, expected.len());
    LinkScores { precision: pr.precision, recall: pr.recall }
}

/// Share of gold key paths assigned their gold property, either by relation
/// links of JSON-linked documents or by relation matches of lifted keys.
fn relation_linking(inp: &ReferenceInputs) -> Option<f64> {
    let keymap = &inp.truth.gold_keymap;
    let mut predicted: BTreeMap<String, (f64, String)> = BTreeMap::new();
    let mut offer = |form: String, link: String, score: f64| match predicted.get(&form) {
        Some((s, l)) if *s > score || (*s == score && *l <= link) => {}
        _ => {
            predicted.insert(form, (score, link));
        }
    };
    if let Some(docs) = inp.ke {
        for l in docs.iter().flat_map(|d| &d.links) {
            if keymap.contains_key(&l.form) {
                offer(l.form.clone(), l.link.clone(), l.score);
            }
        }
    } else {
        let m = inp.matches?;
        for r in m.relations() {
            let (generic, other) = if r.id1.starts_with(GEN_PROPERTY_NS) { (&r.id1, &r.id2) } else { (&r.id2, &r.id1) };
            if let Some(key) = generic.strip_prefix(GEN_PROPERTY_NS) {
                for path in keymap.keys().filter(|p| percent_encode(p.rsplit('.').next().unwrap_or(p)) == key) {
                    offer(path.clone(), other.clone(), r.score);
                }
            }
        }
    }
    if keymap.is_empty() {
        return Some(1.0);
    }
    let correct = keymap.iter().filter(|(path, p)| predicted.get(*path).is_some_and(|(_, l)| l == *p)).count();
    Some(correct as f64 / keymap.len() as f64)
}

fn source_entities(kg: &Graph, truth: &GroundTruthBundle) -> (f64, f64) {
    let expected = &truth.expected_entities;
    if expected.is_empty() {
        return (1.0, 1.0);
    }
    let rdf_type = iri(vocab::RDF_TYPE);
    let label = iri(vocab::RDFS_LABEL);
    let mut by_class: BTreeMap<&Iri, LabelIndex> = BTreeMap::new();
    for t in kg.with_predicate(&rdf_type) {
        let Some(class) = t.object.as_iri() else { continue };
        for l in kg.objects(&t.subject, &label).filter_map(Term::as_literal) {
            by_class.entry(class).or_default().insert(t.subject.as_str(), l.lexical());
        }
    }
    let (mut exact, mut fuzzy) = (0, 0);
    for e in expected {
        let class = iri(&e.entity_type);
        let hit = kg.contains(&Triple::new(iri(&e.id), rdf_type.clone(), class.clone()));
        let near =
            hit || by_class.get(&class).is_some_and(|ix| ix.best_match(&e.label, FUZZY_ENTITY_THRESHOLD).is_some());
        exact += usize::from(hit);
        fuzzy += usize::from(near);
    }
    (exact as f64 / expected.len() as f64, fuzzy as f64 / expected.len() as f64)
}

fn outside(g: &Graph, seed: &Graph) -> Graph {
    g.iter().filter(|t| !seed.contains(t)).cloned().collect()
}

fn exact_overlap(kg: &Graph, reference: &Graph) -> PrecisionRecall {
    let hits = kg.iter().filter(|t| reference.contains(t)).count();
    PrecisionRecall::from_counts(hits, kg.len(), hits, reference.len())
}

/// Renames KG entities to the reference entity carrying the same label
/// (the smallest such id when several do).
fn align_by_label(kg: &Graph, reference: &Graph) -> Graph {
    let label = iri(vocab::RDFS_LABEL);
    let mut ref_by_label: BTreeMap<&str, &Iri> = BTreeMap::new();
    for t in reference.with_predicate(&label) {
        if let Some(l) = t.object.as_literal() {
            ref_by_label.entry(l.lexical()).and_modify(|e| *e = (*e).min(&t.subject)).or_insert(&t.subject);
        }
    }
    let mut rename: BTreeMap<&Iri, &Iri> = BTreeMap::new();
    for t in kg.with_predicate(&label) {
        if let Some(target) = t.object.as_literal().and_then(|l| ref_by_label.get(l.lexical())) {
            rename.entry(&t.subject).and_modify(|e| *e = (*e).min(*target)).or_insert(*target);
        }
    }
    let map = |x: &Iri| rename.get(x).map_or_else(|| x.clone(), |t| (*t).clone());
    kg.iter()
        .map(|t| {
            let object = match &t.object {
                Term::Iri(o) if t.predicate != iri(vocab::RDF_TYPE) => Term::Iri(map(o)),
                other => other.clone(),
            };
            Triple::new(map(&t.subject), t.predicate.clone(), object)
        })
        .collect()
}

fn fuzzy_value_overlap(kg: &Graph, reference: &Graph) -> PrecisionRecall {
    fn literals(g: &Graph) -> BTreeMap<(&Iri, &Iri), Vec<&Literal>> {
        let mut out: BTreeMap<(&Iri, &Iri), Vec<&Literal>> = BTreeMap::new();
        for t in g.iter() {
            if let Term::Literal(l) = &t.object {
                out.entry((&t.subject, &t.predicate)).or_default().push(l);
            }
        }
        out
    }
    let (kg_lits, ref_lits) = (literals(kg), literals(reference));
    let near = |t: &Triple, other: &Graph, lits: &BTreeMap<(&Iri, &Iri), Vec<&Literal>>| {
        other.contains(t)
            || t.object.as_literal().is_some_and(|l| {
                lits.get(&(&t.subject, &t.predicate))
                    .is_some_and(|vs| vs.iter().any(|v| similarity(v.lexical(), l.lexical()) >= FUZZY_VALUE_THRESHOLD))
            })
    };
    let kg_hits = kg.iter().filter(|t| near(t, reference, &ref_lits)).count();
    let ref_hits = reference.iter().filter(|t| near(t, kg, &kg_lits)).count();
    PrecisionRecall::from_counts(kg_hits, kg.len(), ref_hits, reference.len())
}

pub fn compute_reference(inp: &ReferenceInputs) -> RefReport {
    let rdf_source = inp.source_format == DataFormat::Rdf;
    let matching = inp.matches.filter(|_| rdf_source).map(|m| match_scores(inp, m));
    let kg = inp.unshade.graph(inp.kg);
    let (se, fuzzy_se) = source_entities(&kg, inp.truth);

    let reference = outside(inp.reference, inp.seed_region);
    let aligned = align_by_label(&kg, inp.reference);
    RefReport {
        entity_match: matching.map(|m| m[0]),
        ontology_match: matching.map(|m| m[1]),
        combined_match: matching.map(|m| m[2]),
        entity_linking: inp.ke.map(|docs| entity_linking(inp, docs)),
        relation_linking_accuracy: if inp.source_format == DataFormat::Json { relation_linking(inp) } else { None },
        source_entity_recall: se,
        fuzzy_source_entity_recall: fuzzy_se,
        reference_kg: exact_overlap(&outside(&kg, inp.seed_region), &reference),
        fuzzy_reference_kg: exact_overlap(&outside(&aligned, inp.seed_region), &reference),
        fuzzy_values_reference_kg: fuzzy_value_overlap(&outside(&aligned, inp.seed_region), &reference),
        fuzzy: "trigram".to_string(),
    }
}
