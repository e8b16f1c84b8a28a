//! Recomputes the construction constraints of a bundle on disk.

use std::collections::BTreeSet;

use serde::Serialize;

use super::{films_of, key_paths, sha256_hex, BenchDir, BenchError, MANIFEST_FILE};
use crate::exchange::{MatchType, ENTITIES_FILE};
use crate::ontology::OntologySchema;
use crate::rdf::vocab::{self, source_base, KGB_BASE};
use crate::rdf::{graph_stats_primitives, iri, rename_namespace, Graph, Iri, Term};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "camelCase")]
pub enum AuditCheck {
    Checksum,
    SplitSize,
    Overlap,
    Isomorphism,
    GroundTruth,
    Documents,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AuditFinding {
    pub check: AuditCheck,
    pub message: String,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct AuditReport {
    pub split_film_counts: Vec<usize>,
    /// (split a, split b, shared films) for every pair, split 0 being the seed.
    pub film_overlaps: Vec<(usize, usize, usize)>,
    pub violations: Vec<AuditFinding>,
}

impl AuditReport {
    pub fn is_clean(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn count(&self, check: AuditCheck) -> usize {
        self.violations.iter().filter(|v| v.check == check).count()
    }

    fn flag(&mut self, check: AuditCheck, message: impl Into<String>) {
        self.violations.push(AuditFinding { check, message: message.into() });
    }
}

/// Reference triples about `films` and every entity those films point to.
fn expected_subgraph(reference: &Graph, films: &BTreeSet<String>) -> Graph {
    let rdf_type = iri(vocab::RDF_TYPE);
    let mut subjects: BTreeSet<Iri> = films.iter().map(|f| iri(f)).collect();
    for f in films {
        for t in reference.with_subject(&iri(f)) {
            if let Term::Iri(o) = &t.object {
                if t.predicate != rdf_type {
                    subjects.insert(o.clone());
                }
            }
        }
    }
    subjects.iter().flat_map(|s| reference.with_subject(s).cloned().collect::<Vec<_>>()).collect()
}

fn compare(report: &mut AuditReport, what: &str, actual: &Graph, expected: &Graph) {
    let extra = actual.difference(expected).count();
    let missing = expected.difference(actual).count();
    if extra + missing > 0 {
        report.flag(
            AuditCheck::Isomorphism,
            format!("{what}: {extra} triples not in the reference subgraph, {missing} reference triples absent"),
        );
    }
}

pub fn audit(bench: &BenchDir) -> Result<AuditReport, BenchError> {
    let mut report = AuditReport::default();
    let manifest = bench.manifest();
    for (rel, expected) in &manifest.checksums {
        match std::fs::read(bench.root().join(rel)) {
            Ok(bytes) if sha256_hex(&bytes) == *expected => {}
            Ok(_) => report.flag(AuditCheck::Checksum, format!("{rel}: checksum mismatch")),
            Err(e) => report.flag(AuditCheck::Checksum, format!("{rel}: {e}")),
        }
    }
    if manifest.checksums.contains_key(MANIFEST_FILE) {
        report.flag(AuditCheck::Checksum, "manifest lists a checksum for itself");
    }

    let schema = bench.ontology()?;
    let reference = bench.reference()?;
    let seed = bench.seed()?;
    if bench.seed_region()? != seed {
        report.flag(AuditCheck::GroundTruth, "seed region differs from the seed graph");
    }
    let film_class = super::ontology_def::onto(super::ontology_def::FILM).to_string();
    let cfg = &manifest.config;

    let mut film_sets = vec![films_of(&seed, &film_class)];
    compare(&mut report, "seed", &seed, &expected_subgraph(&reference, &film_sets[0]));
    for i in 1..=bench.n_sources() {
        let ns = source_base(i);
        let shaded = bench.source_rdf(i)?;
        let renamed = rename_namespace(&shaded, &ns, KGB_BASE);
        let films = films_of(&renamed, &film_class);
        compare(&mut report, &format!("source{i}"), &renamed, &expected_subgraph(&reference, &films));
        check_ground_truth(bench, i, &schema, &reference, &shaded, &films, &mut report)?;
        film_sets.push(films);
    }

    let target = cfg.n_films as f64 / cfg.n_splits as f64;
    for (j, films) in film_sets.iter().enumerate() {
        report.split_film_counts.push(films.len());
        if (films.len() as f64 - target).abs() > 0.05 * target {
            report.flag(AuditCheck::SplitSize, format!("split {j} has {} films, expected about {target}", films.len()));
        }
    }
    for a in 0..film_sets.len() {
        for b in (a + 1)..film_sets.len() {
            let shared = film_sets[a].intersection(&film_sets[b]).count();
            report.film_overlaps.push((a, b, shared));
            if shared.abs_diff(manifest.pair_overlap) > 2 {
                report.flag(
                    AuditCheck::Overlap,
                    format!("splits {a} and {b} share {shared} films, expected {}", manifest.pair_overlap),
                );
            }
        }
    }
    Ok(report)
}

fn check_ground_truth(
    bench: &BenchDir,
    i: usize,
    schema: &OntologySchema,
    reference: &Graph,
    shaded: &Graph,
    films: &BTreeSet<String>,
    report: &mut AuditReport,
) -> Result<(), BenchError> {
    let gt = bench.ground_truth(i)?;
    let shaded_entities = graph_stats_primitives(shaded).entities;
    let reference_entities = graph_stats_primitives(reference).entities;
    let mut matched = BTreeSet::new();
    for r in gt.expected_matches.records() {
        let (a, b) = (iri(&r.id1), iri(&r.id2));
        let ok = match r.match_type {
            MatchType::Entity => shaded_entities.contains(&a) && reference_entities.contains(&b),
            MatchType::Relation => shaded.has_predicate(&a) && schema.property(&b).is_some(),
        };
        if !ok {
            report.flag(
                AuditCheck::GroundTruth,
                format!("source{i}: gold match {} = {} refers to a missing id", r.id1, r.id2),
            );
        }
        if r.match_type == MatchType::Entity {
            matched.insert(a);
        }
    }
    for e in shaded_entities.difference(&matched) {
        report.flag(AuditCheck::GroundTruth, format!("source{i}: entity {e} has no gold match"));
    }

    let canonical: BTreeSet<Iri> =
        shaded_entities.iter().map(|e| iri(&format!("{KGB_BASE}{}", &e.as_str()[source_base(i).len()..]))).collect();
    let rdf_type = iri(vocab::RDF_TYPE);
    for e in &gt.expected_entities {
        let id = iri(&e.id);
        let typed = reference.contains(&crate::rdf::Triple::new(id.clone(), rdf_type.clone(), iri(&e.entity_type)));
        if !typed || !canonical.contains(&id) {
            report.flag(AuditCheck::GroundTruth, format!("source{i}/{ENTITIES_FILE}: {} is not a source entity", e.id));
        }
    }
    for link in &gt.film_links {
        if !films.contains(&link.id) {
            report
                .flag(AuditCheck::GroundTruth, format!("source{i}: film link {} is not a film of the split", link.id));
        }
    }

    let json_path = bench.source_path(i, crate::exchange::DataFormat::Json);
    let text = std::fs::read_to_string(&json_path).map_err(super::io_err(&json_path))?;
    let docs: Vec<serde_json::Value> =
        serde_json::from_str(&text).map_err(|source| BenchError::Json { path: json_path.clone(), source })?;
    if docs.len() != films.len() {
        report
            .flag(AuditCheck::Documents, format!("source{i}: {} JSON documents for {} films", docs.len(), films.len()));
    }
    let paths = key_paths(&docs);
    if paths.iter().ne(gt.gold_keymap.keys()) {
        report.flag(
            AuditCheck::GroundTruth,
            format!("source{i}: gold key map does not cover exactly the emitted key paths"),
        );
    }
    for (path, p) in &gt.gold_keymap {
        if !schema.in_vocabulary(&iri(p)) {
            report.flag(AuditCheck::GroundTruth, format!("source{i}: key {path} maps to unknown property {p}"));
        }
    }
    let text_path = bench.source_path(i, crate::exchange::DataFormat::Text);
    let text = std::fs::read_to_string(&text_path).map_err(super::io_err(&text_path))?;
    let paragraphs = text.split("\n\n").filter(|p| !p.trim().is_empty()).count();
    if paragraphs != films.len() {
        report.flag(AuditCheck::Documents, format!("source{i}: {paragraphs} abstracts for {} films", films.len()));
    }
    Ok(())
}
