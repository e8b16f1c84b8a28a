//! Deterministic movie-domain benchmark generator.
//!
//! A single ChaCha8 stream seeded from `rngSeed` drives every random choice,
//! so a configuration always produces the same bytes on disk.

mod audit;
mod json_docs;
mod names;
pub mod ontology_def;
mod splits;
mod synth;
mod text_docs;

use std::collections::{BTreeMap, BTreeSet};
use std::path::{Path, PathBuf};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

pub use audit::{audit, AuditCheck, AuditFinding, AuditReport};
pub use json_docs::{key_paths, runtime_text};
pub use ontology_def::{movie_schema, schema_to_graph};
pub use splits::{pair_overlap, split_sizes, SplitError};
pub use synth::money;

use crate::exchange::{DataFormat, ExchangeError, ExpectedEntity, FilmLink, GroundTruthBundle, MatchRecord, MatchSet};
use crate::ontology::{load_ontology, OntologyError, OntologySchema};
use crate::rdf::vocab::{self, source_base, KGB_BASE};
use crate::rdf::{
    graph_stats_primitives, iri, read_ntriples_file, rename_namespace, serialize_ntriples, Graph, RdfError,
};

pub const MANIFEST_FILE: &str = "manifest.json";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct BenchConfig {
    pub n_films: usize,
    pub n_splits: usize,
    pub film_overlap_rate: f64,
    pub rng_seed: u64,
    pub ambiguity_rate: f64,
    /// Chance, per slot (two per abstract), of an off-topic sentence.
    pub distractor_rate: f64,
    /// Chance that a given fact is mentioned in a film's abstract.
    pub fact_coverage: f64,
}

impl Default for BenchConfig {
    fn default() -> Self {
        BenchConfig {
            n_films: 100,
            n_splits: 4,
            film_overlap_rate: 0.05,
            rng_seed: 42,
            ambiguity_rate: 0.2,
            distractor_rate: 0.25,
            fact_coverage: 0.7,
        }
    }
}

impl BenchConfig {
    pub fn with_films(n_films: usize, rng_seed: u64) -> Self {
        BenchConfig { n_films, rng_seed, ..Default::default() }
    }

    pub fn validate(&self) -> Result<(), BenchError> {
        let bad = |msg: String| Err(BenchError::Config(msg));
        if self.n_splits < 2 {
            return bad(format!("nSplits must be at least 2, got {}", self.n_splits));
        }
        if self.n_films < self.n_splits * 10 {
            return bad(format!("nFilms must be at least 10 per split ({}), got {}", self.n_splits * 10, self.n_films));
        }
        if !(self.film_overlap_rate > 0.0 && self.film_overlap_rate < 0.5) {
            return bad(format!("filmOverlapRate must lie in (0, 0.5), got {}", self.film_overlap_rate));
        }
        for (name, v) in [
            ("ambiguityRate", self.ambiguity_rate),
            ("distractorRate", self.distractor_rate),
            ("factCoverage", self.fact_coverage),
        ] {
            if !(0.0..=1.0).contains(&v) {
                return bad(format!("{name} must lie in [0, 1], got {v}"));
            }
        }
        Ok(())
    }
}

#[derive(Debug, thiserror::Error)]
pub enum BenchError {
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error(transparent)]
    Split(#[from] SplitError),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error(transparent)]
    Rdf(#[from] RdfError),
    #[error("ontology: {0}")]
    Ontology(#[from] OntologyError),
    #[error(transparent)]
    Exchange(#[from] ExchangeError),
    #[error("{path}: {source}")]
    Json {
        path: PathBuf,
        #[source]
        source: serde_json::Error,
    },
}

fn io_err(path: &Path) -> impl FnOnce(std::io::Error) -> BenchError + '_ {
    move |source| BenchError::Io { path: path.to_path_buf(), source }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct PairOverlap {
    pub a: usize,
    pub b: usize,
    pub films: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct SecondaryOverlap {
    pub source: usize,
    /// Entities of any class the source shares with the seed.
    pub shared_entities: usize,
    pub fraction: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct Namespaces {
    pub reference: String,
    pub ontology: String,
    pub sources: BTreeMap<String, String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct Manifest {
    pub config: BenchConfig,
    pub namespaces: Namespaces,
    pub distinct_films: usize,
    pub pair_overlap: usize,
    pub split_film_counts: Vec<usize>,
    pub film_overlaps: Vec<PairOverlap>,
    pub secondary_overlap: Vec<SecondaryOverlap>,
    /// sha256 of every other file, keyed by path relative to the bundle root.
    pub checksums: BTreeMap<String, String>,
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    Sha256::digest(bytes).iter().map(|b| format!("{b:02x}")).collect()
}

struct Writer<'a> {
    root: &'a Path,
    checksums: BTreeMap<String, String>,
}

impl Writer<'_> {
    fn write(&mut self, rel: &str, content: &str) -> Result<(), BenchError> {
        let path = self.root.join(rel);
        if let Some(parent) = path.parent() {
            std::fs::create_dir_all(parent).map_err(io_err(parent))?;
        }
        std::fs::write(&path, content).map_err(io_err(&path))?;
        self.checksums.insert(rel.to_string(), sha256_hex(content.as_bytes()));
        Ok(())
    }
}

fn pretty_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("in-memory values serialize");
    s.push('\n');
    s
}

/// Entities (ids of the split graph) with their class and label.
fn typed_entities(g: &Graph) -> Vec<ExpectedEntity> {
    let rdf_type = iri(vocab::RDF_TYPE);
    g.subjects()
        .filter_map(|s| {
            let ty = g.objects(s, &rdf_type).next()?.as_iri()?.clone();
            Some(ExpectedEntity {
                id: s.to_string(),
                entity_type: ty.to_string(),
                label: g.label_of(s).unwrap_or_default().to_string(),
            })
        })
        .collect()
}

/// Subjects typed with `film_class`.
pub(crate) fn films_of(g: &Graph, film_class: &str) -> BTreeSet<String> {
    g.matching(None, Some(&iri(vocab::RDF_TYPE)), Some(&iri(film_class).into()))
        .into_iter()
        .map(|t| t.subject.to_string())
        .collect()
}

/// Writes a complete benchmark bundle under `out_dir` and returns its
/// manifest.
pub fn generate(config: &BenchConfig, out_dir: &Path) -> Result<Manifest, BenchError> {
    config.validate()?;
    let plan = splits::plan(config.n_films, config.n_splits, config.film_overlap_rate)?;
    let mut rng = ChaCha8Rng::seed_from_u64(config.rng_seed);
    let world = synth::World::synthesize(plan.distinct_films, &mut rng);
    let plan = splits::assign(plan, config.n_films, config.n_splits, &mut rng);

    std::fs::create_dir_all(out_dir).map_err(io_err(out_dir))?;
    let mut w = Writer { root: out_dir, checksums: BTreeMap::new() };
    let schema = movie_schema();
    w.write("ontology.nt", &serialize_ntriples(&schema_to_graph(&schema)))?;
    w.write("reference.nt", &serialize_ntriples(&world.reference()))?;
    let seed = world.subgraph(&plan.splits[0]);
    let seed_text = serialize_ntriples(&seed);
    w.write("seed.nt", &seed_text)?;
    w.write("seed_region.nt", &seed_text)?;
    let seed_entities = graph_stats_primitives(&seed).entities;

    let mut sources = BTreeMap::new();
    let mut secondary = Vec::new();
    for j in 1..config.n_splits {
        let films = &plan.splits[j];
        let reference_split = world.subgraph(films);
        let ns = source_base(j);
        sources.insert(j.to_string(), ns.clone());
        let shaded = rename_namespace(&reference_split, KGB_BASE, &ns);
        w.write(&format!("source{j}/source.nt"), &serialize_ntriples(&shaded))?;

        let amb = json_docs::Ambiguity::draw(&world, config.ambiguity_rate, &mut rng);
        let (docs, gold_keymap) = json_docs::film_documents(&world, films, &amb);
        w.write(&format!("source{j}/source.json"), &pretty_json(&docs))?;
        let text = text_docs::film_texts(&world, films, config.fact_coverage, config.distractor_rate, &mut rng);
        w.write(&format!("source{j}/source.txt"), &text)?;

        let entities = graph_stats_primitives(&reference_split).entities;
        let shade = |i: &str| format!("{ns}{}", &i[KGB_BASE.len()..]);
        let mut records: Vec<MatchRecord> =
            entities.iter().map(|e| MatchRecord::entity(shade(e.as_str()), e.to_string(), 1.0)).collect();
        for p in reference_split.predicates() {
            if schema.property(p).is_some() {
                records.push(MatchRecord::relation(shade(p.as_str()), p.to_string(), 1.0));
            }
        }
        let bundle = GroundTruthBundle {
            expected_matches: MatchSet::new(records),
            expected_entities: typed_entities(&reference_split),
            gold_keymap,
            film_links: films
                .iter()
                .map(|&f| FilmLink { form: world.films[f].title.clone(), id: world.films[f].iri.to_string() })
                .collect(),
        };
        bundle.validate(&schema)?;
        for (name, content) in bundle.render() {
            w.write(&format!("source{j}/gt/{name}"), &content)?;
        }
        let shared = entities.intersection(&seed_entities).count();
        secondary.push(SecondaryOverlap {
            source: j,
            shared_entities: shared,
            fraction: shared as f64 / entities.len().max(1) as f64,
        });
    }

    let sets: Vec<BTreeSet<usize>> = plan.splits.iter().map(|s| s.iter().copied().collect()).collect();
    let mut film_overlaps = Vec::new();
    for a in 0..sets.len() {
        for b in (a + 1)..sets.len() {
            film_overlaps.push(PairOverlap { a, b, films: sets[a].intersection(&sets[b]).count() });
        }
    }
    let manifest = Manifest {
        config: config.clone(),
        namespaces: Namespaces { reference: KGB_BASE.to_string(), ontology: vocab::ONTOLOGY_NS.to_string(), sources },
        distinct_films: plan.distinct_films,
        pair_overlap: plan.pair_overlap,
        split_film_counts: plan.splits.iter().map(Vec::len).collect(),
        film_overlaps,
        secondary_overlap: secondary,
        checksums: w.checksums,
    };
    let path = out_dir.join(MANIFEST_FILE);
    std::fs::write(&path, pretty_json(&manifest)).map_err(io_err(&path))?;
    Ok(manifest)
}

/// Read access to a generated bundle.
#[derive(Debug, Clone)]
pub struct BenchDir {
    root: PathBuf,
    manifest: Manifest,
}

impl BenchDir {
    pub fn open(root: &Path) -> Result<BenchDir, BenchError> {
        let path = root.join(MANIFEST_FILE);
        let text = std::fs::read_to_string(&path).map_err(io_err(&path))?;
        let manifest = serde_json::from_str(&text).map_err(|source| BenchError::Json { path, source })?;
        Ok(BenchDir { root: root.to_path_buf(), manifest })
    }

    pub fn root(&self) -> &Path {
        &self.root
    }

    pub fn manifest(&self) -> &Manifest {
        &self.manifest
    }

    pub fn n_sources(&self) -> usize {
        self.manifest.config.n_splits - 1
    }

    pub fn ontology(&self) -> Result<OntologySchema, BenchError> {
        Ok(load_ontology(&self.graph("ontology.nt")?)?)
    }

    pub fn reference(&self) -> Result<Graph, BenchError> {
        self.graph("reference.nt")
    }

    pub fn seed(&self) -> Result<Graph, BenchError> {
        self.graph("seed.nt")
    }

    pub fn seed_region(&self) -> Result<Graph, BenchError> {
        self.graph("seed_region.nt")
    }

    pub fn source_path(&self, i: usize, format: DataFormat) -> PathBuf {
        crate::pipeline::source_path(&self.root, i, format)
    }

    pub fn source_rdf(&self, i: usize) -> Result<Graph, BenchError> {
        Ok(read_ntriples_file(&self.source_path(i, DataFormat::Rdf))?)
    }

    /// Source `i` with its namespace renamed back to reference ids.
    pub fn reference_split(&self, i: usize) -> Result<Graph, BenchError> {
        Ok(rename_namespace(&self.source_rdf(i)?, &source_base(i), KGB_BASE))
    }

    pub fn ground_truth(&self, i: usize) -> Result<GroundTruthBundle, BenchError> {
        Ok(GroundTruthBundle::read_from_dir(&self.root.join(format!("source{i}/gt")))?)
    }

    /// Seed plus reference splits 1..=`increment`: what a perfect pipeline
    /// would hold after that many increments.
    pub fn current_reference(&self, increment: usize) -> Result<Graph, BenchError> {
        let mut g = self.seed()?;
        for i in 1..=increment.min(self.n_sources()) {
            g.extend(self.reference_split(i)?.into_triples());
        }
        Ok(g)
    }

    fn graph(&self, name: &str) -> Result<Graph, BenchError> {
        Ok(read_ntriples_file(&self.root.join(name))?)
    }
}
