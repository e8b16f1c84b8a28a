//! Acceptance criteria AC1–AC10, one PASS/FAIL line each.

mod common;

use std::collections::BTreeMap;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::{Path, PathBuf};
use std::time::{Duration, Instant};

use rand::seq::IndexedRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Map, Value};

use kgb_core::benchgen::{generate, BenchConfig, BenchDir};
use kgb_core::exchange::{parse_ke_docs, parse_match_set, serialize_ke_docs, serialize_match_set, DataFormat};
use kgb_core::metrics::{compute_semantic, compute_statistics, evaluate_run, EvalReport};
use kgb_core::ontology::OntologySchema;
use kgb_core::pipeline::{
    run_increments, validate_pipeline, ConfigType, Engine, EngineError, PipelineFile, PipelineSpec, Registry,
    RunLayout, RunReport,
};
use kgb_core::ranking::{group_scores, rank_cohort, total_score, GroupScores, Minima, WeightScheme};
use kgb_core::rdf::vocab::{self, ONTOLOGY_NS};
use kgb_core::rdf::{parse_ntriples, serialize_ntriples, Graph};
use kgb_core::tasks::{fusion_first, graph_align, json_linking, text_extract, SimilarityConfig};

use common::{random_kg, scores, semantic_oracle};

const FILMS: usize = 100;
const SEED: u64 = 42;
const INCREMENTS: usize = 3;

const RDFA_BUDGET: Duration = Duration::from_secs(60);
const DESK_BUDGET: Duration = Duration::from_secs(600);
const EM_MIN_PRECISION: f64 = 0.98;
const EM_MIN_RECALL: f64 = 0.95;
const OM_MIN_PRECISION: f64 = 0.9;
const SEMANTIC_FIXTURES: usize = 50;
const SEMANTIC_MAX_TRIPLES: usize = 500;
const SCORE_TOLERANCE: f64 = 1e-12;
const GM_VECTORS: usize = 1000;
const RANDOM_PIPELINES: usize = 1000;

struct Run {
    name: String,
    layout: RunLayout,
    elapsed: Duration,
    reports: Vec<EvalReport>,
}

struct Suite {
    _tmp: tempfile::TempDir,
    root: PathBuf,
    bench: BenchDir,
    schema: OntologySchema,
    runs: Vec<Run>,
    skipped: Vec<String>,
    elapsed: Duration,
}

impl Suite {
    fn run(&self, name: &str) -> &Run {
        self.runs.iter().find(|r| r.name == name).unwrap_or_else(|| panic!("no run {name}"))
    }

    fn last_reports(&self) -> Vec<EvalReport> {
        self.runs.iter().map(|r| r.reports[INCREMENTS - 1].clone()).collect()
    }
}

fn pipelines_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../pipelines")
}

fn engine(schema: &OntologySchema) -> Engine {
    Engine::new(Registry::standard()).with_ontology(schema.clone())
}

fn uses_service(file: &PipelineFile) -> bool {
    file.stages().iter().any(|s| s.tasks.iter().any(|t| t.backend == kgb_core::pipeline::Backend::Service))
}

fn run_pipeline(
    engine: &Engine,
    bench: &BenchDir,
    file: &PipelineFile,
    out: &Path,
) -> (RunLayout, Duration, Vec<EvalReport>) {
    let layout =
        RunLayout { bench_dir: bench.root().to_path_buf(), out_dir: out.join("out"), work_root: out.join("work") };
    let started = Instant::now();
    run_increments(engine, file, &layout, INCREMENTS).unwrap();
    let elapsed = started.elapsed();
    let kgs: Vec<PathBuf> = (1..=INCREMENTS).map(|i| layout.kg_path(i)).collect();
    let reports = evaluate_run(bench, &kgs, Some(&layout.work_root), &layout.out_dir).unwrap();
    (layout, elapsed, reports)
}

/// Generates the preset and runs every shipped layout that needs no service.
fn suite() -> Suite {
    let started = Instant::now();
    let tmp = tempfile::tempdir().unwrap();
    let root = tmp.path().to_path_buf();
    generate(&BenchConfig::with_films(FILMS, SEED), &root.join("bench")).unwrap();
    let bench = BenchDir::open(&root.join("bench")).unwrap();
    let schema = bench.ontology().unwrap();
    let engine = engine(&schema);

    let mut files: Vec<PathBuf> = std::fs::read_dir(pipelines_dir())
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|x| x == "json"))
        .collect();
    files.sort();
    let (mut runs, mut skipped) = (Vec::new(), Vec::new());
    for path in files {
        let file = PipelineFile::load(&path).unwrap();
        let name = file.name().to_string();
        if uses_service(&file) {
            skipped.push(name);
            continue;
        }
        let (layout, elapsed, reports) = run_pipeline(&engine, &bench, &file, &root.join("runs").join(&name));
        runs.push(Run { name, layout, elapsed, reports });
    }
    Suite { _tmp: tmp, root, bench, schema, runs, skipped, elapsed: started.elapsed() }
}

type Outcome = (bool, String);
type Criterion = fn(&Suite) -> Outcome;

fn ac1(s: &Suite) -> Outcome {
    let allowed = |p: &str| p.starts_with(ONTOLOGY_NS) || p == vocab::RDF_TYPE || p == vocab::RDFS_LABEL;
    let mut bad = Vec::new();
    for run in &s.runs {
        for i in 1..=INCREMENTS {
            let kg = parse_ntriples(&std::fs::read_to_string(run.layout.kg_path(i)).unwrap()).unwrap();
            let stats = compute_statistics(&kg);
            let foreign = kg.predicates().filter(|p| !allowed(p.as_str())).count();
            if stats.relation_name_count > 25 || stats.type_count != 3 || foreign > 0 {
                bad.push(format!(
                    "{} inc {i}: RC {} TC {} foreign {foreign}",
                    run.name, stats.relation_name_count, stats.type_count
                ));
            }
        }
    }
    let rdfa = s.run("RDFa").elapsed;
    let detail = format!(
        "{} layouts x {INCREMENTS} increments, RC <= 25 and TC = 3 everywhere{}; RDFa run {:.2} s (< {} s); skipped service layouts {:?}",
        s.runs.len(),
        if bad.is_empty() { String::new() } else { format!(", violations {bad:?}") },
        rdfa.as_secs_f64(),
        RDFA_BUDGET.as_secs(),
        s.skipped
    );
    (bad.is_empty() && rdfa < RDFA_BUDGET, detail)
}

fn ac2(s: &Suite) -> Outcome {
    let seed = s.bench.seed().unwrap();
    let region = s.bench.seed_region().unwrap();
    let outside = |g: &Graph| -> Graph { g.iter().filter(|t| !region.contains(t)).cloned().collect() };
    let mut details = Vec::new();
    let mut ok = true;
    for i in 1..=s.bench.n_sources() {
        let gold = s.bench.ground_truth(i).unwrap().expected_matches;
        let fused = fusion_first(&seed, &s.bench.source_rdf(i).unwrap(), &gold, &s.schema).graph;
        let (kg, reference) = (outside(&fused), outside(&s.bench.reference_split(i).unwrap()));
        let hits = kg.iter().filter(|t| reference.contains(t)).count();
        let (p, r) = (hits as f64 / kg.len().max(1) as f64, hits as f64 / reference.len().max(1) as f64);
        ok &= kg == reference;
        details.push(format!("split {i}: p {p:.3} r {r:.3}"));
    }
    (ok, format!("gold-match fusion vs reference split, exact set equality: {}", details.join(", ")))
}

fn ac3(s: &Suite) -> Outcome {
    let mut ok = true;
    let mut details = Vec::new();
    for r in &s.run("RDFa").reports {
        let (em, om) = (r.reference.entity_match.unwrap(), r.reference.ontology_match.unwrap());
        ok &= em.precision >= EM_MIN_PRECISION && em.recall >= EM_MIN_RECALL && om.precision >= OM_MIN_PRECISION;
        details.push(format!(
            "inc {}: R_EM p {:.3} r {:.3}, R_OM p {:.3}",
            r.increment, em.precision, em.recall, om.precision
        ));
    }
    (
        ok,
        format!("graph_align defaults (bars p >= {EM_MIN_PRECISION}, r >= {EM_MIN_RECALL}, R_OM p >= {OM_MIN_PRECISION}): {}", details.join("; ")),
    )
}

fn ac4(s: &Suite) -> Outcome {
    let mut bad = Vec::new();
    for run in &s.runs {
        for w in run.reports.windows(2) {
            let (a, b) = (&w[0].statistics, &w[1].statistics);
            if b.fact_count < a.fact_count || b.entity_count < a.entity_count {
                bad.push(format!("{} inc {}", run.name, w[1].increment));
            }
        }
    }
    let names: Vec<&str> = s.runs.iter().map(|r| r.name.as_str()).collect();
    (
        bad.is_empty(),
        format!(
            "S_FC and S_EC non-decreasing for {names:?}{}",
            if bad.is_empty() { String::new() } else { format!("; decreases at {bad:?}") }
        ),
    )
}

fn ac5(s: &Suite) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut worst = 0.0f64;
    for _ in 0..SEMANTIC_FIXTURES {
        let n = rng.random_range(0..=SEMANTIC_MAX_TRIPLES);
        let g = random_kg(rng.random(), n, &s.schema);
        let got = scores(&compute_semantic(&g, &s.schema));
        let want = semantic_oracle(&g, &s.schema);
        worst = got.iter().zip(want).map(|(a, b)| (a - b).abs()).fold(worst, f64::max);
    }
    (worst <= SCORE_TOLERANCE, format!("{SEMANTIC_FIXTURES} fixtures <= {SEMANTIC_MAX_TRIPLES} triples, max |diff| {worst:e} (tol {SCORE_TOLERANCE:e})"))
}

fn ac6(s: &Suite) -> Outcome {
    let hand: [(&str, [f64; 4]); 5] = [
        ("equal", [0.25, 0.25, 0.25, 0.25]),
        ("quantity", [0.50, 0.10, 0.10, 0.30]),
        ("quality", [0.0, 0.50, 0.50, 0.0]),
        ("reference", [0.0, 0.20, 0.80, 0.0]),
        ("efficiency", [0.20, 0.20, 0.20, 0.40]),
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let groups = |v: [f64; 4]| GroupScores { size: v[0], consistency: v[1], integration: v[2], efficiency: v[3] };
    let (mut worst, mut non_monotone) = (0.0f64, 0usize);
    for (name, w) in hand {
        let scheme = WeightScheme::builtin(name).unwrap();
        for _ in 0..GM_VECTORS {
            let v: [f64; 4] = std::array::from_fn(|_| rng.random_range(0.0..=1.0));
            let expected = w[0] * v[0] + w[1] * v[1] + w[2] * v[2] + w[3] * v[3];
            let got = total_score(&groups(v), &scheme);
            worst = worst.max((got - expected).abs());
            let mut bumped = v;
            let k = rng.random_range(0..4);
            bumped[k] = rng.random_range(v[k]..=1.0);
            non_monotone += usize::from(total_score(&groups(bumped), &scheme) < got);
        }
    }
    let echo = WeightScheme::builtin("equal").unwrap().echo();

    let cohort = s.last_reports();
    let efficiency = |cohort: &[EvalReport]| -> Vec<f64> {
        let m = Minima::of(cohort).unwrap();
        cohort.iter().map(|r| group_scores(r, &m).unwrap().0.efficiency).collect()
    };
    let base = efficiency(&cohort);
    let mut drift = 0.0f64;
    for c in [0.01, 3.0, 1000.0] {
        let scaled: Vec<EvalReport> = cohort
            .iter()
            .cloned()
            .map(|mut r| {
                r.run.duration_seconds *= c;
                r
            })
            .collect();
        drift = efficiency(&scaled).iter().zip(&base).map(|(a, b)| (a - b).abs()).fold(drift, f64::max);
    }
    let ok =
        worst <= SCORE_TOLERANCE && non_monotone == 0 && drift <= SCORE_TOLERANCE && echo == "(0.25, 0.25, 0.25, 0.25)";
    (
        ok,
        format!(
            "dot products max |diff| {worst:e}; {non_monotone} monotonicity breaks in {} bumps; efficiency drift under duration scaling {drift:e}; equal echo {echo}",
            GM_VECTORS * 5
        ),
    )
}

fn ac7(s: &Suite) -> Outcome {
    let recall = |name: &str| s.run(name).reports[INCREMENTS - 1].reference.fuzzy_reference_kg.recall;
    let (text, rdf) = (recall("TEXTa"), recall("RDFa"));
    let ranked = rank_cohort(&s.last_reports(), &WeightScheme::builtin("equal").unwrap()).unwrap();
    let pos = |name: &str| ranked.iter().position(|r| r.pipeline == name).unwrap();
    let total = |name: &str| ranked[pos(name)].total;
    (
        text < rdf && pos("RDFa") < pos("TEXTa"),
        format!(
            "~R_KG recall TEXTa {text:.3} vs RDFa {rdf:.3}; equal ranking RDFa #{} ({:.3}) vs TEXTa #{} ({:.3}) of {}",
            pos("RDFa") + 1,
            total("RDFa"),
            pos("TEXTa") + 1,
            total("TEXTa"),
            ranked.len()
        ),
    )
}

/// A random registry-valid pipeline over builtin tasks.
fn random_pipeline(rng: &mut ChaCha8Rng, registry: &Registry, n: usize) -> PipelineSpec {
    let source = *[DataFormat::Rdf, DataFormat::Json, DataFormat::Text].choose(rng).unwrap();
    let mut ports: Vec<(String, DataFormat)> = vec![("$seed".into(), DataFormat::Rdf), ("$source".into(), source)];
    let builtins: Vec<_> = registry.entries().filter(|e| e.builtin.is_some()).collect();
    let mut tasks = Vec::new();
    let mut add = |rng: &mut ChaCha8Rng, ports: &mut Vec<(String, DataFormat)>, only: Option<&str>| {
        let ready: Vec<_> = builtins
            .iter()
            .filter(|e| only.is_none_or(|n| e.signature.name == n))
            .filter(|e| e.signature.inputs.iter().all(|f| ports.iter().any(|(_, g)| g == f)))
            .collect();
        let entry = ready.choose(rng).unwrap();
        let sig = &entry.signature;
        let inputs: Vec<String> = sig
            .inputs
            .iter()
            .map(|f| ports.iter().filter(|(_, g)| g == f).collect::<Vec<_>>().choose(rng).unwrap().0.clone())
            .collect();
        let mut config = Map::new();
        for field in &sig.config {
            if rng.random_bool(0.5) {
                let v = match field.ty {
                    ConfigType::Threshold => json!(rng.random_range(0.0..=1.0)),
                    ConfigType::Count => json!(rng.random_range(1..=4)),
                    _ => field.default.clone(),
                };
                config.insert(field.key.to_string(), v);
            }
        }
        let id = format!("t{}", tasks.len());
        for (k, f) in sig.outputs.iter().enumerate() {
            ports.push((format!("{id}.out{k}"), *f));
        }
        tasks.push(json!({"id": id, "task": sig.name, "config": config, "inputs": inputs}));
    };
    for _ in 0..n {
        add(rng, &mut ports, None);
    }
    let rdf_outputs: Vec<String> =
        ports.iter().skip(2).filter(|(_, f)| *f == DataFormat::Rdf).map(|(p, _)| p.clone()).collect();
    let output = match rdf_outputs.choose(rng) {
        Some(p) => p.clone(),
        None => {
            add(rng, &mut ports, Some("select_first"));
            ports.last().unwrap().0.clone()
        }
    };
    serde_json::from_value(json!({"name": "random", "sourceFormat": source.as_str(), "tasks": tasks, "output": output}))
        .unwrap()
}

/// One injected fault; a format mismatch whenever the pipeline admits one.
fn mutate(rng: &mut ChaCha8Rng, spec: &PipelineSpec, registry: &Registry) -> (PipelineSpec, &'static str) {
    let mut m = spec.clone();
    let format_of = |port: &str, upto: usize| -> Option<DataFormat> {
        match port {
            "$seed" => Some(DataFormat::Rdf),
            "$source" => Some(spec.source_format),
            _ => {
                let (task, k) = port.rsplit_once(".out")?;
                let t = spec.tasks[..upto].iter().find(|t| t.id == task)?;
                registry.get(&t.task)?.signature.outputs.get(k.parse::<usize>().ok()?).copied()
            }
        }
    };
    let mut swaps = Vec::new();
    for (ti, t) in spec.tasks.iter().enumerate() {
        let mut candidates = vec!["$seed".to_string(), "$source".to_string()];
        for earlier in &spec.tasks[..ti] {
            let outs = registry.get(&earlier.task).unwrap().signature.outputs.len();
            candidates.extend((0..outs).map(|k| format!("{}.out{k}", earlier.id)));
        }
        for (k, r) in t.inputs.iter().enumerate() {
            let have = format_of(r, ti);
            for c in &candidates {
                if format_of(c, ti) != have {
                    swaps.push((ti, k, c.clone()));
                }
            }
        }
    }
    if !swaps.is_empty() && rng.random_bool(0.6) {
        let (ti, k, c) = swaps.choose(rng).unwrap().clone();
        m.tasks[ti].inputs[k] = c;
        return (m, "format");
    }
    let ti = rng.random_range(0..m.tasks.len());
    match rng.random_range(0..6) {
        0 => {
            m.tasks[ti].inputs.push("$seed".into());
            (m, "arity")
        }
        1 => {
            m.tasks[ti].task = "no_such_task".into();
            (m, "unknown task")
        }
        2 => {
            let k = rng.random_range(0..m.tasks[ti].inputs.len());
            m.tasks[ti].inputs[k] = "ghost.out0".into();
            (m, "dangling")
        }
        3 => {
            m.tasks[ti].config.insert("noSuchKey".into(), json!(1));
            (m, "config")
        }
        4 if m.tasks.len() > 1 => {
            let id = m.tasks[ti].id.clone();
            let other = (ti + 1) % m.tasks.len();
            m.tasks[other].id = id;
            (m, "duplicate id")
        }
        _ => {
            m.output = if spec.source_format == DataFormat::Rdf { "ghost.out0".into() } else { "$source".into() };
            (m, "output")
        }
    }
}

fn ac8(s: &Suite) -> Outcome {
    let dir = s.root.join("ac8");
    generate(&BenchConfig::with_films(40, 8), &dir.join("bench")).unwrap();
    let bench = BenchDir::open(&dir.join("bench")).unwrap();
    let engine = engine(&s.schema);
    let registry = Registry::standard();
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let (mut invalid, mut port_errors, mut other_errors) = (0, 0, 0);
    let mut accepted_mutants = Vec::new();
    let mut kinds: BTreeMap<&str, usize> = BTreeMap::new();
    for _ in 0..RANDOM_PIPELINES {
        let n = rng.random_range(1..=5);
        let spec = random_pipeline(&mut rng, &registry, n);
        if validate_pipeline(&spec, &registry).is_err() {
            invalid += 1;
            continue;
        }
        let source = bench.source_path(1, spec.source_format);
        match engine.execute(&spec, &bench.root().join("seed.nt"), &source, &dir.join("work"), 1) {
            Ok(_) => {}
            Err(EngineError::PortFormat { .. }) => port_errors += 1,
            Err(_) => other_errors += 1,
        }
        let (mutant, kind) = mutate(&mut rng, &spec, &registry);
        *kinds.entry(kind).or_default() += 1;
        if validate_pipeline(&mutant, &registry).is_ok() {
            accepted_mutants.push(kind);
        }
    }
    (
        invalid == 0 && port_errors == 0 && accepted_mutants.is_empty(),
        format!(
            "{RANDOM_PIPELINES} random pipelines: {invalid} rejected, {port_errors} port-format errors, {other_errors} other task errors; {RANDOM_PIPELINES} mutants {kinds:?}, {} accepted",
            accepted_mutants.len()
        ),
    )
}

fn files_under(dir: &Path) -> Vec<PathBuf> {
    let mut out = Vec::new();
    for e in std::fs::read_dir(dir).unwrap() {
        let p = e.unwrap().path();
        if p.is_dir() {
            out.extend(files_under(&p));
        } else {
            out.push(p);
        }
    }
    out.sort();
    out
}

fn ac9(s: &Suite) -> Outcome {
    let mut checked: BTreeMap<&str, usize> = BTreeMap::new();
    let mut unstable = Vec::new();
    let mut stable = |kind: &'static str, what: String, first: String, second: String| {
        *checked.entry(kind).or_default() += 1;
        if first != second {
            unstable.push(what);
        }
    };
    let nt = |text: &str| serialize_ntriples(&parse_ntriples(text).unwrap());
    let er = |text: &str| serialize_match_set(&parse_match_set(text).unwrap());
    let ke = |text: &str| serialize_ke_docs(&parse_ke_docs(text).unwrap());

    let mut nt_files = files_under(s.bench.root());
    for run in &s.runs {
        nt_files.extend((1..=INCREMENTS).map(|i| run.layout.kg_path(i)));
    }
    for p in nt_files.iter().filter(|p| p.extension().is_some_and(|x| x == "nt")) {
        let once = nt(&std::fs::read_to_string(p).unwrap());
        stable("N-Triples", p.display().to_string(), nt(&once), once);
    }
    for i in 1..=s.bench.n_sources() {
        let gt = s.bench.root().join(format!("source{i}/gt/matches.er.json"));
        let once = er(&std::fs::read_to_string(&gt).unwrap());
        stable("JSON_ER", gt.display().to_string(), er(&once), once);
        let aligned =
            graph_align(&s.bench.seed().unwrap(), &s.bench.source_rdf(i).unwrap(), &SimilarityConfig::default())
                .unwrap();
        let once = er(&serialize_match_set(&aligned));
        stable("JSON_ER", format!("graph_align {i}"), er(&once), once);

        let text = std::fs::read_to_string(s.bench.source_path(i, DataFormat::Text)).unwrap();
        let once = ke(&serialize_ke_docs(&text_extract(&text)));
        stable("JSON_KE", format!("text_extract {i}"), ke(&once), once);
        let docs: Value =
            serde_json::from_str(&std::fs::read_to_string(s.bench.source_path(i, DataFormat::Json)).unwrap()).unwrap();
        let linked = json_linking(&docs, &s.bench.seed().unwrap(), &s.schema, 0.8).unwrap();
        let once = ke(&serialize_ke_docs(&linked));
        stable("JSON_KE", format!("json_linking {i}"), ke(&once), once);
    }
    for run in &s.runs {
        for i in 1..=INCREMENTS {
            let text = std::fs::read_to_string(run.layout.report_path(i)).unwrap();
            let once = RunReport::from_json(&text).unwrap().to_json();
            stable("run report", format!("{} run {i}", run.name), RunReport::from_json(&once).unwrap().to_json(), once);
            let text = std::fs::read_to_string(run.layout.out_dir.join(format!("eval_{i}.json"))).unwrap();
            let once = EvalReport::from_json(&text).unwrap().to_json();
            stable(
                "eval report",
                format!("{} eval {i}", run.name),
                EvalReport::from_json(&once).unwrap().to_json(),
                once,
            );
        }
    }
    (
        unstable.is_empty(),
        format!(
            "second serialization byte-identical for {checked:?}{}",
            if unstable.is_empty() { String::new() } else { format!("; unstable {unstable:?}") }
        ),
    )
}

fn ac10(s: &Suite) -> Outcome {
    let dir = s.root.join("ac10");
    let (a, b) = (dir.join("a"), dir.join("b"));
    for d in [&a, &b] {
        generate(&BenchConfig::with_films(FILMS, SEED), &d.join("bench")).unwrap();
    }
    let (fa, fb) = (files_under(&a.join("bench")), files_under(&b.join("bench")));
    let rel = |root: &Path, ps: &[PathBuf]| -> Vec<PathBuf> {
        ps.iter().map(|p| p.strip_prefix(root).unwrap().to_path_buf()).collect()
    };
    let mut differing: Vec<String> = Vec::new();
    if rel(&a, &fa) != rel(&b, &fb) {
        differing.push("file lists".into());
    }
    for (x, y) in fa.iter().zip(&fb) {
        if std::fs::read(x).unwrap() != std::fs::read(y).unwrap() {
            differing.push(x.strip_prefix(&a).unwrap().display().to_string());
        }
    }
    let engine = engine(&s.schema);
    let names = ["RDFa", "RDFb", "JSONa", "JSONb", "TEXTa", "MSP_RJT"];
    for name in names {
        let file = PipelineFile::load(&pipelines_dir().join(format!("{name}.json"))).unwrap();
        let runs: Vec<RunLayout> = [&a, &b]
            .iter()
            .map(|d| {
                let layout = RunLayout {
                    bench_dir: d.join("bench"),
                    out_dir: d.join(name),
                    work_root: d.join(name).join("work"),
                };
                run_increments(&engine, &file, &layout, INCREMENTS).unwrap();
                layout
            })
            .collect();
        for i in 1..=INCREMENTS {
            if std::fs::read(runs[0].kg_path(i)).unwrap() != std::fs::read(runs[1].kg_path(i)).unwrap() {
                differing.push(format!("{name} kg_{i}"));
            }
            let report = |l: &RunLayout| {
                RunReport::from_json(&std::fs::read_to_string(l.report_path(i)).unwrap()).unwrap().without_durations()
            };
            if report(&runs[0]) != report(&runs[1]) {
                differing.push(format!("{name} run_{i}"));
            }
        }
    }
    (
        differing.is_empty(),
        format!(
            "two gens byte-identical ({} files); {names:?} KGs and duration-free reports identical{}",
            fa.len(),
            if differing.is_empty() { String::new() } else { format!("; differing {differing:?}") }
        ),
    )
}

fn main() {
    let s = suite();
    let criteria: [(&str, Criterion); 10] = [
        ("AC1 structural invariant", ac1),
        ("AC2 fusion oracle", ac2),
        ("AC3 alignment quality", ac3),
        ("AC4 monotone growth", ac4),
        ("AC5 semantic-metric oracle", ac5),
        ("AC6 ranking correctness", ac6),
        ("AC7 text-pipeline ordering", ac7),
        ("AC8 static-validation soundness", ac8),
        ("AC9 round-trips", ac9),
        ("AC10 determinism", ac10),
    ];
    let mut failed = 0;
    for (name, check) in criteria {
        let started = Instant::now();
        let (ok, detail) = match catch_unwind(AssertUnwindSafe(|| check(&s))) {
            Ok(r) => r,
            Err(e) => {
                let msg =
                    e.downcast_ref::<String>().cloned().or_else(|| e.downcast_ref::<&str>().map(|m| m.to_string()));
                (false, format!("panicked: {}", msg.unwrap_or_default()))
            }
        };
        failed += usize::from(!ok);
        println!("{} {name} ({:.1} s): {detail}", if ok { "PASS" } else { "FAIL" }, started.elapsed().as_secs_f64());
    }
    let desk = s.elapsed;
    println!(
        "INFO desk suite (gen + {} layouts x {INCREMENTS} increments + eval): {:.1} s (budget {} s)",
        s.runs.len(),
        desk.as_secs_f64(),
        DESK_BUDGET.as_secs()
    );
    println!("{} of 10 criteria passed", 10 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
