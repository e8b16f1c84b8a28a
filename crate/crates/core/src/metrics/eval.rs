//! Combined metric reports for the increments of one pipeline run.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use super::{
    compute_reference, compute_semantic, compute_statistics, RefReport, ReferenceInputs, SemReport, StatReport, Unshade,
};
use crate::benchgen::{BenchDir, BenchError};
use crate::exchange::{parse_ke_docs, parse_match_set, DataFormat, KeDoc, MatchSet};
use crate::ontology::OntologySchema;
use crate::pipeline::RunReport;
use crate::rdf::{read_ntriples_file, Graph, RdfError};

#[derive(Debug, thiserror::Error)]
pub enum EvalError {
    #[error(transparent)]
    Bench(#[from] BenchError),
    #[error(transparent)]
    Rdf(#[from] RdfError),
    #[error("{path}: {message}")]
    File { path: PathBuf, message: String },
    #[error("{0}")]
    Layout(String),
}

/// Resource use accumulated over increments `1..=increment`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct RunMetrics {
    pub duration_seconds: f64,
    pub peak_memory_bytes: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub annotated_cost: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct EvalReport {
    pub pipeline: String,
    pub increment: usize,
    pub source_format: DataFormat,
    pub statistics: StatReport,
    pub reference_statistics: StatReport,
    pub semantic: SemReport,
    pub reference: RefReport,
    pub run: RunMetrics,
}

impl EvalReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("eval report serializes") + "\n"
    }

    pub fn from_json(text: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }
}

fn read(path: &Path) -> Result<String, EvalError> {
    std::fs::read_to_string(path).map_err(|e| EvalError::File { path: path.to_path_buf(), message: e.to_string() })
}

fn file_err(path: &Path) -> impl FnOnce(String) -> EvalError + '_ {
    move |message| EvalError::File { path: path.to_path_buf(), message }
}

/// Metrics of one increment. `artifacts` is the increment's staging
/// directory; without it, artifact-based sub-metrics are absent.
pub fn evaluate_increment(
    bench: &BenchDir,
    schema: &OntologySchema,
    kg: &Graph,
    prior: &Graph,
    report: &RunReport,
    run: RunMetrics,
    artifacts: Option<&Path>,
) -> Result<EvalReport, EvalError> {
    let i = report.increment;
    let reference = bench.current_reference(i)?;
    let truth = bench.ground_truth(i)?;
    let seed_region = bench.seed_region()?;
    let staged = |format: DataFormat| artifacts.zip(report.last_artifact(format)).map(|(dir, a)| dir.join(&a.path));
    let matches: Option<MatchSet> = match staged(DataFormat::JsonEr) {
        Some(p) => Some(parse_match_set(&read(&p)?).map_err(|e| file_err(&p)(e.to_string()))?),
        None => None,
    };
    let ke: Option<Vec<KeDoc>> = match staged(DataFormat::JsonKe) {
        Some(p) => Some(parse_ke_docs(&read(&p)?).map_err(|e| file_err(&p)(e.to_string()))?),
        None => None,
    };
    let unshade = Unshade::new(bench.n_sources());
    let reference_report = compute_reference(&ReferenceInputs {
        kg,
        prior,
        reference: &reference,
        seed_region: &seed_region,
        truth: &truth,
        source_format: report.source_format,
        matches: matches.as_ref(),
        ke: ke.as_deref(),
        unshade: &unshade,
    });
    Ok(EvalReport {
        pipeline: report.pipeline.clone(),
        increment: i,
        source_format: report.source_format,
        statistics: compute_statistics(kg),
        reference_statistics: compute_statistics(&reference),
        semantic: compute_semantic(kg, schema),
        reference: reference_report,
        run,
    })
}

/// Increment number of a `kg_<i>.nt` file.
fn increment_of(path: &Path) -> Option<usize> {
    path.file_name()?.to_str()?.strip_prefix("kg_")?.strip_suffix(".nt")?.parse().ok()
}

/// Evaluates every `kg_<i>.nt` in `kg_paths`, reading `run_<j>.report.json`
/// files next to them and staged artifacts under `<artifacts_root>/inc<i>`.
/// Reports are written to `out_dir/eval_<i>.json` and returned in increment
/// order.
pub fn evaluate_run(
    bench: &BenchDir,
    kg_paths: &[PathBuf],
    artifacts_root: Option<&Path>,
    out_dir: &Path,
) -> Result<Vec<EvalReport>, EvalError> {
    let schema = bench.ontology()?;
    let mut numbered = Vec::new();
    for p in kg_paths {
        let i =
            increment_of(p).ok_or_else(|| EvalError::Layout(format!("{}: expected a kg_<i>.nt file", p.display())))?;
        numbered.push((i, p.clone()));
    }
    numbered.sort();
    std::fs::create_dir_all(out_dir).map_err(|e| file_err(out_dir)(e.to_string()))?;
    let mut out = Vec::with_capacity(numbered.len());
    for (i, path) in numbered {
        let dir = path.parent().unwrap_or(Path::new("."));
        let kg = read_ntriples_file(&path)?;
        let prior = if i <= 1 { bench.seed()? } else { read_ntriples_file(&dir.join(format!("kg_{}.nt", i - 1)))? };
        let mut run = RunMetrics { duration_seconds: 0.0, peak_memory_bytes: None, annotated_cost: None };
        let mut current = None;
        for j in 1..=i {
            let rp = dir.join(format!("run_{j}.report.json"));
            let r = RunReport::from_json(&read(&rp)?).map_err(|e| file_err(&rp)(e.to_string()))?;
            run.duration_seconds += r.total_duration_seconds;
            run.peak_memory_bytes = run.peak_memory_bytes.max(r.max_peak_memory_bytes);
            run.annotated_cost = r.annotated_cost.clone().or(run.annotated_cost);
            current = Some(r);
        }
        let report = current.ok_or_else(|| EvalError::Layout(format!("{}: increment 0", path.display())))?;
        let staged = artifacts_root.map(|root| root.join(format!("inc{i}")));
        let eval = evaluate_increment(bench, &schema, &kg, &prior, &report, run, staged.as_deref())?;
        let target = out_dir.join(format!("eval_{i}.json"));
        std::fs::write(&target, eval.to_json()).map_err(|e| file_err(&target)(e.to_string()))?;
        out.push(eval);
    }
    Ok(out)
}
