use std::path::{Path, PathBuf};

use super::engine::{Engine, EngineError, RunOutcome};
use super::spec::PipelineFile;
use crate::exchange::DataFormat;

/// Where an incremental run reads the benchmark and writes its results.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunLayout {
    pub bench_dir: PathBuf,
    pub out_dir: PathBuf,
    /// Staging root; increment `i` stages into `<work_root>/inc<i>`.
    pub work_root: PathBuf,
}

impl RunLayout {
    pub fn kg_path(&self, increment: usize) -> PathBuf {
        self.out_dir.join(format!("kg_{increment}.nt"))
    }

    pub fn report_path(&self, increment: usize) -> PathBuf {
        self.out_dir.join(format!("run_{increment}.report.json"))
    }

    pub fn workdir(&self, increment: usize) -> PathBuf {
        self.work_root.join(format!("inc{increment}"))
    }
}

/// Source file of split `increment` in the given format.
pub fn source_path(bench_dir: &Path, increment: usize, format: DataFormat) -> PathBuf {
    bench_dir.join(format!("source{increment}")).join(format!("source.{}", format.extension()))
}

#[derive(Debug, thiserror::Error)]
pub enum IncrementError {
    #[error("increments must be ≥ 1")]
    NoIncrements,
    #[error("increment {increment}: {source}")]
    Engine {
        increment: usize,
        #[source]
        source: EngineError,
    },
    #[error("increment {increment}: {path}: {source}")]
    Io {
        increment: usize,
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

/// Integrates sources 1..=`increments` one after another; the KG written by
/// increment `i - 1` is the seed of increment `i`.
pub fn run_increments(
    engine: &Engine,
    file: &PipelineFile,
    layout: &RunLayout,
    increments: usize,
) -> Result<Vec<RunOutcome>, IncrementError> {
    if increments == 0 {
        return Err(IncrementError::NoIncrements);
    }
    let io = |increment: usize, path: &Path| {
        let path = path.to_path_buf();
        move |source| IncrementError::Io { increment, path, source }
    };
    std::fs::create_dir_all(&layout.out_dir).map_err(io(0, &layout.out_dir))?;
    let mut outcomes = Vec::with_capacity(increments);
    for i in 1..=increments {
        let spec = file.stage_for(i);
        let seed = if i == 1 { layout.bench_dir.join("seed.nt") } else { layout.kg_path(i - 1) };
        let source = source_path(&layout.bench_dir, i, spec.source_format);
        let mut outcome = engine
            .execute(spec, &seed, &source, &layout.workdir(i), i)
            .map_err(|source| IncrementError::Engine { increment: i, source })?;
        outcome.report.pipeline = file.name().to_string();
        let kg = layout.kg_path(i);
        std::fs::copy(&outcome.kg_path, &kg).map_err(io(i, &kg))?;
        let report = layout.report_path(i);
        std::fs::write(&report, outcome.report.to_json()).map_err(io(i, &report))?;
        outcomes.push(outcome);
    }
    Ok(outcomes)
}
