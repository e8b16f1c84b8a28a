use serde::{Deserialize, Serialize};

use super::spec::Backend;
use crate::exchange::DataFormat;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ArtifactRef {
    /// File name relative to the run's staging directory.
    pub path: String,
    pub format: DataFormat,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct TaskReport {
    pub task_id: String,
    pub task: String,
    pub backend: Backend,
    pub duration_seconds: f64,
    /// Child-process peak resident memory; absent for builtin and service tasks.
    pub peak_memory_bytes: Option<u64>,
    pub artifacts: Vec<ArtifactRef>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub warnings: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub stderr: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct RunReport {
    pub pipeline: String,
    pub increment: usize,
    pub source_format: DataFormat,
    pub tasks: Vec<TaskReport>,
    /// Staging-relative path of the resulting KG.
    pub output: String,
    pub total_duration_seconds: f64,
    pub max_peak_memory_bytes: Option<u64>,
    pub annotated_cost: Option<String>,
}

impl RunReport {
    pub fn finish(&mut self) {
        self.total_duration_seconds = self.tasks.iter().map(|t| t.duration_seconds).sum();
        self.max_peak_memory_bytes = self.tasks.iter().filter_map(|t| t.peak_memory_bytes).max();
    }

    /// Last artifact of the given format, in execution order.
    pub fn last_artifact(&self, format: DataFormat) -> Option<&ArtifactRef> {
        self.tasks.iter().flat_map(|t| t.artifacts.iter()).rfind(|a| a.format == format)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("run report serializes") + "\n"
    }

    pub fn from_json(text: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }

    /// Copy with every duration zeroed, for comparing reruns.
    pub fn without_durations(&self) -> RunReport {
        let mut r = self.clone();
        r.total_duration_seconds = 0.0;
        for t in &mut r.tasks {
            t.duration_seconds = 0.0;
        }
        r
    }
}
