use std::fmt;
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

use super::PipelineError;
use crate::exchange::DataFormat;

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Backend {
    #[default]
    Builtin,
    Command,
    Service,
}

impl Backend {
    pub fn as_str(self) -> &'static str {
        match self {
            Backend::Builtin => "builtin",
            Backend::Command => "command",
            Backend::Service => "service",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct TaskSpec {
    pub id: String,
    pub task: String,
    #[serde(default)]
    pub backend: Backend,
    #[serde(default, skip_serializing_if = "Map::is_empty")]
    pub config: Map<String, Value>,
    pub inputs: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct PipelineSpec {
    pub name: String,
    pub source_format: DataFormat,
    pub tasks: Vec<TaskSpec>,
    pub output: String,
}

impl PipelineSpec {
    pub fn from_json(text: &str) -> Result<Self, PipelineError> {
        serde_json::from_str(text).map_err(|e| PipelineError::SpecFormat(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("pipeline spec serializes") + "\n"
    }

    pub fn task(&self, id: &str) -> Option<&TaskSpec> {
        self.tasks.iter().find(|t| t.id == id)
    }
}

/// A reference to a data port: the current KG, the source being integrated,
/// or output `k` of an earlier task.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum PortRef {
    Seed,
    Source,
    Output { task: String, index: usize },
}

impl FromStr for PortRef {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "$seed" => return Ok(PortRef::Seed),
            "$source" => return Ok(PortRef::Source),
            _ => {}
        }
        let (task, port) = s.rsplit_once('.').ok_or_else(|| format!("malformed port reference {s:?}"))?;
        let index = port
            .strip_prefix("out")
            .and_then(|n| n.parse::<usize>().ok())
            .ok_or_else(|| format!("malformed port reference {s:?}"))?;
        if task.is_empty() || task.starts_with('$') {
            return Err(format!("malformed port reference {s:?}"));
        }
        Ok(PortRef::Output { task: task.to_string(), index })
    }
}

impl fmt::Display for PortRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PortRef::Seed => f.write_str("$seed"),
            PortRef::Source => f.write_str("$source"),
            PortRef::Output { task, index } => write!(f, "{task}.out{index}"),
        }
    }
}

/// A pipeline file: either one spec used for every increment, or a
/// multi-source layout with one stage per increment.
#[derive(Debug, Clone, PartialEq)]
pub enum PipelineFile {
    Single(PipelineSpec),
    Multi { name: String, stages: Vec<PipelineSpec> },
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct MultiFile {
    name: String,
    stages: Vec<PipelineSpec>,
}

impl PipelineFile {
    pub fn from_json(text: &str) -> Result<Self, PipelineError> {
        let value: Value = serde_json::from_str(text).map_err(|e| PipelineError::SpecFormat(e.to_string()))?;
        if value.get("stages").is_some() {
            let multi: MultiFile =
                serde_json::from_value(value).map_err(|e| PipelineError::SpecFormat(e.to_string()))?;
            if multi.stages.is_empty() {
                return Err(PipelineError::SpecFormat("stages must not be empty".into()));
            }
            Ok(PipelineFile::Multi { name: multi.name, stages: multi.stages })
        } else {
            let spec = serde_json::from_value(value).map_err(|e| PipelineError::SpecFormat(e.to_string()))?;
            Ok(PipelineFile::Single(spec))
        }
    }

    pub fn load(path: &Path) -> Result<Self, PipelineError> {
        let text =
            std::fs::read_to_string(path).map_err(|e| PipelineError::Io { path: path.to_path_buf(), source: e })?;
        Self::from_json(&text)
    }

    pub fn name(&self) -> &str {
        match self {
            PipelineFile::Single(spec) => &spec.name,
            PipelineFile::Multi { name, .. } => name,
        }
    }

    pub fn stages(&self) -> &[PipelineSpec] {
        match self {
            PipelineFile::Single(spec) => std::slice::from_ref(spec),
            PipelineFile::Multi { stages, .. } => stages,
        }
    }

    /// Spec used for 1-based `increment`; multi-stage files cycle.
    pub fn stage_for(&self, increment: usize) -> &PipelineSpec {
        let stages = self.stages();
        &stages[(increment.max(1) - 1) % stages.len()]
    }
}
