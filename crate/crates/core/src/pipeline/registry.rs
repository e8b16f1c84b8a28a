use std::collections::BTreeMap;

use serde_json::{Map, Value};

use super::artifact::Artifact;
use super::PipelineError;
use crate::exchange::DataFormat;
use crate::ontology::OntologySchema;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConfigType {
    /// Real number in `[0, 1]`.
    Threshold,
    Number,
    /// Non-negative integer.
    Count,
    String,
    Bool,
}

impl ConfigType {
    pub fn accepts(self, v: &Value) -> bool {
        match self {
            ConfigType::Threshold => v.as_f64().is_some_and(|x| (0.0..=1.0).contains(&x)),
            ConfigType::Number => v.as_f64().is_some_and(f64::is_finite),
            ConfigType::Count => v.as_u64().is_some(),
            ConfigType::String => v.is_string(),
            ConfigType::Bool => v.is_boolean(),
        }
    }

    pub fn describe(self) -> &'static str {
        match self {
            ConfigType::Threshold => "a number in [0, 1]",
            ConfigType::Number => "a number",
            ConfigType::Count => "a non-negative integer",
            ConfigType::String => "a string",
            ConfigType::Bool => "a boolean",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConfigField {
    pub key: &'static str,
    pub ty: ConfigType,
    pub default: Value,
}

impl ConfigField {
    pub fn new(key: &'static str, ty: ConfigType, default: impl Into<Value>) -> Self {
        ConfigField { key, ty, default: default.into() }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct TaskSignature {
    pub name: &'static str,
    pub inputs: Vec<DataFormat>,
    pub outputs: Vec<DataFormat>,
    pub config: Vec<ConfigField>,
}

impl TaskSignature {
    pub fn field(&self, key: &str) -> Option<&ConfigField> {
        self.config.iter().find(|f| f.key == key)
    }
}

/// Execution context handed to builtin tasks.
#[derive(Debug, Clone, Copy)]
pub struct TaskContext<'a> {
    pub task_id: &'a str,
    pub ontology: Option<&'a OntologySchema>,
}

impl<'a> TaskContext<'a> {
    pub fn schema(&self) -> Result<&'a OntologySchema, String> {
        self.ontology.ok_or_else(|| "this task requires an ontology in the engine context".to_string())
    }
}

/// Resolved configuration: registry defaults overlaid by the spec and by
/// run-level overrides.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct TaskConfig(pub Map<String, Value>);

impl TaskConfig {
    pub fn get(&self, key: &str) -> Option<&Value> {
        self.0.get(key)
    }

    pub fn f64(&self, key: &str) -> Result<f64, String> {
        self.get(key).and_then(Value::as_f64).ok_or_else(|| format!("config {key:?} missing or not a number"))
    }

    pub fn usize(&self, key: &str) -> Result<usize, String> {
        self.get(key)
            .and_then(Value::as_u64)
            .map(|n| n as usize)
            .ok_or_else(|| format!("config {key:?} missing or not an integer"))
    }

    pub fn str(&self, key: &str) -> Result<&str, String> {
        self.get(key).and_then(Value::as_str).ok_or_else(|| format!("config {key:?} missing or not a string"))
    }
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct TaskOutput {
    pub outputs: Vec<Artifact>,
    pub warnings: Vec<String>,
}

impl TaskOutput {
    pub fn single(artifact: Artifact) -> Self {
        TaskOutput { outputs: vec![artifact], warnings: Vec::new() }
    }
}

pub type BuiltinFn = fn(&TaskContext<'_>, &[Artifact], &TaskConfig) -> Result<TaskOutput, String>;

#[derive(Clone)]
pub struct TaskEntry {
    pub signature: TaskSignature,
    pub builtin: Option<BuiltinFn>,
}

impl std::fmt::Debug for TaskEntry {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("TaskEntry")
            .field("signature", &self.signature)
            .field("builtin", &self.builtin.is_some())
            .finish()
    }
}

#[derive(Debug, Clone, Default)]
pub struct Registry {
    tasks: BTreeMap<&'static str, TaskEntry>,
}

impl Registry {
    pub fn new() -> Self {
        Self::default()
    }

    /// The registry with every task this crate knows about.
    pub fn standard() -> Self {
        let mut r = Registry::new();
        crate::tasks::register_all(&mut r);
        r
    }

    pub fn register(&mut self, signature: TaskSignature, builtin: Option<BuiltinFn>) -> Result<(), PipelineError> {
        if signature.inputs.is_empty() || signature.outputs.is_empty() {
            return Err(PipelineError::Registry(format!(
                "task {} needs at least one input and output",
                signature.name
            )));
        }
        if self.tasks.contains_key(signature.name) {
            return Err(PipelineError::Registry(format!("task {} registered twice", signature.name)));
        }
        self.tasks.insert(signature.name, TaskEntry { signature, builtin });
        Ok(())
    }

    pub fn get(&self, name: &str) -> Option<&TaskEntry> {
        self.tasks.get(name)
    }

    pub fn entries(&self) -> impl Iterator<Item = &TaskEntry> {
        self.tasks.values()
    }

    pub fn len(&self) -> usize {
        self.tasks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tasks.is_empty()
    }
}
