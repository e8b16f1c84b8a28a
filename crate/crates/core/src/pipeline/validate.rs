use std::collections::HashMap;
use std::fmt;

use serde_json::Value;

use super::registry::Registry;
use super::spec::{Backend, PipelineSpec, PortRef, TaskSpec};
use crate::exchange::DataFormat;

/// Config keys consumed by the command and service backends themselves.
pub const RESERVED_CONFIG_KEYS: [&str; 3] = ["command", "endpoint", "timeoutSeconds"];

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ViolationKind {
    UnknownTask,
    DuplicateId,
    BadPortRef,
    DanglingReference,
    ForwardReference,
    FormatMismatch { expected: DataFormat, actual: DataFormat },
    ArityMismatch { expected: usize, actual: usize },
    NonRdfOutput { actual: DataFormat },
    BadConfig,
    BackendUnavailable,
    MissingBackendConfig,
    BadSourceFormat,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub task_id: Option<String>,
    pub port: Option<String>,
    pub kind: ViolationKind,
    pub message: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (&self.task_id, &self.port) {
            (Some(t), Some(p)) => write!(f, "task {t}, port {p}: {}", self.message),
            (Some(t), None) => write!(f, "task {t}: {}", self.message),
            (None, Some(p)) => write!(f, "port {p}: {}", self.message),
            (None, None) => f.write_str(&self.message),
        }
    }
}

struct Checker<'a> {
    spec: &'a PipelineSpec,
    registry: &'a Registry,
    violations: Vec<Violation>,
    /// Output formats of tasks seen so far; `None` for unknown tasks.
    outputs: HashMap<&'a str, Option<Vec<DataFormat>>>,
}

impl<'a> Checker<'a> {
    fn push(&mut self, task: Option<&str>, port: Option<String>, kind: ViolationKind, message: String) {
        self.violations.push(Violation { task_id: task.map(str::to_string), port, kind, message });
    }

    /// Format carried by `port`, or `None` after recording why it cannot be
    /// resolved (or when it points at an unknown task).
    fn resolve(&mut self, task: Option<&str>, port_name: String, reference: &str) -> Option<DataFormat> {
        let parsed = match reference.parse::<PortRef>() {
            Ok(p) => p,
            Err(e) => {
                self.push(task, Some(port_name), ViolationKind::BadPortRef, e);
                return None;
            }
        };
        match parsed {
            PortRef::Seed => Some(DataFormat::Rdf),
            PortRef::Source => Some(self.spec.source_format),
            PortRef::Output { task: producer, index } => match self.outputs.get(producer.as_str()) {
                Some(Some(formats)) => match formats.get(index) {
                    Some(f) => Some(*f),
                    None => {
                        let msg =
                            format!("{reference} does not exist: task {producer} has {} output(s)", formats.len());
                        self.push(task, Some(port_name), ViolationKind::DanglingReference, msg);
                        None
                    }
                },
                Some(None) => None,
                None if self.spec.tasks.iter().any(|t| t.id == producer) => {
                    let msg = format!("{reference} refers to task {producer}, which does not run earlier");
                    self.push(task, Some(port_name), ViolationKind::ForwardReference, msg);
                    None
                }
                None => {
                    let msg = format!("{reference} refers to no task in this pipeline");
                    self.push(task, Some(port_name), ViolationKind::DanglingReference, msg);
                    None
                }
            },
        }
    }

    fn check_backend(&mut self, t: &TaskSpec, has_builtin: bool) {
        let id = Some(t.id.as_str());
        match t.backend {
            Backend::Builtin if !has_builtin => self.push(
                id,
                None,
                ViolationKind::BackendUnavailable,
                format!("task {} has no builtin implementation; use the command or service backend", t.task),
            ),
            Backend::Command => {
                let ok = match t.config.get("command") {
                    Some(Value::String(s)) => !s.is_empty(),
                    Some(Value::Array(a)) => !a.is_empty() && a.iter().all(Value::is_string),
                    _ => false,
                };
                if !ok {
                    self.push(
                        id,
                        None,
                        ViolationKind::MissingBackendConfig,
                        "command backend needs config.command (a string or array of strings)".into(),
                    );
                }
            }
            Backend::Service => {
                let ok = t
                    .config
                    .get("endpoint")
                    .and_then(Value::as_str)
                    .is_some_and(|e| e.starts_with("http://") || e.starts_with("https://"));
                if !ok {
                    self.push(
                        id,
                        None,
                        ViolationKind::MissingBackendConfig,
                        "service backend needs config.endpoint (an http(s) URL)".into(),
                    );
                }
            }
            Backend::Builtin => {}
        }
    }

    fn check_task(&mut self, t: &'a TaskSpec) {
        let id = Some(t.id.as_str());
        if t.id.is_empty() || t.id.starts_with('$') {
            self.push(id, None, ViolationKind::BadPortRef, format!("invalid task id {:?}", t.id));
        }
        if self.outputs.contains_key(t.id.as_str()) {
            self.push(id, None, ViolationKind::DuplicateId, format!("duplicate task id {:?}", t.id));
        }
        let Some(entry) = self.registry.get(&t.task) else {
            self.push(id, None, ViolationKind::UnknownTask, format!("unknown task {:?}", t.task));
            for (k, r) in t.inputs.iter().enumerate() {
                self.resolve(id, format!("in{k}"), r);
            }
            self.outputs.entry(&t.id).or_insert(None);
            return;
        };
        let sig = &entry.signature;
        self.check_backend(t, entry.builtin.is_some());
        for (key, value) in &t.config {
            if RESERVED_CONFIG_KEYS.contains(&key.as_str()) {
                if t.backend == Backend::Builtin {
                    self.push(
                        id,
                        None,
                        ViolationKind::BadConfig,
                        format!("config key {key:?} is only valid for external backends"),
                    );
                } else if key == "timeoutSeconds" && !value.as_f64().is_some_and(|x| x > 0.0) {
                    self.push(id, None, ViolationKind::BadConfig, "timeoutSeconds must be a positive number".into());
                }
                continue;
            }
            match sig.field(key) {
                Some(field) if !field.ty.accepts(value) => self.push(
                    id,
                    None,
                    ViolationKind::BadConfig,
                    format!("config {key:?} must be {}, got {value}", field.ty.describe()),
                ),
                None if t.backend == Backend::Builtin => self.push(
                    id,
                    None,
                    ViolationKind::BadConfig,
                    format!("unknown config key {key:?} for task {}", t.task),
                ),
                _ => {}
            }
        }
        if t.inputs.len() != sig.inputs.len() {
            self.push(
                id,
                None,
                ViolationKind::ArityMismatch { expected: sig.inputs.len(), actual: t.inputs.len() },
                format!("task {} takes {} input(s), got {}", t.task, sig.inputs.len(), t.inputs.len()),
            );
        }
        for (k, r) in t.inputs.iter().enumerate() {
            let actual = self.resolve(id, format!("in{k}"), r);
            if let (Some(actual), Some(&expected)) = (actual, sig.inputs.get(k)) {
                if actual != expected {
                    self.push(
                        id,
                        Some(format!("in{k}")),
                        ViolationKind::FormatMismatch { expected, actual },
                        format!("expected {expected}, got {actual}"),
                    );
                }
            }
        }
        self.outputs.entry(&t.id).or_insert_with(|| Some(sig.outputs.clone()));
    }
}

/// Checks task names, port references, port formats, arity, backend
/// requirements and configuration. Returns every violation found.
pub fn validate_pipeline(spec: &PipelineSpec, registry: &Registry) -> Result<(), Vec<Violation>> {
    let mut c = Checker { spec, registry, violations: Vec::new(), outputs: HashMap::new() };
    if !matches!(spec.source_format, DataFormat::Rdf | DataFormat::Json | DataFormat::Text) {
        c.push(
            None,
            None,
            ViolationKind::BadSourceFormat,
            format!("source format must be RDF, JSON or TEXT, got {}", spec.source_format),
        );
    }
    for t in &spec.tasks {
        c.check_task(t);
    }
    if let Some(actual) = c.resolve(None, "output".into(), &spec.output) {
        if actual != DataFormat::Rdf {
            c.push(
                None,
                Some("output".into()),
                ViolationKind::NonRdfOutput { actual },
                format!("pipeline output must be RDF, got {actual}"),
            );
        }
    }
    if c.violations.is_empty() {
        Ok(())
    } else {
        Err(c.violations)
    }
}

/// Format of every resolvable port of a (valid) pipeline.
pub(crate) fn port_format(spec: &PipelineSpec, registry: &Registry, port: &PortRef) -> Option<DataFormat> {
    match port {
        PortRef::Seed => Some(DataFormat::Rdf),
        PortRef::Source => Some(spec.source_format),
        PortRef::Output { task, index } => {
            let t = spec.task(task)?;
            registry.get(&t.task)?.signature.outputs.get(*index).copied()
        }
    }
}
