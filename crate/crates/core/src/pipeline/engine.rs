use std::path::{Path, PathBuf};
use std::time::{Duration, Instant};

use serde_json::{Map, Value};

use super::artifact::Artifact;
use super::backend::{self, ServicePort};
use super::registry::{Registry, TaskConfig, TaskContext, TaskSignature};
use super::report::{ArtifactRef, RunReport, TaskReport};
use super::spec::{Backend, PipelineSpec, PortRef, TaskSpec};
use super::validate::{port_format, validate_pipeline, Violation};
use crate::exchange::DataFormat;
use crate::ontology::OntologySchema;

#[derive(Debug, thiserror::Error)]
pub enum EngineError {
    #[error("pipeline is invalid:\n{}", .0.iter().map(|v| format!("  - {v}")).collect::<Vec<_>>().join("\n"))]
    Invalid(Vec<Violation>),
    #[error("input file {0} does not exist")]
    MissingInput(PathBuf),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("task {task_id}, port {port}: {message}")]
    PortFormat { task_id: String, port: String, message: String },
    #[error("task {task_id} ({backend}) failed: {message}{}", stderr_suffix(.stderr))]
    TaskFailed { task_id: String, backend: &'static str, message: String, stderr: Option<String> },
}

fn stderr_suffix(stderr: &Option<String>) -> String {
    match stderr {
        Some(s) if !s.trim().is_empty() => format!("\nstderr:\n{}", s.trim_end()),
        _ => String::new(),
    }
}

fn io_err(path: &Path) -> impl FnOnce(std::io::Error) -> EngineError + '_ {
    move |source| EngineError::Io { path: path.to_path_buf(), source }
}

#[derive(Debug, Clone)]
pub struct RunOutcome {
    pub kg_path: PathBuf,
    pub report: RunReport,
}

/// Executes validated pipelines task by task, staging every port as a file.
#[derive(Debug, Clone)]
pub struct Engine {
    registry: Registry,
    ontology: Option<OntologySchema>,
    overrides: Map<String, Value>,
}

impl Engine {
    pub fn new(registry: Registry) -> Self {
        Engine { registry, ontology: None, overrides: Map::new() }
    }

    pub fn with_ontology(mut self, schema: OntologySchema) -> Self {
        self.ontology = Some(schema);
        self
    }

    /// Run-level config overrides. A key `k` applies to every task whose
    /// signature declares `k`; `taskId.k` applies to that task only.
    pub fn with_overrides(mut self, overrides: Map<String, Value>) -> Self {
        self.overrides = overrides;
        self
    }

    pub fn registry(&self) -> &Registry {
        &self.registry
    }

    pub fn ontology(&self) -> Option<&OntologySchema> {
        self.ontology.as_ref()
    }

    /// The spec with overrides folded into each task's config.
    pub fn effective_spec(&self, spec: &PipelineSpec) -> PipelineSpec {
        let mut spec = spec.clone();
        for t in &mut spec.tasks {
            let declared = self.registry.get(&t.task).map(|e| &e.signature);
            for (key, value) in &self.overrides {
                let target = match key.split_once('.') {
                    Some((id, k)) if id == t.id => Some(k),
                    Some(_) => None,
                    None if declared.is_some_and(|s| s.field(key).is_some()) => Some(key.as_str()),
                    None => None,
                };
                if let Some(k) = target {
                    t.config.insert(k.to_string(), value.clone());
                }
            }
        }
        spec
    }

    fn resolve_config(signature: &TaskSignature, task: &TaskSpec) -> TaskConfig {
        let mut config: Map<String, Value> =
            signature.config.iter().map(|f| (f.key.to_string(), f.default.clone())).collect();
        for (k, v) in &task.config {
            config.insert(k.clone(), v.clone());
        }
        TaskConfig(config)
    }

    /// Runs `spec` with `$seed`/`$source` bound to the given files, staging
    /// outputs as `<workdir>/<taskId>.out<k>.<ext>`.
    pub fn execute(
        &self,
        spec: &PipelineSpec,
        seed: &Path,
        source: &Path,
        workdir: &Path,
        increment: usize,
    ) -> Result<RunOutcome, EngineError> {
        let spec = self.effective_spec(spec);
        validate_pipeline(&spec, &self.registry).map_err(EngineError::Invalid)?;
        for input in [seed, source] {
            if !input.is_file() {
                return Err(EngineError::MissingInput(input.to_path_buf()));
            }
        }
        std::fs::create_dir_all(workdir).map_err(io_err(workdir))?;

        let port_path = |port: &PortRef| -> PathBuf {
            match port {
                PortRef::Seed => seed.to_path_buf(),
                PortRef::Source => source.to_path_buf(),
                PortRef::Output { task, index } => {
                    let format = port_format(&spec, &self.registry, port).expect("validated port");
                    workdir.join(staged_name(task, *index, format))
                }
            }
        };

        let mut report = RunReport {
            pipeline: spec.name.clone(),
            increment,
            source_format: spec.source_format,
            tasks: Vec::new(),
            output: String::new(),
            total_duration_seconds: 0.0,
            max_peak_memory_bytes: None,
            annotated_cost: None,
        };

        for task in &spec.tasks {
            let entry = self.registry.get(&task.task).expect("validated task");
            let signature = &entry.signature;
            let config = Self::resolve_config(signature, task);
            let inputs: Vec<(PathBuf, DataFormat)> = task
                .inputs
                .iter()
                .map(|r| {
                    let port: PortRef = r.parse().expect("validated port reference");
                    let format = port_format(&spec, &self.registry, &port).expect("validated port");
                    (port_path(&port), format)
                })
                .collect();
            let outputs: Vec<(PathBuf, DataFormat)> = signature
                .outputs
                .iter()
                .enumerate()
                .map(|(k, f)| (workdir.join(staged_name(&task.id, k, *f)), *f))
                .collect();

            let started = Instant::now();
            let (warnings, stderr, peak) = match task.backend {
                Backend::Builtin => {
                    let run = entry.builtin.expect("validated builtin");
                    let args = load_inputs(&task.id, &inputs)?;
                    let ctx = TaskContext { task_id: &task.id, ontology: self.ontology.as_ref() };
                    let out = run(&ctx, &args, &config).map_err(|message| EngineError::TaskFailed {
                        task_id: task.id.clone(),
                        backend: Backend::Builtin.as_str(),
                        message,
                        stderr: None,
                    })?;
                    if out.outputs.len() != outputs.len() {
                        return Err(EngineError::PortFormat {
                            task_id: task.id.clone(),
                            port: "outputs".into(),
                            message: format!("produced {} output(s), expected {}", out.outputs.len(), outputs.len()),
                        });
                    }
                    for (k, (artifact, (path, format))) in out.outputs.iter().zip(&outputs).enumerate() {
                        if artifact.format() != *format {
                            return Err(EngineError::PortFormat {
                                task_id: task.id.clone(),
                                port: format!("out{k}"),
                                message: format!("expected {format}, got {}", artifact.format()),
                            });
                        }
                        std::fs::write(path, artifact.to_text()).map_err(io_err(path))?;
                    }
                    (out.warnings, None, None)
                }
                Backend::Command => {
                    let in_paths: Vec<PathBuf> = inputs.iter().map(|(p, _)| p.clone()).collect();
                    let out_paths: Vec<PathBuf> = outputs.iter().map(|(p, _)| p.clone()).collect();
                    for p in &out_paths {
                        let _ = std::fs::remove_file(p);
                    }
                    let command = config.get("command").cloned().unwrap_or(Value::Null);
                    let argv =
                        backend::command_argv(&command, &in_paths, &out_paths, &config.0).map_err(|message| {
                            EngineError::TaskFailed {
                                task_id: task.id.clone(),
                                backend: "command",
                                message,
                                stderr: None,
                            }
                        })?;
                    let outcome = backend::run_command(&argv).map_err(|(message, stderr)| EngineError::TaskFailed {
                        task_id: task.id.clone(),
                        backend: "command",
                        message,
                        stderr: Some(stderr),
                    })?;
                    for (k, (path, format)) in outputs.iter().enumerate() {
                        let text = std::fs::read_to_string(path).map_err(|e| EngineError::TaskFailed {
                            task_id: task.id.clone(),
                            backend: "command",
                            message: format!("output {k} ({}) not readable: {e}", path.display()),
                            stderr: Some(outcome.stderr.clone()),
                        })?;
                        let artifact = Artifact::parse(*format, &text).map_err(|e| EngineError::PortFormat {
                            task_id: task.id.clone(),
                            port: format!("out{k}"),
                            message: format!("command output is not valid {format}: {e}"),
                        })?;
                        std::fs::write(path, artifact.to_text()).map_err(io_err(path))?;
                    }
                    let stderr = Some(outcome.stderr).filter(|s| !s.is_empty());
                    (Vec::new(), stderr, outcome.peak_memory_bytes)
                }
                Backend::Service => {
                    self.run_service(task, signature, &config, &inputs, &outputs)?;
                    (Vec::new(), None, None)
                }
            };
            let duration = started.elapsed().as_secs_f64();
            report.tasks.push(TaskReport {
                task_id: task.id.clone(),
                task: task.task.clone(),
                backend: task.backend,
                duration_seconds: duration,
                peak_memory_bytes: peak,
                artifacts: outputs.iter().map(|(p, f)| ArtifactRef { path: file_name(p), format: *f }).collect(),
                warnings,
                stderr,
            });
        }

        let output_port: PortRef = spec.output.parse().expect("validated output");
        let kg_path = port_path(&output_port);
        report.output = match output_port {
            PortRef::Output { .. } => file_name(&kg_path),
            _ => kg_path.display().to_string(),
        };
        report.finish();
        Ok(RunOutcome { kg_path, report })
    }

    fn run_service(
        &self,
        task: &TaskSpec,
        signature: &TaskSignature,
        config: &TaskConfig,
        inputs: &[(PathBuf, DataFormat)],
        outputs: &[(PathBuf, DataFormat)],
    ) -> Result<(), EngineError> {
        let fail = |message: String| EngineError::TaskFailed {
            task_id: task.id.clone(),
            backend: "service",
            message,
            stderr: None,
        };
        let endpoint = config.str("endpoint").map_err(&fail)?;
        let timeout = config
            .get("timeoutSeconds")
            .and_then(Value::as_f64)
            .map(Duration::from_secs_f64)
            .unwrap_or(backend::DEFAULT_SERVICE_TIMEOUT);
        let mut ports = Vec::with_capacity(inputs.len());
        for (k, (path, format)) in inputs.iter().enumerate() {
            let content = std::fs::read_to_string(path).map_err(io_err(path))?;
            ports.push(ServicePort { name: format!("in{k}"), format: format.to_string(), content });
        }
        let forwarded = backend::forwarded_config(&config.0);
        let returned = backend::invoke_service_task(endpoint, signature.name, &ports, &forwarded, timeout)
            .map_err(|e| fail(e.to_string()))?;
        if returned.len() != outputs.len() {
            return Err(fail(format!("service returned {} output(s), expected {}", returned.len(), outputs.len())));
        }
        for (k, (port, (path, format))) in returned.iter().zip(outputs).enumerate() {
            if port.format != format.as_str() {
                return Err(EngineError::PortFormat {
                    task_id: task.id.clone(),
                    port: format!("out{k}"),
                    message: format!("service declared {}, expected {format}", port.format),
                });
            }
            let artifact = Artifact::parse(*format, &port.content).map_err(|e| EngineError::PortFormat {
                task_id: task.id.clone(),
                port: format!("out{k}"),
                message: format!("service output is not valid {format}: {e}"),
            })?;
            std::fs::write(path, artifact.to_text()).map_err(io_err(path))?;
        }
        Ok(())
    }
}

pub fn staged_name(task_id: &str, index: usize, format: DataFormat) -> String {
    format!("{task_id}.out{index}.{}", format.extension())
}

fn file_name(p: &Path) -> String {
    p.file_name().map(|n| n.to_string_lossy().into_owned()).unwrap_or_default()
}

fn load_inputs(task_id: &str, inputs: &[(PathBuf, DataFormat)]) -> Result<Vec<Artifact>, EngineError> {
    inputs
        .iter()
        .enumerate()
        .map(|(k, (path, format))| {
            let text = std::fs::read_to_string(path).map_err(io_err(path))?;
            Artifact::parse(*format, &text).map_err(|e| EngineError::PortFormat {
                task_id: task_id.to_string(),
                port: format!("in{k}"),
                message: format!("{} is not valid {format}: {e}", path.display()),
            })
        })
        .collect()
}
