//! Task registry, pipeline specs, static validation and file-staged
//! execution over builtin, command and service backends.

mod artifact;
mod backend;
mod engine;
mod registry;
mod report;
mod runner;
mod spec;
mod validate;

use std::path::PathBuf;

pub use artifact::Artifact;
pub use backend::{invoke_service_task, ServiceError, ServicePort, DEFAULT_SERVICE_TIMEOUT};
pub use engine::{staged_name, Engine, EngineError, RunOutcome};
pub use registry::{
    BuiltinFn, ConfigField, ConfigType, Registry, TaskConfig, TaskContext, TaskEntry, TaskOutput, TaskSignature,
};
pub use report::{ArtifactRef, RunReport, TaskReport};
pub use runner::{run_increments, source_path, IncrementError, RunLayout};
pub use spec::{Backend, PipelineFile, PipelineSpec, PortRef, TaskSpec};
pub use validate::{validate_pipeline, Violation, ViolationKind, RESERVED_CONFIG_KEYS};

#[derive(Debug, thiserror::Error)]
pub enum PipelineError {
    #[error("malformed pipeline spec: {0}")]
    SpecFormat(String),
    #[error("registry: {0}")]
    Registry(String),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}
