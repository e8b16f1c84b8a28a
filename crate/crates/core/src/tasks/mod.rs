//! Builtin task library and its registration.

mod align;
mod fusion;
mod json;
mod ke;
mod tabular;
mod text;

use serde_json::Value;

pub use align::graph_align;
pub use fusion::{fusion_first, select_first, FusionOutcome};
pub(crate) use json::percent_encode;
pub use json::{json_linking, json_to_rdf};
pub use ke::generate_rdf_ke;
pub use tabular::{csv_record_link, csv_schema_match, tabularize};
pub use text::{entity_link, relation_link, text_extract};

use crate::exchange::DataFormat::{self, Csv, Json, JsonEr, JsonKe, Rdf, Text};
use crate::pipeline::{
    Artifact, ConfigField, ConfigType, Registry, TaskConfig, TaskContext, TaskOutput, TaskSignature,
};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SimilarityConfig {
    pub entity_threshold: f64,
    pub relation_threshold: f64,
    pub link_threshold: f64,
    pub csv_record_threshold: f64,
    pub csv_schema_threshold: f64,
    pub max_iterations: usize,
}

impl Default for SimilarityConfig {
    fn default() -> Self {
        SimilarityConfig {
            entity_threshold: 0.99,
            relation_threshold: 0.5,
            link_threshold: 0.8,
            csv_record_threshold: 0.5,
            csv_schema_threshold: 0.1,
            max_iterations: 3,
        }
    }
}

const ENTITY_THRESHOLD: &str = "entityThreshold";
const RELATION_THRESHOLD: &str = "relationThreshold";
const LINK_THRESHOLD: &str = "linkThreshold";
const CSV_RECORD_THRESHOLD: &str = "csvRecordThreshold";
const CSV_SCHEMA_THRESHOLD: &str = "csvSchemaThreshold";
const MAX_ITERATIONS: &str = "maxIterations";

impl SimilarityConfig {
    /// Overlays whichever keys `config` carries on the defaults.
    pub fn from_task_config(config: &TaskConfig) -> Result<Self, String> {
        let mut c = SimilarityConfig::default();
        for (key, slot) in [
            (ENTITY_THRESHOLD, &mut c.entity_threshold),
            (RELATION_THRESHOLD, &mut c.relation_threshold),
            (LINK_THRESHOLD, &mut c.link_threshold),
            (CSV_RECORD_THRESHOLD, &mut c.csv_record_threshold),
            (CSV_SCHEMA_THRESHOLD, &mut c.csv_schema_threshold),
        ] {
            if config.get(key).is_some() {
                let v = config.f64(key)?;
                if !(0.0..=1.0).contains(&v) {
                    return Err(format!("config {key:?} must lie in [0, 1], got {v}"));
                }
                *slot = v;
            }
        }
        if config.get(MAX_ITERATIONS).is_some() {
            c.max_iterations = config.usize(MAX_ITERATIONS)?;
            if c.max_iterations == 0 {
                return Err(format!("config {MAX_ITERATIONS:?} must be positive"));
            }
        }
        Ok(c)
    }

    fn field(&self, key: &'static str) -> ConfigField {
        let value = match key {
            ENTITY_THRESHOLD => Value::from(self.entity_threshold),
            RELATION_THRESHOLD => Value::from(self.relation_threshold),
            LINK_THRESHOLD => Value::from(self.link_threshold),
            CSV_RECORD_THRESHOLD => Value::from(self.csv_record_threshold),
            CSV_SCHEMA_THRESHOLD => Value::from(self.csv_schema_threshold),
            MAX_ITERATIONS => return ConfigField::new(key, ConfigType::Count, self.max_iterations),
            _ => unreachable!("unknown similarity key {key}"),
        };
        ConfigField::new(key, ConfigType::Threshold, value)
    }
}

fn signature(
    name: &'static str,
    inputs: &[DataFormat],
    outputs: &[DataFormat],
    keys: &[&'static str],
) -> TaskSignature {
    let d = SimilarityConfig::default();
    TaskSignature {
        name,
        inputs: inputs.to_vec(),
        outputs: outputs.to_vec(),
        config: keys.iter().map(|k| d.field(k)).collect(),
    }
}

fn graph_arg(args: &[Artifact], k: usize) -> Result<&crate::rdf::Graph, String> {
    args.get(k).and_then(Artifact::as_graph).ok_or_else(|| format!("input {k} is not RDF"))
}

fn table_arg(args: &[Artifact], k: usize) -> Result<&crate::exchange::Table, String> {
    args.get(k).and_then(Artifact::as_table).ok_or_else(|| format!("input {k} is not CSV"))
}

fn ke_arg(args: &[Artifact], k: usize) -> Result<&[crate::exchange::KeDoc], String> {
    args.get(k).and_then(Artifact::as_ke).ok_or_else(|| format!("input {k} is not JSON_KE"))
}

fn er_arg(args: &[Artifact], k: usize) -> Result<&crate::exchange::MatchSet, String> {
    args.get(k).and_then(Artifact::as_matches).ok_or_else(|| format!("input {k} is not JSON_ER"))
}

fn run_graph_align(_: &TaskContext<'_>, args: &[Artifact], cfg: &TaskConfig) -> Result<TaskOutput, String> {
    let sim = SimilarityConfig::from_task_config(cfg)?;
    let m = graph_align(graph_arg(args, 0)?, graph_arg(args, 1)?, &sim)?;
    Ok(TaskOutput::single(Artifact::Er(m)))
}

fn run_fusion_first(ctx: &TaskContext<'_>, args: &[Artifact], _: &TaskConfig) -> Result<TaskOutput, String> {
    let out = fusion_first(graph_arg(args, 0)?, graph_arg(args, 1)?, er_arg(args, 2)?, ctx.schema()?);
    Ok(TaskOutput { outputs: vec![Artifact::Rdf(out.graph)], warnings: out.warnings })
}

fn run_select_first(ctx: &TaskContext<'_>, args: &[Artifact], _: &TaskConfig) -> Result<TaskOutput, String> {
    let g = select_first(graph_arg(args, 0)?, graph_arg(args, 1)?, ctx.schema()?);
    Ok(TaskOutput::single(Artifact::Rdf(g)))
}

fn run_tabularize(_: &TaskContext<'_>, args: &[Artifact], _: &TaskConfig) -> Result<TaskOutput, String> {
    Ok(TaskOutput::single(Artifact::Csv(tabularize(graph_arg(args, 0)?))))
}

fn run_csv_record_link(_: &TaskContext<'_>, args: &[Artifact], cfg: &TaskConfig) -> Result<TaskOutput, String> {
    let sim = SimilarityConfig::from_task_config(cfg)?;
    let m = csv_record_link(table_arg(args, 0)?, table_arg(args, 1)?, sim.csv_record_threshold)?;
    Ok(TaskOutput::single(Artifact::Er(m)))
}

fn run_csv_schema_match(_: &TaskContext<'_>, args: &[Artifact], cfg: &TaskConfig) -> Result<TaskOutput, String> {
    let sim = SimilarityConfig::from_task_config(cfg)?;
    let m = csv_schema_match(table_arg(args, 0)?, table_arg(args, 1)?, sim.csv_schema_threshold);
    Ok(TaskOutput::single(Artifact::Er(m)))
}

fn run_merge_matches(_: &TaskContext<'_>, args: &[Artifact], _: &TaskConfig) -> Result<TaskOutput, String> {
    Ok(TaskOutput::single(Artifact::Er(er_arg(args, 0)?.merge(er_arg(args, 1)?))))
}

fn run_json_to_rdf(_: &TaskContext<'_>, args: &[Artifact], _: &TaskConfig) -> Result<TaskOutput, String> {
    let docs = args.first().and_then(Artifact::as_json).ok_or("input 0 is not JSON")?;
    Ok(TaskOutput::single(Artifact::Rdf(json_to_rdf(docs)?)))
}

fn run_json_linking(ctx: &TaskContext<'_>, args: &[Artifact], cfg: &TaskConfig) -> Result<TaskOutput, String> {
    let sim = SimilarityConfig::from_task_config(cfg)?;
    let docs = args.first().and_then(Artifact::as_json).ok_or("input 0 is not JSON")?;
    let ke = json_linking(docs, graph_arg(args, 1)?, ctx.schema()?, sim.link_threshold)?;
    Ok(TaskOutput::single(Artifact::Ke(ke)))
}

fn run_generate_rdf_ke(ctx: &TaskContext<'_>, args: &[Artifact], _: &TaskConfig) -> Result<TaskOutput, String> {
    Ok(TaskOutput::single(Artifact::Rdf(generate_rdf_ke(ke_arg(args, 0)?, ctx.schema()?))))
}

fn run_text_extract(_: &TaskContext<'_>, args: &[Artifact], _: &TaskConfig) -> Result<TaskOutput, String> {
    let text = args.first().and_then(Artifact::as_text).ok_or("input 0 is not TEXT")?;
    Ok(TaskOutput::single(Artifact::Ke(text_extract(text))))
}

fn run_entity_link(_: &TaskContext<'_>, args: &[Artifact], cfg: &TaskConfig) -> Result<TaskOutput, String> {
    let sim = SimilarityConfig::from_task_config(cfg)?;
    Ok(TaskOutput::single(Artifact::Ke(entity_link(ke_arg(args, 0)?, graph_arg(args, 1)?, sim.link_threshold))))
}

fn run_relation_link(ctx: &TaskContext<'_>, args: &[Artifact], cfg: &TaskConfig) -> Result<TaskOutput, String> {
    let sim = SimilarityConfig::from_task_config(cfg)?;
    Ok(TaskOutput::single(Artifact::Ke(relation_link(ke_arg(args, 0)?, ctx.schema()?, sim.link_threshold))))
}

/// Registers every builtin task and the service-only LLM task contracts.
pub fn register_all(registry: &mut Registry) {
    type Row = (
        &'static str,
        &'static [DataFormat],
        &'static [DataFormat],
        &'static [&'static str],
        Option<crate::pipeline::BuiltinFn>,
    );
    let rows: [Row; 16] = [
        (
            "graph_align",
            &[Rdf, Rdf],
            &[JsonEr],
            &[ENTITY_THRESHOLD, RELATION_THRESHOLD, MAX_ITERATIONS],
            Some(run_graph_align),
        ),
        ("fusion_first", &[Rdf, Rdf, JsonEr], &[Rdf], &[], Some(run_fusion_first)),
        ("select_first", &[Rdf, Rdf], &[Rdf], &[], Some(run_select_first)),
        ("tabularize", &[Rdf], &[Csv], &[], Some(run_tabularize)),
        ("csv_record_link", &[Csv, Csv], &[JsonEr], &[CSV_RECORD_THRESHOLD], Some(run_csv_record_link)),
        ("csv_schema_match", &[Csv, Csv], &[JsonEr], &[CSV_SCHEMA_THRESHOLD], Some(run_csv_schema_match)),
        ("merge_matches", &[JsonEr, JsonEr], &[JsonEr], &[], Some(run_merge_matches)),
        ("json_to_rdf", &[Json], &[Rdf], &[], Some(run_json_to_rdf)),
        ("json_linking", &[Json, Rdf], &[JsonKe], &[LINK_THRESHOLD], Some(run_json_linking)),
        ("generate_rdf_ke", &[JsonKe], &[Rdf], &[], Some(run_generate_rdf_ke)),
        ("text_extract", &[Text], &[JsonKe], &[], Some(run_text_extract)),
        ("entity_link", &[JsonKe, Rdf], &[JsonKe], &[LINK_THRESHOLD], Some(run_entity_link)),
        ("relation_link", &[JsonKe], &[JsonKe], &[LINK_THRESHOLD], Some(run_relation_link)),
        ("llm_extract", &[Text], &[JsonKe], &[], None),
        ("llm_mapping", &[Json, Rdf], &[Rdf], &[], None),
        ("llm_matcher", &[Rdf, Rdf], &[JsonEr], &[], None),
    ];
    for (name, inputs, outputs, keys, builtin) in rows {
        registry.register(signature(name, inputs, outputs, keys), builtin).expect("builtin task table is consistent");
    }
}
