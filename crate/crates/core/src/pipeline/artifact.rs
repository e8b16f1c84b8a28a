use serde_json::Value;

use crate::exchange::{
    parse_csv, parse_ke_docs, parse_match_set, serialize_csv, serialize_ke_docs, serialize_match_set, DataFormat,
    KeDoc, MatchSet, Table,
};
use crate::rdf::{parse_ntriples, serialize_ntriples, Graph};

/// A parsed port value. Parsing a file into an artifact is the runtime
/// check that it really has its declared format.
#[derive(Debug, Clone, PartialEq)]
pub enum Artifact {
    Rdf(Graph),
    Json(Value),
    Text(String),
    Csv(Table),
    Er(MatchSet),
    Ke(Vec<KeDoc>),
}

impl Artifact {
    pub fn format(&self) -> DataFormat {
        match self {
            Artifact::Rdf(_) => DataFormat::Rdf,
            Artifact::Json(_) => DataFormat::Json,
            Artifact::Text(_) => DataFormat::Text,
            Artifact::Csv(_) => DataFormat::Csv,
            Artifact::Er(_) => DataFormat::JsonEr,
            Artifact::Ke(_) => DataFormat::JsonKe,
        }
    }

    pub fn parse(format: DataFormat, text: &str) -> Result<Self, String> {
        Ok(match format {
            DataFormat::Rdf => Artifact::Rdf(parse_ntriples(text).map_err(|e| e.to_string())?),
            DataFormat::Json => Artifact::Json(serde_json::from_str(text).map_err(|e| e.to_string())?),
            DataFormat::Text => Artifact::Text(text.to_string()),
            DataFormat::Csv => Artifact::Csv(parse_csv(text).map_err(|e| e.to_string())?),
            DataFormat::JsonEr => Artifact::Er(parse_match_set(text).map_err(|e| e.to_string())?),
            DataFormat::JsonKe => Artifact::Ke(parse_ke_docs(text).map_err(|e| e.to_string())?),
        })
    }

    /// Canonical text form written to the staging directory.
    pub fn to_text(&self) -> String {
        match self {
            Artifact::Rdf(g) => serialize_ntriples(g),
            Artifact::Json(v) => serde_json::to_string_pretty(v).expect("JSON value serializes") + "\n",
            Artifact::Text(t) => t.clone(),
            Artifact::Csv(t) => serialize_csv(t),
            Artifact::Er(m) => serialize_match_set(m),
            Artifact::Ke(docs) => serialize_ke_docs(docs),
        }
    }

    pub fn as_graph(&self) -> Option<&Graph> {
        match self {
            Artifact::Rdf(g) => Some(g),
            _ => None,
        }
    }

    pub fn as_json(&self) -> Option<&Value> {
        match self {
            Artifact::Json(v) => Some(v),
            _ => None,
        }
    }

    pub fn as_text(&self) -> Option<&str> {
        match self {
            Artifact::Text(t) => Some(t),
            _ => None,
        }
    }

    pub fn as_table(&self) -> Option<&Table> {
        match self {
            Artifact::Csv(t) => Some(t),
            _ => None,
        }
    }

    pub fn as_matches(&self) -> Option<&MatchSet> {
        match self {
            Artifact::Er(m) => Some(m),
            _ => None,
        }
    }

    pub fn as_ke(&self) -> Option<&[KeDoc]> {
        match self {
            Artifact::Ke(d) => Some(d),
            _ => None,
        }
    }
}
