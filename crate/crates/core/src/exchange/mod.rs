//! Data-format tags, the match (JSON_ER) and knowledge-extraction (JSON_KE)
//! exchange formats, CSV tables and ground-truth files.

mod er;
mod ground_truth;
mod ke;
mod table;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

pub use er::{parse_match_set, serialize_match_set, MatchRecord, MatchSet, MatchType};
pub use ground_truth::{
    ExpectedEntity, FilmLink, GroundTruthBundle, ENTITIES_FILE, FILM_LINKS_FILE, KEYMAP_FILE, MATCHES_FILE,
};
pub use ke::{parse_ke_doc, parse_ke_docs, serialize_ke_doc, serialize_ke_docs, KeDoc, KeLink, SurfaceTriple};
pub use table::{parse_csv, serialize_csv, Table};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum DataFormat {
    #[serde(rename = "RDF")]
    Rdf,
    #[serde(rename = "JSON")]
    Json,
    #[serde(rename = "TEXT")]
    Text,
    #[serde(rename = "CSV")]
    Csv,
    #[serde(rename = "JSON_ER")]
    JsonEr,
    #[serde(rename = "JSON_KE")]
    JsonKe,
}

impl DataFormat {
    pub const ALL: [DataFormat; 6] =
        [DataFormat::Rdf, DataFormat::Json, DataFormat::Text, DataFormat::Csv, DataFormat::JsonEr, DataFormat::JsonKe];

    pub fn as_str(self) -> &'static str {
        match self {
            DataFormat::Rdf => "RDF",
            DataFormat::Json => "JSON",
            DataFormat::Text => "TEXT",
            DataFormat::Csv => "CSV",
            DataFormat::JsonEr => "JSON_ER",
            DataFormat::JsonKe => "JSON_KE",
        }
    }

    pub fn extension(self) -> &'static str {
        match self {
            DataFormat::Rdf => "nt",
            DataFormat::Json | DataFormat::JsonEr | DataFormat::JsonKe => "json",
            DataFormat::Text => "txt",
            DataFormat::Csv => "csv",
        }
    }
}

impl fmt::Display for DataFormat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for DataFormat {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        DataFormat::ALL.into_iter().find(|f| f.as_str() == s).ok_or_else(|| format!("unknown data format {s:?}"))
    }
}

#[derive(Debug, thiserror::Error)]
pub enum ExchangeError {
    #[error("invalid JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("expected a top-level JSON {0}")]
    Shape(&'static str),
    #[error("record {index}: {message}")]
    Record { index: usize, message: String },
    #[error("CSV: {0}")]
    Csv(String),
    #[error("{path}: {source}")]
    Io {
        path: std::path::PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl ExchangeError {
    fn record(index: usize, message: impl Into<String>) -> Self {
        ExchangeError::Record { index, message: message.into() }
    }
}

/// Reads an identifier that may be given as a JSON string or number.
fn id_value(v: Option<&serde_json::Value>, key: &str) -> Result<String, String> {
    match v {
        Some(serde_json::Value::String(s)) if !s.is_empty() => Ok(s.clone()),
        Some(serde_json::Value::String(_)) => Err(format!("empty {key}")),
        Some(serde_json::Value::Number(n)) => Ok(n.to_string()),
        Some(other) => Err(format!("{key} must be a string or number, got {other}")),
        None => Err(format!("missing key {key:?}")),
    }
}

fn score_value(v: Option<&serde_json::Value>) -> Result<f64, String> {
    let score = v.ok_or("missing key \"score\"")?.as_f64().ok_or("score must be a number")?;
    if (0.0..=1.0).contains(&score) {
        Ok(score)
    } else {
        Err(format!("score {score} outside [0, 1]"))
    }
}
