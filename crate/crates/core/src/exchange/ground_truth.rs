use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::{parse_match_set, serialize_match_set, ExchangeError, MatchSet};
use crate::ontology::OntologySchema;
use crate::rdf::Iri;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExpectedEntity {
    pub id: String,
    #[serde(rename = "type")]
    pub entity_type: String,
    pub label: String,
}

/// A film surface form and the reference entity it denotes.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FilmLink {
    pub form: String,
    pub id: String,
}

/// Supplementary ground truth shipped with every source split.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct GroundTruthBundle {
    pub expected_matches: MatchSet,
    pub expected_entities: Vec<ExpectedEntity>,
    /// JSON key path (dot separated, arrays transparent) to property IRI.
    pub gold_keymap: BTreeMap<String, String>,
    pub film_links: Vec<FilmLink>,
}

pub const MATCHES_FILE: &str = "matches.er.json";
pub const ENTITIES_FILE: &str = "expected_entities.json";
pub const KEYMAP_FILE: &str = "gold_keymap.json";
pub const FILM_LINKS_FILE: &str = "film_links.json";

fn read(path: &Path) -> Result<String, ExchangeError> {
    std::fs::read_to_string(path).map_err(|source| ExchangeError::Io { path: path.to_path_buf(), source })
}

fn write(path: &Path, text: String) -> Result<(), ExchangeError> {
    std::fs::write(path, text).map_err(|source| ExchangeError::Io { path: path.to_path_buf(), source })
}

fn pretty<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("ground truth serializes") + "\n"
}

impl GroundTruthBundle {
    /// File names and contents, as written by [`Self::write_to_dir`].
    pub fn render(&self) -> [(&'static str, String); 4] {
        [
            (MATCHES_FILE, serialize_match_set(&self.expected_matches)),
            (ENTITIES_FILE, pretty(&self.expected_entities)),
            (KEYMAP_FILE, pretty(&self.gold_keymap)),
            (FILM_LINKS_FILE, pretty(&self.film_links)),
        ]
    }

    pub fn write_to_dir(&self, dir: &Path) -> Result<(), ExchangeError> {
        std::fs::create_dir_all(dir).map_err(|source| ExchangeError::Io { path: dir.to_path_buf(), source })?;
        for (name, text) in self.render() {
            write(&dir.join(name), text)?;
        }
        Ok(())
    }

    pub fn read_from_dir(dir: &Path) -> Result<Self, ExchangeError> {
        Ok(GroundTruthBundle {
            expected_matches: parse_match_set(&read(&dir.join(MATCHES_FILE))?)?,
            expected_entities: serde_json::from_str(&read(&dir.join(ENTITIES_FILE))?)?,
            gold_keymap: serde_json::from_str(&read(&dir.join(KEYMAP_FILE))?)?,
            film_links: serde_json::from_str(&read(&dir.join(FILM_LINKS_FILE))?)?,
        })
    }

    /// Expected entity types must be schema classes.
    pub fn validate(&self, schema: &OntologySchema) -> Result<(), ExchangeError> {
        for (index, e) in self.expected_entities.iter().enumerate() {
            let known = Iri::new(&e.entity_type).map(|t| schema.is_class(&t)).unwrap_or(false);
            if !known {
                return Err(ExchangeError::record(index, format!("type {} is not a schema class", e.entity_type)));
            }
        }
        Ok(())
    }
}
