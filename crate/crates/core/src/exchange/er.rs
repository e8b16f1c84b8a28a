use std::collections::BTreeMap;

use serde_json::{json, Value};

use super::{id_value, score_value, ExchangeError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum MatchType {
    Entity,
    Relation,
}

impl MatchType {
    pub fn as_str(self) -> &'static str {
        match self {
            MatchType::Entity => "entity",
            MatchType::Relation => "relation",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct MatchRecord {
    pub id1: String,
    pub id2: String,
    pub match_type: MatchType,
    pub score: f64,
}

impl MatchRecord {
    pub fn entity(id1: impl Into<String>, id2: impl Into<String>, score: f64) -> Self {
        MatchRecord { id1: id1.into(), id2: id2.into(), match_type: MatchType::Entity, score }
    }

    pub fn relation(id1: impl Into<String>, id2: impl Into<String>, score: f64) -> Self {
        MatchRecord { id1: id1.into(), id2: id2.into(), match_type: MatchType::Relation, score }
    }
}

/// Normalized set of match records: one record per unordered id pair and
/// type (the highest score wins), sorted by `(type, id1, id2)`.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct MatchSet {
    records: Vec<MatchRecord>,
}

impl MatchSet {
    pub fn new(records: impl IntoIterator<Item = MatchRecord>) -> Self {
        let mut best: BTreeMap<(MatchType, String, String), MatchRecord> = BTreeMap::new();
        for r in records {
            let key = if r.id1 <= r.id2 {
                (r.match_type, r.id1.clone(), r.id2.clone())
            } else {
                (r.match_type, r.id2.clone(), r.id1.clone())
            };
            match best.get(&key) {
                Some(prev) if prev.score > r.score => {}
                Some(prev) if prev.score == r.score && (&prev.id1, &prev.id2) <= (&r.id1, &r.id2) => {}
                _ => {
                    best.insert(key, r);
                }
            }
        }
        let mut records: Vec<MatchRecord> = best.into_values().collect();
        records.sort_by(|a, b| (a.match_type, &a.id1, &a.id2).cmp(&(b.match_type, &b.id1, &b.id2)));
        MatchSet { records }
    }

    pub fn records(&self) -> &[MatchRecord] {
        &self.records
    }

    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    pub fn entities(&self) -> impl Iterator<Item = &MatchRecord> {
        self.records.iter().filter(|r| r.match_type == MatchType::Entity)
    }

    pub fn relations(&self) -> impl Iterator<Item = &MatchRecord> {
        self.records.iter().filter(|r| r.match_type == MatchType::Relation)
    }

    pub fn merge(&self, other: &MatchSet) -> MatchSet {
        MatchSet::new(self.records.iter().chain(other.records.iter()).cloned())
    }
}

pub fn parse_match_set(text: &str) -> Result<MatchSet, ExchangeError> {
    let value: Value = serde_json::from_str(text)?;
    let items = value.as_array().ok_or(ExchangeError::Shape("array of match records"))?;
    let mut records = Vec::with_capacity(items.len());
    for (index, item) in items.iter().enumerate() {
        let obj = item.as_object().ok_or_else(|| ExchangeError::record(index, "not an object"))?;
        let id1 = id_value(obj.get("id1"), "id1").map_err(|m| ExchangeError::record(index, m))?;
        let id2 = id_value(obj.get("id2"), "id2").map_err(|m| ExchangeError::record(index, m))?;
        let match_type = match obj.get("type").and_then(Value::as_str) {
            Some("entity") => MatchType::Entity,
            Some("relation") => MatchType::Relation,
            Some(other) => return Err(ExchangeError::record(index, format!("unknown match type {other:?}"))),
            None => return Err(ExchangeError::record(index, "missing key \"type\"")),
        };
        let score = score_value(obj.get("score")).map_err(|m| ExchangeError::record(index, m))?;
        records.push(MatchRecord { id1, id2, match_type, score });
    }
    Ok(MatchSet::new(records))
}

pub fn serialize_match_set(set: &MatchSet) -> String {
    let items: Vec<Value> = set
        .records
        .iter()
        .map(|r| json!({"id1": r.id1, "id2": r.id2, "type": r.match_type.as_str(), "score": r.score}))
        .collect();
    let mut out = serde_json::to_string_pretty(&Value::Array(items)).expect("match set serializes");
    out.push('\n');
    out
}
