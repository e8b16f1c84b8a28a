use serde_json::{json, Map, Value};

use super::{id_value, score_value, ExchangeError};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SurfaceTriple {
    pub head: String,
    pub rel: String,
    pub tail: String,
}

impl SurfaceTriple {
    pub fn new(head: impl Into<String>, rel: impl Into<String>, tail: impl Into<String>) -> Self {
        SurfaceTriple { head: head.into(), rel: rel.into(), tail: tail.into() }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct KeLink {
    pub form: String,
    pub link: String,
    pub score: f64,
}

/// One extracted document: its text, surface triples in extraction order and
/// links from surface forms to identifiers.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct KeDoc {
    pub text: String,
    pub triples: Vec<SurfaceTriple>,
    pub links: Vec<KeLink>,
}

impl KeDoc {
    /// Sorts links by form (then link, then score) and drops exact duplicates.
    pub fn canonicalize(&mut self) {
        self.links
            .sort_by(|a, b| (&a.form, &a.link).cmp(&(&b.form, &b.link)).then_with(|| a.score.total_cmp(&b.score)));
        self.links.dedup();
    }

    /// Highest-scoring link for `form`; ties go to the smaller identifier.
    pub fn best_link(&self, form: &str) -> Option<&KeLink> {
        self.links.iter().filter(|l| l.form == form).fold(None, |best: Option<&KeLink>, l| match best {
            Some(b) if b.score > l.score || (b.score == l.score && b.link <= l.link) => Some(b),
            _ => Some(l),
        })
    }

    pub fn has_link(&self, form: &str) -> bool {
        self.links.iter().any(|l| l.form == form)
    }
}

fn string_field(obj: &Map<String, Value>, key: &str) -> Result<String, String> {
    match obj.get(key) {
        Some(Value::String(s)) => Ok(s.clone()),
        Some(other) => Err(format!("{key} must be a string, got {other}")),
        None => Err(format!("missing key {key:?}")),
    }
}

fn doc_from_value(value: &Value) -> Result<KeDoc, String> {
    let obj = value.as_object().ok_or("document is not an object")?;
    let text = string_field(obj, "text")?;
    let triples = obj.get("triples").and_then(Value::as_array).ok_or("triples must be an array")?;
    let links = obj.get("links").and_then(Value::as_array).ok_or("links must be an array")?;
    let mut doc = KeDoc { text, ..Default::default() };
    for (i, t) in triples.iter().enumerate() {
        let t = t.as_object().ok_or_else(|| format!("triple {i} is not an object"))?;
        let field = |k: &str| string_field(t, k).map_err(|m| format!("triple {i}: {m}"));
        doc.triples.push(SurfaceTriple { head: field("head")?, rel: field("rel")?, tail: field("tail")? });
    }
    for (i, l) in links.iter().enumerate() {
        let l = l.as_object().ok_or_else(|| format!("link {i} is not an object"))?;
        let form = string_field(l, "form").map_err(|m| format!("link {i}: {m}"))?;
        if form.is_empty() {
            return Err(format!("link {i}: empty form"));
        }
        let link = id_value(l.get("link"), "link").map_err(|m| format!("link {i}: {m}"))?;
        let score = score_value(l.get("score")).map_err(|m| format!("link {i}: {m}"))?;
        doc.links.push(KeLink { form, link, score });
    }
    doc.canonicalize();
    Ok(doc)
}

fn doc_to_value(doc: &KeDoc) -> Value {
    let mut doc = doc.clone();
    doc.canonicalize();
    json!({
        "text": doc.text,
        "triples": doc.triples.iter().map(|t| json!({"head": t.head, "rel": t.rel, "tail": t.tail})).collect::<Vec<_>>(),
        "links": doc.links.iter().map(|l| json!({"form": l.form, "link": l.link, "score": l.score})).collect::<Vec<_>>(),
    })
}

pub fn parse_ke_doc(text: &str) -> Result<KeDoc, ExchangeError> {
    let value: Value = serde_json::from_str(text)?;
    doc_from_value(&value).map_err(|m| ExchangeError::record(0, m))
}

pub fn serialize_ke_doc(doc: &KeDoc) -> String {
    serde_json::to_string_pretty(&doc_to_value(doc)).expect("KeDoc serializes") + "\n"
}

/// Parses a file: a top-level array with one KeDoc per source document.
pub fn parse_ke_docs(text: &str) -> Result<Vec<KeDoc>, ExchangeError> {
    let value: Value = serde_json::from_str(text)?;
    let items = value.as_array().ok_or(ExchangeError::Shape("array of KeDoc objects"))?;
    items.iter().enumerate().map(|(i, v)| doc_from_value(v).map_err(|m| ExchangeError::record(i, m))).collect()
}

pub fn serialize_ke_docs(docs: &[KeDoc]) -> String {
    let value = Value::Array(docs.iter().map(doc_to_value).collect());
    serde_json::to_string_pretty(&value).expect("KeDoc serializes") + "\n"
}
