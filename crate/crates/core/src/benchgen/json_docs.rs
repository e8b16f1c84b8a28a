//! Nested JSON records per film, with the key-level ambiguities real
//! infobox exports show.

use std::collections::BTreeMap;

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Map, Value};

use super::ontology_def::onto;
use super::synth::{Company, Person, World};
use crate::rdf::vocab;

/// Per-entity ambiguity decisions for one split.
#[derive(Debug, Clone, Default)]
pub struct Ambiguity {
    pub person_date: Vec<bool>,
    pub film_runtime_text: Vec<bool>,
    pub film_revenue: Vec<bool>,
}

impl Ambiguity {
    pub fn draw(world: &World, rate: f64, rng: &mut ChaCha8Rng) -> Ambiguity {
        let mut flip = |n: usize| (0..n).map(|_| rng.random_bool(rate)).collect::<Vec<_>>();
        Ambiguity {
            person_date: flip(world.persons.len()),
            film_runtime_text: flip(world.films.len()),
            film_revenue: flip(world.films.len()),
        }
    }
}

pub fn runtime_text(minutes: u32) -> String {
    format!("{}h {}m", minutes / 60, minutes % 60)
}

struct KeyMap<'a>(&'a mut BTreeMap<String, String>);

impl KeyMap<'_> {
    fn add(&mut self, path: &str, property: &str) {
        self.0.insert(path.to_string(), property.to_string());
    }
}

fn ont(local: &str) -> String {
    onto(local).as_str().to_string()
}

fn person_doc(p: &Person, ambiguous: bool, prefix: &str, keys: &mut KeyMap) -> Value {
    let mut m = Map::new();
    m.insert("name".into(), json!(p.name));
    keys.add(&format!("{prefix}.name"), vocab::RDFS_LABEL);
    if ambiguous {
        m.insert("date".into(), json!(p.birth_date));
        keys.add(&format!("{prefix}.date"), &ont("birthDate"));
    } else {
        m.insert("birthDate".into(), json!(p.birth_date));
        keys.add(&format!("{prefix}.birthDate"), &ont("birthDate"));
        if let Some(d) = &p.death_date {
            m.insert("deathDate".into(), json!(d));
            keys.add(&format!("{prefix}.deathDate"), &ont("deathDate"));
        }
    }
    m.insert("birthPlace".into(), json!(p.birth_place));
    keys.add(&format!("{prefix}.birthPlace"), &ont("birthPlace"));
    if let Some(n) = &p.birth_name {
        m.insert("birthName".into(), json!(n));
        keys.add(&format!("{prefix}.birthName"), &ont("birthName"));
    }
    m.insert("occupation".into(), json!(p.occupation));
    keys.add(&format!("{prefix}.occupation"), &ont("occupation"));
    Value::Object(m)
}

fn company_doc(c: &Company, prefix: &str, keys: &mut KeyMap) -> Value {
    keys.add(&format!("{prefix}.name"), vocab::RDFS_LABEL);
    keys.add(&format!("{prefix}.founded"), &ont("foundingDate"));
    keys.add(&format!("{prefix}.headquarters"), &ont("headquarter"));
    keys.add(&format!("{prefix}.revenue"), &ont("revenue"));
    json!({
        "name": c.name,
        "founded": c.founding_date,
        "headquarters": c.headquarter,
        "revenue": c.revenue as f64,
    })
}

/// One document per film, in film order, plus the key-path → property map
/// covering every emitted path.
pub fn film_documents(world: &World, films: &[usize], amb: &Ambiguity) -> (Vec<Value>, BTreeMap<String, String>) {
    let mut gold = BTreeMap::new();
    let mut keys = KeyMap(&mut gold);
    let mut docs = Vec::with_capacity(films.len());
    for &fi in films {
        let f = &world.films[fi];
        let mut m = Map::new();
        m.insert("title".into(), json!(f.title));
        keys.add("title", vocab::RDFS_LABEL);
        m.insert("released".into(), json!(f.release_date));
        keys.add("released", &ont("releaseDate"));
        if amb.film_runtime_text[fi] {
            m.insert("runtime".into(), json!(runtime_text(f.runtime)));
        } else {
            m.insert("runtime".into(), json!(f.runtime));
        }
        keys.add("runtime", &ont("runtime"));
        if amb.film_revenue[fi] {
            if let Some(g) = f.gross {
                m.insert("revenue".into(), json!(g as f64));
                keys.add("revenue", &ont("gross"));
            }
        } else {
            if let Some(b) = f.budget {
                m.insert("budget".into(), json!(b as f64));
                keys.add("budget", &ont("budget"));
            }
            if let Some(g) = f.gross {
                m.insert("gross".into(), json!(g as f64));
                keys.add("gross", &ont("gross"));
            }
        }
        m.insert("country".into(), json!(f.country));
        keys.add("country", &ont("country"));
        m.insert("language".into(), json!(f.language));
        keys.add("language", &ont("language"));
        m.insert("genre".into(), json!(f.genres));
        keys.add("genre", &ont("genre"));

        let roles = [
            ("director", "director", f.director),
            ("producer", "producer", f.producer),
            ("screenplay", "writer", f.writer),
            ("music", "musicComposer", f.composer),
            ("cinematography", "cinematography", f.cinematographer),
        ];
        for (key, property, p) in roles {
            keys.add(key, &ont(property));
            m.insert(key.into(), person_doc(&world.persons[p], amb.person_date[p], key, &mut keys));
        }
        keys.add("starring", &ont("starring"));
        let stars: Vec<Value> = f
            .starring
            .iter()
            .map(|&p| person_doc(&world.persons[p], amb.person_date[p], "starring", &mut keys))
            .collect();
        m.insert("starring".into(), Value::Array(stars));
        keys.add("studio", &ont("productionCompany"));
        let studios: Vec<Value> =
            f.studios.iter().map(|&c| company_doc(&world.companies[c], "studio", &mut keys)).collect();
        m.insert("studio".into(), Value::Array(studios));
        keys.add("distributor", &ont("distributor"));
        m.insert("distributor".into(), company_doc(&world.companies[f.distributor], "distributor", &mut keys));
        docs.push(Value::Object(m));
    }
    (docs, gold)
}

/// All key paths of a document set, arrays being transparent.
pub fn key_paths(docs: &[Value]) -> std::collections::BTreeSet<String> {
    fn walk(v: &Value, prefix: &str, out: &mut std::collections::BTreeSet<String>) {
        match v {
            Value::Object(m) => {
                for (k, child) in m {
                    let path = if prefix.is_empty() { k.clone() } else { format!("{prefix}.{k}") };
                    out.insert(path.clone());
                    walk(child, &path, out);
                }
            }
            Value::Array(items) => items.iter().for_each(|i| walk(i, prefix, out)),
            _ => {}
        }
    }
    let mut out = std::collections::BTreeSet::new();
    for d in docs {
        walk(d, "", &mut out);
    }
    out
}
