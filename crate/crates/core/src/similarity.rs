//! Character-trigram string similarity and a label index built on it.
//!
//! Strings are normalized (camelCase split, lowercased, punctuation replaced
//! by spaces, whitespace collapsed) and compared as sets of character
//! trigrams using the cosine (Ochiai) coefficient `|A∩B| / sqrt(|A|·|B|)`.
//! Strings shorter than three characters after normalization compare by
//! equality.

use std::collections::{BTreeSet, HashMap, HashSet};

pub fn normalize(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 4);
    let mut prev_lower = false;
    for c in s.chars() {
        if c.is_alphanumeric() {
            if c.is_uppercase() && prev_lower {
                out.push(' ');
            }
            prev_lower = c.is_lowercase() || c.is_numeric();
            out.extend(c.to_lowercase());
        } else {
            prev_lower = false;
            out.push(' ');
        }
    }
    out.split_whitespace().collect::<Vec<_>>().join(" ")
}

pub fn trigrams(normalized: &str) -> HashSet<String> {
    let chars: Vec<char> = normalized.chars().collect();
    chars.windows(3).map(|w| w.iter().collect()).collect()
}

/// Similarity in `[0, 1]` of two raw strings.
pub fn similarity(a: &str, b: &str) -> f64 {
    let (na, nb) = (normalize(a), normalize(b));
    similarity_normalized(&na, &nb)
}

fn similarity_normalized(na: &str, nb: &str) -> f64 {
    if na == nb {
        return if na.is_empty() { 0.0 } else { 1.0 };
    }
    let (ta, tb) = (trigrams(na), trigrams(nb));
    if ta.is_empty() || tb.is_empty() {
        return 0.0;
    }
    let shared = ta.intersection(&tb).count() as f64;
    shared / ((ta.len() * tb.len()) as f64).sqrt()
}

/// Inverted trigram index over labelled targets (entity or property IRIs).
///
/// A target may carry several labels; its score against a query is the best
/// score over its labels.
#[derive(Debug, Clone, Default)]
pub struct LabelIndex {
    labels: Vec<(String, HashSet<String>, usize)>,
    targets: Vec<String>,
    target_ids: HashMap<String, usize>,
    by_normalized: HashMap<String, Vec<usize>>,
    by_trigram: HashMap<String, Vec<usize>>,
}

impl LabelIndex {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, target: &str, label: &str) {
        let normalized = normalize(label);
        if normalized.is_empty() {
            return;
        }
        let target_idx = match self.target_ids.get(target) {
            Some(&i) => i,
            None => {
                self.targets.push(target.to_string());
                self.target_ids.insert(target.to_string(), self.targets.len() - 1);
                self.targets.len() - 1
            }
        };
        let grams = trigrams(&normalized);
        let label_idx = self.labels.len();
        for g in &grams {
            self.by_trigram.entry(g.clone()).or_default().push(label_idx);
        }
        self.by_normalized.entry(normalized.clone()).or_default().push(label_idx);
        self.labels.push((normalized, grams, target_idx));
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    /// Best target with similarity `>= threshold`; ties resolve to the
    /// lexicographically smallest target.
    pub fn best_match(&self, query: &str, threshold: f64) -> Option<(String, f64)> {
        let mut scores = self.scores(query);
        scores.retain(|(_, s)| *s >= threshold);
        scores.into_iter().next()
    }

    /// All targets with a non-zero score, best first (ties by target).
    pub fn scores(&self, query: &str) -> Vec<(String, f64)> {
        let nq = normalize(query);
        if nq.is_empty() {
            return Vec::new();
        }
        let mut candidates: BTreeSet<usize> = BTreeSet::new();
        if let Some(exact) = self.by_normalized.get(&nq) {
            candidates.extend(exact.iter().copied());
        }
        let qgrams = trigrams(&nq);
        for g in &qgrams {
            if let Some(ls) = self.by_trigram.get(g) {
                candidates.extend(ls.iter().copied());
            }
        }
        let mut best: HashMap<usize, f64> = HashMap::new();
        for idx in candidates {
            let (norm, grams, target) = &self.labels[idx];
            let score = if *norm == nq {
                1.0
            } else if grams.is_empty() || qgrams.is_empty() {
                0.0
            } else {
                grams.intersection(&qgrams).count() as f64 / ((grams.len() * qgrams.len()) as f64).sqrt()
            };
            if score > 0.0 {
                let entry = best.entry(*target).or_insert(0.0);
                if score > *entry {
                    *entry = score;
                }
            }
        }
        let mut out: Vec<(String, f64)> = best.into_iter().map(|(t, s)| (self.targets[t].clone(), s)).collect();
        out.sort_by(|a, b| b.1.total_cmp(&a.1).then_with(|| a.0.cmp(&b.0)));
        out
    }
}
