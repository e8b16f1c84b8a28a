//! Graph-to-table conversion plus record linkage and schema matching over
//! the resulting tables.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use crate::exchange::{MatchRecord, MatchSet, Table};
use crate::par;
use crate::rdf::{vocab, Graph, Iri, Term};
use crate::similarity::similarity;

const ID: &str = "id";
const TYPE: &str = "type";
const SEP: &str = "|";

fn term_text(t: &Term) -> &str {
    match t {
        Term::Iri(i) => i.as_str(),
        Term::Literal(l) => l.lexical(),
    }
}

/// One row per subject: `id`, `type`, then one column per predicate (full
/// IRI) in canonical order. Multi-valued cells are sorted and joined by `|`.
pub fn tabularize(g: &Graph) -> Table {
    let rdf_type = Iri::new_unchecked(vocab::RDF_TYPE);
    let predicates: Vec<&Iri> = g.predicates().filter(|p| **p != rdf_type).collect();
    let column: HashMap<&Iri, usize> = predicates.iter().enumerate().map(|(i, p)| (*p, i + 2)).collect();
    let mut header = vec![ID.to_string(), TYPE.to_string()];
    header.extend(predicates.iter().map(|p| p.to_string()));
    let rows = g
        .subjects()
        .map(|s| {
            let mut cells: Vec<BTreeSet<&str>> = vec![BTreeSet::new(); header.len()];
            for t in g.with_subject(s) {
                let col = if t.predicate == rdf_type { 1 } else { column[&t.predicate] };
                cells[col].insert(term_text(&t.object));
            }
            let mut row: Vec<String> = cells.iter().map(|c| c.iter().copied().collect::<Vec<_>>().join(SEP)).collect();
            row[0] = s.to_string();
            row
        })
        .collect();
    Table { header, rows }
}

fn is_reference(value: &str) -> bool {
    value.contains("://")
}

fn tokens(value: &str) -> impl Iterator<Item = String> + '_ {
    value
        .split_whitespace()
        .map(|w| w.trim_matches(|c: char| !c.is_alphanumeric()).to_lowercase())
        .filter(|w| !w.is_empty())
}

fn label_column(t: &Table) -> Option<usize> {
    t.column(vocab::RDFS_LABEL)
        .or_else(|| t.header.iter().position(|h| matches!(local_name(h), "label" | "name" | "title")))
}

fn local_name(header: &str) -> &str {
    match Iri::new(header) {
        Ok(_) => header.rsplit(['/', '#']).next().filter(|s| !s.is_empty()).unwrap_or(header),
        Err(_) => header,
    }
}

struct Records {
    ids: Vec<String>,
    tokens: Vec<BTreeSet<String>>,
    block_keys: Vec<BTreeSet<String>>,
}

fn records(t: &Table, which: &str) -> Result<Records, String> {
    let id = t.column(ID).ok_or_else(|| format!("{which} table has no {ID:?} column"))?;
    let ty = t.column(TYPE);
    let label = label_column(t);
    let mut out = Records { ids: Vec::new(), tokens: Vec::new(), block_keys: Vec::new() };
    for row in &t.rows {
        let mut toks = BTreeSet::new();
        let mut keys = BTreeSet::new();
        for (c, cell) in row.iter().enumerate() {
            if c == id || Some(c) == ty {
                continue;
            }
            for v in Table::values(cell).filter(|v| !is_reference(v)) {
                for tok in tokens(v) {
                    if Some(c) == label {
                        keys.insert(tok.clone());
                    }
                    toks.insert(tok);
                }
            }
        }
        if label.is_none() {
            keys = toks.clone();
        }
        out.ids.push(row.get(id).cloned().unwrap_or_default());
        out.tokens.push(toks);
        out.block_keys.push(keys);
    }
    Ok(out)
}

fn jaccard<T: Ord>(a: &BTreeSet<T>, b: &BTreeSet<T>) -> f64 {
    let shared = a.intersection(b).count();
    let union = a.len() + b.len() - shared;
    if union == 0 {
        0.0
    } else {
        shared as f64 / union as f64
    }
}

/// Clean-clean entity matching of the rows of `b` against the rows of `a`.
///
/// Candidates share at least one lowercased label token; they are scored by
/// Jaccard similarity of all literal cell tokens, and pairs at or above
/// `threshold` are accepted greedily by descending score so every row takes
/// part in at most one match.
pub fn csv_record_link(a: &Table, b: &Table, threshold: f64) -> Result<MatchSet, String> {
    let ra = records(a, "first")?;
    let rb = records(b, "second")?;
    let mut blocks: HashMap<&str, Vec<usize>> = HashMap::new();
    for (i, keys) in ra.block_keys.iter().enumerate() {
        for k in keys {
            blocks.entry(k.as_str()).or_default().push(i);
        }
    }
    let rows: Vec<usize> = (0..rb.ids.len()).collect();
    let mut candidates: Vec<(f64, usize, usize)> = par::flat_map(&rows, |&j| {
        let near: BTreeSet<usize> =
            rb.block_keys[j].iter().filter_map(|k| blocks.get(k.as_str())).flatten().copied().collect();
        near.into_iter()
            .filter(|&i| ra.ids[i] != rb.ids[j])
            .map(|i| (jaccard(&ra.tokens[i], &rb.tokens[j]), i, j))
            .filter(|(s, _, _)| *s >= threshold)
            .collect()
    });
    candidates.sort_by(|x, y| {
        y.0.total_cmp(&x.0).then_with(|| (&ra.ids[x.1], &rb.ids[x.2]).cmp(&(&ra.ids[y.1], &rb.ids[y.2])))
    });
    let (mut used_a, mut used_b) = (BTreeSet::new(), BTreeSet::new());
    let mut out = Vec::new();
    for (score, i, j) in candidates {
        if used_a.contains(&i) || used_b.contains(&j) {
            continue;
        }
        used_a.insert(i);
        used_b.insert(j);
        out.push(MatchRecord::entity(rb.ids[j].clone(), ra.ids[i].clone(), score));
    }
    Ok(MatchSet::new(out))
}

fn column_values(t: &Table) -> BTreeMap<&str, BTreeSet<&str>> {
    let mut out: BTreeMap<&str, BTreeSet<&str>> = BTreeMap::new();
    for (c, h) in t.header.iter().enumerate() {
        if h == ID || h == TYPE {
            continue;
        }
        let set = out.entry(h.as_str()).or_default();
        for row in &t.rows {
            if let Some(cell) = row.get(c) {
                set.extend(Table::values(cell));
            }
        }
    }
    out
}

/// Column correspondences between `b` and `a`, scored by the better of header
/// name similarity and value-set Jaccard overlap.
pub fn csv_schema_match(a: &Table, b: &Table, threshold: f64) -> MatchSet {
    let (va, vb) = (column_values(a), column_values(b));
    let mut out = Vec::new();
    for (hb, setb) in &vb {
        for (ha, seta) in &va {
            if ha == hb {
                continue;
            }
            let score = similarity(local_name(ha), local_name(hb)).max(jaccard(seta, setb));
            if score >= threshold {
                out.push(MatchRecord::relation(*hb, *ha, score.min(1.0)));
            }
        }
    }
    MatchSet::new(out)
}
