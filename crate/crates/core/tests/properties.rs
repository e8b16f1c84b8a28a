mod common;

use std::collections::BTreeMap;

use proptest::prelude::*;

use kgb_core::benchgen::{generate, BenchConfig, BenchDir};
use kgb_core::exchange::{DataFormat, GroundTruthBundle, MatchRecord, MatchSet};
use kgb_core::metrics::{
    compute_reference, compute_semantic, compute_statistics, evaluate_match_set, PrecisionRecall, ReferenceInputs,
    Unshade,
};
use kgb_core::ontology::infer_types;
use kgb_core::rdf::vocab::{source_base, KGB_BASE};
use kgb_core::rdf::{iri, rename_namespace, Graph, Literal, Term, Triple};
use kgb_core::tasks::{fusion_first, graph_align, select_first, SimilarityConfig};

use common::{random_kg, schema, scores, statistics_oracle};

/// Keeps the first value of every functional (subject, predicate).
fn single_valued(g: &Graph) -> Graph {
    let schema = schema();
    let mut seen = BTreeMap::new();
    g.iter()
        .filter(|t| {
            !schema.property(&t.predicate).is_some_and(|p| p.is_functional())
                || seen.insert((t.subject.clone(), t.predicate.clone()), ()).is_none()
        })
        .cloned()
        .collect()
}

fn functional_ok(g: &Graph) -> bool {
    let schema = schema();
    let mut counts: BTreeMap<_, usize> = BTreeMap::new();
    for t in g.iter().filter(|t| schema.property(&t.predicate).is_some_and(|p| p.is_functional())) {
        *counts.entry((&t.subject, &t.predicate)).or_default() += 1;
    }
    counts.values().all(|&n| n <= 1)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn fusion_keeps_the_seed_and_single_values(a in any::<u64>(), b in any::<u64>(), picks in prop::collection::vec((0usize..40, 0usize..40, 0.0f64..=1.0), 0..20)) {
        let schema = schema();
        let seed = single_valued(&random_kg(a, 120, &schema));
        let source = rename_namespace(&random_kg(b, 120, &schema), "http://x/", "http://y/");
        let matches = MatchSet::new(picks.iter().map(|(i, j, s)| MatchRecord::entity(format!("http://y/e{i}"), format!("http://x/e{j}"), *s)));

        let fused = fusion_first(&seed, &source, &matches, &schema).graph;
        prop_assert!(seed.iter().all(|t| fused.contains(t)));
        prop_assert!(functional_ok(&fused));
        let selected = select_first(&seed, &source, &schema);
        prop_assert!(seed.iter().all(|t| selected.contains(t)));
        prop_assert!(functional_ok(&selected));
    }

    #[test]
    fn identity_matches_restore_a_renamed_graph(a in any::<u64>()) {
        let schema = schema();
        let g = single_valued(&random_kg(a, 150, &schema));
        let shaded = rename_namespace(&g, "http://x/", "http://y/");
        let ids = g.iter().flat_map(|t| [Some(t.subject.clone()), t.object.as_iri().cloned()]).flatten();
        let gold = MatchSet::new(ids.map(|e| MatchRecord::entity(e.as_str().replace("http://x/", "http://y/"), e.to_string(), 1.0)));
        let fused = fusion_first(&g, &shaded, &gold, &schema).graph;
        prop_assert_eq!(fused, infer_types(&g, &schema));
    }

    #[test]
    fn statistics_equal_a_single_pass(a in any::<u64>(), n in 0usize..1000) {
        let g = random_kg(a, n, &schema());
        prop_assert_eq!(compute_statistics(&g), statistics_oracle(&g));
    }

    #[test]
    fn semantic_scores_are_bounded_and_averaged(a in any::<u64>(), n in 0usize..400) {
        let schema = schema();
        let r = compute_semantic(&random_kg(a, n, &schema), &schema);
        let s = scores(&r);
        prop_assert!(s.iter().all(|x| (0.0..=1.0).contains(x)));
        prop_assert!((r.average - s.iter().sum::<f64>() / 6.0).abs() <= 1e-12);
    }

    /// A malformed runtime on a fresh entity strictly lowers both literal scores.
    #[test]
    fn violating_literal_lowers_literal_scores(a in any::<u64>(), n in 0usize..300) {
        let schema = schema();
        let mut g = random_kg(a, n, &schema);
        let before = compute_semantic(&g, &schema);
        g.insert(Triple::new(
            iri("http://x/fresh"),
            iri("http://kgb.example.org/ontology/runtime"),
            Literal::typed("ninety", iri(kgb_core::rdf::vocab::XSD_STRING)),
        ));
        let after = compute_semantic(&g, &schema);
        prop_assert!(after.literal_type_score < before.literal_type_score || before.literal_type_score == 0.0);
        prop_assert!(after.literal_format_score < before.literal_format_score || before.literal_format_score == 0.0);
        prop_assert_eq!(after.domain_score, before.domain_score);
    }

    #[test]
    fn exact_overlap_of_a_graph_with_itself(a in any::<u64>(), n in 1usize..300) {
        let g = random_kg(a, n, &schema());
        let (empty, truth, unshade) = (Graph::new(), GroundTruthBundle::default(), Unshade::new(3));
        let r = compute_reference(&ReferenceInputs {
            kg: &g,
            prior: &empty,
            reference: &g,
            seed_region: &empty,
            truth: &truth,
            source_format: DataFormat::Rdf,
            matches: None,
            ke: None,
            unshade: &unshade,
        });
        prop_assert_eq!((r.reference_kg.precision, r.reference_kg.recall), (1.0, 1.0));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(6))]

    /// Every generated entity carries a label, so a shaded copy of any split
    /// aligns back perfectly.
    #[test]
    fn shaded_copies_align_completely(seed in any::<u64>(), films in 40usize..=100) {
        let dir = tempfile::tempdir().unwrap();
        let films = films - films % 20;
        generate(&BenchConfig::with_films(films, seed), dir.path()).unwrap();
        let bench = BenchDir::open(dir.path()).unwrap();
        let g = bench.reference_split(1).unwrap();
        let shaded = rename_namespace(&g, KGB_BASE, &source_base(1));
        let found = graph_align(&g, &shaded, &SimilarityConfig::default()).unwrap();

        let ids = g.iter().flat_map(|t| match &t.object {
            Term::Iri(o) if t.predicate.as_str() != kgb_core::rdf::vocab::RDF_TYPE => vec![t.subject.clone(), o.clone()],
            _ => vec![t.subject.clone()],
        });
        let base = source_base(1);
        let gold = MatchSet::new(ids.map(|e| MatchRecord::entity(e.as_str().replacen(KGB_BASE, &base, 1), e.to_string(), 1.0)));
        let found = MatchSet::new(found.entities().cloned());
        let PrecisionRecall { precision, recall, .. } = evaluate_match_set(&found, &gold);
        prop_assert_eq!((precision, recall), (1.0, 1.0));
    }
}
