//! Group metrics, weighted totals and pipeline ranking.

use serde::{Deserialize, Serialize};

use crate::exchange::DataFormat;
use crate::metrics::EvalReport;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum RankError {
    #[error("cannot normalize {value} against {reference}: nonpositive denominator")]
    Denominator { value: f64, reference: f64 },
    #[error("{pipeline}: missing {metric} required for {format} sources")]
    MissingMetric { pipeline: String, metric: &'static str, format: DataFormat },
    #[error("weight scheme {name:?}: {reason}")]
    Scheme { name: String, reason: String },
    #[error("unknown weight scheme {0:?}")]
    UnknownScheme(String),
    #[error("cannot rank an empty cohort")]
    EmptyCohort,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NormKind {
    /// Ratio to the reference graph, clamped at 1.
    Count,
    /// Cohort minimum over the value.
    Resource,
}

pub fn normalize(value: f64, reference: f64, kind: NormKind) -> Result<f64, RankError> {
    match kind {
        NormKind::Count if reference > 0.0 => Ok((value / reference).clamp(0.0, 1.0)),
        NormKind::Resource if value > 0.0 => Ok((reference / value).clamp(0.0, 1.0)),
        _ => Err(RankError::Denominator { value, reference }),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct GroupScores {
    pub size: f64,
    pub consistency: f64,
    pub integration: f64,
    pub efficiency: f64,
}

impl GroupScores {
    pub fn as_array(&self) -> [f64; 4] {
        [self.size, self.consistency, self.integration, self.efficiency]
    }
}

/// Smallest resource use in the cohort being ranked.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Minima {
    pub duration_seconds: f64,
    pub peak_memory_bytes: Option<u64>,
}

impl Minima {
    pub fn of(cohort: &[EvalReport]) -> Result<Minima, RankError> {
        let duration = cohort.iter().map(|r| r.run.duration_seconds).reduce(f64::min).ok_or(RankError::EmptyCohort)?;
        let memory = cohort.iter().filter_map(|r| r.run.peak_memory_bytes).min();
        Ok(Minima { duration_seconds: duration, peak_memory_bytes: memory })
    }
}

fn mean(xs: &[f64]) -> f64 {
    xs.iter().sum::<f64>() / xs.len() as f64
}

/// Group metrics of one evaluated increment. The flag is set when peak
/// memory was unavailable and efficiency rests on duration alone.
pub fn group_scores(report: &EvalReport, minima: &Minima) -> Result<(GroupScores, bool), RankError> {
    let (s, rs) = (&report.statistics, &report.reference_statistics);
    let size = mean(&[
        normalize(s.fact_count as f64, rs.fact_count as f64, NormKind::Count)?,
        normalize(s.density, rs.density, NormKind::Count)?,
    ]);

    let o = &report.semantic;
    let consistency = mean(&[
        o.disjoint_types_score,
        mean(&[o.domain_score, o.range_score]),
        o.direction_score,
        mean(&[o.literal_type_score, o.literal_format_score]),
    ]);

    let r = &report.reference;
    let missing =
        |metric| RankError::MissingMetric { pipeline: report.pipeline.clone(), metric, format: report.source_format };
    let specific = match report.source_format {
        DataFormat::Json => r.relation_linking_accuracy.ok_or_else(|| missing("relation linking accuracy"))?,
        DataFormat::Text => r.entity_linking.map(|l| l.recall).ok_or_else(|| missing("entity linking"))?,
        _ => r.combined_match.map(|m| m.f1).ok_or_else(|| missing("entity/ontology matching"))?,
    };
    let integration = mean(&[r.fuzzy_reference_kg.f1, r.source_entity_recall, specific]);

    let duration = normalize(report.run.duration_seconds, minima.duration_seconds, NormKind::Resource)?;
    let (efficiency, duration_only) = match (report.run.peak_memory_bytes, minima.peak_memory_bytes) {
        (Some(m), Some(min)) => (mean(&[duration, normalize(m as f64, min as f64, NormKind::Resource)?]), false),
        _ => (duration, true),
    };
    Ok((GroupScores { size, consistency, integration, efficiency }, duration_only))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WeightScheme {
    pub name: String,
    pub weights: [f64; 4],
}

pub const SCHEME_NAMES: [&str; 5] = ["equal", "quantity", "quality", "reference", "efficiency"];

impl WeightScheme {
    pub fn new(name: impl Into<String>, weights: [f64; 4]) -> Result<Self, RankError> {
        let name = name.into();
        if weights.iter().any(|w| !w.is_finite() || *w < 0.0) {
            return Err(RankError::Scheme { name, reason: "weights must be nonnegative".into() });
        }
        let sum: f64 = weights.iter().sum();
        if (sum - 1.0).abs() > 1e-9 {
            return Err(RankError::Scheme { name, reason: format!("weights sum to {sum}, not 1") });
        }
        Ok(WeightScheme { name, weights })
    }

    pub fn builtin(name: &str) -> Result<Self, RankError> {
        let weights = match name {
            "equal" => [0.25, 0.25, 0.25, 0.25],
            "quantity" => [0.50, 0.10, 0.10, 0.30],
            "quality" => [0.0, 0.50, 0.50, 0.0],
            "reference" => [0.0, 0.20, 0.80, 0.0],
            "efficiency" => [0.20, 0.20, 0.20, 0.40],
            other => return Err(RankError::UnknownScheme(other.to_string())),
        };
        WeightScheme::new(name, weights)
    }

    pub fn all() -> Vec<WeightScheme> {
        SCHEME_NAMES.iter().map(|n| WeightScheme::builtin(n).expect("builtin schemes are valid")).collect()
    }

    /// `(α, β, γ, δ)` as printed in ranking tables.
    pub fn echo(&self) -> String {
        let w: Vec<String> = self.weights.iter().map(|w| format!("{w:.2}")).collect();
        format!("({})", w.join(", "))
    }
}

pub fn total_score(groups: &GroupScores, scheme: &WeightScheme) -> f64 {
    groups.as_array().iter().zip(scheme.weights).map(|(g, w)| g * w).sum()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct PipelineScore {
    pub pipeline: String,
    pub groups: GroupScores,
    pub total: f64,
    /// Efficiency computed from duration alone.
    pub duration_only: bool,
}

/// Sorts descending by total, ties by pipeline name.
pub fn rank(mut scores: Vec<PipelineScore>) -> Vec<PipelineScore> {
    scores.sort_by(|a, b| b.total.total_cmp(&a.total).then_with(|| a.pipeline.cmp(&b.pipeline)));
    scores
}

/// Scores and ranks a cohort of evaluated increments under one scheme.
pub fn rank_cohort(cohort: &[EvalReport], scheme: &WeightScheme) -> Result<Vec<PipelineScore>, RankError> {
    let minima = Minima::of(cohort)?;
    let mut scores = Vec::with_capacity(cohort.len());
    for r in cohort {
        let (groups, duration_only) = group_scores(r, &minima)?;
        scores.push(PipelineScore {
            pipeline: r.pipeline.clone(),
            groups,
            total: total_score(&groups, scheme),
            duration_only,
        });
    }
    Ok(rank(scores))
}

/// Aligned plain-text ranking table.
pub fn render_table(scheme: &WeightScheme, ranked: &[PipelineScore]) -> String {
    let width = ranked.iter().map(|s| s.pipeline.len()).max().unwrap_or(0).max("pipeline".len());
    let mut out = format!("scheme {} {}\n", scheme.name, scheme.echo());
    out += &format!(
        "{:<4} {:<width$} {:>6} {:>6} {:>6} {:>6} {:>7}\n",
        "rank", "pipeline", "GM1", "GM2", "GM3", "GM4", "total"
    );
    for (i, s) in ranked.iter().enumerate() {
        let g = &s.groups;
        let note = if s.duration_only { "  (GM4 duration only)" } else { "" };
        out += &format!(
            "{:<4} {:<width$} {:>6.3} {:>6.3} {:>6.3} {:>6.3} {:>7.3}{note}\n",
            i + 1,
            s.pipeline,
            g.size,
            g.consistency,
            g.integration,
            g.efficiency,
            s.total
        );
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn normalization_cases() {
        assert_eq!(normalize(50.0, 100.0, NormKind::Count), Ok(0.5));
        assert_eq!(normalize(120.0, 100.0, NormKind::Count), Ok(1.0));
        assert_eq!(normalize(65.0, 65.0, NormKind::Resource), Ok(1.0));
        assert!(normalize(1.0, 0.0, NormKind::Count).is_err());
        assert!(normalize(0.0, 1.0, NormKind::Resource).is_err());
    }

    #[test]
    fn builtin_schemes() {
        assert_eq!(WeightScheme::builtin("equal").unwrap().weights, [0.25; 4]);
        assert_eq!(WeightScheme::builtin("equal").unwrap().echo(), "(0.25, 0.25, 0.25, 0.25)");
        let g = GroupScores { size: 1.0, consistency: 0.0, integration: 0.0, efficiency: 0.0 };
        assert_eq!(total_score(&g, &WeightScheme::builtin("quantity").unwrap()), 0.5);
        let g = GroupScores { size: 0.9, consistency: 0.9, integration: 0.9, efficiency: 0.9 };
        assert!((total_score(&g, &WeightScheme::builtin("equal").unwrap()) - 0.9).abs() < 1e-12);
        assert!(WeightScheme::new("bad", [0.5, 0.5, 0.5, -0.5]).is_err());
        assert!(WeightScheme::new("bad", [0.5, 0.1, 0.1, 0.1]).is_err());
        assert!(WeightScheme::builtin("fancy").is_err());
    }

    fn score(name: &str, total: f64) -> PipelineScore {
        let groups = GroupScores { size: 0.0, consistency: 0.0, integration: 0.0, efficiency: 0.0 };
        PipelineScore { pipeline: name.into(), groups, total, duration_only: false }
    }

    #[test]
    fn ties_break_by_name() {
        let ranked = rank(vec![score("b", 0.5), score("a", 0.5), score("c", 0.9)]);
        let names: Vec<&str> = ranked.iter().map(|s| s.pipeline.as_str()).collect();
        assert_eq!(names, ["c", "a", "b"]);
    }

    proptest! {
        #[test]
        fn total_is_monotone(gm in prop::array::uniform4(0.0f64..=1.0), k in 0usize..4, bump in 0.0f64..=1.0) {
            for scheme in WeightScheme::all() {
                let g = GroupScores { size: gm[0], consistency: gm[1], integration: gm[2], efficiency: gm[3] };
                let mut raised = gm;
                raised[k] = (raised[k] + bump).min(1.0);
                let h = GroupScores { size: raised[0], consistency: raised[1], integration: raised[2], efficiency: raised[3] };
                prop_assert!(total_score(&h, &scheme) >= total_score(&g, &scheme));
            }
        }
    }
}
