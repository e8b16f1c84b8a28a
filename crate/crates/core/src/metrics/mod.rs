//! Statistical, semantic and reference metrics, and per-increment evaluation
//! of pipeline runs.

mod eval;
mod reference;
mod semantic;
mod stats;

pub use eval::{evaluate_increment, evaluate_run, EvalError, EvalReport, RunMetrics};
pub use reference::{
    compute_reference, evaluate_match_set, LinkScores, PrecisionRecall, RefReport, ReferenceInputs, Unshade,
    FUZZY_ENTITY_THRESHOLD, FUZZY_VALUE_THRESHOLD,
};
pub use semantic::{compute_semantic, SemReport, ViolationCounts};
pub use stats::{compute_statistics, StatReport};
