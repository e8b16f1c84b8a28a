//! Partition of films into splits where every pair of splits shares the
//! same number of films.

use rand::seq::SliceRandom;
use rand_chacha::ChaCha8Rng;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SplitPlan {
    /// Films shared by each pair of splits.
    pub pair_overlap: usize,
    /// Film indices per split, sorted.
    pub splits: Vec<Vec<usize>>,
    pub distinct_films: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SplitError {
    #[error(
        "infeasible overlap: {n_splits} splits of {split_size} films cannot each share {overlap} films with every other split"
    )]
    Infeasible { n_splits: usize, split_size: usize, overlap: usize },
}

/// Sizes of the splits when `n_films` slots are spread over `n_splits`.
pub fn split_sizes(n_films: usize, n_splits: usize) -> Vec<usize> {
    (0..n_splits).map(|j| n_films / n_splits + usize::from(j < n_films % n_splits)).collect()
}

pub fn pair_overlap(n_films: usize, n_splits: usize, rate: f64) -> usize {
    ((rate * (n_films / n_splits) as f64).round() as usize).max(1)
}

/// Works out how many distinct films are needed and which split holds which
/// film. Shared blocks are drawn after shuffling so shared films are spread
/// across the id range.
pub fn plan(n_films: usize, n_splits: usize, rate: f64) -> Result<SplitPlan, SplitError> {
    let sizes = split_sizes(n_films, n_splits);
    let k = pair_overlap(n_films, n_splits, rate);
    let shared_per_split = (n_splits - 1) * k;
    let min_size = *sizes.iter().min().expect("at least one split");
    if shared_per_split >= min_size {
        return Err(SplitError::Infeasible { n_splits, split_size: min_size, overlap: k });
    }
    let pairs = n_splits * (n_splits - 1) / 2;
    let distinct = sizes.iter().map(|m| m - shared_per_split).sum::<usize>() + pairs * k;
    Ok(SplitPlan { pair_overlap: k, splits: Vec::new(), distinct_films: distinct })
}

pub fn assign(mut plan: SplitPlan, n_films: usize, n_splits: usize, rng: &mut ChaCha8Rng) -> SplitPlan {
    let sizes = split_sizes(n_films, n_splits);
    let k = plan.pair_overlap;
    let mut order: Vec<usize> = (0..plan.distinct_films).collect();
    order.shuffle(rng);
    let mut next = order.into_iter();
    let mut splits: Vec<Vec<usize>> = vec![Vec::new(); n_splits];
    for a in 0..n_splits {
        for b in (a + 1)..n_splits {
            for f in next.by_ref().take(k) {
                splits[a].push(f);
                splits[b].push(f);
            }
        }
    }
    for (j, split) in splits.iter_mut().enumerate() {
        let exclusive = sizes[j] - (n_splits - 1) * k;
        split.extend(next.by_ref().take(exclusive));
        split.sort_unstable();
    }
    debug_assert!(next.next().is_none());
    plan.splits = splits;
    plan
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use std::collections::BTreeSet;

    fn full(n: usize, s: usize, rate: f64) -> SplitPlan {
        let p = plan(n, s, rate).unwrap();
        assign(p, n, s, &mut ChaCha8Rng::seed_from_u64(1))
    }

    #[test]
    fn preset_arithmetic() {
        // 25 per split, 1 shared per pair: 4*22 exclusive + 6 shared
        assert_eq!(plan(100, 4, 0.05).unwrap().distinct_films, 94);
        // 250 per split, round(12.5) = 13 shared per pair: 4*211 + 6*13
        let p = plan(1000, 4, 0.05).unwrap();
        assert_eq!((p.pair_overlap, p.distinct_films), (13, 922));
    }

    #[test]
    fn pairwise_overlap_is_exact() {
        for (n, s) in [(100, 4), (1000, 4), (57, 3), (40, 4)] {
            let p = full(n, s, 0.05);
            let sets: Vec<BTreeSet<usize>> = p.splits.iter().map(|v| v.iter().copied().collect()).collect();
            for (j, set) in sets.iter().enumerate() {
                assert_eq!(set.len(), split_sizes(n, s)[j]);
                for other in &sets[j + 1..] {
                    assert_eq!(set.intersection(other).count(), p.pair_overlap);
                }
            }
            let union: BTreeSet<usize> = sets.iter().flatten().copied().collect();
            assert_eq!(union.len(), p.distinct_films);
        }
    }

    #[test]
    fn infeasible_overlap_rejected() {
        assert!(matches!(plan(40, 4, 0.49), Err(SplitError::Infeasible { .. })));
    }
}
