use std::time::{Duration, Instant};

use super::{compute_first, compute_follow, ComputeError, IterationStats, Mode, PairSet};
use crate::grammar::Grammar;

/// One run of one function in one mode.
#[derive(Clone, Debug)]
pub struct RunReport {
    pub stats: IterationStats,
    pub attempts: u64,
    pub wall: Duration,
    pub pairs: PairSet,
}

#[derive(Clone, Debug)]
pub struct FunctionReport {
    pub naive: RunReport,
    pub active: RunReport,
    /// Whether the two fixpoints are equivalent pair for pair.
    pub equivalent: bool,
}

#[derive(Clone, Debug)]
pub struct ModeReport {
    pub first: FunctionReport,
    pub follow: FunctionReport,
}

/// Runs FIRST and FOLLOW in both modes. Both FOLLOW runs use the active
/// FIRST fixpoint, so they differ only in their own bookkeeping.
pub fn compare_modes(g: &Grammar) -> Result<ModeReport, ComputeError> {
    let run_first = |mode| -> Result<RunReport, ComputeError> {
        let t = Instant::now();
        let s = compute_first(g, mode)?;
        Ok(RunReport {
            attempts: s.stats.attempts(),
            wall: t.elapsed(),
            stats: s.stats,
            pairs: s.pairs,
        })
    };
    let naive = run_first(Mode::Naive)?;
    let active = run_first(Mode::Active)?;
    let first = FunctionReport {
        equivalent: naive.pairs.equivalent_to(&active.pairs),
        naive,
        active,
    };

    let run_follow = |mode| -> Result<RunReport, ComputeError> {
        let t = Instant::now();
        let s = compute_follow(g, &first.active.pairs, mode)?;
        Ok(RunReport {
            attempts: s.stats.attempts(),
            wall: t.elapsed(),
            stats: s.stats,
            pairs: s.pairs,
        })
    };
    let naive = run_follow(Mode::Naive)?;
    let active = run_follow(Mode::Active)?;
    let follow = FunctionReport {
        equivalent: naive.pairs.equivalent_to(&active.pairs),
        naive,
        active,
    };
    Ok(ModeReport { first, follow })
}
