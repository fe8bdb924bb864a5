/// Counters for one pass over the rules.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct IterationRecord {
    /// Mean number of pairs offered per rule visit (all pairs in naive
    /// mode, only active ones in active mode).
    pub considered: f64,
    /// Mean size of the set being computed, sampled at each rule visit.
    pub total: f64,
    /// Set size when the pass ended.
    pub size_at_end: usize,
    /// Unification attempts made during the pass.
    pub attempts: u64,
    /// (pair, rule) offers made during the pass.
    pub test_events: u64,
    /// Number of `+≤` additions that changed the set.
    pub changes: usize,
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct IterationStats {
    pub iterations: Vec<IterationRecord>,
}

impl IterationStats {
    pub fn attempts(&self) -> u64 {
        self.iterations.iter().map(|r| r.attempts).sum()
    }

    pub fn test_events(&self) -> u64 {
        self.iterations.iter().map(|r| r.test_events).sum()
    }

    pub fn last(&self) -> Option<&IterationRecord> {
        self.iterations.last()
    }
}

/// Accumulates one iteration's record visit by visit.
#[derive(Default)]
pub(crate) struct Tally {
    visits: usize,
    considered: usize,
    total: usize,
    pub attempts: u64,
    pub test_events: u64,
    pub changes: usize,
}

impl Tally {
    pub fn visit(&mut self, considered: usize, total: usize) {
        self.visits += 1;
        self.considered += considered;
        self.total += total;
        self.test_events += considered as u64;
    }

    pub fn finish(self, size_at_end: usize) -> IterationRecord {
        let visits = self.visits.max(1) as f64;
        IterationRecord {
            considered: self.considered as f64 / visits,
            total: self.total as f64 / visits,
            size_at_end,
            attempts: self.attempts,
            test_events: self.test_events,
            changes: self.changes,
        }
    }
}
