use std::sync::Arc;

use super::pair::Pair;
use super::Mode;
use crate::fs::FeatureStructure;
use crate::grammar::RuleId;

/// Creation sequence number of a pair within its set.
pub type PairId = u64;

#[derive(Clone, Debug)]
struct Entry {
    id: PairId,
    pair: Arc<Pair>,
    /// Rules this pair has already been offered to.
    tested: Vec<bool>,
}

/// A pair offered to one rule visit.
#[derive(Clone, Debug)]
pub(crate) struct Candidate {
    pub pair: Arc<Pair>,
    pub active: bool,
}

/// A subsumption antichain of pairs, grown with [`PairSet::add_with_subsumption`].
///
/// Each element also records which rules it has been tested against; a pair
/// not yet tested against a rule is active for that rule.
#[derive(Clone, Debug)]
pub struct PairSet {
    entries: Vec<Entry>,
    next_id: PairId,
    epsilon: Option<FeatureStructure>,
    rule_count: usize,
    removed_tests: u64,
}

impl PairSet {
    pub fn new(epsilon: Option<FeatureStructure>, rule_count: usize) -> Self {
        PairSet {
            entries: Vec::new(),
            next_id: 0,
            epsilon,
            rule_count,
            removed_tests: 0,
        }
    }

    /// The grammar's ε-category, carried by every ε right-hand side.
    pub fn epsilon_category(&self) -> Option<&FeatureStructure> {
        self.epsilon.as_ref()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Pairs in creation order.
    pub fn iter(&self) -> impl Iterator<Item = &Pair> + '_ {
        self.entries.iter().map(|e| &*e.pair)
    }

    /// `+≤`: drops `pair` if an element already subsumes it; otherwise
    /// removes every element `pair` subsumes and inserts it as a new, fully
    /// active element. Returns whether the set changed.
    pub fn add_with_subsumption(&mut self, pair: Pair) -> bool {
        if self.entries.iter().any(|e| e.pair.subsumes(&pair)) {
            return false;
        }
        let mut removed_tests = 0;
        self.entries.retain(|e| {
            let keep = !pair.subsumes(&e.pair);
            if !keep {
                removed_tests += e.tested.iter().filter(|&&t| t).count() as u64;
            }
            keep
        });
        self.removed_tests += removed_tests;
        self.entries.push(Entry {
            id: self.next_id,
            pair: Arc::new(pair),
            tested: vec![false; self.rule_count],
        });
        self.next_id += 1;
        true
    }

    /// Snapshot for a visit of `rule`, marking every element as tested
    /// against it. In naive mode every element is active.
    pub(crate) fn offer(&mut self, rule: RuleId, mode: Mode) -> Vec<Candidate> {
        self.entries
            .iter_mut()
            .map(|e| {
                let fresh = !std::mem::replace(&mut e.tested[rule], true);
                Candidate {
                    pair: Arc::clone(&e.pair),
                    active: mode == Mode::Naive || fresh,
                }
            })
            .collect()
    }

    /// Every element, all active or all inactive.
    pub(crate) fn all(&self, active: bool) -> Vec<Candidate> {
        self.entries
            .iter()
            .map(|e| Candidate {
                pair: Arc::clone(&e.pair),
                active,
            })
            .collect()
    }

    /// (pair, rule) test events recorded on elements later removed by `+≤`.
    pub fn removed_test_events(&self) -> u64 {
        self.removed_tests
    }

    pub fn ids(&self) -> impl Iterator<Item = PairId> + '_ {
        self.entries.iter().map(|e| e.id)
    }

    pub fn contains_equivalent(&self, pair: &Pair) -> bool {
        self.iter().any(|p| p.equivalent(pair))
    }

    /// Pair-for-pair equivalence (a bijection up to equivalence).
    pub fn equivalent_to(&self, other: &PairSet) -> bool {
        self.len() == other.len()
            && self.iter().all(|p| other.contains_equivalent(p))
            && other.iter().all(|p| self.contains_equivalent(p))
    }

    /// True if no element subsumes a distinct element.
    pub fn is_antichain(&self) -> bool {
        let pairs: Vec<&Pair> = self.iter().collect();
        pairs.iter().enumerate().all(|(i, a)| {
            pairs
                .iter()
                .enumerate()
                .all(|(j, b)| i == j || !a.subsumes(b))
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pair(text: &str) -> Pair {
        Pair::parse(text).unwrap()
    }

    #[test]
    fn equivalent_pair_is_dropped() {
        let mut s = PairSet::new(None, 1);
        assert!(s.add_with_subsumption(pair("(NP[agr=[]] , Det[ter=+])")));
        assert!(!s.add_with_subsumption(pair("(NP[agr=[]] , Det[ter=+])")));
        assert_eq!(s.len(), 1);
    }

    #[test]
    fn incomparable_pairs_are_both_kept() {
        let mut s = PairSet::new(None, 1);
        assert!(s.add_with_subsumption(pair("(VP[agr=sg] , Vtra[agr=pl])")));
        assert!(s.add_with_subsumption(pair("(VP[agr=$1] , Vtra[agr=$1])")));
        assert_eq!(s.len(), 2);
    }

    #[test]
    fn bound_pair_replaces_its_instance() {
        let mut s = PairSet::new(None, 1);
        s.add_with_subsumption(pair("(VP[agr=sg] , Vtra[agr=sg])"));
        assert!(s.add_with_subsumption(pair("(VP[agr=$1] , Vtra[agr=$1])")));
        assert_eq!(s.len(), 1);
        assert!(s
            .iter()
            .next()
            .unwrap()
            .graph()
            .shares(0, &["agr"], 1, &["agr"]));
    }

    #[test]
    fn general_pair_replaces_all_it_subsumes() {
        let mut s = PairSet::new(None, 2);
        s.add_with_subsumption(pair("(NP[agr=sg] , Det[])"));
        s.add_with_subsumption(pair("(NP[agr=pl] , Det[])"));
        s.add_with_subsumption(pair("(VP[] , Det[])"));
        s.offer(0, Mode::Active);
        assert_eq!(s.len(), 3);
        assert!(s.add_with_subsumption(pair("(NP[] , Det[])")));
        assert_eq!(s.len(), 2);
        assert_eq!(s.removed_test_events(), 2);
        assert!(s.is_antichain());
        let ids: Vec<PairId> = s.ids().collect();
        assert_eq!(ids, [2, 3]);
    }

    #[test]
    fn offers_each_pair_once_per_rule() {
        let mut s = PairSet::new(None, 2);
        s.add_with_subsumption(pair("(NP[] , Det[])"));
        let first = s.offer(0, Mode::Active);
        assert!(first[0].active);
        assert!(!s.offer(0, Mode::Active)[0].active);
        assert!(s.offer(1, Mode::Active)[0].active);
        assert!(s.offer(0, Mode::Naive)[0].active);
    }
}
