//! Left-to-right search over a category sequence.
//!
//! Position `i` either takes a non-ε value from a pair whose lhs unifies
//! with it, or unifies with the lhs of an ε-pair and hands over to position
//! `i + 1`. All unifications for one combination happen in one copy of the
//! sequence's space, so they hold simultaneously and their bindings reach
//! every other category in that space.

use super::pair::Rhs;
use super::pairset::Candidate;
use crate::fs::{NodeId, NodeSpace};

pub(crate) enum Reached {
    /// Some position produced this value node.
    Value(NodeId),
    /// Every position unified with an ε-pair.
    AllEpsilon,
}

pub(crate) struct Walker<'c> {
    epsilons: Vec<&'c Candidate>,
    values: Vec<&'c Candidate>,
    any_active: bool,
    pub attempts: u64,
}

impl<'c> Walker<'c> {
    /// Only single-category pairs take part; end-marker pairs never do.
    pub fn new(candidates: &'c [Candidate]) -> Self {
        let mut epsilons = Vec::new();
        let mut values = Vec::new();
        for c in candidates.iter().filter(|c| c.pair.lhs_len() == 1) {
            match c.pair.rhs() {
                Rhs::Epsilon => epsilons.push(c),
                Rhs::Category => values.push(c),
                Rhs::End => {}
            }
        }
        let any_active = epsilons.iter().chain(&values).any(|c| c.active);
        Walker {
            epsilons,
            values,
            any_active,
            attempts: 0,
        }
    }

    /// Enumerates every combination over `seq` that uses at least one active
    /// pair. `self_value[i]` makes position `i` its own value (a preterminal
    /// is its own FIRST). `tail_active` tells the walker that the caller may
    /// still supply an active item after an all-ε outcome, so those
    /// outcomes are reported even without an active pair; the flag passed to
    /// `visit` says whether an active pair was used.
    pub fn walk(
        &mut self,
        space: &NodeSpace,
        seq: &[NodeId],
        self_value: &[bool],
        tail_active: bool,
        visit: &mut dyn FnMut(&NodeSpace, Reached, bool),
    ) {
        self.step(space, seq, self_value, 0, false, tail_active, visit);
    }

    #[allow(clippy::too_many_arguments)]
    fn step(
        &mut self,
        space: &NodeSpace,
        seq: &[NodeId],
        self_value: &[bool],
        pos: usize,
        has_active: bool,
        tail_active: bool,
        visit: &mut dyn FnMut(&NodeSpace, Reached, bool),
    ) {
        if pos == seq.len() {
            if has_active || tail_active {
                visit(space, Reached::AllEpsilon, has_active);
            }
            return;
        }
        let target = seq[pos];
        if self_value.get(pos).copied().unwrap_or(false) {
            visit(space, Reached::Value(target), true);
        }
        for c in &self.values {
            if !(has_active || c.active) {
                continue;
            }
            self.attempts += 1;
            let mut work = space.clone();
            let mapped = work.import(c.pair.space(), c.pair.graph().roots());
            if work.unify(mapped[0], target).is_ok() {
                visit(&work, Reached::Value(mapped[1]), true);
            }
        }
        let later_active = (pos + 1 < seq.len() && self.any_active) || tail_active;
        for i in 0..self.epsilons.len() {
            let c = self.epsilons[i];
            let active = has_active || c.active;
            if !active && !later_active {
                continue;
            }
            self.attempts += 1;
            let mut work = space.clone();
            let mapped = work.import(c.pair.space(), c.pair.lhs_nodes());
            if work.unify(mapped[0], target).is_ok() {
                self.step(&work, seq, self_value, pos + 1, active, tail_active, visit);
            }
        }
    }
}
