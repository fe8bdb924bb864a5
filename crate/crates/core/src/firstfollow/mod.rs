//! FIRST and FOLLOW as sets of binding-preserving pairs.
//!
//! Both functions are computed by fixpoint iteration over the rules in
//! source order. New pairs enter the solution through `+≤`
//! ([`PairSet::add_with_subsumption`]) after the restrictor is applied, so
//! the solution stays a subsumption antichain of restricted pairs.
//!
//! In [`Mode::Active`] a pair is offered to each rule exactly once: a rule
//! visit only considers combinations that involve at least one pair the
//! rule has not yet seen. [`Mode::Naive`] re-searches the whole set on
//! every visit and serves as the baseline.

mod compare;
mod first;
mod follow;
mod pair;
mod pairset;
mod query;
mod stats;
mod string;
mod walk;

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

pub use compare::{compare_modes, FunctionReport, ModeReport, RunReport};
pub use first::compute_first;
pub use follow::compute_follow;
pub use pair::{Origin, Pair, Rhs};
pub use pairset::{PairId, PairSet};
pub use query::{query, QueryValue};
pub use stats::{IterationRecord, IterationStats};
pub use string::first_of_string;

use crate::fs::FeatureStructure;
use crate::grammar::Grammar;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum Mode {
    Naive,
    #[default]
    Active,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Naive => "naive",
            Mode::Active => "active",
        })
    }
}

impl FromStr for Mode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "naive" => Ok(Mode::Naive),
            "active" => Ok(Mode::Active),
            other => Err(format!("unknown mode `{other}` (expected naive or active)")),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LimitKind {
    Iterations,
    Pairs,
}

impl fmt::Display for LimitKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            LimitKind::Iterations => "max_iterations",
            LimitKind::Pairs => "max_pairs",
        })
    }
}

#[derive(Clone, Debug, Error)]
pub enum ComputeError {
    #[error(
        "limit {limit} exceeded after {} iterations; the restrictor may not force a finite solution",
        stats.iterations.len()
    )]
    LimitExceeded {
        limit: LimitKind,
        stats: IterationStats,
    },
    #[error("category {} of the string is not preterminal and unifies with no FIRST entry", index + 1)]
    UnknownCategory { index: usize },
}

/// A fixpoint and the statistics of the run that reached it.
#[derive(Clone, Debug)]
pub struct Solution {
    pub pairs: PairSet,
    pub stats: IterationStats,
}

/// The most general category the grammar assigns to ε: the generalization
/// of all restricted ε-rule mothers, or `None` without ε-rules.
pub fn epsilon_category(g: &Grammar) -> Option<FeatureStructure> {
    g.rules()
        .iter()
        .filter(|r| r.is_epsilon())
        .map(|r| r.mother().structure().restrict(g.restrictor()))
        .reduce(|a, b| a.generalize(&b))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grammar::parse_grammar;

    #[test]
    fn epsilon_category_generalizes_mothers() {
        let g = parse_grammar(
            "restrict slash.\nS -> NP.\nNP[slash=NP[], agr=sg] -> .\nNP[agr=pl] -> .",
        )
        .unwrap();
        let eps = epsilon_category(&g).unwrap();
        assert!(eps.equivalent(&"NP[agr=[]]".parse().unwrap()));
        let g = parse_grammar("S -> a[ter=+].").unwrap();
        assert!(epsilon_category(&g).is_none());
    }

    #[test]
    fn mode_names() {
        assert_eq!("naive".parse::<Mode>().unwrap(), Mode::Naive);
        assert_eq!(Mode::Active.to_string(), "active");
        assert!("fast".parse::<Mode>().is_err());
    }
}
