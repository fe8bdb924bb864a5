use super::pair::{Origin, Pair, RhsRef};
use super::pairset::{Candidate, PairSet};
use super::stats::{IterationStats, Tally};
use super::walk::{Reached, Walker};
use super::{ComputeError, LimitKind, Mode, Solution};
use crate::grammar::{is_preterminal, Grammar};

/// Computes FOLLOW as a pair set, given the grammar's FIRST solution.
///
/// Seeds the set with `(S, $)` for the start category. For each daughter
/// `Yi` of a rule, the suffix after it is walked with the FIRST pairs:
/// every value `a` reached gives `(Yi', a)`, and if the whole suffix can
/// vanish, every FOLLOW pair whose lhs unifies with the mother passes its
/// value on to `(Yi', f)`. The FIRST pairs are fixed, so after the first
/// iteration only new FOLLOW pairs drive the search in active mode.
pub fn compute_follow(g: &Grammar, first: &PairSet, mode: Mode) -> Result<Solution, ComputeError> {
    let phi = g.restrictor();
    let mut set = PairSet::new(first.epsilon_category().cloned(), g.rules().len());
    let start = g.start().structure();
    set.add_with_subsumption(Pair::build(
        start.space(),
        &[start.root()],
        RhsRef::End,
        phi,
        Origin::SEED,
    ));

    let mut stats = IterationStats::default();
    for iteration in 1.. {
        if iteration > g.limits.max_iterations {
            return Err(ComputeError::LimitExceeded {
                limit: LimitKind::Iterations,
                stats,
            });
        }
        let first_candidates = first.all(mode == Mode::Naive || iteration == 1);
        let mut tally = Tally::default();
        for rule in g.rules() {
            let total = set.len();
            let follows: Vec<Candidate> = set
                .offer(rule.id(), mode)
                .into_iter()
                .filter(|c| c.pair.lhs_len() == 1)
                .collect();
            tally.visit(follows.iter().filter(|c| c.active).count(), total);
            let any_follow_active = follows.iter().any(|c| c.active);

            let origin = Origin {
                rule: Some(rule.id()),
                iteration,
            };
            let mother = rule.mother_node();
            let daughters = rule.daughter_nodes();
            let self_value: Vec<bool> = daughters
                .iter()
                .map(|&d| is_preterminal(rule.space(), d))
                .collect();
            let mut produced = Vec::new();
            let mut walker = Walker::new(&first_candidates);
            let mut follow_attempts = 0;
            for (i, &yi) in daughters.iter().enumerate() {
                walker.walk(
                    rule.space(),
                    &daughters[i + 1..],
                    &self_value[i + 1..],
                    any_follow_active,
                    &mut |space, reached, used_active| match reached {
                        Reached::Value(node) => {
                            produced.push(Pair::build(
                                space,
                                &[yi],
                                RhsRef::Category(node),
                                phi,
                                origin,
                            ));
                        }
                        Reached::AllEpsilon => {
                            for f in &follows {
                                if !(used_active || f.active) {
                                    continue;
                                }
                                follow_attempts += 1;
                                let mut work = space.clone();
                                let mapped = work.import(f.pair.space(), f.pair.graph().roots());
                                if work.unify(mapped[0], mother).is_ok() {
                                    let rhs = f.pair.rhs_ref(&mapped);
                                    produced.push(Pair::build(&work, &[yi], rhs, phi, origin));
                                }
                            }
                        }
                    },
                );
            }
            tally.attempts += walker.attempts + follow_attempts;
            for pair in produced {
                if set.add_with_subsumption(pair) {
                    tally.changes += 1;
                }
            }
            if set.len() > g.limits.max_pairs {
                stats.iterations.push(tally.finish(set.len()));
                return Err(ComputeError::LimitExceeded {
                    limit: LimitKind::Pairs,
                    stats,
                });
            }
        }
        let changed = tally.changes > 0;
        stats.iterations.push(tally.finish(set.len()));
        if !changed {
            break;
        }
    }
    Ok(Solution { pairs: set, stats })
}

#[cfg(test)]
mod tests {
    use super::super::{compute_first, Rhs};
    use super::*;
    use crate::fixtures;
    use crate::grammar::parse_grammar;

    fn follow(text: &str, mode: Mode) -> Solution {
        let g = parse_grammar(text).unwrap();
        let first = compute_first(&g, mode).unwrap();
        compute_follow(&g, &first.pairs, mode).unwrap()
    }

    fn has(s: &Solution, text: &str) -> bool {
        s.pairs.contains_equivalent(&Pair::parse(text).unwrap())
    }

    #[test]
    fn agreement_flows_from_noun_to_verb() {
        for mode in [Mode::Naive, Mode::Active] {
            let s = follow(fixtures::AGR, mode);
            let listing: Vec<String> = s.pairs.iter().map(|p| p.to_string()).collect();
            for text in [
                "(S[] , $)",
                "(N[agr=#1, ter=+] , Vint[agr=#1, ter=+])",
                "(NP[agr=#1] , Vint[agr=#1, ter=+])",
                "(VP[agr=[]] , $)",
                "(Vint[agr=[], ter=+] , $)",
                "(Det[ter=+] , N[agr=[], ter=+])",
            ] {
                assert!(has(&s, text), "missing {text} in {listing:#?}");
            }
            assert_eq!(s.pairs.len(), 6, "{listing:#?}");
            let n = s
                .pairs
                .iter()
                .find(|p| p.lhs(0).label() == Some("n"))
                .unwrap();
            assert!(n.graph().shares(0, &["agr"], 1, &["agr"]));
        }
    }

    #[test]
    fn follow_never_has_epsilon_values() {
        let s = follow(fixtures::FIG1, Mode::Active);
        assert!(s.pairs.iter().all(|p| p.rhs() != Rhs::Epsilon));
        assert!(s.pairs.is_antichain());
    }

    #[test]
    fn end_marker_passes_through_vanishing_suffix() {
        // NP can vanish, so whatever follows S follows the Vtra before it.
        let s = follow(fixtures::FIG1, Mode::Active);
        assert!(s
            .pairs
            .iter()
            .any(|p| p.lhs(0).label() == Some("vtra") && p.rhs() == Rhs::End));
    }

    #[test]
    fn modes_agree_on_bundled_grammars() {
        for (name, text) in fixtures::ALL {
            let a = follow(text, Mode::Active);
            let n = follow(text, Mode::Naive);
            assert!(a.pairs.equivalent_to(&n.pairs), "{name}");
        }
    }
}
