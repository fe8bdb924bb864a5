use super::pair::{Origin, Pair, RhsRef};
use super::pairset::PairSet;
use super::stats::{IterationStats, Tally};
use super::walk::{Reached, Walker};
use super::{epsilon_category, ComputeError, LimitKind, Mode, Solution};
use crate::grammar::{is_preterminal, Grammar};

/// Computes FIRST as a pair set.
///
/// Seeds the set with `(X, X)` for every preterminal daughter occurrence,
/// lhs and rhs being the same node. Each rule visit then adds `(X', ε)` for
/// an ε-rule, and otherwise `(X', a)` for every way of reaching a value `a`
/// through the daughters, plus `(X', ε)` when all daughters unify with
/// ε-pairs at once. The ε right-hand side stands for the grammar's
/// ε-category; bindings to it are not kept.
pub fn compute_first(g: &Grammar, mode: Mode) -> Result<Solution, ComputeError> {
    let phi = g.restrictor();
    let mut set = PairSet::new(epsilon_category(g), g.rules().len());

    for rule in g.rules() {
        for &d in rule.daughter_nodes() {
            if is_preterminal(rule.space(), d) {
                let seed = Pair::build(rule.space(), &[d], RhsRef::Category(d), phi, Origin::SEED);
                set.add_with_subsumption(seed);
            }
        }
    }

    let mut stats = IterationStats::default();
    for iteration in 1.. {
        if iteration > g.limits.max_iterations {
            return Err(ComputeError::LimitExceeded {
                limit: LimitKind::Iterations,
                stats,
            });
        }
        let mut tally = Tally::default();
        for rule in g.rules() {
            let total = set.len();
            let candidates = set.offer(rule.id(), mode);
            tally.visit(candidates.iter().filter(|c| c.active).count(), total);

            let origin = Origin {
                rule: Some(rule.id()),
                iteration,
            };
            let mother = rule.mother_node();
            let mut produced = Vec::new();
            if rule.is_epsilon() {
                produced.push(Pair::build(
                    rule.space(),
                    &[mother],
                    RhsRef::Epsilon,
                    phi,
                    origin,
                ));
            } else {
                let mut walker = Walker::new(&candidates);
                walker.walk(
                    rule.space(),
                    rule.daughter_nodes(),
                    &[],
                    false,
                    &mut |space, reached, _| {
                        let rhs = match reached {
                            Reached::Value(node) => RhsRef::Category(node),
                            Reached::AllEpsilon => RhsRef::Epsilon,
                        };
                        produced.push(Pair::build(space, &[mother], rhs, phi, origin));
                    },
                );
                tally.attempts += walker.attempts;
            }
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
    use super::*;
    use crate::fixtures;
    use crate::fs::FeatureStructure;
    use crate::grammar::parse_grammar;

    fn first(text: &str, mode: Mode) -> Solution {
        compute_first(&parse_grammar(text).unwrap(), mode).unwrap()
    }

    fn assert_pairs(set: &PairSet, expected: &[&str]) {
        let listing: Vec<String> = set.iter().map(|p| p.to_string()).collect();
        assert_eq!(set.len(), expected.len(), "{listing:#?}");
        for text in expected {
            let want = Pair::parse(text).unwrap();
            assert!(
                set.contains_equivalent(&want),
                "missing {text} in {listing:#?}"
            );
        }
    }

    #[test]
    fn single_epsilon_rule() {
        for mode in [Mode::Naive, Mode::Active] {
            let s = first("S -> .", mode);
            assert_pairs(&s.pairs, &["(S[] , ε)"]);
        }
    }

    // Hand-run of seeding and rule visits on fig1.gr.
    const FIG1_FIRST: [&str; 8] = [
        "(#1:Det[ter=+] , #1)",
        "(#1:N[agr=[], ter=+] , #1)",
        "(#1:Vtra[agr=[], ter=+] , #1)",
        "(VP[agr=#1] , Vtra[agr=#1, ter=+])",
        "(NP[agr=[]] , Det[ter=+])",
        "(NP[] , ε)",
        "(S[] , Det[ter=+])",
        "(S[] , Vtra[agr=[], ter=+])",
    ];

    #[test]
    fn gap_grammar_fixpoint() {
        for mode in [Mode::Naive, Mode::Active] {
            let s = first(fixtures::FIG1, mode);
            assert_pairs(&s.pairs, &FIG1_FIRST);
            let vp = s
                .pairs
                .iter()
                .find(|p| p.lhs(0).label() == Some("vp"))
                .unwrap();
            assert!(vp.graph().shares(0, &["agr"], 1, &["agr"]));
            assert_eq!(s.stats.iterations.len(), 3);
            assert_eq!(s.stats.last().unwrap().changes, 0);
        }
    }

    #[test]
    fn gap_grammar_trace_by_iteration() {
        let s = first(fixtures::FIG1, Mode::Active);
        let sizes: Vec<usize> = s.stats.iterations.iter().map(|r| r.size_at_end).collect();
        // seeds 3; iteration 1 adds VP, NP-Det, NP-ε; iteration 2 adds the two S pairs.
        assert_eq!(sizes, [6, 8, 8]);
    }

    #[test]
    fn without_restriction_gap_route_closes() {
        let mut g = parse_grammar(fixtures::FIG1).unwrap();
        g.set_restrictor(Default::default());
        let s = compute_first(&g, Mode::Active).unwrap();
        assert_pairs(
            &s.pairs,
            &[
                "(#1:Det[ter=+] , #1)",
                "(#1:N[agr=[], ter=+] , #1)",
                "(#1:Vtra[agr=[], ter=+] , #1)",
                "(VP[agr=#1, slash=[]] , Vtra[agr=#1, ter=+])",
                "(NP[agr=[], slash=null] , Det[ter=+])",
                "(NP[slash=NP[]] , ε)",
                "(S[] , Det[ter=+])",
            ],
        );
    }

    #[test]
    fn cf_intro_projection() {
        let s = first(fixtures::CF_INTRO, Mode::Active);
        let lookup = |label: &str| -> Vec<String> {
            let mut v: Vec<String> = s
                .pairs
                .iter()
                .filter(|p| p.lhs(0).label() == Some(label))
                .map(|p| p.rhs_category().unwrap().label().unwrap().to_string())
                .collect();
            v.sort();
            v
        };
        assert_eq!(lookup("s"), ["det"]);
        assert_eq!(lookup("np"), ["det"]);
        assert_eq!(lookup("vp"), ["vtra"]);
    }

    #[test]
    fn choice_order_does_not_matter() {
        // Rule 2 of fig1.gr reaching Vtra through two ε positions, with the
        // ε unifications done in both orders.
        let g = parse_grammar(fixtures::FIG1).unwrap();
        let s = compute_first(&g, Mode::Active).unwrap();
        let eps = s
            .pairs
            .iter()
            .find(|p| p.rhs() == super::super::Rhs::Epsilon)
            .unwrap();
        let vp = s
            .pairs
            .iter()
            .find(|p| p.lhs(0).label() == Some("vp"))
            .unwrap();
        let rule = &g.rules()[1];
        let d = rule.daughter_nodes();
        let mut results = Vec::new();
        for order in [[0usize, 1], [1, 0]] {
            let mut space = rule.space().clone();
            for &j in &order {
                let m = space.import(eps.space(), eps.lhs_nodes());
                space.unify(m[0], d[j]).unwrap();
            }
            let m = space.import(vp.space(), vp.graph().roots());
            space.unify(m[0], d[2]).unwrap();
            let p = Pair::build(
                &space,
                &[rule.mother_node()],
                RhsRef::Category(m[1]),
                g.restrictor(),
                Origin::SEED,
            );
            results.push(p);
        }
        assert!(results[0].equivalent(&results[1]));
        assert!(results[0].equivalent(&Pair::parse("(S[] , Vtra[agr=[], ter=+])").unwrap()));
    }

    #[test]
    fn pairs_exceeding_limit() {
        let mut g = parse_grammar(fixtures::ORTH).unwrap();
        g.set_restrictor(Default::default());
        let g = g.with_limits(crate::grammar::Limits {
            max_iterations: 1000,
            max_pairs: 20,
        });
        match compute_first(&g, Mode::Active) {
            Err(ComputeError::LimitExceeded { limit, .. }) => assert_eq!(limit, LimitKind::Pairs),
            other => panic!("expected limit, got {other:?}"),
        }
    }

    #[test]
    fn orth_grammar_terminates_only_with_restriction() {
        let g = parse_grammar(fixtures::ORTH).unwrap();
        let s = compute_first(&g, Mode::Active).unwrap();
        assert!(s.pairs.iter().all(|p| p.avoids(g.restrictor())));
        let mut g = g;
        g.set_restrictor(Default::default());
        assert!(matches!(
            compute_first(&g, Mode::Active),
            Err(ComputeError::LimitExceeded {
                limit: LimitKind::Iterations,
                ..
            })
        ));
    }

    #[test]
    fn epsilon_category_is_carried() {
        let s = first(fixtures::FIG1, Mode::Active);
        let eps: FeatureStructure = "NP[]".parse().unwrap();
        assert!(s.pairs.epsilon_category().unwrap().equivalent(&eps));
    }
}
