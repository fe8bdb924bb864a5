//! On feature-free grammars the pair sets must project to the textbook
//! FIRST and FOLLOW sets, and every FIRST pair must have a derivation.

use std::collections::{BTreeMap, BTreeSet};

use featfirst::{compute_first, compute_follow, parse_grammar, Mode, PairSet, Rhs};
use featfirst_testkit::cf::{nonterminal_label, terminal_label, CfGrammar, CfParams, Symbol};
use proptest::prelude::*;

fn symbol_of(label: &str) -> Symbol {
    let (kind, n) = label.split_at(1);
    let n = n.parse().unwrap();
    match kind {
        "x" => Symbol::Nonterm(n),
        "t" => Symbol::Term(n),
        _ => panic!("unexpected label {label}"),
    }
}

fn terminal_of(label: &str) -> usize {
    match symbol_of(label) {
        Symbol::Term(t) => t,
        Symbol::Nonterm(_) => panic!("value {label} is not a terminal"),
    }
}

/// (label(L), label(R) or None) for every pair, grouped by lhs.
fn project(set: &PairSet) -> BTreeMap<Symbol, BTreeSet<Option<usize>>> {
    let mut out: BTreeMap<Symbol, BTreeSet<Option<usize>>> = BTreeMap::new();
    for p in set.iter() {
        let lhs = symbol_of(p.lhs(0).label().unwrap());
        let rhs = match p.rhs() {
            Rhs::Category => Some(terminal_of(p.rhs_category().unwrap().label().unwrap())),
            Rhs::Epsilon | Rhs::End => None,
        };
        assert!(
            out.entry(lhs).or_default().insert(rhs),
            "duplicate pair {p}"
        );
    }
    out
}

fn expected_first(g: &CfGrammar) -> BTreeMap<Symbol, BTreeSet<Option<usize>>> {
    let mut out = BTreeMap::new();
    for (n, set) in g.first().into_iter().enumerate() {
        if !set.is_empty() {
            out.insert(Symbol::Nonterm(n), set);
        }
    }
    for (_, rhs) in &g.rules {
        for s in rhs {
            if let Symbol::Term(t) = s {
                out.insert(*s, [Some(*t)].into());
            }
        }
    }
    out
}

fn check(g: &CfGrammar) -> Result<(), TestCaseError> {
    let text = g.to_dsl();
    let grammar = parse_grammar(&text).unwrap();
    for mode in [Mode::Naive, Mode::Active] {
        let first = compute_first(&grammar, mode).unwrap();
        prop_assert_eq!(project(&first.pairs), expected_first(g), "FIRST\n{}", text);
        let follow = compute_follow(&grammar, &first.pairs, mode).unwrap();
        let expected: BTreeMap<_, _> = g
            .follow()
            .into_iter()
            .filter(|(_, s)| !s.is_empty())
            .collect();
        prop_assert_eq!(project(&follow.pairs), expected, "FOLLOW\n{}", text);
    }
    Ok(())
}

fn cf_grammar(params: CfParams) -> impl Strategy<Value = CfGrammar> {
    any::<u64>().prop_map(move |seed| CfGrammar::random(&mut featfirst_testkit::rng(seed), params))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn projection_matches_textbook_sets(g in cf_grammar(CfParams::default())) {
        check(&g)?;
    }

    #[test]
    fn first_pairs_have_derivations(g in cf_grammar(CfParams { max_nonterminals: 5, ..CfParams::default() })) {
        // With at most five nonterminals every FIRST fact has a witness
        // tree of depth six or less, so the bounded search is exact here.
        let witnessed = g.bounded_first(6);
        let grammar = parse_grammar(&g.to_dsl()).unwrap();
        let first = compute_first(&grammar, Mode::Active).unwrap();
        for p in first.pairs.iter() {
            if let (Symbol::Nonterm(n), Some(value)) = (symbol_of(p.lhs(0).label().unwrap()), p.rhs_category()) {
                let t = terminal_of(value.label().unwrap());
                prop_assert!(witnessed[n].contains(&Some(t)), "{} has no derivation\n{}", p, g.to_dsl());
            }
        }
    }
}

#[test]
fn intro_grammar_projection() {
    use Symbol::*;
    let g = CfGrammar {
        nonterminals: 3,
        terminals: 3,
        rules: vec![
            (0, vec![Nonterm(1), Nonterm(2)]),
            (1, vec![Term(0), Term(1)]),
            (2, vec![Term(2), Nonterm(1)]),
        ],
    };
    check(&g).unwrap();
    let grammar = parse_grammar(&g.to_dsl()).unwrap();
    let first = compute_first(&grammar, Mode::Active).unwrap();
    let follow = compute_follow(&grammar, &first.pairs, Mode::Active).unwrap();
    let f = project(&follow.pairs);
    assert_eq!(f[&Nonterm(1)], [None, Some(2)].into());
    assert_eq!(nonterminal_label(1), "x1");
    assert_eq!(terminal_label(2), "t2");
}
