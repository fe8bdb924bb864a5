//! Random small feature grammars in the rule language.
//!
//! Categories carry an `agr` value (an atom or a variable shared within the
//! rule) and sometimes a `sub` value holding another category; `sub` is
//! always restricted, so every generated grammar has a finite FIRST and
//! FOLLOW.

use rand::Rng;

use crate::cf::{nonterminal_label, terminal_label, CfGrammar, CfParams, Symbol};

fn decorate(rng: &mut impl Rng, label: String, vars: usize, terminal: bool) -> String {
    let mut feats = Vec::new();
    match rng.gen_range(0..5) {
        0 => feats.push("agr=sg".to_string()),
        1 => feats.push("agr=pl".to_string()),
        2 | 3 => feats.push(format!("agr=${}", rng.gen_range(1..=vars))),
        _ => {}
    }
    if rng.gen_bool(0.2) {
        let inner = if rng.gen_bool(0.5) {
            format!("${}", rng.gen_range(1..=vars))
        } else {
            format!("{}[]", nonterminal_label(rng.gen_range(0..3)))
        };
        feats.push(format!("sub={inner}"));
    }
    if terminal {
        feats.push("ter=+".to_string());
    }
    format!("{label}[{}]", feats.join(", "))
}

/// A random grammar with the rule skeleton of [`CfGrammar::random`].
pub fn random_feature_grammar(rng: &mut impl Rng, params: CfParams) -> String {
    let skeleton = CfGrammar::random(rng, params);
    let mut out = String::from("restrict sub.\n");
    for (m, rhs) in &skeleton.rules {
        let vars = 2;
        out.push_str(&decorate(rng, nonterminal_label(*m), vars, false));
        out.push_str(" ->");
        for s in rhs {
            out.push(' ');
            out.push_str(&match s {
                Symbol::Term(t) => decorate(rng, terminal_label(*t), vars, true),
                Symbol::Nonterm(n) => decorate(rng, nonterminal_label(*n), vars, false),
            });
        }
        out.push_str(".\n");
    }
    out
}
