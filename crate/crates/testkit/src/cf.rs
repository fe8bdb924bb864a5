//! Context-free grammars and the textbook FIRST/FOLLOW algorithms.

use std::collections::{BTreeMap, BTreeSet};

use rand::Rng;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Symbol {
    Term(usize),
    Nonterm(usize),
}

/// A terminal, or `None` for ε (in FIRST) or the end marker (in FOLLOW).
pub type Lookahead = Option<usize>;

#[derive(Clone, Debug)]
pub struct CfGrammar {
    pub nonterminals: usize,
    pub terminals: usize,
    /// Rules in order; the mother of the first rule is the start symbol.
    pub rules: Vec<(usize, Vec<Symbol>)>,
}

#[derive(Clone, Copy, Debug)]
pub struct CfParams {
    pub max_nonterminals: usize,
    pub max_terminals: usize,
    pub max_rules: usize,
    pub max_rhs: usize,
}

impl Default for CfParams {
    fn default() -> Self {
        CfParams {
            max_nonterminals: 8,
            max_terminals: 4,
            max_rules: 15,
            max_rhs: 3,
        }
    }
}

pub fn nonterminal_label(i: usize) -> String {
    format!("x{i}")
}

pub fn terminal_label(i: usize) -> String {
    format!("t{i}")
}

impl CfGrammar {
    /// A random grammar in which every nonterminal has at least one rule
    /// and nonterminal 0 is the start symbol. Rules may be empty.
    pub fn random(rng: &mut impl Rng, p: CfParams) -> CfGrammar {
        let nonterminals = rng.gen_range(1..=p.max_nonterminals);
        let terminals = rng.gen_range(1..=p.max_terminals);
        let count = rng.gen_range(nonterminals..=p.max_rules.max(nonterminals));
        let mut mothers: Vec<usize> = (0..nonterminals).collect();
        while mothers.len() < count {
            mothers.push(rng.gen_range(0..nonterminals));
        }
        // Keep the start symbol first; shuffle the rest lightly.
        for i in (2..mothers.len()).rev() {
            let j = rng.gen_range(1..=i);
            mothers.swap(i, j);
        }
        let rules = mothers
            .into_iter()
            .map(|m| {
                let len = rng.gen_range(0..=p.max_rhs);
                let rhs = (0..len)
                    .map(|_| {
                        if rng.gen_bool(0.5) {
                            Symbol::Term(rng.gen_range(0..terminals))
                        } else {
                            Symbol::Nonterm(rng.gen_range(0..nonterminals))
                        }
                    })
                    .collect();
                (m, rhs)
            })
            .collect();
        CfGrammar {
            nonterminals,
            terminals,
            rules,
        }
    }

    /// The grammar in the rule language, with bare labels and terminals
    /// marked `ter=+`.
    pub fn to_dsl(&self) -> String {
        let mut out = String::new();
        for (m, rhs) in &self.rules {
            out.push_str(&nonterminal_label(*m));
            out.push_str(" ->");
            for s in rhs {
                out.push(' ');
                match s {
                    Symbol::Term(t) => {
                        out.push_str(&terminal_label(*t));
                        out.push_str("[ter=+]");
                    }
                    Symbol::Nonterm(n) => out.push_str(&nonterminal_label(*n)),
                }
            }
            out.push_str(".\n");
        }
        out
    }

    fn nullable(&self) -> Vec<bool> {
        let mut nullable = vec![false; self.nonterminals];
        let mut changed = true;
        while changed {
            changed = false;
            for (m, rhs) in &self.rules {
                if !nullable[*m]
                    && rhs
                        .iter()
                        .all(|s| matches!(s, Symbol::Nonterm(n) if nullable[*n]))
                {
                    nullable[*m] = true;
                    changed = true;
                }
            }
        }
        nullable
    }

    /// FIRST of every nonterminal, with `None` for ε.
    pub fn first(&self) -> Vec<BTreeSet<Lookahead>> {
        let nullable = self.nullable();
        let mut first: Vec<BTreeSet<Lookahead>> = vec![BTreeSet::new(); self.nonterminals];
        for (n, set) in first.iter_mut().enumerate() {
            if nullable[n] {
                set.insert(None);
            }
        }
        let mut changed = true;
        while changed {
            changed = false;
            for (m, rhs) in &self.rules {
                for s in rhs {
                    let add: Vec<Lookahead> = match s {
                        Symbol::Term(t) => vec![Some(*t)],
                        Symbol::Nonterm(n) => {
                            first[*n].iter().copied().filter(Option::is_some).collect()
                        }
                    };
                    for a in add {
                        changed |= first[*m].insert(a);
                    }
                    let vanishes = matches!(s, Symbol::Nonterm(n) if nullable[*n]);
                    if !vanishes {
                        break;
                    }
                }
            }
        }
        first
    }

    /// FOLLOW of every symbol occurring as a daughter, plus the start
    /// symbol; `None` is the end marker.
    pub fn follow(&self) -> BTreeMap<Symbol, BTreeSet<Lookahead>> {
        let nullable = self.nullable();
        let first = self.first();
        let mut follow: BTreeMap<Symbol, BTreeSet<Lookahead>> = BTreeMap::new();
        follow.entry(Symbol::Nonterm(0)).or_default().insert(None);
        for (_, rhs) in &self.rules {
            for s in rhs {
                follow.entry(*s).or_default();
            }
        }
        let mut changed = true;
        while changed {
            changed = false;
            for (m, rhs) in &self.rules {
                for (i, y) in rhs.iter().enumerate() {
                    let mut add = BTreeSet::new();
                    let mut vanishes = true;
                    for s in &rhs[i + 1..] {
                        match s {
                            Symbol::Term(t) => {
                                add.insert(Some(*t));
                                vanishes = false;
                            }
                            Symbol::Nonterm(n) => {
                                add.extend(first[*n].iter().copied().filter(Option::is_some));
                                vanishes = nullable[*n];
                            }
                        }
                        if !vanishes {
                            break;
                        }
                    }
                    if vanishes {
                        if let Some(f) = follow.get(&Symbol::Nonterm(*m)) {
                            add.extend(f.iter().copied());
                        }
                    }
                    let entry = follow.get_mut(y).unwrap();
                    for a in add {
                        changed |= entry.insert(a);
                    }
                }
            }
        }
        follow
    }

    /// Terminals that can begin a string derived from each nonterminal by
    /// a derivation tree of depth at most `depth`, with `None` if ε is
    /// derivable within that depth. Found by enumerating trees level by
    /// level rather than by a fixpoint over the whole grammar.
    pub fn bounded_first(&self, depth: usize) -> Vec<BTreeSet<Lookahead>> {
        // level[n]: leftmost outcomes of trees rooted at n of depth <= d.
        let mut level: Vec<BTreeSet<Lookahead>> = vec![BTreeSet::new(); self.nonterminals];
        for _ in 0..depth {
            let prev = level.clone();
            for (m, rhs) in &self.rules {
                // Every way of choosing a subtree outcome per daughter, left
                // to right, until one is non-empty.
                let mut prefixes_vanish = true;
                for s in rhs {
                    let outcomes: BTreeSet<Lookahead> = match s {
                        Symbol::Term(t) => [Some(*t)].into(),
                        Symbol::Nonterm(n) => prev[*n].clone(),
                    };
                    level[*m].extend(outcomes.iter().copied().filter(Option::is_some));
                    if !outcomes.contains(&None) {
                        prefixes_vanish = false;
                        break;
                    }
                }
                if prefixes_vanish {
                    level[*m].insert(None);
                }
            }
        }
        level
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn intro() -> CfGrammar {
        // S -> NP VP; NP -> det noun; VP -> vtra NP
        use Symbol::*;
        CfGrammar {
            nonterminals: 3,
            terminals: 3,
            rules: vec![
                (0, vec![Nonterm(1), Nonterm(2)]),
                (1, vec![Term(0), Term(1)]),
                (2, vec![Term(2), Nonterm(1)]),
            ],
        }
    }

    #[test]
    fn textbook_example() {
        let g = intro();
        let first = g.first();
        assert_eq!(first[0], [Some(0)].into());
        assert_eq!(first[1], [Some(0)].into());
        assert_eq!(first[2], [Some(2)].into());
        let follow = g.follow();
        assert_eq!(follow[&Symbol::Nonterm(1)], [None, Some(2)].into());
        assert_eq!(follow[&Symbol::Nonterm(0)], [None].into());
        assert_eq!(follow[&Symbol::Nonterm(2)], [None].into());
    }

    #[test]
    fn bounded_first_converges_to_first() {
        let mut rng = crate::rng(7);
        for _ in 0..200 {
            let g = CfGrammar::random(&mut rng, CfParams::default());
            assert_eq!(
                g.bounded_first(2 * g.nonterminals + 1),
                g.first(),
                "{}",
                g.to_dsl()
            );
        }
    }
}
