use std::fmt;

use super::{Grammar, RuleId};
use crate::fs::FeatureStructure;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Severity {
    Warning,
    Error,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Diagnostic {
    pub severity: Severity,
    pub rule: Option<RuleId>,
    pub daughter: Option<usize>,
    pub line: usize,
    pub col: usize,
    pub message: String,
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let severity = match self.severity {
            Severity::Error => "error",
            Severity::Warning => "warning",
        };
        write!(
            f,
            "{}:{}: {severity}: {}",
            self.line, self.col, self.message
        )
    }
}

fn unifiable(a: &FeatureStructure, b: &FeatureStructure) -> bool {
    a.unify(b).is_ok()
}

/// Static checks. Every comparison is made on restricted categories, so a
/// daughter counts as covered when its restricted form unifies with some
/// restricted mother.
pub fn validate(g: &Grammar) -> Vec<Diagnostic> {
    let phi = g.restrictor();
    let mothers: Vec<FeatureStructure> = g
        .rules()
        .iter()
        .map(|r| r.mother().structure().restrict(phi))
        .collect();
    let mut out = Vec::new();

    for rule in g.rules() {
        let (line, col) = rule.position();
        let mother = rule.mother();
        if mother.is_preterminal() {
            let (severity, what) = if rule.is_epsilon() {
                (Severity::Warning, "epsilon rule")
            } else {
                (Severity::Error, "rule")
            };
            out.push(Diagnostic {
                severity,
                rule: Some(rule.id()),
                daughter: None,
                line,
                col,
                message: format!("{what} {} has a preterminal mother {mother}", rule.id() + 1),
            });
        }
        for i in 0..rule.arity() {
            let daughter = rule.daughter(i);
            if daughter.is_preterminal() {
                continue;
            }
            let restricted = daughter.structure().restrict(phi);
            if !mothers.iter().any(|m| unifiable(m, &restricted)) {
                out.push(Diagnostic {
                    severity: Severity::Error,
                    rule: Some(rule.id()),
                    daughter: Some(i + 1),
                    line,
                    col,
                    message: format!(
                        "rule {} daughter {} {daughter} unifies with no rule mother",
                        rule.id() + 1,
                        i + 1
                    ),
                });
            }
        }
    }

    let mut reachable = vec![false; g.rules().len()];
    let mut agenda: Vec<FeatureStructure> = vec![g.start().structure().restrict(phi)];
    while let Some(cat) = agenda.pop() {
        for (id, mother) in mothers.iter().enumerate() {
            if !reachable[id] && unifiable(mother, &cat) {
                reachable[id] = true;
                let rule = &g.rules()[id];
                agenda
                    .extend((0..rule.arity()).map(|i| rule.daughter(i).structure().restrict(phi)));
            }
        }
    }
    for (rule, seen) in g.rules().iter().zip(reachable) {
        if !seen {
            let (line, col) = rule.position();
            out.push(Diagnostic {
                severity: Severity::Warning,
                rule: Some(rule.id()),
                daughter: None,
                line,
                col,
                message: format!(
                    "rule {} is unreachable from the start category {}",
                    rule.id() + 1,
                    g.start()
                ),
            });
        }
    }
    out.sort_by_key(|d| (d.line, d.col, d.daughter));
    out
}
