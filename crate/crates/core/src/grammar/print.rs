use std::fmt;

use super::Grammar;
use crate::fs::{Printer, TagStyle};

/// Prints the grammar back in DSL syntax; the output re-parses to an
/// equivalent grammar.
impl fmt::Display for Grammar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let printer = Printer::new(TagStyle::Dollar).with_labels(self.labels());
        if !self.restrictor().is_empty() {
            writeln!(f, "restrict {}.", self.restrictor())?;
        }
        if self.start_declared() {
            let start = self.start().structure();
            let text = printer.roots(start.space(), &[start.root()]);
            writeln!(f, "start {}.", text[0])?;
        }
        for rule in self.rules() {
            let text = printer.roots(rule.space(), rule.graph().roots());
            write!(f, "{} ->", text[0])?;
            for daughter in &text[1..] {
                write!(f, " {daughter}")?;
            }
            if rule.is_epsilon() {
                write!(f, " ")?;
            }
            writeln!(f, ".")?;
        }
        Ok(())
    }
}
