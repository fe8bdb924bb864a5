//! Grammar data model, the grammar DSL, and static validation.
//!
//! ```text
//! restrict slash.
//! S[] -> NP[agr=$1, slash=null] VP[agr=$1, slash=null].
//! NP[agr=$1, slash=null] -> Det[ter=+] N[agr=$1, ter=+].
//! NP[slash=NP[]] -> .
//! ```

mod parse;
mod print;
mod validate;

use std::fmt;

use crate::fs::{FeatureStructure, LabelMap, NodeId, NodeSpace, NodeView, Restrictor, SharedGraph};

pub use parse::{parse_category_string, parse_grammar, ParseError, ParseErrors};
pub(crate) use parse::{parse_pair_parts, ParsedRhs};
pub use validate::{validate, Diagnostic, Severity};

/// Feature marking a preterminal category (`ter=+`).
pub const TER: &str = "ter";

/// True if the node has `ter=+` at its root.
pub fn is_preterminal(space: &NodeSpace, node: NodeId) -> bool {
    space
        .arc(node, TER)
        .is_some_and(|t| matches!(space.view(t), NodeView::Atom("+")))
}

/// A standalone grammar category.
#[derive(Clone, Debug)]
pub struct Category(FeatureStructure);

impl Category {
    pub fn new(structure: FeatureStructure) -> Self {
        Category(structure)
    }

    pub fn structure(&self) -> &FeatureStructure {
        &self.0
    }

    pub fn into_structure(self) -> FeatureStructure {
        self.0
    }

    pub fn is_preterminal(&self) -> bool {
        is_preterminal(self.0.space(), self.0.root())
    }

    pub fn label(&self) -> Option<&str> {
        self.0.label()
    }
}

impl fmt::Display for Category {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

pub type RuleId = usize;

/// One rule: root 0 is the mother, the rest are daughters, all in one space.
#[derive(Clone, Debug)]
pub struct Rule {
    id: RuleId,
    graph: SharedGraph,
    line: usize,
    col: usize,
}

impl Rule {
    pub fn new(id: RuleId, graph: SharedGraph, line: usize, col: usize) -> Self {
        assert!(!graph.roots().is_empty(), "a rule needs a mother");
        Rule {
            id,
            graph,
            line,
            col,
        }
    }

    pub fn id(&self) -> RuleId {
        self.id
    }

    /// Source position (1-based line and column) of the rule's mother.
    pub fn position(&self) -> (usize, usize) {
        (self.line, self.col)
    }

    pub fn graph(&self) -> &SharedGraph {
        &self.graph
    }

    pub fn space(&self) -> &NodeSpace {
        self.graph.space()
    }

    pub fn mother_node(&self) -> NodeId {
        self.graph.roots()[0]
    }

    pub fn daughter_nodes(&self) -> &[NodeId] {
        &self.graph.roots()[1..]
    }

    pub fn arity(&self) -> usize {
        self.graph.roots().len() - 1
    }

    pub fn is_epsilon(&self) -> bool {
        self.arity() == 0
    }

    pub fn mother(&self) -> Category {
        Category(self.graph.structure(0))
    }

    pub fn daughter(&self, i: usize) -> Category {
        Category(self.graph.structure(i + 1))
    }

    /// A fresh copy sharing no nodes with this rule.
    pub fn instantiate(&self) -> Rule {
        Rule {
            graph: self.graph.clone_space(),
            ..*self
        }
    }
}

/// Guards against restrictors that do not force a finite fixpoint.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    pub max_iterations: usize,
    pub max_pairs: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_iterations: 100,
            max_pairs: 10_000,
        }
    }
}

#[derive(Clone, Debug)]
pub struct Grammar {
    rules: Vec<Rule>,
    restrictor: Restrictor,
    start: Category,
    start_declared: bool,
    pub limits: Limits,
    labels: LabelMap,
}

impl Grammar {
    /// Builds a grammar; the start category defaults to the first rule's mother.
    ///
    /// Panics if `rules` is empty.
    pub fn new(rules: Vec<Rule>, restrictor: Restrictor, start: Option<Category>) -> Self {
        assert!(!rules.is_empty(), "a grammar needs at least one rule");
        let start_declared = start.is_some();
        let start = start.unwrap_or_else(|| rules[0].mother());
        Grammar {
            rules,
            restrictor,
            start,
            start_declared,
            limits: Limits::default(),
            labels: LabelMap::new(),
        }
    }

    pub fn rules(&self) -> &[Rule] {
        &self.rules
    }

    pub fn restrictor(&self) -> &Restrictor {
        &self.restrictor
    }

    pub fn set_restrictor(&mut self, restrictor: Restrictor) {
        self.restrictor = restrictor;
    }

    pub fn start(&self) -> &Category {
        &self.start
    }

    pub fn start_declared(&self) -> bool {
        self.start_declared
    }

    /// Original spellings of labels, for printing.
    pub fn labels(&self) -> &LabelMap {
        &self.labels
    }

    pub(crate) fn set_labels(&mut self, labels: LabelMap) {
        self.labels = labels;
    }

    pub fn with_limits(mut self, limits: Limits) -> Self {
        self.limits = limits;
        self
    }
}

impl std::str::FromStr for Grammar {
    type Err = ParseErrors;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_grammar(s)
    }
}
