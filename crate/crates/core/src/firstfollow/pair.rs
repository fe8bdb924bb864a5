use std::fmt;

use crate::fs::{
    restrict_roots, FeatureStructure, LabelMap, NodeId, NodeSpace, Printer, Restrictor,
    SharedGraph, TagStyle,
};
use crate::grammar::{parse_pair_parts, ParseError, ParsedRhs, RuleId};

/// What the right-hand side of a pair is.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Rhs {
    /// A category, stored as the last root of the pair's graph.
    Category,
    /// The empty string; carries the set's ε-category.
    Epsilon,
    /// The end-of-input marker `$`. Never unifies with any category.
    End,
}

/// Where a pair came from: the rule whose visit produced it (none for the
/// preterminal seeds and the end-marker seed) and the iteration number.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Origin {
    pub rule: Option<RuleId>,
    pub iteration: usize,
}

impl Origin {
    pub(crate) const SEED: Origin = Origin {
        rule: None,
        iteration: 0,
    };
}

#[derive(Clone, Copy, Debug)]
pub(crate) enum RhsRef {
    Category(NodeId),
    Epsilon,
    End,
}

/// An element of a FIRST or FOLLOW solution: a category (or category
/// string) and its value, in one space so bindings between them are shared
/// nodes.
#[derive(Clone, Debug)]
pub struct Pair {
    graph: SharedGraph,
    lhs_len: usize,
    rhs: Rhs,
    origin: Origin,
    restricted: bool,
}

impl Pair {
    /// Copies `lhs` and `rhs` out of `space` and applies `phi`.
    pub(crate) fn build(
        space: &NodeSpace,
        lhs: &[NodeId],
        rhs: RhsRef,
        phi: &Restrictor,
        origin: Origin,
    ) -> Pair {
        let mut roots = lhs.to_vec();
        let kind = match rhs {
            RhsRef::Category(node) => {
                roots.push(node);
                Rhs::Category
            }
            RhsRef::Epsilon => Rhs::Epsilon,
            RhsRef::End => Rhs::End,
        };
        let (space, roots) = restrict_roots(space, &roots, phi);
        Pair {
            graph: SharedGraph::new(space, roots),
            lhs_len: lhs.len(),
            rhs: kind,
            origin,
            restricted: true,
        }
    }

    /// Parses `(LHS... , RHS)` where RHS is a category, `ε` or `$`. Tags
    /// (`#n` or `$n`) are shared across both sides.
    pub fn parse(text: &str) -> Result<Pair, ParseError> {
        let (graph, rhs) = parse_pair_parts(text)?;
        let (rhs, lhs_len) = match rhs {
            ParsedRhs::Cat => (Rhs::Category, graph.roots().len() - 1),
            ParsedRhs::Epsilon => (Rhs::Epsilon, graph.roots().len()),
            ParsedRhs::End => (Rhs::End, graph.roots().len()),
        };
        Ok(Pair {
            graph,
            lhs_len,
            rhs,
            origin: Origin::SEED,
            restricted: false,
        })
    }

    pub fn graph(&self) -> &SharedGraph {
        &self.graph
    }

    pub fn space(&self) -> &NodeSpace {
        self.graph.space()
    }

    /// Number of categories on the left: 1 for FIRST/FOLLOW, n for string FIRST.
    pub fn lhs_len(&self) -> usize {
        self.lhs_len
    }

    pub fn lhs_nodes(&self) -> &[NodeId] {
        &self.graph.roots()[..self.lhs_len]
    }

    pub fn rhs(&self) -> Rhs {
        self.rhs
    }

    pub fn rhs_node(&self) -> Option<NodeId> {
        (self.rhs == Rhs::Category).then(|| self.graph.roots()[self.lhs_len])
    }

    pub(crate) fn rhs_ref(&self, mapped: &[NodeId]) -> RhsRef {
        match self.rhs {
            Rhs::Category => RhsRef::Category(mapped[self.lhs_len]),
            Rhs::Epsilon => RhsRef::Epsilon,
            Rhs::End => RhsRef::End,
        }
    }

    /// The i-th lhs category, copied out without its bindings.
    pub fn lhs(&self, i: usize) -> FeatureStructure {
        assert!(i < self.lhs_len);
        self.graph.structure(i)
    }

    pub fn rhs_category(&self) -> Option<FeatureStructure> {
        (self.rhs == Rhs::Category).then(|| self.graph.structure(self.lhs_len))
    }

    pub fn origin(&self) -> Origin {
        self.origin
    }

    pub fn is_restricted(&self) -> bool {
        self.restricted
    }

    /// Joint subsumption of both sides, so bindings between lhs and rhs count.
    pub fn subsumes(&self, other: &Pair) -> bool {
        if self.lhs_len != other.lhs_len || self.rhs != other.rhs {
            return false;
        }
        // Cheap label check before the graph walk.
        let (a, b) = (self.graph.roots(), other.graph.roots());
        for (&x, &y) in a.iter().zip(b) {
            if let Some(l) = self.space().label(x) {
                if other.space().label(y) != Some(l) {
                    return false;
                }
            }
        }
        self.graph.subsumes(&other.graph)
    }

    pub fn equivalent(&self, other: &Pair) -> bool {
        self.subsumes(other) && other.subsumes(self)
    }

    /// True if no path of `phi` resolves in any category of the pair.
    pub fn avoids(&self, phi: &Restrictor) -> bool {
        let space = self.space();
        self.graph.roots().iter().all(|&root| {
            phi.paths()
                .all(|p| space.resolve(root, p.segments()).is_none())
        })
    }

    /// Renders the pair with `#n` tags, using `labels` for label spelling.
    pub fn display_with(&self, labels: &LabelMap) -> String {
        self.render(Printer::new(TagStyle::Hash).with_labels(labels))
    }

    fn render(&self, printer: Printer<'_>) -> String {
        let printed = printer.roots(self.space(), self.graph.roots());
        let lhs = printed[..self.lhs_len].join(" ");
        let rhs = match self.rhs {
            Rhs::Category => printed[self.lhs_len].as_str(),
            Rhs::Epsilon => "ε",
            Rhs::End => "$",
        };
        format!("({lhs} , {rhs})")
    }
}

impl fmt::Display for Pair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(Printer::new(TagStyle::Hash)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pair(text: &str) -> Pair {
        Pair::parse(text).unwrap()
    }

    #[test]
    fn parses_and_prints() {
        let p = pair("(VP[agr=$1] , Vtra[agr=$1, ter=+])");
        assert_eq!(p.lhs_len(), 1);
        assert_eq!(p.rhs(), Rhs::Category);
        assert_eq!(p.to_string(), "(Vp[agr=#1] , Vtra[agr=#1, ter=+])");
        assert!(p.graph().shares(0, &["agr"], 1, &["agr"]));
        let e = pair("(NP[] , ε)");
        assert_eq!(e.rhs(), Rhs::Epsilon);
        assert_eq!(e.to_string(), "(Np[] , ε)");
        let s = pair("(NP[] NP[] VP[] , $)");
        assert_eq!((s.lhs_len(), s.rhs()), (3, Rhs::End));
    }

    #[test]
    fn output_round_trips() {
        for text in [
            "(#1:Det[ter=+] , #1)",
            "(NP[agr=#1] NP[] , Vint[agr=#1, ter=+])",
            "(S[] , ε)",
        ] {
            let p = pair(text);
            assert!(pair(&p.to_string()).equivalent(&p), "{text}");
        }
    }

    #[test]
    fn shared_variable_pair_subsumes_equal_atom_pair() {
        // The bound pair covers its own sg instance.
        let bound = pair("(VP[agr=$1] , Vtra[agr=$1])");
        let fixed = pair("(VP[agr=sg] , Vtra[agr=sg])");
        assert!(bound.subsumes(&fixed));
        assert!(!fixed.subsumes(&bound));
    }

    #[test]
    fn unbound_pair_subsumes_bound_pair() {
        let free = pair("(VP[agr=[]] , Vtra[agr=[]])");
        let bound = pair("(VP[agr=$1] , Vtra[agr=$1])");
        assert!(free.subsumes(&bound));
        assert!(!bound.subsumes(&free));
    }

    #[test]
    fn kinds_must_match() {
        assert!(!pair("(NP[] , ε)").subsumes(&pair("(NP[] , $)")));
        assert!(!pair("(NP[] , Det[])").subsumes(&pair("(NP[] NP[] , Det[])")));
    }
}
