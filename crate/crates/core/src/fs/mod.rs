//! Untyped feature structures with structure sharing.
//!
//! Structures live in a [`NodeSpace`], an arena of nodes addressed by
//! [`NodeId`]. Several roots may share one space; two paths that reach the
//! same node form a reentrancy. Atoms are value-identified: two atom nodes
//! with the same name carry exactly the same information, so sharing an atom
//! is indistinguishable from repeating it. A complex node without arcs is the
//! unconstrained value and unifies with atoms as well as complex nodes.

mod display;
mod restrict;
mod subsume;
mod unify;

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Arc;

pub use display::{LabelMap, Printer, TagStyle};
pub(crate) use restrict::{is_feature_name, restrict_roots};
pub use restrict::{FeaturePath, PathError, Restrictor};
pub use subsume::{generalize_roots, subsumes_roots};
pub use unify::UnifyError;

/// Interned-by-value name used for features and atoms.
pub type Sym = Arc<str>;

/// The feature that carries a category's label (`NP` is sugar for `cat=np`).
pub const CAT: &str = "cat";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NodeId(u32);

impl NodeId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

#[derive(Clone, Debug)]
enum Node {
    Atom(Sym),
    Complex(BTreeMap<Sym, NodeId>),
    Forward(NodeId),
}

/// A read-only view of a dereferenced node.
#[derive(Clone, Copy, Debug)]
pub enum NodeView<'a> {
    Atom(&'a str),
    Complex(&'a BTreeMap<Sym, NodeId>),
}

impl NodeView<'_> {
    /// True for a complex node with no arcs: the unconstrained value.
    pub fn is_unconstrained(&self) -> bool {
        matches!(self, NodeView::Complex(m) if m.is_empty())
    }
}

/// Arena of feature-structure nodes.
#[derive(Clone, Debug, Default)]
pub struct NodeSpace {
    nodes: Vec<Node>,
}

impl NodeSpace {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    fn push(&mut self, node: Node) -> NodeId {
        let id = NodeId(u32::try_from(self.nodes.len()).expect("node space overflow"));
        self.nodes.push(node);
        id
    }

    pub fn atom(&mut self, name: &str) -> NodeId {
        self.push(Node::Atom(Sym::from(name)))
    }

    /// A fresh complex node with no arcs.
    pub fn complex(&mut self) -> NodeId {
        self.push(Node::Complex(BTreeMap::new()))
    }

    /// Adds the arc `feature` from `parent` to `child`.
    ///
    /// Returns `false` (and changes nothing) if `parent` is an atom or already
    /// has an arc with that name.
    pub fn add_arc(&mut self, parent: NodeId, feature: &str, child: NodeId) -> bool {
        let parent = self.deref(parent);
        match &mut self.nodes[parent.index()] {
            Node::Complex(arcs) => {
                if arcs.contains_key(feature) {
                    return false;
                }
                arcs.insert(Sym::from(feature), child);
                true
            }
            _ => false,
        }
    }

    pub(crate) fn remove_arc(&mut self, parent: NodeId, feature: &str) -> bool {
        let parent = self.deref(parent);
        match &mut self.nodes[parent.index()] {
            Node::Complex(arcs) => arcs.remove(feature).is_some(),
            _ => false,
        }
    }

    /// Follows forwarding links left behind by in-place unification.
    pub fn deref(&self, mut id: NodeId) -> NodeId {
        while let Node::Forward(next) = self.nodes[id.index()] {
            id = next;
        }
        id
    }

    pub fn view(&self, id: NodeId) -> NodeView<'_> {
        match &self.nodes[self.deref(id).index()] {
            Node::Atom(name) => NodeView::Atom(name),
            Node::Complex(arcs) => NodeView::Complex(arcs),
            Node::Forward(_) => unreachable!("deref never stops on a forward"),
        }
    }

    pub fn arc(&self, id: NodeId, feature: &str) -> Option<NodeId> {
        match self.view(id) {
            NodeView::Complex(arcs) => arcs.get(feature).map(|&c| self.deref(c)),
            NodeView::Atom(_) => None,
        }
    }

    /// Resolves a sequence of features from `id`.
    pub fn resolve<'p, I>(&self, id: NodeId, path: I) -> Option<NodeId>
    where
        I: IntoIterator<Item = &'p str>,
    {
        let mut cur = self.deref(id);
        for feature in path {
            cur = self.arc(cur, feature)?;
        }
        Some(cur)
    }

    /// The atom value of `cat` at `id`, if any.
    pub fn label(&self, id: NodeId) -> Option<&str> {
        match self.view(self.arc(id, CAT)?) {
            NodeView::Atom(name) => Some(name),
            NodeView::Complex(_) => None,
        }
    }

    /// Copies the graph reachable from `roots` in `other` into this space,
    /// preserving sharing among the copied roots. Forwarding links are
    /// collapsed in the copy.
    pub fn import(&mut self, other: &NodeSpace, roots: &[NodeId]) -> Vec<NodeId> {
        let mut memo = HashMap::new();
        roots
            .iter()
            .map(|&r| self.import_node(other, r, &mut memo))
            .collect()
    }

    fn import_node(
        &mut self,
        other: &NodeSpace,
        id: NodeId,
        memo: &mut HashMap<NodeId, NodeId>,
    ) -> NodeId {
        let id = other.deref(id);
        if let Some(&done) = memo.get(&id) {
            return done;
        }
        let copy = match other.view(id) {
            NodeView::Atom(name) => self.push(Node::Atom(Sym::from(name))),
            NodeView::Complex(arcs) => {
                let fresh = self.complex();
                // Reserve before descending so shared children map once.
                memo.insert(id, fresh);
                let mut copied = BTreeMap::new();
                for (feature, &child) in arcs {
                    copied.insert(feature.clone(), self.import_node(other, child, memo));
                }
                self.nodes[fresh.index()] = Node::Complex(copied);
                fresh
            }
        };
        memo.insert(id, copy);
        copy
    }

    /// A fresh, compact copy of the graph reachable from `roots` with
    /// identical internal sharing. Shares nothing with `self`.
    pub fn extract(&self, roots: &[NodeId]) -> (NodeSpace, Vec<NodeId>) {
        let mut space = NodeSpace::new();
        let roots = space.import(self, roots);
        (space, roots)
    }

    /// True if a cycle is reachable from `root`.
    pub fn has_cycle_from(&self, root: NodeId) -> bool {
        #[derive(Clone, Copy, PartialEq)]
        enum Mark {
            Open,
            Done,
        }
        let mut marks: HashMap<NodeId, Mark> = HashMap::new();
        // (node, entered) frames; the second visit closes the node.
        let mut stack = vec![(self.deref(root), false)];
        while let Some((id, entered)) = stack.pop() {
            if entered {
                marks.insert(id, Mark::Done);
                continue;
            }
            match marks.get(&id) {
                Some(Mark::Done) => continue,
                Some(Mark::Open) => return true,
                None => {}
            }
            marks.insert(id, Mark::Open);
            stack.push((id, true));
            if let NodeView::Complex(arcs) = self.view(id) {
                for &child in arcs.values() {
                    let child = self.deref(child);
                    match marks.get(&child) {
                        Some(Mark::Open) => return true,
                        Some(Mark::Done) => {}
                        None => stack.push((child, false)),
                    }
                }
            }
        }
        false
    }

    /// Identity of a node for sharing purposes: atoms are identified by name.
    pub(crate) fn identity(&self, id: NodeId) -> Identity<'_> {
        let id = self.deref(id);
        match self.view(id) {
            NodeView::Atom(name) => Identity::Atom(name),
            NodeView::Complex(_) => Identity::Node(id),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub(crate) enum Identity<'a> {
    Atom(&'a str),
    Node(NodeId),
}

/// Several roots over one node space, with cross-root sharing.
///
/// Rules (mother plus daughters), pairs and category strings are all
/// shared graphs.
#[derive(Clone, Debug)]
pub struct SharedGraph {
    space: NodeSpace,
    roots: Vec<NodeId>,
}

impl SharedGraph {
    pub fn new(space: NodeSpace, roots: Vec<NodeId>) -> Self {
        SharedGraph { space, roots }
    }

    pub fn space(&self) -> &NodeSpace {
        &self.space
    }

    pub fn roots(&self) -> &[NodeId] {
        &self.roots
    }

    pub fn into_parts(self) -> (NodeSpace, Vec<NodeId>) {
        (self.space, self.roots)
    }

    /// A fresh instance with identical internal sharing.
    pub fn clone_space(&self) -> SharedGraph {
        let (space, roots) = self.space.extract(&self.roots);
        SharedGraph { space, roots }
    }

    /// The single-rooted structure at root `i`, sharing dropped with the other roots.
    pub fn structure(&self, i: usize) -> FeatureStructure {
        let (space, roots) = self.space.extract(&self.roots[i..=i]);
        FeatureStructure::from_parts(space, roots[0])
    }

    pub fn subsumes(&self, other: &SharedGraph) -> bool {
        subsumes_roots(&self.space, &self.roots, &other.space, &other.roots)
    }

    pub fn equivalent(&self, other: &SharedGraph) -> bool {
        self.subsumes(other) && other.subsumes(self)
    }

    pub fn restrict(&self, phi: &Restrictor) -> SharedGraph {
        let (space, roots) = restrict::restrict_roots(&self.space, &self.roots, phi);
        SharedGraph { space, roots }
    }

    /// True if root `a` at `path_a` and root `b` at `path_b` reach the same node.
    pub fn shares(&self, a: usize, path_a: &[&str], b: usize, path_b: &[&str]) -> bool {
        let x = self.space.resolve(self.roots[a], path_a.iter().copied());
        let y = self.space.resolve(self.roots[b], path_b.iter().copied());
        match (x, y) {
            (Some(x), Some(y)) => x == y,
            _ => false,
        }
    }
}

/// A single-rooted feature structure.
#[derive(Clone, Debug)]
pub struct FeatureStructure {
    space: NodeSpace,
    root: NodeId,
}

impl FeatureStructure {
    pub fn from_parts(space: NodeSpace, root: NodeId) -> Self {
        FeatureStructure { space, root }
    }

    /// The unconstrained structure `[]`.
    pub fn unconstrained() -> Self {
        let mut space = NodeSpace::new();
        let root = space.complex();
        FeatureStructure { space, root }
    }

    pub fn atom(name: &str) -> Self {
        let mut space = NodeSpace::new();
        let root = space.atom(name);
        FeatureStructure { space, root }
    }

    pub fn space(&self) -> &NodeSpace {
        &self.space
    }

    pub fn root(&self) -> NodeId {
        self.root
    }

    pub fn view(&self) -> NodeView<'_> {
        self.space.view(self.root)
    }

    pub fn label(&self) -> Option<&str> {
        self.space.label(self.root)
    }

    pub fn get(&self, path: &[&str]) -> Option<NodeView<'_>> {
        self.space
            .resolve(self.root, path.iter().copied())
            .map(|n| self.space.view(n))
    }

    pub fn into_graph(self) -> SharedGraph {
        SharedGraph::new(self.space, vec![self.root])
    }

    /// Fresh copy with identical sharing.
    pub fn clone_space(&self) -> FeatureStructure {
        let (space, roots) = self.space.extract(&[self.root]);
        FeatureStructure::from_parts(space, roots[0])
    }

    pub fn unify(&self, other: &FeatureStructure) -> Result<FeatureStructure, UnifyError> {
        let mut space = self.space.clone();
        let theirs = space.import(&other.space, &[other.root])[0];
        space.unify(self.root, theirs)?;
        let (space, roots) = space.extract(&[self.root]);
        Ok(FeatureStructure::from_parts(space, roots[0]))
    }

    pub fn subsumes(&self, other: &FeatureStructure) -> bool {
        subsumes_roots(&self.space, &[self.root], &other.space, &[other.root])
    }

    pub fn equivalent(&self, other: &FeatureStructure) -> bool {
        self.subsumes(other) && other.subsumes(self)
    }

    pub fn generalize(&self, other: &FeatureStructure) -> FeatureStructure {
        let (space, roots) =
            generalize_roots(&self.space, &[self.root], &other.space, &[other.root]);
        FeatureStructure::from_parts(space, roots[0])
    }

    pub fn restrict(&self, phi: &Restrictor) -> FeatureStructure {
        let (space, roots) = restrict::restrict_roots(&self.space, &[self.root], phi);
        FeatureStructure::from_parts(space, roots[0])
    }

    /// True if some path in `phi` resolves in this structure.
    pub fn contains_any_path(&self, phi: &Restrictor) -> bool {
        phi.paths()
            .any(|p| self.space.resolve(self.root, p.segments()).is_some())
    }
}

impl fmt::Display for FeatureStructure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let printed = Printer::new(TagStyle::Hash).roots(&self.space, &[self.root]);
        f.write_str(&printed[0])
    }
}

impl fmt::Display for SharedGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let printed = Printer::new(TagStyle::Hash).roots(&self.space, &self.roots);
        f.write_str(&printed.join(" "))
    }
}
