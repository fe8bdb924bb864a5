use std::collections::{BTreeMap, HashMap};
use std::fmt::Write;

use super::{NodeId, NodeSpace, NodeView, Sym, CAT};

/// Reentrancy tag sigil: `#1` for output, `$1` for grammar source.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TagStyle {
    Hash,
    Dollar,
}

impl TagStyle {
    fn sigil(self) -> char {
        match self {
            TagStyle::Hash => '#',
            TagStyle::Dollar => '$',
        }
    }
}

/// Display spelling of category labels, keyed by the `cat` atom (`np` → `NP`).
pub type LabelMap = BTreeMap<Sym, String>;

/// Prints shared graphs in AVM syntax.
///
/// Features are printed in sorted order with the `cat` label first, and tags
/// are numbered by first occurrence, so equivalent graphs print identically.
#[derive(Clone, Debug)]
pub struct Printer<'l> {
    style: TagStyle,
    labels: Option<&'l LabelMap>,
}

impl<'l> Printer<'l> {
    pub fn new(style: TagStyle) -> Self {
        Printer {
            style,
            labels: None,
        }
    }

    pub fn with_labels(mut self, labels: &'l LabelMap) -> Self {
        self.labels = Some(labels);
        self
    }

    /// One string per root; tags are numbered across all roots.
    pub fn roots(&self, space: &NodeSpace, roots: &[NodeId]) -> Vec<String> {
        let refs = count_refs(space, roots);
        let mut state = State {
            space,
            refs,
            tags: HashMap::new(),
            printer: self,
        };
        roots
            .iter()
            .map(|&r| {
                let mut out = String::new();
                state.node(r, &mut out);
                out
            })
            .collect()
    }

    fn label_for(&self, atom: &str) -> Option<String> {
        if let Some(spelled) = self.labels.and_then(|m| m.get(atom)) {
            return Some(spelled.clone());
        }
        let mut chars = atom.chars();
        let first = chars.next()?;
        if !first.is_ascii_lowercase() || !chars.all(|c| c.is_ascii_alphanumeric() || c == '_') {
            return None;
        }
        let mut label = first.to_ascii_uppercase().to_string();
        label.push_str(&atom[1..]);
        Some(label)
    }
}

fn count_refs(space: &NodeSpace, roots: &[NodeId]) -> HashMap<NodeId, usize> {
    let mut refs: HashMap<NodeId, usize> = HashMap::new();
    let mut stack: Vec<NodeId> = Vec::new();
    for &r in roots {
        let r = space.deref(r);
        let count = refs.entry(r).or_insert(0);
        *count += 1;
        if *count == 1 {
            stack.push(r);
        }
        while let Some(n) = stack.pop() {
            if let NodeView::Complex(arcs) = space.view(n) {
                for &child in arcs.values() {
                    let child = space.deref(child);
                    let count = refs.entry(child).or_insert(0);
                    *count += 1;
                    if *count == 1 {
                        stack.push(child);
                    }
                }
            }
        }
    }
    refs
}

struct State<'a, 'l> {
    space: &'a NodeSpace,
    refs: HashMap<NodeId, usize>,
    tags: HashMap<NodeId, usize>,
    printer: &'a Printer<'l>,
}

impl State<'_, '_> {
    fn node(&mut self, id: NodeId, out: &mut String) {
        let id = self.space.deref(id);
        let view = self.space.view(id);
        if let NodeView::Atom(name) = view {
            write_atom(name, out);
            return;
        }
        if self.refs.get(&id).copied().unwrap_or(0) > 1 {
            if let Some(&tag) = self.tags.get(&id) {
                let _ = write!(out, "{}{}", self.printer.style.sigil(), tag);
                return;
            }
            let tag = self.tags.len() + 1;
            self.tags.insert(id, tag);
            let _ = write!(out, "{}{}", self.printer.style.sigil(), tag);
            if view.is_unconstrained() {
                return;
            }
            out.push(':');
        }
        let NodeView::Complex(arcs) = view else {
            unreachable!()
        };
        let label = arcs.get(CAT).and_then(|&c| match self.space.view(c) {
            NodeView::Atom(a) => self.printer.label_for(a),
            NodeView::Complex(_) => None,
        });
        if let Some(label) = &label {
            out.push_str(label);
        }
        out.push('[');
        let mut first = true;
        for (feature, &child) in arcs {
            if label.is_some() && &**feature == CAT {
                continue;
            }
            if !first {
                out.push_str(", ");
            }
            first = false;
            out.push_str(feature);
            out.push('=');
            self.node(child, out);
        }
        out.push(']');
    }
}

pub(crate) fn is_bare_atom(name: &str) -> bool {
    if name == "+" || name == "-" {
        return true;
    }
    let mut chars = name.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_lowercase() || c.is_ascii_digit())
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

fn write_atom(name: &str, out: &mut String) {
    if is_bare_atom(name) || (name.len() >= 2 && name.starts_with('"') && name.ends_with('"')) {
        out.push_str(name);
    } else {
        out.push('"');
        for c in name.chars() {
            if c == '"' || c == '\\' {
                out.push('\\');
            }
            out.push(c);
        }
        out.push('"');
    }
}
