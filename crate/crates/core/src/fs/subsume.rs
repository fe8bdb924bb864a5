use std::collections::{BTreeMap, HashMap};

use super::{Identity, NodeId, NodeSpace, NodeView};

/// True iff the graph rooted at `roots_a` subsumes (is at least as general
/// as) the one rooted at `roots_b`, root by root.
///
/// Subsumption holds when there is a map from the nodes of `a` to the nodes
/// of `b` that sends roots to roots, preserves arcs and atoms, and is a
/// function: two paths sharing a node in `a` must share a node in `b`.
/// Unconstrained nodes of `a` map onto anything.
pub fn subsumes_roots(
    a: &NodeSpace,
    roots_a: &[NodeId],
    b: &NodeSpace,
    roots_b: &[NodeId],
) -> bool {
    if roots_a.len() != roots_b.len() {
        return false;
    }
    let mut image: HashMap<NodeId, Identity<'_>> = HashMap::new();
    let mut pending: Vec<(NodeId, NodeId)> = roots_a
        .iter()
        .copied()
        .zip(roots_b.iter().copied())
        .collect();
    while let Some((x, y)) = pending.pop() {
        let x = a.deref(x);
        let target = b.identity(y);
        if let Some(&seen) = image.get(&x) {
            if seen != target {
                return false;
            }
            continue;
        }
        image.insert(x, target);
        match (a.view(x), b.view(y)) {
            (NodeView::Atom(p), NodeView::Atom(q)) => {
                if p != q {
                    return false;
                }
            }
            (NodeView::Atom(_), NodeView::Complex(_)) => return false,
            (NodeView::Complex(arcs), _) if arcs.is_empty() => {}
            (NodeView::Complex(_), NodeView::Atom(_)) => return false,
            (NodeView::Complex(arcs_a), NodeView::Complex(arcs_b)) => {
                for (feature, &child) in arcs_a {
                    match arcs_b.get(feature) {
                        Some(&other) => pending.push((child, other)),
                        None => return false,
                    }
                }
            }
        }
    }
    true
}

/// Most specific graph subsuming both inputs, root by root (anti-unification).
///
/// Result nodes correspond to pairs of input nodes, so a reentrancy survives
/// exactly when both inputs have it.
pub fn generalize_roots(
    a: &NodeSpace,
    roots_a: &[NodeId],
    b: &NodeSpace,
    roots_b: &[NodeId],
) -> (NodeSpace, Vec<NodeId>) {
    assert_eq!(roots_a.len(), roots_b.len(), "root counts must agree");
    let mut out = NodeSpace::new();
    let mut memo = HashMap::new();
    let roots = roots_a
        .iter()
        .zip(roots_b)
        .map(|(&x, &y)| generalize_node(a, x, b, y, &mut out, &mut memo))
        .collect();
    (out, roots)
}

fn generalize_node<'s>(
    a: &'s NodeSpace,
    x: NodeId,
    b: &'s NodeSpace,
    y: NodeId,
    out: &mut NodeSpace,
    memo: &mut HashMap<(Identity<'s>, Identity<'s>), NodeId>,
) -> NodeId {
    let key = (a.identity(x), b.identity(y));
    if let Some(&done) = memo.get(&key) {
        return done;
    }
    let node = match (a.view(x), b.view(y)) {
        (NodeView::Atom(p), NodeView::Atom(q)) if p == q => out.atom(p),
        (NodeView::Complex(arcs_a), NodeView::Complex(arcs_b)) => {
            let node = out.complex();
            memo.insert(key, node);
            let common: BTreeMap<_, _> = arcs_a
                .iter()
                .filter_map(|(f, &cx)| arcs_b.get(f).map(|&cy| (f.clone(), (cx, cy))))
                .collect();
            for (feature, (cx, cy)) in common {
                let child = generalize_node(a, cx, b, cy, out, memo);
                out.add_arc(node, &feature, child);
            }
            node
        }
        _ => out.complex(),
    };
    memo.insert(key, node);
    node
}
