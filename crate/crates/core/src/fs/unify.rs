use std::mem;

use thiserror::Error;

use super::{Node, NodeId, NodeSpace, Sym};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum UnifyError {
    #[error("atom `{0}` clashes with atom `{1}`")]
    AtomClash(Sym, Sym),
    #[error("atom `{0}` cannot unify with a complex value")]
    AtomComplex(Sym),
    #[error("unification would create a cyclic structure")]
    Cycle,
}

impl NodeSpace {
    /// Destructively unifies `a` and `b` within this space.
    ///
    /// Every structure in the space that reaches either node sees the
    /// result. On failure the space is left in an unspecified (but
    /// memory-safe) state and should be discarded.
    pub fn unify(&mut self, a: NodeId, b: NodeId) -> Result<(), UnifyError> {
        let mut pending = vec![(a, b)];
        while let Some((x, y)) = pending.pop() {
            let x = self.deref(x);
            let y = self.deref(y);
            if x == y {
                continue;
            }
            match (&self.nodes[x.index()], &self.nodes[y.index()]) {
                (Node::Atom(p), Node::Atom(q)) => {
                    if p != q {
                        return Err(UnifyError::AtomClash(p.clone(), q.clone()));
                    }
                    self.nodes[x.index()] = Node::Forward(y);
                }
                (Node::Atom(_), Node::Complex(arcs)) if arcs.is_empty() => {
                    self.nodes[y.index()] = Node::Forward(x);
                }
                (Node::Complex(arcs), Node::Atom(_)) if arcs.is_empty() => {
                    self.nodes[x.index()] = Node::Forward(y);
                }
                (Node::Atom(p), Node::Complex(_)) | (Node::Complex(_), Node::Atom(p)) => {
                    return Err(UnifyError::AtomComplex(p.clone()));
                }
                (Node::Complex(_), Node::Complex(_)) => {
                    let Node::Complex(arcs) =
                        mem::replace(&mut self.nodes[x.index()], Node::Forward(y))
                    else {
                        unreachable!()
                    };
                    for (feature, child) in arcs {
                        let Node::Complex(target) = &mut self.nodes[y.index()] else {
                            unreachable!("y is complex until popped again")
                        };
                        match target.get(&feature) {
                            Some(&existing) => pending.push((child, existing)),
                            None => {
                                target.insert(feature, child);
                            }
                        }
                    }
                }
                (Node::Forward(_), _) | (_, Node::Forward(_)) => unreachable!(),
            }
        }
        if self.has_cycle_from(a) {
            return Err(UnifyError::Cycle);
        }
        Ok(())
    }
}
