//! A minimal feature-structure model with a path-based subsumption oracle.
//!
//! Structures are DAGs whose node 0 is the root. They are written out in
//! the rule language (`[f=a, g=$1:[], h=$1]`) for the crate under test to
//! parse, and compared here through their paths alone.

use std::collections::{BTreeMap, BTreeSet};

use rand::Rng;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DagNode {
    Atom(String),
    Complex(BTreeMap<String, usize>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Dag {
    pub nodes: Vec<DagNode>,
}

pub type Path = Vec<String>;

impl Dag {
    pub fn unconstrained() -> Dag {
        Dag {
            nodes: vec![DagNode::Complex(BTreeMap::new())],
        }
    }

    pub fn atom(name: &str) -> Dag {
        Dag {
            nodes: vec![DagNode::Atom(name.to_string())],
        }
    }

    /// A complex root with the given arcs; each value is copied in.
    pub fn complex(arcs: &[(&str, &Dag)]) -> Dag {
        let mut d = Dag::unconstrained();
        for (f, v) in arcs {
            let child = d.graft(v);
            d.set_arc(0, f, child);
        }
        d
    }

    /// Copies `other` into this DAG and returns the copy of its root.
    pub fn graft(&mut self, other: &Dag) -> usize {
        let base = self.nodes.len();
        for n in &other.nodes {
            self.nodes.push(match n {
                DagNode::Atom(a) => DagNode::Atom(a.clone()),
                DagNode::Complex(arcs) => {
                    DagNode::Complex(arcs.iter().map(|(f, &c)| (f.clone(), c + base)).collect())
                }
            });
        }
        base
    }

    pub fn set_arc(&mut self, parent: usize, feature: &str, child: usize) {
        match &mut self.nodes[parent] {
            DagNode::Complex(arcs) => {
                arcs.insert(feature.to_string(), child);
            }
            DagNode::Atom(_) => panic!("arc from an atom"),
        }
    }

    /// Every path from the root with the node it reaches.
    pub fn paths(&self) -> BTreeMap<Path, usize> {
        let mut out = BTreeMap::new();
        let mut stack = vec![(Vec::new(), 0usize)];
        while let Some((path, node)) = stack.pop() {
            if let DagNode::Complex(arcs) = &self.nodes[node] {
                for (f, &c) in arcs {
                    let mut p = path.clone();
                    p.push(f.clone());
                    stack.push((p, c));
                }
            }
            out.insert(path, node);
        }
        out
    }

    /// Whether the two nodes count as the same value: one node, or atoms
    /// with the same name.
    fn same_value(&self, a: usize, b: usize) -> bool {
        a == b
            || matches!((&self.nodes[a], &self.nodes[b]),
                (DagNode::Atom(x), DagNode::Atom(y)) if x == y)
    }

    /// Subsumption from the path definition: every path of `self` exists
    /// in `other`, atoms agree, non-empty complex nodes stay complex, and
    /// every pair of paths sharing a node in `self` shares a value in
    /// `other`.
    pub fn subsumes(&self, other: &Dag) -> bool {
        let mine = self.paths();
        let theirs = other.paths();
        for (p, &n) in &mine {
            let Some(&m) = theirs.get(p) else {
                return false;
            };
            match (&self.nodes[n], &other.nodes[m]) {
                (DagNode::Atom(x), DagNode::Atom(y)) if x != y => return false,
                (DagNode::Atom(_), DagNode::Complex(_)) => return false,
                (DagNode::Complex(arcs), DagNode::Atom(_)) if !arcs.is_empty() => return false,
                _ => {}
            }
        }
        let mut by_node: BTreeMap<usize, Vec<&Path>> = BTreeMap::new();
        for (p, &n) in &mine {
            by_node.entry(n).or_default().push(p);
        }
        by_node.values().all(|ps| {
            ps.windows(2)
                .all(|w| other.same_value(theirs[w[0]], theirs[w[1]]))
        })
    }

    pub fn equivalent(&self, other: &Dag) -> bool {
        self.subsumes(other) && other.subsumes(self)
    }

    /// Writes the DAG in the rule language. Complex nodes reached more than
    /// once get `$n` tags.
    pub fn render(&self) -> String {
        let mut refs = vec![0usize; self.nodes.len()];
        refs[0] = 1;
        let mut seen = BTreeSet::new();
        let mut stack = vec![0];
        while let Some(n) = stack.pop() {
            if !seen.insert(n) {
                continue;
            }
            if let DagNode::Complex(arcs) = &self.nodes[n] {
                for &c in arcs.values() {
                    refs[c] += 1;
                    stack.push(c);
                }
            }
        }
        let mut tags = BTreeMap::new();
        let mut out = String::new();
        self.write(0, &refs, &mut tags, &mut out);
        out
    }

    fn write(&self, n: usize, refs: &[usize], tags: &mut BTreeMap<usize, usize>, out: &mut String) {
        if let Some(t) = tags.get(&n) {
            out.push_str(&format!("${t}"));
            return;
        }
        if refs[n] > 1 {
            let t = tags.len() + 1;
            tags.insert(n, t);
            out.push_str(&format!("${t}:"));
        }
        match &self.nodes[n] {
            DagNode::Atom(a) => out.push_str(a),
            DagNode::Complex(arcs) => {
                out.push('[');
                for (i, (f, &c)) in arcs.iter().enumerate() {
                    if i > 0 {
                        out.push_str(", ");
                    }
                    out.push_str(f);
                    out.push('=');
                    self.write(c, refs, tags, out);
                }
                out.push(']');
            }
        }
    }

    /// The acyclic structures over `features` and `atoms` up to `depth`
    /// arcs deep, without sharing.
    pub fn trees(features: &[&str], atoms: &[&str], depth: usize) -> Vec<Dag> {
        let mut out: Vec<Dag> = atoms.iter().map(|a| Dag::atom(a)).collect();
        out.push(Dag::unconstrained());
        if depth == 0 {
            return out;
        }
        let below = Dag::trees(features, atoms, depth - 1);
        // Each feature is absent or takes one of the shallower values.
        let mut combos: Vec<Vec<(&str, &Dag)>> = vec![Vec::new()];
        for f in features {
            let mut next = Vec::new();
            for c in &combos {
                next.push(c.clone());
                for v in &below {
                    let mut c = c.clone();
                    c.push((f, v));
                    next.push(c);
                }
            }
            combos = next;
        }
        for c in combos.into_iter().filter(|c| !c.is_empty()) {
            out.push(Dag::complex(&c));
        }
        out
    }

    /// Structures with one shared node: the value at path `a` is also the
    /// value at path `b`.
    pub fn with_sharing(base: &Dag, a: &[&str], b: &[&str]) -> Option<Dag> {
        let mut d = base.clone();
        let target = d
            .paths()
            .get(&a.iter().map(|s| s.to_string()).collect::<Path>())
            .copied()?;
        let (last, prefix) = b.split_last()?;
        let parent = d
            .paths()
            .get(&prefix.iter().map(|s| s.to_string()).collect::<Path>())
            .copied()?;
        if !matches!(d.nodes[parent], DagNode::Complex(_)) || d.reaches(target, parent) {
            return None;
        }
        d.set_arc(parent, last, target);
        Some(d)
    }

    fn reaches(&self, from: usize, to: usize) -> bool {
        let mut stack = vec![from];
        let mut seen = BTreeSet::new();
        while let Some(n) = stack.pop() {
            if n == to {
                return true;
            }
            if !seen.insert(n) {
                continue;
            }
            if let DagNode::Complex(arcs) = &self.nodes[n] {
                stack.extend(arcs.values().copied());
            }
        }
        false
    }

    /// A random acyclic structure, with some sharing.
    pub fn random(rng: &mut impl Rng, features: &[&str], atoms: &[&str], depth: usize) -> Dag {
        let mut d = Dag::random_tree(rng, features, atoms, depth);
        for _ in 0..rng.gen_range(0..3) {
            let paths: Vec<Path> = d.paths().into_keys().collect();
            let a = &paths[rng.gen_range(0..paths.len())];
            let b = &paths[rng.gen_range(0..paths.len())];
            if a.is_empty() || b.is_empty() {
                continue;
            }
            let a: Vec<&str> = a.iter().map(String::as_str).collect();
            let b: Vec<&str> = b.iter().map(String::as_str).collect();
            if let Some(shared) = Dag::with_sharing(&d, &a, &b) {
                d = shared;
            }
        }
        d
    }

    fn random_tree(rng: &mut impl Rng, features: &[&str], atoms: &[&str], depth: usize) -> Dag {
        let roll = rng.gen_range(0..10);
        if depth == 0 || roll < 3 {
            return if roll % 3 == 0 {
                Dag::unconstrained()
            } else {
                Dag::atom(atoms[rng.gen_range(0..atoms.len())])
            };
        }
        let mut children: Vec<(&str, Dag)> = Vec::new();
        for f in features {
            if rng.gen_bool(0.6) {
                children.push((f, Dag::random_tree(rng, features, atoms, depth - 1)));
            }
        }
        let arcs: Vec<(&str, &Dag)> = children.iter().map(|(f, d)| (*f, d)).collect();
        Dag::complex(&arcs)
    }
}
