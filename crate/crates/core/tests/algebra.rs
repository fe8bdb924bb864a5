//! Unification, subsumption, generalization and restriction checked against
//! the path-based oracle, exhaustively on a small universe and randomly on
//! deeper structures.

use std::collections::BTreeMap;

use featfirst::{FeatureStructure, NodeId, NodeView, Restrictor};
use featfirst_testkit::dag::{Dag, DagNode};
use proptest::prelude::*;

const FEATURES: [&str; 2] = ["f", "g"];
const ATOMS: [&str; 2] = ["a", "b"];

fn to_fs(d: &Dag) -> FeatureStructure {
    d.render()
        .parse()
        .unwrap_or_else(|e| panic!("{}: {e}", d.render()))
}

/// Reads a structure back through the public node API.
fn to_dag(fs: &FeatureStructure) -> Dag {
    fn visit(
        fs: &FeatureStructure,
        id: NodeId,
        map: &mut BTreeMap<NodeId, usize>,
        d: &mut Dag,
    ) -> usize {
        let id = fs.space().deref(id);
        if let Some(&n) = map.get(&id) {
            return n;
        }
        let n = d.nodes.len();
        map.insert(id, n);
        match fs.space().view(id) {
            NodeView::Atom(a) => d.nodes.push(DagNode::Atom(a.to_string())),
            NodeView::Complex(arcs) => {
                d.nodes.push(DagNode::Complex(BTreeMap::new()));
                for (f, &c) in arcs {
                    let child = visit(fs, c, map, d);
                    d.set_arc(n, f, child);
                }
            }
        }
        n
    }
    let mut d = Dag { nodes: Vec::new() };
    visit(fs, fs.root(), &mut BTreeMap::new(), &mut d);
    d
}

/// Depth-2 trees over two features and two atoms, plus every single
/// sharing between two distinct paths of the depth-1 and some depth-2 trees.
fn universe() -> Vec<Dag> {
    let mut out = Dag::trees(&FEATURES, &ATOMS, 2);
    let share = [
        (vec!["f"], vec!["g"]),
        (vec!["f", "f"], vec!["g"]),
        (vec!["f", "g"], vec!["f", "f"]),
        (vec!["g"], vec!["f", "g"]),
    ];
    let bases = out.clone();
    for base in bases.iter().step_by(7) {
        for (a, b) in &share {
            if let Some(d) = Dag::with_sharing(base, a, b) {
                out.push(d);
            }
        }
    }
    // Drop duplicates up to oracle equivalence.
    let mut unique: Vec<Dag> = Vec::new();
    for d in out {
        if !unique.iter().any(|u| u.equivalent(&d)) {
            unique.push(d);
        }
    }
    unique
}

struct Universe {
    dags: Vec<Dag>,
    fs: Vec<FeatureStructure>,
    /// below[i][j]: dags[i] subsumes dags[j] by the oracle.
    below: Vec<Vec<bool>>,
}

fn build() -> Universe {
    let dags = universe();
    let fs = dags.iter().map(to_fs).collect();
    let below = dags
        .iter()
        .map(|a| dags.iter().map(|b| a.subsumes(b)).collect())
        .collect();
    Universe { dags, fs, below }
}

#[test]
fn universe_is_nontrivial() {
    let u = build();
    assert!(u.dags.len() > 300, "{}", u.dags.len());
    assert!(u.dags.iter().any(|d| d.render().contains('$')));
}

#[test]
fn parse_and_read_back_preserve_structure() {
    let u = build();
    for (d, fs) in u.dags.iter().zip(&u.fs) {
        assert!(to_dag(fs).equivalent(d), "{}", d.render());
    }
}

#[test]
fn subsumption_matches_oracle() {
    let u = build();
    for i in 0..u.dags.len() {
        for j in 0..u.dags.len() {
            assert_eq!(
                u.fs[i].subsumes(&u.fs[j]),
                u.below[i][j],
                "{} vs {}",
                u.dags[i].render(),
                u.dags[j].render()
            );
        }
    }
}

#[test]
fn equivalence_is_canonical_printing() {
    let u = build();
    for i in 0..u.fs.len() {
        for j in 0..u.fs.len() {
            let same_text = u.fs[i].to_string() == u.fs[j].to_string();
            assert_eq!(u.fs[i].equivalent(&u.fs[j]), same_text);
        }
    }
}

#[test]
fn unification_is_the_least_upper_bound() {
    let u = build();
    let n = u.dags.len();
    for i in 0..n {
        for j in i..n {
            let upper: Vec<usize> = (0..n).filter(|&k| u.below[i][k] && u.below[j][k]).collect();
            match u.fs[i].unify(&u.fs[j]) {
                Ok(m) => {
                    let md = to_dag(&m);
                    assert!(u.dags[i].subsumes(&md) && u.dags[j].subsumes(&md));
                    for k in upper {
                        assert!(
                            md.subsumes(&u.dags[k]),
                            "{} ⊔ {}",
                            u.dags[i].render(),
                            u.dags[j].render()
                        );
                    }
                    let back = u.fs[j].unify(&u.fs[i]).unwrap();
                    assert!(back.equivalent(&m));
                }
                Err(_) => assert!(
                    upper.is_empty(),
                    "{} ⊔ {}",
                    u.dags[i].render(),
                    u.dags[j].render()
                ),
            }
        }
    }
}

#[test]
fn unification_is_idempotent_and_associative() {
    let u = build();
    let sample: Vec<usize> = (0..u.fs.len()).step_by(9).collect();
    for &i in &sample {
        assert!(u.fs[i].unify(&u.fs[i]).unwrap().equivalent(&u.fs[i]));
        for &j in &sample {
            for &k in &sample {
                let left = u.fs[i].unify(&u.fs[j]).and_then(|x| x.unify(&u.fs[k]));
                let right = u.fs[j].unify(&u.fs[k]).and_then(|x| u.fs[i].unify(&x));
                match (left, right) {
                    (Ok(l), Ok(r)) => assert!(l.equivalent(&r)),
                    (Err(_), Err(_)) => {}
                    _ => panic!("associativity differs on {i} {j} {k}"),
                }
            }
        }
    }
}

#[test]
fn generalization_is_the_greatest_lower_bound() {
    let u = build();
    let n = u.dags.len();
    for i in (0..n).step_by(2) {
        for j in (i..n).step_by(3) {
            let g = to_dag(&u.fs[i].generalize(&u.fs[j]));
            assert!(g.subsumes(&u.dags[i]) && g.subsumes(&u.dags[j]));
            for k in 0..n {
                if u.below[k][i] && u.below[k][j] {
                    assert!(
                        u.dags[k].subsumes(&g),
                        "{} below {} ⊓ {} = {}",
                        u.dags[k].render(),
                        u.dags[i].render(),
                        u.dags[j].render(),
                        g.render()
                    );
                }
            }
        }
    }
}

#[test]
fn restriction_removes_paths_and_generalizes() {
    let u = build();
    for phi in ["f", "g.f", "f, g", "f.f, g.g"] {
        let phi: Restrictor = phi.parse().unwrap();
        for fs in &u.fs {
            let r = fs.restrict(&phi);
            assert!(!r.contains_any_path(&phi));
            assert!(r.subsumes(fs));
            assert!(r.restrict(&phi).equivalent(&r));
        }
    }
}

fn random_pair() -> impl Strategy<Value = (Dag, Dag)> {
    (any::<u64>(), 0usize..5).prop_map(|(seed, depth)| {
        let mut rng = featfirst_testkit::rng(seed);
        let features = ["f", "g", "h"];
        let a = Dag::random(&mut rng, &features, &ATOMS, depth);
        let b = Dag::random(&mut rng, &features, &ATOMS, depth);
        (a, b)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn deep_subsumption_matches_oracle((a, b) in random_pair()) {
        let (fa, fb) = (to_fs(&a), to_fs(&b));
        prop_assert_eq!(fa.subsumes(&fb), a.subsumes(&b));
        prop_assert_eq!(fb.subsumes(&fa), b.subsumes(&a));
        prop_assert!(fa.subsumes(&fa));
    }

    #[test]
    fn deep_unification_bounds((a, b) in random_pair()) {
        let (fa, fb) = (to_fs(&a), to_fs(&b));
        match (fa.unify(&fb), fb.unify(&fa)) {
            (Ok(x), Ok(y)) => {
                prop_assert!(x.equivalent(&y));
                let xd = to_dag(&x);
                prop_assert!(a.subsumes(&xd) && b.subsumes(&xd));
            }
            (Err(_), Err(_)) => prop_assert!(!a.subsumes(&b) && !b.subsumes(&a)),
            _ => prop_assert!(false, "unification is not commutative"),
        }
    }

    #[test]
    fn deep_generalization_bounds((a, b) in random_pair()) {
        let (fa, fb) = (to_fs(&a), to_fs(&b));
        let g = fa.generalize(&fb);
        prop_assert!(g.equivalent(&fb.generalize(&fa)));
        let gd = to_dag(&g);
        prop_assert!(gd.subsumes(&a) && gd.subsumes(&b));
        // Anything below both inputs is below the generalization.
        let u = Dag::unconstrained();
        prop_assert!(u.subsumes(&gd));
        if a.subsumes(&b) {
            prop_assert!(g.equivalent(&fa));
        }
    }

    #[test]
    fn deep_restriction((a, _b) in random_pair(), which in 0usize..3) {
        let phi: Restrictor = ["f", "g.h", "h, f.g"][which].parse().unwrap();
        let fa = to_fs(&a);
        let r = fa.restrict(&phi);
        prop_assert!(!r.contains_any_path(&phi));
        prop_assert!(r.subsumes(&fa));
    }
}
