use super::pair::{Origin, Pair, RhsRef};
use super::pairset::PairSet;
use super::walk::{Reached, Walker};
use super::ComputeError;
use crate::fs::SharedGraph;
use crate::grammar::{is_preterminal, Grammar};

/// FIRST of a category string, computed on demand from a FIRST fixpoint.
///
/// The categories of `cats` live in one space, so bindings between them
/// (and those made by unifying a prefix with ε-pairs) carry over to the
/// result. Each result pair has the whole restricted string as its lhs.
/// `ε` is a value only if every category unifies with an ε-pair at once.
pub fn first_of_string(
    g: &Grammar,
    first: &PairSet,
    cats: &SharedGraph,
) -> Result<PairSet, ComputeError> {
    let space = cats.space();
    let seq = cats.roots();
    let candidates = first.all(true);
    let self_value: Vec<bool> = seq.iter().map(|&c| is_preterminal(space, c)).collect();

    for (index, &cat) in seq.iter().enumerate() {
        if self_value[index] {
            continue;
        }
        let known = candidates.iter().any(|c| {
            if c.pair.lhs_len() != 1 {
                return false;
            }
            let mut work = space.clone();
            let mapped = work.import(c.pair.space(), c.pair.lhs_nodes());
            work.unify(mapped[0], cat).is_ok()
        });
        if !known {
            return Err(ComputeError::UnknownCategory { index });
        }
    }

    let phi = g.restrictor();
    let mut produced = Vec::new();
    let mut walker = Walker::new(&candidates);
    walker.walk(space, seq, &self_value, false, &mut |work, reached, _| {
        let rhs = match reached {
            Reached::Value(node) => RhsRef::Category(node),
            Reached::AllEpsilon => RhsRef::Epsilon,
        };
        produced.push(Pair::build(work, seq, rhs, phi, Origin::SEED));
    });
    let mut out = PairSet::new(first.epsilon_category().cloned(), 0);
    for pair in produced {
        out.add_with_subsumption(pair);
    }
    Ok(out)
}
