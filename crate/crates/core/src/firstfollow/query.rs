use std::fmt;

use super::pair::Rhs;
use super::pairset::PairSet;
use crate::fs::FeatureStructure;

/// A value returned by [`query`].
#[derive(Clone, Debug)]
pub enum QueryValue {
    Category(FeatureStructure),
    Epsilon,
    End,
}

impl QueryValue {
    fn subsumes(&self, other: &QueryValue) -> bool {
        match (self, other) {
            (QueryValue::Category(a), QueryValue::Category(b)) => a.subsumes(b),
            (QueryValue::Epsilon, QueryValue::Epsilon) | (QueryValue::End, QueryValue::End) => true,
            _ => false,
        }
    }
}

impl fmt::Display for QueryValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            QueryValue::Category(c) => c.fmt(f),
            QueryValue::Epsilon => f.write_str("ε"),
            QueryValue::End => f.write_str("$"),
        }
    }
}

/// The values `c` has in `result`: for each single-category pair whose lhs
/// unifies with `c`, the rhs after that unification, in pair order.
/// Values equivalent to an earlier one are merged; of two comparable
/// values the more specific one is kept.
pub fn query(result: &PairSet, c: &FeatureStructure) -> Vec<QueryValue> {
    let mut out: Vec<QueryValue> = Vec::new();
    for pair in result.iter().filter(|p| p.lhs_len() == 1) {
        let mut work = pair.space().clone();
        let mapped = work.import(c.space(), &[c.root()]);
        if work.unify(pair.lhs_nodes()[0], mapped[0]).is_err() {
            continue;
        }
        let value = match pair.rhs() {
            Rhs::Category => {
                let (space, roots) = work.extract(&[pair.rhs_node().unwrap()]);
                QueryValue::Category(FeatureStructure::from_parts(space, roots[0]))
            }
            Rhs::Epsilon => QueryValue::Epsilon,
            Rhs::End => QueryValue::End,
        };
        if let Some(i) = out
            .iter()
            .position(|v| v.subsumes(&value) || value.subsumes(v))
        {
            if out[i].subsumes(&value) {
                out[i] = value;
            }
            continue;
        }
        out.push(value);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::super::{compute_first, Mode};
    use super::*;
    use crate::fixtures;
    use crate::grammar::parse_grammar;

    fn fig1_query(c: &str) -> Vec<String> {
        let g = parse_grammar(fixtures::FIG1).unwrap();
        let first = compute_first(&g, Mode::Active).unwrap();
        query(&first.pairs, &c.parse().unwrap())
            .iter()
            .map(|v| v.to_string())
            .collect()
    }

    #[test]
    fn sentence_starts_with_det_or_vtra() {
        let mut v = fig1_query("S[]");
        v.sort();
        assert_eq!(v, ["Det[ter=+]", "Vtra[agr=[], ter=+]"]);
    }

    #[test]
    fn binding_flows_through_the_pair() {
        assert_eq!(fig1_query("VP[agr=sg]"), ["Vtra[agr=sg, ter=+]"]);
    }

    #[test]
    fn unknown_category_has_no_values() {
        assert!(fig1_query("Zzz[]").is_empty());
        assert!(fig1_query("[cat=zzz]").is_empty());
    }

    #[test]
    fn np_includes_epsilon() {
        let v = fig1_query("NP[]");
        assert!(v.contains(&"ε".to_string()));
        assert!(v.contains(&"Det[ter=+]".to_string()));
    }
}
