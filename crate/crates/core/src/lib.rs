//! FIRST and FOLLOW for unification grammars.
//!
//! Categories are feature structures ([`fs`]), grammars are parsed from a
//! small rule language ([`grammar`]), and the two functions are computed as
//! sets of pairs that keep the bindings between a category and its value
//! ([`firstfollow`]). A restrictor keeps the sets finite.
//!
//! ```
//! use featfirst::{compute_first, parse_grammar, query, Mode};
//!
//! let g = parse_grammar("S -> NP VP. NP -> Det[ter=+] N[ter=+]. VP -> V[ter=+] NP.").unwrap();
//! let first = compute_first(&g, Mode::Active).unwrap();
//! let values = query(&first.pairs, &"S[]".parse().unwrap());
//! assert_eq!(values.len(), 1);
//! assert_eq!(values[0].to_string(), "Det[ter=+]");
//! ```

pub mod firstfollow;
pub mod fixtures;
pub mod fs;
pub mod grammar;

pub use firstfollow::{
    compare_modes, compute_first, compute_follow, epsilon_category, first_of_string, query,
    ComputeError, FunctionReport, IterationRecord, IterationStats, LimitKind, Mode, ModeReport,
    Origin, Pair, PairId, PairSet, QueryValue, Rhs, RunReport, Solution,
};
pub use fs::{
    FeaturePath, FeatureStructure, LabelMap, NodeId, NodeSpace, NodeView, Restrictor, SharedGraph,
    UnifyError,
};
pub use grammar::{
    parse_category_string, parse_grammar, validate, Category, Diagnostic, Grammar, Limits,
    ParseError, ParseErrors, Rule, Severity,
};
