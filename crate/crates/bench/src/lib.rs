//! Benchmarks comparing naive and active-pair fixpoints; see `benches/modes.rs`.
//!
//! Run with `cargo bench -p featfirst-bench`.

use featfirst::{fixtures, parse_grammar, Grammar};

/// The bundled grammars used by the benchmarks.
pub fn grammars() -> Vec<(&'static str, Grammar)> {
    fixtures::ALL
        .iter()
        .map(|(name, text)| (*name, parse_grammar(text).expect("bundled grammar parses")))
        .collect()
}
