//! Grammars bundled with the crate, shared by tests, benchmarks and the CLI.

pub const FIG1: &str = include_str!("../../../grammars/fig1.gr");
pub const CF_INTRO: &str = include_str!("../../../grammars/cf-intro.gr");
pub const AGR: &str = include_str!("../../../grammars/agr.gr");
pub const ORTH: &str = include_str!("../../../grammars/orth.gr");
pub const GRAMMAR13: &str = include_str!("../../../grammars/grammar13.gr");
pub const GRAMMAR21: &str = include_str!("../../../grammars/grammar21.gr");

/// Every bundled grammar with its file name.
pub const ALL: &[(&str, &str)] = &[
    ("fig1.gr", FIG1),
    ("cf-intro.gr", CF_INTRO),
    ("agr.gr", AGR),
    ("orth.gr", ORTH),
    ("grammar13.gr", GRAMMAR13),
    ("grammar21.gr", GRAMMAR21),
];
