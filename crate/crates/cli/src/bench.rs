use std::io::Write;
use std::path::PathBuf;

use serde::Serialize;
use thiserror::Error;

use featfirst::{compare_modes, FunctionReport, IterationRecord, ModeReport};

use super::{display_path, exit, load, CliError, Format, Guards};

#[derive(Debug, Error)]
pub enum BenchError {
    #[error("{file}: naive and active {function} results differ")]
    Mismatch {
        file: String,
        function: &'static str,
    },
}

impl BenchError {
    pub fn exit_code(&self) -> i32 {
        exit::CHECK_FAILED
    }
}

#[derive(Serialize)]
struct RunDoc {
    iterations: Vec<(f64, f64)>,
    attempts: u64,
    test_events: u64,
    wall_seconds: f64,
    pairs: usize,
}

#[derive(Serialize)]
struct FunctionDoc {
    naive: RunDoc,
    active: RunDoc,
    attempt_ratio: f64,
    equivalent: bool,
}

#[derive(Serialize)]
struct BenchDoc {
    file: String,
    rules: usize,
    first: FunctionDoc,
    follow: FunctionDoc,
}

fn ratio(r: &FunctionReport) -> f64 {
    r.naive.attempts as f64 / r.active.attempts.max(1) as f64
}

fn function_doc(r: &FunctionReport) -> FunctionDoc {
    let run = |x: &featfirst::RunReport| RunDoc {
        iterations: x
            .stats
            .iterations
            .iter()
            .map(|i| (i.considered, i.total))
            .collect(),
        attempts: x.attempts,
        test_events: x.stats.test_events(),
        wall_seconds: x.wall.as_secs_f64(),
        pairs: x.pairs.len(),
    };
    FunctionDoc {
        naive: run(&r.naive),
        active: run(&r.active),
        attempt_ratio: ratio(r),
        equivalent: r.equivalent,
    }
}

fn cell(r: Option<&IterationRecord>) -> String {
    match r {
        Some(r) => format!("{:>10.1} {:>7.1}", r.considered, r.total),
        None => format!("{:>10} {:>7}", "", ""),
    }
}

fn table(name: &str, r: &FunctionReport) -> String {
    let mut out =
        format!("{name}\n  iteration | naive considered   total | active considered   total\n");
    let rows = r
        .naive
        .stats
        .iterations
        .len()
        .max(r.active.stats.iterations.len());
    for i in 0..rows {
        out.push_str(&format!(
            "  {:>9} | {}       | {}\n",
            i + 1,
            cell(r.naive.stats.iterations.get(i)),
            cell(r.active.stats.iterations.get(i)),
        ));
    }
    out.push_str(&format!(
        "  attempts: naive {} active {} (ratio {:.2})\n",
        r.naive.attempts,
        r.active.attempts,
        ratio(r)
    ));
    out.push_str(&format!(
        "  wall time: naive {:.3?} active {:.3?}\n",
        r.naive.wall, r.active.wall
    ));
    out.push_str(&format!(
        "  pairs: {}  equivalence: {}\n",
        r.active.pairs.len(),
        if r.equivalent { "PASS" } else { "FAIL" }
    ));
    out
}

fn text(file: &str, rules: usize, r: &ModeReport) -> String {
    format!(
        "{file} ({rules} rules)\n{}{}",
        table("FIRST", &r.first),
        table("FOLLOW", &r.follow)
    )
}

pub(crate) fn run(
    files: &[PathBuf],
    guards: &Guards,
    format: Format,
    out: &mut dyn Write,
    _err: &mut dyn Write,
) -> Result<(), CliError> {
    let mut docs = Vec::new();
    let mut mismatch = None;
    for file in files {
        let path = display_path(file);
        let g = load(file, guards)?;
        let report = compare_modes(&g).map_err(|source| CliError::Compute {
            path: path.clone(),
            source,
        })?;
        for (function, r) in [("FIRST", &report.first), ("FOLLOW", &report.follow)] {
            if !r.equivalent && mismatch.is_none() {
                mismatch = Some(BenchError::Mismatch {
                    file: path.clone(),
                    function,
                });
            }
        }
        match format {
            Format::Text => writeln!(out, "{}", text(&path, g.rules().len(), &report))?,
            Format::Json => docs.push(BenchDoc {
                file: path,
                rules: g.rules().len(),
                first: function_doc(&report.first),
                follow: function_doc(&report.follow),
            }),
        }
    }
    if format == Format::Json {
        writeln!(
            out,
            "{}",
            serde_json::to_string_pretty(&docs).expect("report serializes")
        )?;
    }
    match mismatch {
        Some(e) => Err(e.into()),
        None => Ok(()),
    }
}
