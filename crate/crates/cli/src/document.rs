use std::collections::{BTreeMap, HashMap};

use serde::Serialize;

use featfirst::{
    Diagnostic, Grammar, IterationStats, Mode, NodeId, NodeSpace, NodeView, Pair, PairSet, Rhs,
};

/// Everything one computation prints. The JSON form is this structure;
/// the text form is one pair per line.
#[derive(Debug, Serialize)]
pub struct OutputDocument {
    pub grammar: GrammarDigest,
    pub function: &'static str,
    pub mode: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub string: Option<String>,
    pub limits: LimitsDoc,
    /// The grammar's ε-category, if it has ε-rules.
    pub epsilon: Option<String>,
    pub pairs: Vec<PairDoc>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub stats: Option<Vec<IterationDoc>>,
    pub diagnostics: Vec<DiagnosticDoc>,
}

#[derive(Debug, Serialize)]
pub struct GrammarDigest {
    pub file: String,
    pub rules: usize,
    pub restrictor: Vec<String>,
}

#[derive(Debug, Serialize)]
pub struct LimitsDoc {
    pub max_iterations: usize,
    pub max_pairs: usize,
}

#[derive(Debug, Serialize)]
pub struct OriginDoc {
    /// 1-based rule number; absent for seeds.
    pub rule: Option<usize>,
    pub iteration: usize,
}

#[derive(Debug, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum RhsDoc {
    Category { node: usize },
    Epsilon,
    End,
}

/// A node of a pair's graph. Arcs point at indices into the pair's node
/// list, so shared values appear as repeated indices.
#[derive(Debug, Serialize)]
#[serde(untagged)]
pub enum NodeDoc {
    Atom { atom: String },
    Complex { arcs: BTreeMap<String, usize> },
}

#[derive(Debug, Serialize)]
pub struct PairDoc {
    pub id: u64,
    pub text: String,
    pub origin: OriginDoc,
    pub lhs: Vec<usize>,
    pub rhs: RhsDoc,
    pub nodes: Vec<NodeDoc>,
}

#[derive(Debug, Serialize)]
pub struct IterationDoc {
    pub iteration: usize,
    pub considered: f64,
    pub total: f64,
    pub size_at_end: usize,
    pub attempts: u64,
    pub test_events: u64,
    pub changes: usize,
}

#[derive(Debug, Serialize)]
pub struct DiagnosticDoc {
    pub severity: String,
    pub line: usize,
    pub col: usize,
    pub message: String,
}

/// Numbers nodes depth-first from the roots in order, features sorted.
/// Atoms get a node per occurrence since sharing an atom carries no
/// information.
fn encode(space: &NodeSpace, roots: &[NodeId]) -> (Vec<NodeDoc>, Vec<usize>) {
    fn visit(
        space: &NodeSpace,
        id: NodeId,
        seen: &mut HashMap<NodeId, usize>,
        nodes: &mut Vec<NodeDoc>,
    ) -> usize {
        let id = space.deref(id);
        match space.view(id) {
            NodeView::Atom(a) => {
                nodes.push(NodeDoc::Atom {
                    atom: a.to_string(),
                });
                nodes.len() - 1
            }
            NodeView::Complex(arcs) => {
                if let Some(&n) = seen.get(&id) {
                    return n;
                }
                let n = nodes.len();
                seen.insert(id, n);
                nodes.push(NodeDoc::Complex {
                    arcs: BTreeMap::new(),
                });
                let children: Vec<(String, usize)> = arcs
                    .iter()
                    .map(|(f, &c)| (f.to_string(), visit(space, c, seen, nodes)))
                    .collect();
                if let NodeDoc::Complex { arcs } = &mut nodes[n] {
                    arcs.extend(children);
                }
                n
            }
        }
    }
    let mut seen = HashMap::new();
    let mut nodes = Vec::new();
    let ids = roots
        .iter()
        .map(|&r| visit(space, r, &mut seen, &mut nodes))
        .collect();
    (nodes, ids)
}

impl PairDoc {
    pub fn new(id: u64, pair: &Pair, g: &Grammar) -> PairDoc {
        let (nodes, ids) = encode(pair.space(), pair.graph().roots());
        let rhs = match pair.rhs() {
            Rhs::Category => RhsDoc::Category {
                node: ids[pair.lhs_len()],
            },
            Rhs::Epsilon => RhsDoc::Epsilon,
            Rhs::End => RhsDoc::End,
        };
        PairDoc {
            id,
            text: pair.display_with(g.labels()),
            origin: OriginDoc {
                rule: pair.origin().rule.map(|r| r + 1),
                iteration: pair.origin().iteration,
            },
            lhs: ids[..pair.lhs_len()].to_vec(),
            rhs,
            nodes,
        }
    }
}

impl OutputDocument {
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        file: &str,
        g: &Grammar,
        function: &'static str,
        mode: Mode,
        string: Option<&str>,
        pairs: &PairSet,
        stats: Option<&IterationStats>,
        diagnostics: &[Diagnostic],
    ) -> OutputDocument {
        OutputDocument {
            grammar: GrammarDigest {
                file: file.to_string(),
                rules: g.rules().len(),
                restrictor: g.restrictor().paths().map(|p| p.to_string()).collect(),
            },
            function,
            mode: mode.to_string(),
            string: string.map(str::to_string),
            limits: LimitsDoc {
                max_iterations: g.limits.max_iterations,
                max_pairs: g.limits.max_pairs,
            },
            epsilon: pairs.epsilon_category().map(|e| e.to_string()),
            pairs: pairs
                .ids()
                .zip(pairs.iter())
                .map(|(id, p)| PairDoc::new(id, p, g))
                .collect(),
            stats: stats.map(|s| {
                s.iterations
                    .iter()
                    .enumerate()
                    .map(|(i, r)| IterationDoc {
                        iteration: i + 1,
                        considered: r.considered,
                        total: r.total,
                        size_at_end: r.size_at_end,
                        attempts: r.attempts,
                        test_events: r.test_events,
                        changes: r.changes,
                    })
                    .collect()
            }),
            diagnostics: diagnostics
                .iter()
                .map(|d| DiagnosticDoc {
                    severity: format!("{:?}", d.severity).to_lowercase(),
                    line: d.line,
                    col: d.col,
                    message: d.message.clone(),
                })
                .collect(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("document serializes")
    }

    /// One pair per line; statistics follow as `%` comment lines.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for p in &self.pairs {
            out.push_str(&p.text);
            out.push('\n');
        }
        if let Some(stats) = &self.stats {
            out.push_str("% iteration  considered  total  size  attempts\n");
            for s in stats {
                out.push_str(&format!(
                    "% {:>9}  {:>10.2}  {:>5.2}  {:>4}  {:>8}\n",
                    s.iteration, s.considered, s.total, s.size_at_end, s.attempts
                ));
            }
        }
        out
    }
}
