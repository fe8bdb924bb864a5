use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use super::{Category, Grammar, Rule, TER};
use crate::fs::{
    FeaturePath, FeatureStructure, LabelMap, NodeId, NodeSpace, NodeView, Restrictor, SharedGraph,
    Sym, CAT,
};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("{line}:{col}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub message: String,
}

/// Every error found in a document, in source order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseErrors(pub Vec<ParseError>);

impl fmt::Display for ParseErrors {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, e) in self.0.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "{e}")?;
        }
        Ok(())
    }
}

impl std::error::Error for ParseErrors {}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Word(String),
    /// Quoted string, kept with its quotes and escapes as written.
    Str(String),
    Tag(u32),
    LBrack,
    RBrack,
    LParen,
    RParen,
    Eq,
    Comma,
    Colon,
    /// `glued` when a feature name follows with no space (`agr.num`).
    Dot {
        glued: bool,
    },
    Arrow,
    Epsilon,
    End,
}

#[derive(Clone, Debug)]
struct Token {
    tok: Tok,
    line: usize,
    col: usize,
}

fn lex(text: &str) -> Result<Vec<Token>, ParseError> {
    let chars: Vec<char> = text.chars().collect();
    let mut tokens = Vec::new();
    let (mut i, mut line, mut col) = (0, 1, 1);
    let err = |line, col, message: String| ParseError { line, col, message };
    while i < chars.len() {
        let c = chars[i];
        let (tl, tc) = (line, col);
        let mut advance = 1;
        let tok = match c {
            '\n' => {
                i += 1;
                line += 1;
                col = 1;
                continue;
            }
            c if c.is_whitespace() => None,
            '%' => {
                while i < chars.len() && chars[i] != '\n' {
                    i += 1;
                }
                continue;
            }
            '[' => Some(Tok::LBrack),
            ']' => Some(Tok::RBrack),
            '(' => Some(Tok::LParen),
            ')' => Some(Tok::RParen),
            '=' => Some(Tok::Eq),
            ',' => Some(Tok::Comma),
            ':' => Some(Tok::Colon),
            'ε' => Some(Tok::Epsilon),
            '.' => Some(Tok::Dot {
                glued: chars.get(i + 1).is_some_and(|c| c.is_ascii_alphabetic()),
            }),
            '-' if chars.get(i + 1) == Some(&'>') => {
                advance = 2;
                Some(Tok::Arrow)
            }
            '+' | '-' => Some(Tok::Word(c.to_string())),
            '$' | '#' => {
                let digits: String = chars[i + 1..]
                    .iter()
                    .take_while(|c| c.is_ascii_digit())
                    .collect();
                if digits.is_empty() {
                    if c == '#' {
                        return Err(err(tl, tc, "`#` must be followed by a tag number".into()));
                    }
                    Some(Tok::End)
                } else {
                    advance = 1 + digits.len();
                    let n = digits
                        .parse()
                        .map_err(|_| err(tl, tc, format!("tag number {digits} too large")))?;
                    Some(Tok::Tag(n))
                }
            }
            '"' => {
                let mut j = i + 1;
                loop {
                    match chars.get(j) {
                        None | Some('\n') => {
                            return Err(err(tl, tc, "unterminated string".into()));
                        }
                        Some('\\') => j += 2,
                        Some('"') => break,
                        Some(_) => j += 1,
                    }
                }
                advance = j + 1 - i;
                Some(Tok::Str(chars[i..=j].iter().collect()))
            }
            c if c.is_ascii_alphanumeric() || c == '_' => {
                let word: String = chars[i..]
                    .iter()
                    .take_while(|c| c.is_ascii_alphanumeric() || **c == '_')
                    .collect();
                advance = word.chars().count();
                Some(Tok::Word(word))
            }
            other => return Err(err(tl, tc, format!("unexpected character `{other}`"))),
        };
        if let Some(tok) = tok {
            tokens.push(Token {
                tok,
                line: tl,
                col: tc,
            });
        }
        i += advance;
        col += advance;
    }
    Ok(tokens)
}

fn is_label_word(w: &str) -> bool {
    w.chars().next().is_some_and(|c| c.is_ascii_alphabetic())
        && w.chars().all(|c| c.is_ascii_alphanumeric() || c == '_')
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
    eof: (usize, usize),
    labels: LabelMap,
    space: NodeSpace,
    tags: HashMap<u32, NodeId>,
}

type PResult<T> = Result<T, ParseError>;

impl Parser {
    fn new(text: &str) -> PResult<Parser> {
        let tokens = lex(text)?;
        let lines = text.lines().count().max(1);
        let last = text.lines().last().map_or(0, |l| l.chars().count());
        Ok(Parser {
            tokens,
            pos: 0,
            eof: (lines, last + 1),
            labels: LabelMap::new(),
            space: NodeSpace::new(),
            tags: HashMap::new(),
        })
    }

    fn peek(&self) -> Option<&Tok> {
        self.tokens.get(self.pos).map(|t| &t.tok)
    }

    fn peek_at(&self, offset: usize) -> Option<&Tok> {
        self.tokens.get(self.pos + offset).map(|t| &t.tok)
    }

    fn here(&self) -> (usize, usize) {
        self.tokens
            .get(self.pos)
            .map_or(self.eof, |t| (t.line, t.col))
    }

    fn error<T>(&self, message: impl Into<String>) -> PResult<T> {
        let (line, col) = self.here();
        Err(ParseError {
            line,
            col,
            message: message.into(),
        })
    }

    fn describe(&self) -> String {
        match self.peek() {
            None => "end of input".into(),
            Some(Tok::Word(w)) => format!("`{w}`"),
            Some(Tok::Str(s)) => s.clone(),
            Some(Tok::Tag(n)) => format!("tag ${n}"),
            Some(t) => format!("{t:?}"),
        }
    }

    fn bump(&mut self) -> Option<Tok> {
        let tok = self.tokens.get(self.pos).map(|t| t.tok.clone());
        self.pos += 1;
        tok
    }

    fn eat(&mut self, tok: &Tok) -> bool {
        if self.peek() == Some(tok) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, tok: Tok, what: &str) -> PResult<()> {
        if self.eat(&tok) {
            Ok(())
        } else {
            self.error(format!("expected {what}, found {}", self.describe()))
        }
    }

    fn at_dot(&self) -> bool {
        matches!(self.peek(), Some(Tok::Dot { .. }))
    }

    /// Skips to just past the next statement terminator.
    fn recover(&mut self) {
        while let Some(tok) = self.bump() {
            if matches!(tok, Tok::Dot { glued: false }) {
                break;
            }
        }
    }

    fn begin_scope(&mut self) {
        self.space = NodeSpace::new();
        self.tags.clear();
    }

    fn tag_node(&mut self, n: u32) -> NodeId {
        *self.tags.entry(n).or_insert_with(|| self.space.complex())
    }

    fn tagged(&mut self, n: u32, top_level: bool) -> PResult<NodeId> {
        let node = self.tag_node(n);
        if self.eat(&Tok::Colon) {
            let value = if top_level {
                self.category()?
            } else {
                self.value()?
            };
            if let Err(e) = self.space.unify(node, value) {
                return self.error(format!("tag ${n} has incompatible value annotations: {e}"));
            }
        }
        Ok(node)
    }

    fn labelled(&mut self, label: Option<&str>) -> PResult<NodeId> {
        let node = self.space.complex();
        if let Some(label) = label {
            let atom = label.to_ascii_lowercase();
            self.labels
                .entry(Sym::from(atom.as_str()))
                .or_insert_with(|| label.to_string());
            let value = self.space.atom(&atom);
            self.space.add_arc(node, CAT, value);
        }
        if !self.eat(&Tok::LBrack) {
            return Ok(node);
        }
        if self.eat(&Tok::RBrack) {
            return Ok(node);
        }
        loop {
            let (line, col) = self.here();
            let feature = match self.peek() {
                Some(Tok::Word(w)) if crate::fs::is_feature_name(w) => w.clone(),
                _ => {
                    return self.error(format!(
                        "expected a feature name, found {}",
                        self.describe()
                    ))
                }
            };
            self.pos += 1;
            self.expect(Tok::Eq, "`=`")?;
            let value = self.value()?;
            if !self.space.add_arc(node, &feature, value) {
                return Err(ParseError {
                    line,
                    col,
                    message: format!("duplicate feature `{feature}`"),
                });
            }
            if self.eat(&Tok::Comma) {
                continue;
            }
            self.expect(Tok::RBrack, "`,` or `]`")?;
            return Ok(node);
        }
    }

    /// A value inside an AVM: atom, string, AVM or tag.
    fn value(&mut self) -> PResult<NodeId> {
        match self.peek().cloned() {
            Some(Tok::Tag(n)) => {
                self.pos += 1;
                self.tagged(n, false)
            }
            Some(Tok::Str(s)) => {
                self.pos += 1;
                Ok(self.space.atom(&s))
            }
            Some(Tok::LBrack) => self.labelled(None),
            Some(Tok::Word(w)) => {
                let is_avm = self.peek_at(1) == Some(&Tok::LBrack)
                    || w.starts_with(|c: char| c.is_ascii_uppercase());
                self.pos += 1;
                if is_avm {
                    if !is_label_word(&w) {
                        self.pos -= 1;
                        return self.error(format!("`{w}` is not a valid label"));
                    }
                    self.labelled(Some(&w))
                } else {
                    Ok(self.space.atom(&w))
                }
            }
            _ => self.error(format!("expected a value, found {}", self.describe())),
        }
    }

    /// A top-level category: labelled or bare AVM, tag, or `term` sugar.
    fn category(&mut self) -> PResult<NodeId> {
        let (line, col) = self.here();
        let node = match self.peek().cloned() {
            Some(Tok::Word(w))
                if w == "term"
                    && matches!(
                        self.peek_at(1),
                        Some(Tok::Word(_) | Tok::LBrack | Tok::Tag(_))
                    ) =>
            {
                self.pos += 1;
                let node = self.category()?;
                let plus = self.space.atom("+");
                let ter = self.space.complex();
                self.space.add_arc(ter, TER, plus);
                if self.space.unify(node, ter).is_err() {
                    return Err(ParseError {
                        line,
                        col,
                        message: "`term` category already has a conflicting `ter` value".into(),
                    });
                }
                node
            }
            Some(Tok::Tag(n)) => {
                self.pos += 1;
                self.tagged(n, true)?
            }
            Some(Tok::LBrack) => self.labelled(None)?,
            Some(Tok::Word(w)) if is_label_word(&w) => {
                self.pos += 1;
                self.labelled(Some(&w))?
            }
            _ => return self.error(format!("expected a category, found {}", self.describe())),
        };
        if matches!(self.space.view(node), NodeView::Atom(_)) {
            return Err(ParseError {
                line,
                col,
                message: "a category cannot be an atom".into(),
            });
        }
        Ok(node)
    }

    fn finish_scope(&mut self, roots: &[NodeId], at: (usize, usize)) -> PResult<SharedGraph> {
        if roots.iter().any(|&r| self.space.has_cycle_from(r)) {
            return Err(ParseError {
                line: at.0,
                col: at.1,
                message: "reentrancy tags create a cyclic structure".into(),
            });
        }
        let (space, roots) = self.space.extract(roots);
        Ok(SharedGraph::new(space, roots))
    }

    fn restrict_statement(&mut self, phi: &mut Restrictor) -> PResult<()> {
        loop {
            let (line, col) = self.here();
            let mut segments = Vec::new();
            loop {
                match self.bump() {
                    Some(Tok::Word(w)) => segments.push(w),
                    _ => {
                        self.pos -= 1;
                        return self.error("expected a feature path");
                    }
                }
                if self.peek() == Some(&Tok::Dot { glued: true }) {
                    self.pos += 1;
                    continue;
                }
                break;
            }
            let path = FeaturePath::new(&segments).map_err(|e| ParseError {
                line,
                col,
                message: format!("malformed restrictor path: {e}"),
            })?;
            phi.insert(path);
            if self.eat(&Tok::Comma) {
                continue;
            }
            if self.at_dot() {
                self.pos += 1;
                return Ok(());
            }
            return self.error(format!("expected `,` or `.`, found {}", self.describe()));
        }
    }

    fn is_declaration(&self, keyword: &str) -> bool {
        matches!(self.peek(), Some(Tok::Word(w)) if w == keyword)
            && !matches!(self.peek_at(1), Some(Tok::LBrack | Tok::Arrow))
    }

    fn grammar(&mut self) -> Result<Grammar, ParseErrors> {
        let mut errors = Vec::new();
        let mut rules = Vec::new();
        let mut phi = Restrictor::new();
        let mut start = None;
        while self.peek().is_some() {
            let at = self.here();
            let outcome = if self.is_declaration("restrict") {
                self.pos += 1;
                self.restrict_statement(&mut phi)
            } else if self.is_declaration("start") {
                self.pos += 1;
                self.begin_scope();
                self.category()
                    .and_then(|c| {
                        if self.at_dot() {
                            self.pos += 1;
                            Ok(c)
                        } else {
                            self.error(format!("expected `.`, found {}", self.describe()))
                        }
                    })
                    .and_then(|c| self.finish_scope(&[c], at))
                    .map(|g| {
                        if start.is_some() {
                            errors.push(ParseError {
                                line: at.0,
                                col: at.1,
                                message: "start category declared twice".into(),
                            });
                        }
                        start = Some(Category::new(g.structure(0)));
                    })
            } else {
                self.rule_statement(at).map(|graph| {
                    let id = rules.len();
                    rules.push(Rule::new(id, graph, at.0, at.1));
                })
            };
            if let Err(e) = outcome {
                errors.push(e);
                self.recover();
            }
        }
        if rules.is_empty() && errors.is_empty() {
            errors.push(ParseError {
                line: self.eof.0,
                col: self.eof.1,
                message: "grammar has no rules".into(),
            });
        }
        if !errors.is_empty() {
            return Err(ParseErrors(errors));
        }
        let mut grammar = Grammar::new(rules, phi, start);
        grammar.set_labels(std::mem::take(&mut self.labels));
        Ok(grammar)
    }

    fn rule_statement(&mut self, at: (usize, usize)) -> PResult<SharedGraph> {
        self.begin_scope();
        let mut roots = vec![self.category()?];
        self.expect(Tok::Arrow, "`->`")?;
        while !self.at_dot() {
            if self.peek().is_none() {
                return self.error("expected `.` to end the rule");
            }
            roots.push(self.category()?);
        }
        self.pos += 1;
        self.finish_scope(&roots, at)
    }

    fn expect_end(&self) -> PResult<()> {
        if self.peek().is_some() {
            self.error(format!("unexpected {}", self.describe()))
        } else {
            Ok(())
        }
    }
}

/// Parses a grammar document.
pub fn parse_grammar(text: &str) -> Result<Grammar, ParseErrors> {
    Parser::new(text)
        .map_err(|e| ParseErrors(vec![e]))?
        .grammar()
}

/// Parses whitespace-separated categories sharing one tag scope, e.g.
/// `NP[] NP[agr=$1] VP[agr=$1]`.
pub fn parse_category_string(text: &str) -> Result<SharedGraph, ParseError> {
    let mut p = Parser::new(text)?;
    let mut roots = Vec::new();
    while p.peek().is_some() {
        roots.push(p.category()?);
    }
    if roots.is_empty() {
        return p.error("expected at least one category");
    }
    p.finish_scope(&roots, (1, 1))
}

pub(crate) enum ParsedRhs {
    Cat,
    Epsilon,
    End,
}

/// Parses `(LHS... , RHS)`; the rhs, when a category, is the last root.
pub(crate) fn parse_pair_parts(text: &str) -> Result<(SharedGraph, ParsedRhs), ParseError> {
    let mut p = Parser::new(text)?;
    p.expect(Tok::LParen, "`(`")?;
    let mut roots = Vec::new();
    while p.peek() != Some(&Tok::Comma) {
        if p.peek().is_none() {
            return p.error("expected `,` between the sides of a pair");
        }
        roots.push(p.category()?);
    }
    if roots.is_empty() {
        return p.error("a pair needs a left-hand side");
    }
    p.pos += 1;
    let rhs = if p.eat(&Tok::Epsilon) {
        ParsedRhs::Epsilon
    } else if p.eat(&Tok::End) {
        ParsedRhs::End
    } else {
        roots.push(p.category()?);
        ParsedRhs::Cat
    };
    p.expect(Tok::RParen, "`)`")?;
    p.expect_end()?;
    Ok((p.finish_scope(&roots, (1, 1))?, rhs))
}

/// Parses a single value (AVM, atom or tag expression).
impl FromStr for FeatureStructure {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut p = Parser::new(s)?;
        let root = p.value()?;
        p.expect_end()?;
        let graph = p.finish_scope(&[root], (1, 1))?;
        Ok(graph.structure(0))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) const FIG1: &str = include_str!("../../../../grammars/fig1.gr");

    #[test]
    fn gap_grammar_parses() {
        let g = parse_grammar(FIG1).unwrap();
        assert_eq!(g.rules().len(), 5);
        let eps = &g.rules()[4];
        assert!(eps.is_epsilon());
        let expected: FeatureStructure = "NP[slash=NP[]]".parse().unwrap();
        assert!(eps.mother().structure().equivalent(&expected));
        assert_eq!(g.restrictor().to_string(), "slash");
        assert_eq!(g.start().label(), Some("s"));
    }

    #[test]
    fn minimal_epsilon_grammar() {
        let g = parse_grammar("restrict slash. S -> .").unwrap();
        assert_eq!(g.rules().len(), 1);
        assert!(g.rules()[0].is_epsilon());
    }

    #[test]
    fn tags_share_within_a_rule() {
        let g = parse_grammar("S -> NP[agr=$1] VP[agr=$1].").unwrap();
        let r = &g.rules()[0];
        assert!(r.graph().shares(1, &["agr"], 2, &["agr"]));
        assert!(!r.graph().shares(0, &[], 1, &[]));
    }

    #[test]
    fn tag_scope_is_one_statement() {
        let g = parse_grammar("A -> B[f=$1] C[f=$1].\nA -> B[f=$1:x] C[f=y].").unwrap();
        assert!(!g.rules()[1].graph().shares(1, &["f"], 2, &["f"]));
        assert!(g.rules()[0].graph().shares(1, &["f"], 2, &["f"]));
    }

    #[test]
    fn labels_are_lowercased_cat() {
        let x: FeatureStructure = "Vtra[ter=+]".parse().unwrap();
        assert!(matches!(x.get(&["cat"]), Some(NodeView::Atom("vtra"))));
        assert!(matches!(x.get(&["ter"]), Some(NodeView::Atom("+"))));
    }

    #[test]
    fn term_sugar_marks_preterminal() {
        let g = parse_grammar("NP -> term Det N[ter=+].").unwrap();
        assert!(g.rules()[0].daughter(0).is_preterminal());
        assert!(g.rules()[0].daughter(1).is_preterminal());
        assert!(!g.rules()[0].mother().is_preterminal());
    }

    #[test]
    fn restrict_paths_union() {
        let g = parse_grammar("restrict slash. restrict agr.num, orth.\nS -> .").unwrap();
        let paths: Vec<String> = g.restrictor().paths().map(|p| p.to_string()).collect();
        assert_eq!(paths, ["agr.num", "orth", "slash"]);
    }

    #[test]
    fn start_declaration() {
        let g = parse_grammar("start VP.\nS -> NP VP.\nVP -> V[ter=+].").unwrap();
        assert_eq!(g.start().label(), Some("vp"));
        assert!(g.start_declared());
    }

    #[test]
    fn errors_carry_positions() {
        let errs = parse_grammar("S -> NP[agr=sg, agr=pl].\nS -> [x=$1:a] [y=$1:b].\nrestrict 9x.")
            .unwrap_err();
        assert_eq!(errs.0.len(), 3);
        assert_eq!((errs.0[0].line, errs.0[0].col), (1, 17));
        assert!(errs.0[0].message.contains("duplicate feature"));
        assert_eq!(errs.0[1].line, 2);
        assert!(errs.0[1].message.contains("incompatible"));
        assert_eq!(errs.0[2].line, 3);
        assert!(errs.0[2].message.contains("restrictor path"));
    }

    #[test]
    fn label_plus_cat_is_duplicate() {
        let errs = parse_grammar("NP[cat=np] -> .").unwrap_err();
        assert!(errs.0[0].message.contains("duplicate feature `cat`"));
    }

    #[test]
    fn unknown_syntax() {
        let errs = parse_grammar("S -> NP ; VP.").unwrap_err();
        assert!(errs.0[0].message.contains("unexpected character"));
        let errs = parse_grammar("S NP.").unwrap_err();
        assert!(errs.0[0].message.contains("`->`"));
        assert!(parse_grammar("% only a comment\n").is_err());
    }

    #[test]
    fn cyclic_tags_rejected() {
        let errs = parse_grammar("S -> A[f=$1:[g=$1]].").unwrap_err();
        assert!(errs.0[0].message.contains("cyclic"), "{errs}");
    }

    #[test]
    fn category_string() {
        let g = parse_category_string("NP[] NP[agr=$1] VP[agr=$1]").unwrap();
        assert_eq!(g.roots().len(), 3);
        assert!(g.shares(1, &["agr"], 2, &["agr"]));
        assert!(parse_category_string("   ").is_err());
    }

    #[test]
    fn values_and_labels_in_value_position() {
        let x: FeatureStructure = "[a=null, b=NP, c=np[], d=\"Big Dog\", e=3]"
            .parse()
            .unwrap();
        assert!(matches!(x.get(&["a"]), Some(NodeView::Atom("null"))));
        assert!(matches!(x.get(&["b", "cat"]), Some(NodeView::Atom("np"))));
        assert!(matches!(x.get(&["c", "cat"]), Some(NodeView::Atom("np"))));
        assert!(matches!(x.get(&["d"]), Some(NodeView::Atom("\"Big Dog\""))));
        assert!(matches!(x.get(&["e"]), Some(NodeView::Atom("3"))));
    }
}
